#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ekr/chains.hpp"
#include "ekr/decomp.hpp"
#include "ekr/families.hpp"
#include "ekr/gbalanced.hpp"
#include "ekr/report.hpp"
#include "ekr/solver.hpp"
#include "ekr/verify.hpp"

namespace py = pybind11;
using namespace ekr;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SetFamily family_from_lists(const std::vector<std::vector<std::size_t>>& members, std::size_t n) {
    std::vector<Subset> subsets;
    subsets.reserve(members.size());
    for (const auto& m : members) subsets.push_back(Subset::from_indices(n, m));
    return canonicalize(std::move(subsets), GroundSet::points(n));
}

IntersectionRule make_rule(std::size_t t, const std::string& mode, const std::optional<AmbientGraph>& ambient) {
    if (mode == "element") return IntersectionRule::element(t);
    if (mode != "vertex") throw Error("mode must be 'element' or 'vertex'");
    if (!ambient) throw Error("vertex mode needs an ambient structure");
    return IntersectionRule::vertex(t, *ambient);
}

std::vector<std::size_t> cover_indices(const SetFamily& family, const DecompositionResult& d) {
    std::vector<std::size_t> out;
    for (const auto& b : d.blocks) {
        auto i = family.find(b);
        if (!i) throw Error("cover block " + format_subset(b, d.ambient.ground()) + " is not a member of the family");
        out.push_back(*i);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact EKR verification engine";
    m.attr("__version__") = EKR_VERSION;

    auto error = py::register_exception<Error>(m, "EkrError", PyExc_ValueError);
    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", error.ptr());
    py::register_exception<DegenerateFamily>(m, "DegenerateFamily", error.ptr());
    py::register_exception<NecessaryConditionFails>(m, "NecessaryConditionFails", error.ptr());

    py::class_<AmbientGraph>(m, "Ambient")
        .def_static("complete", &AmbientGraph::complete, py::arg("n"))
        .def_static("complete_bipartite", &AmbientGraph::complete_bipartite, py::arg("a"), py::arg("b"))
        .def_static("complete_uniform", &AmbientGraph::complete_uniform, py::arg("n"), py::arg("r"))
        .def_static("parse", &AmbientGraph::parse, py::arg("descriptor"))
        .def_property_readonly("descriptor", &AmbientGraph::descriptor)
        .def_property_readonly("vertex_count", &AmbientGraph::vertex_count)
        .def_property_readonly("labels", [](const AmbientGraph& a) { return a.ground().labels(); })
        .def("edge_index", &AmbientGraph::edge_index, py::arg("vertices"))
        .def("edge_vertices", &AmbientGraph::edge_vertices, py::arg("index"))
        .def("__eq__", [](const AmbientGraph& a, const AmbientGraph& b) { return a == b; })
        .def("__repr__", [](const AmbientGraph& a) { return "Ambient('" + a.descriptor() + "')"; });

    py::class_<SetFamily>(m, "Family")
        .def(py::init(&family_from_lists), py::arg("members"), py::arg("n"),
             "Family over points 0..n-1 from member index lists (deduplicated, canonical order).")
        .def("__len__", &SetFamily::size)
        .def("__eq__", [](const SetFamily& a, const SetFamily& b) { return a == b; })
        .def_property_readonly("labels", [](const SetFamily& f) { return f.ground().labels(); })
        .def_property_readonly("uniform_size", &SetFamily::uniform_size)
        .def("members", &as_index_lists)
        .def("member_labels",
             [](const SetFamily& f, std::vector<std::size_t> indices) { return member_labels(f, indices); },
             py::arg("indices"))
        .def("find",
             [](const SetFamily& f, const std::vector<std::size_t>& member) {
                 return f.find(Subset::from_indices(f.ground().size(), member));
             },
             py::arg("member"))
        .def("star", [](const SetFamily& f, std::size_t x) { return star(f, x); }, py::arg("x"))
        .def("to_fam",
             [](const SetFamily& f) {
                 std::ostringstream os;
                 write_fam(os, f);
                 return os.str();
             })
        .def_static("from_fam",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return read_fam(in);
                    },
                    py::arg("text"))
        .def("__repr__", [](const SetFamily& f) {
            return "Family(" + std::to_string(f.size()) + " members over " + std::to_string(f.ground().size()) + ")";
        });

    m.def(
        "generate",
        [](const std::string& descriptor, std::size_t cap) {
            auto g = generate_family(descriptor, cap);
            return py::make_tuple(g.family, g.ambient);
        },
        py::arg("descriptor"), py::arg("cap") = kDefaultMemberCap,
        "Family from a descriptor such as 'ksub:7,3' or 'cyc:6,3'; returns (family, ambient or None).");
    m.def("k_subsets", &k_subsets, py::arg("n"), py::arg("k"), py::arg("cap") = kDefaultMemberCap);
    m.def("separated_k_subsets", &separated_k_subsets, py::arg("n"), py::arg("k"), py::arg("cap") = kDefaultMemberCap);
    m.def("h_copies",
          [](const AmbientGraph& a, const std::string& pattern, std::size_t cap) {
              return h_copies(a, PatternGraph::builtin(pattern), cap);
          },
          py::arg("ambient"), py::arg("pattern"), py::arg("cap") = kDefaultMemberCap);

    auto opts = [](std::uint64_t budget, std::size_t cap) { return SolverOptions{budget, cap}; };

    m.def(
        "max_intersecting",
        [opts](const SetFamily& f, std::size_t t, const std::string& mode, const std::optional<AmbientGraph>& ambient,
               std::uint64_t budget) {
            auto r = max_intersecting(f, make_rule(t, mode, ambient), opts(budget, kDefaultWitnessCap));
            return py::make_tuple(r.size, r.witness);
        },
        py::arg("family"), py::arg("t") = 1, py::arg("mode") = "element", py::arg("ambient") = py::none(),
        py::arg("budget") = kDefaultNodeBudget, "Returns (size, witness member indices).");
    m.def(
        "enumerate_maximum",
        [opts](const SetFamily& f, std::size_t t, const std::string& mode, const std::optional<AmbientGraph>& ambient,
               std::uint64_t budget, std::size_t witness_cap) {
            auto e = enumerate_maximum(f, make_rule(t, mode, ambient), opts(budget, witness_cap));
            return py::make_tuple(e.size, e.witnesses, e.exhaustive);
        },
        py::arg("family"), py::arg("t") = 1, py::arg("mode") = "element", py::arg("ambient") = py::none(),
        py::arg("budget") = kDefaultNodeBudget, py::arg("witness_cap") = kDefaultWitnessCap,
        "Returns (size, all maximum index lists, exhaustive).");
    m.def(
        "check_ekr",
        [opts](const SetFamily& f, std::size_t t, const std::string& mode, const std::optional<AmbientGraph>& ambient,
               bool strong, std::uint64_t budget, std::size_t witness_cap) {
            auto rule = make_rule(t, mode, ambient);
            auto v = strong ? check_strong_ekr(f, rule, opts(budget, witness_cap)) : check_ekr(f, rule, opts(budget, witness_cap));
            return to_python(to_json(v, f));
        },
        py::arg("family"), py::arg("t") = 1, py::arg("mode") = "element", py::arg("ambient") = py::none(),
        py::arg("strong") = false, py::arg("budget") = kDefaultNodeBudget, py::arg("witness_cap") = kDefaultWitnessCap,
        "EKR verdict as a dict; witnesses are given as member labels.");
    m.def(
        "check_chain",
        [opts](const SetFamily& lower, const SetFamily& upper, bool special, bool identities, std::size_t t,
               std::uint64_t budget) {
            auto rel = inclusion_relation(lower, upper);
            auto rule = IntersectionRule::element(t);
            auto o = opts(budget, kDefaultWitnessCap);
            auto j = to_json(special ? check_special_chain(rel, rule, o) : check_ekr_chain(rel, rule, o));
            if (identities) j["identities"] = to_json(check_counting_identities(rel, rule, o));
            return to_python(j);
        },
        py::arg("lower"), py::arg("upper"), py::arg("special") = false, py::arg("identities") = false, py::arg("t") = 1,
        py::arg("budget") = kDefaultNodeBudget, "Chain verdict for the inclusion relation, as a dict.");
    m.def(
        "check_balanced",
        [](const SetFamily& f, const AmbientGraph& ambient, const std::string& kit, const std::string& cover,
           std::size_t j) {
            auto d = [&] {
                if (cover == "walecki") return walecki(ambient.first());
                if (cover == "circle") return circle_factorization(ambient.first());
                if (cover == "shift") return bipartite_shift_matchings(ambient.first());
                if (cover == "unions") {
                    bool bipartite = ambient.descriptor().rfind("Knn", 0) == 0;
                    return consecutive_unions(bipartite ? bipartite_shift_matchings(ambient.first())
                                                        : circle_factorization(ambient.first()),
                                              true);
                }
                throw Error("cover must be walecki, circle, shift or unions");
            }();
            auto idx = cover_indices(f, d);
            auto v = check_g_balanced(make_kit(kit, ambient, f.ground()), f, idx, j, IntersectionRule::element(1));
            return to_python(to_json(v, f, idx));
        },
        py::arg("family"), py::arg("ambient"), py::arg("kit"), py::arg("cover"), py::arg("j"));
    m.def(
        "decompose",
        [](const AmbientGraph& a, const std::string& pattern, std::uint64_t budget) {
            return to_python(to_json(exact_cover_decomposition(a, PatternGraph::builtin(pattern), budget)));
        },
        py::arg("ambient"), py::arg("pattern"), py::arg("budget") = kDefaultCoverBudget);
    m.def("walecki", [](std::size_t n) { return to_python(to_json(walecki(n))); }, py::arg("n"));
    m.def("circle_factorization", [](std::size_t n) { return to_python(to_json(circle_factorization(n))); }, py::arg("n"));
}
