#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ekr/chains.hpp"
#include "ekr/decomp.hpp"
#include "ekr/families.hpp"
#include "ekr/gbalanced.hpp"
#include "ekr/report.hpp"
#include "ekr/solver.hpp"
#include "ekr/verify.hpp"

namespace {

using namespace ekr;

constexpr int kPass = 0, kUsage = 1, kFail = 2, kUnknown = 3;

struct Options {
    std::size_t t = 1;
    std::string mode = "element";
    std::string ambient;
    bool strong = false;
    std::size_t cap = kDefaultMemberCap;
    std::uint64_t budget = kDefaultNodeBudget;
    std::size_t witness_cap = kDefaultWitnessCap;
    unsigned threads = 1;
    bool json = false;
    std::string out;
};

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json verdict;
    std::vector<std::pair<std::string, std::string>> rows;
    int code = kPass;
};

struct Loaded {
    std::optional<AmbientGraph> ambient;
    SetFamily family;
};

std::string fnv1a(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

Json describe_input(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return Json{{"file", arg}, {"fnv1a64", fnv1a(arg)}};
    return Json{{"descriptor", arg}};
}

Loaded load_family(const std::string& arg, const Options& o) {
    if (std::filesystem::is_regular_file(arg)) {
        auto fam = load_fam(arg);
        std::optional<AmbientGraph> amb;
        if (!o.ambient.empty()) {
            amb = AmbientGraph::parse(o.ambient);
            if (amb->ground().labels() != fam.ground().labels())
                throw Error("--ambient " + o.ambient + " does not match the ground set of " + arg);
        }
        return {amb, std::move(fam)};
    }
    auto g = generate_family(arg, o.cap);
    return {g.ambient, std::move(g.family)};
}

IntersectionRule make_rule(const Options& o, const Loaded& f) {
    if (o.mode == "element") return IntersectionRule::element(o.t);
    if (!f.ambient) throw Error("vertex mode needs an ambient structure: use a graph descriptor or --ambient");
    return IntersectionRule::vertex(o.t, *f.ambient);
}

SolverOptions solver_options(const Options& o) { return {o.budget, o.witness_cap}; }

std::string join_labels(const std::vector<std::string>& labels) {
    std::string s;
    for (const auto& l : labels) s += (s.empty() ? "" : " ") + l;
    return s;
}

void emit(const Report& r, const Options& o, double seconds) {
    Json j;
    j["command"] = r.command;
    j["version"] = EKR_VERSION;
    j["inputs"] = r.inputs;
    j["limits"] = Json{{"t", o.t},
                       {"mode", o.mode},
                       {"member_cap", o.cap},
                       {"node_budget", o.budget},
                       {"witness_cap", o.witness_cap},
                       {"threads", o.threads}};
    j["verdict"] = r.verdict;
    j["exit_code"] = r.code;
    j["timing_seconds"] = seconds;
    if (o.json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::size_t width = 0;
        for (const auto& [k, v] : r.rows) width = std::max(width, k.size());
        for (const auto& [k, v] : r.rows) std::cout << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "time" << std::fixed << std::setprecision(3)
                  << seconds << " s\n";
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw Error("cannot write " + o.out);
        f << j.dump(2) << '\n';
    }
}

std::string family_row(const std::string& arg, const SetFamily& f) {
    return arg + " (" + std::to_string(f.size()) + " members over " + std::to_string(f.ground().size()) + " elements)";
}

int exit_for(EkrStatus s) {
    switch (s) {
        case EkrStatus::EKR:
        case EkrStatus::StrongEKR: return kPass;
        case EkrStatus::NotEKR:
        case EkrStatus::EkrNotStrong: return kFail;
        case EkrStatus::Unknown: return kUnknown;
    }
    return kUnknown;
}

Report cmd_verify(const std::string& arg, const Options& o) {
    auto f = load_family(arg, o);
    auto rule = make_rule(o, f);
    auto v = o.strong ? check_strong_ekr(f.family, rule, solver_options(o)) : check_ekr(f.family, rule, solver_options(o));
    Report r;
    r.inputs["family"] = describe_input(arg);
    r.inputs["strong"] = o.strong;
    r.verdict = to_json(v, f.family);
    r.code = exit_for(v.status);
    r.rows = {{"family", family_row(arg, f.family)},
              {"rule", "t=" + std::to_string(o.t) + ", " + o.mode + " mode"},
              {"status", to_string(v.status)},
              {"star size", std::to_string(v.star_size)},
              {"max size", std::to_string(v.max_size)}};
    if (o.strong && v.status != EkrStatus::NotEKR)
        r.rows.emplace_back("maxima", std::to_string(v.witnesses.size()) + " examined" +
                                          (v.exhaustive ? " (exhaustive)" : " (not exhaustive)"));
    if (v.counterexample)
        r.rows.emplace_back("counterexample", join_labels(member_labels(f.family, *v.counterexample)));
    else if (v.non_star_maximum)
        r.rows.emplace_back("non-star max", join_labels(member_labels(f.family, *v.non_star_maximum)));
    else if (!v.witnesses.empty())
        r.rows.emplace_back("witness", join_labels(member_labels(f.family, v.witnesses.front())));
    if (v.unequal_stars)
        r.rows.emplace_back("unequal stars", std::to_string(v.unequal_stars->first.second) + " vs " +
                                                 std::to_string(v.unequal_stars->second.second));
    if (!v.note.empty()) r.rows.emplace_back("note", v.note);
    r.rows.emplace_back("nodes", std::to_string(v.node_count));
    return r;
}

Report cmd_chain(const std::string& lower_arg, const std::string& upper_arg, bool inclusion, const std::string& rel_path,
                 bool special, bool identities, const Options& o) {
    if (inclusion == !rel_path.empty()) throw CLI::ValidationError("chain", "give exactly one of --inclusion and --rel");
    auto lower = load_family(lower_arg, o);
    auto upper = load_family(upper_arg, o);
    auto rule = make_rule(o, upper);
    auto rel = [&] {
        if (inclusion) return inclusion_relation(lower.family, upper.family);
        std::ifstream in(rel_path);
        if (!in) throw Error("cannot read " + rel_path);
        return read_rel(in, lower.family, upper.family);
    }();
    auto v = special ? check_special_chain(rel, rule, solver_options(o)) : check_ekr_chain(rel, rule, solver_options(o));
    Report r;
    r.inputs["lower"] = describe_input(lower_arg);
    r.inputs["upper"] = describe_input(upper_arg);
    r.inputs["relation"] = inclusion ? Json("inclusion") : describe_input(rel_path);
    r.inputs["special"] = special;
    r.inputs["identities"] = identities;
    r.verdict = to_json(v);
    bool ok = special ? v.is_special : v.is_chain;
    r.rows = {{"lower", family_row(lower_arg, lower.family)},
              {"upper", family_row(upper_arg, upper.family)},
              {"relations", std::to_string(rel.relation_count())},
              {"is_chain", v.is_chain ? "true" : "false"}};
    if (special) r.rows.emplace_back("is_special", v.is_special ? "true" : "false");
    if (v.fiber_size) r.rows.emplace_back("fiber size", std::to_string(*v.fiber_size));
    if (v.degree_sum) r.rows.emplace_back("degree sum", std::to_string(*v.degree_sum));
    for (const auto& f : v.failures) r.rows.emplace_back("failed " + f.condition, f.witness);
    if (identities) {
        auto c = check_counting_identities(rel, rule, solver_options(o));
        r.verdict["identities"] = to_json(c);
        for (const char* id : {"i", "ii", "iii", "iv"})
            r.rows.emplace_back(std::string("identity (") + id + ")", c.holds(id) ? "holds" : "fails");
        ok = ok && c.all_hold;
    }
    r.code = v.unknown ? kUnknown : ok ? kPass : kFail;
    return r;
}

std::vector<Subset> cover_blocks(const std::string& spec, const Loaded& f, std::size_t& file_j) {
    auto need = [&](AmbientKind kind) -> const AmbientGraph& {
        if (!f.ambient || f.ambient->kind() != kind) throw Error("cover '" + spec + "' does not fit this family's ambient");
        return *f.ambient;
    };
    if (spec == "walecki") return walecki(need(AmbientKind::complete).first()).blocks;
    if (spec == "circle") return circle_factorization(need(AmbientKind::complete).first()).blocks;
    if (spec == "shift") {
        const auto& a = need(AmbientKind::complete_bipartite);
        if (a.first() != a.second()) throw Error("shift matchings need K_{n,n}");
        return bipartite_shift_matchings(a.first()).blocks;
    }
    if (spec == "unions") {
        if (!f.ambient) throw Error("cover 'unions' needs an ambient-backed family");
        const auto& a = *f.ambient;
        if (a.kind() == AmbientKind::complete) return consecutive_unions(circle_factorization(a.first()), true).blocks;
        if (a.kind() == AmbientKind::complete_bipartite && a.first() == a.second())
            return consecutive_unions(bipartite_shift_matchings(a.first()), true).blocks;
        throw Error("cover 'unions' needs K_n (n even) or K_{n,n}");
    }
    std::ifstream in(spec);
    if (!in) throw Error("cover must be walecki, circle, shift, unions or a readable .fam file: " + spec);
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    SetFamily blocks = [&] {
        if (first.rfind("j=", 0) == 0) {
            auto [j, fam] = read_decomposition(in);
            file_j = j;
            return fam;
        }
        return read_fam(in);
    }();
    return {blocks.members().begin(), blocks.members().end()};
}

Report cmd_balanced(const std::string& fam_arg, const std::string& group_arg, const std::string& cover_arg,
                    std::size_t j, const Options& o) {
    auto f = load_family(fam_arg, o);
    auto rule = make_rule(o, f);
    auto action = [&] {
        if (std::filesystem::is_regular_file(group_arg)) {
            std::ifstream in(group_arg);
            return read_gen(in, f.family.ground());
        }
        return make_kit(group_arg, f.ambient, f.family.ground());
    }();
    std::size_t file_j = 0;
    auto blocks = cover_blocks(cover_arg, f, file_j);
    std::vector<std::size_t> cover;
    for (const auto& b : blocks) {
        if (b.universe_size() != f.family.ground().size()) throw Error("cover is over a different ground set");
        auto idx = f.family.find(b);
        if (!idx) throw Error("cover block " + format_subset(b, f.family.ground()) + " is not a member of the family");
        cover.push_back(*idx);
    }
    auto v = check_g_balanced(action, f.family, cover, j, rule, solver_options(o));
    Report r;
    r.inputs["family"] = describe_input(fam_arg);
    r.inputs["group"] = describe_input(group_arg);
    r.inputs["cover"] = describe_input(cover_arg);
    r.inputs["j"] = j;
    r.verdict = to_json(v, f.family, cover);
    r.code = v.passed() ? kPass : kFail;
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    r.rows = {{"family", family_row(fam_arg, f.family)},
              {"group", group_arg + " (" + std::to_string(action.generators().size()) + " generators)"},
              {"cover", cover_arg + " (" + std::to_string(v.r) + " blocks), j=" + std::to_string(j)},
              {"transitive on ground", yn(v.transitive_on_ground)},
              {"family closed", yn(v.family_closed)},
              {"transitive on family", yn(v.transitive_on_family)},
              {"cover multiplicity", yn(v.cover_multiplicity_ok)},
              {"cover clique <= j", yn(v.cover_clique_ok) + " (max " + std::to_string(v.cover_max_intersecting) + ")"},
              {"balanced", yn(v.passed())}};
    if (file_j != 0 && file_j != j)
        r.rows.emplace_back("note", "cover file header says j=" + std::to_string(file_j));
    if (v.multiplicity_witness)
        r.rows.emplace_back("multiplicity witness", f.family.ground().label(v.multiplicity_witness->first) + " lies in " +
                                                        std::to_string(v.multiplicity_witness->second) + " blocks");
    if (v.clique_witness) {
        std::vector<std::size_t> members;
        for (auto p : *v.clique_witness) members.push_back(cover[p]);
        r.rows.emplace_back("clique witness", join_labels(member_labels(f.family, members)));
    }
    return r;
}

PatternGraph resolve_pattern(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return load_pat(arg);
    return PatternGraph::builtin(arg);
}

Report cmd_decompose(const std::string& ambient_arg, const std::string& pattern_arg, std::uint64_t budget,
                     const Options& o) {
    auto ambient = AmbientGraph::parse(ambient_arg);
    auto pattern = resolve_pattern(pattern_arg);
    Report r;
    r.inputs["ambient"] = ambient_arg;
    r.inputs["pattern"] = describe_input(pattern_arg);
    r.inputs["cover_budget"] = budget;
    r.rows = {{"ambient", ambient_arg + " (" + std::to_string(ambient.ground().size()) + " elements)"},
              {"pattern", pattern_arg + " (" + std::to_string(pattern.edge_count()) + " edges)"}};
    try {
        auto d = exact_cover_decomposition(ambient, pattern, budget);
        r.verdict = to_json(d);
        r.code = d.outcome == DecompositionOutcome::found && d.verified ? kPass : kFail;
        r.rows.emplace_back("outcome", to_string(d.outcome));
        r.rows.emplace_back("blocks", std::to_string(d.blocks.size()));
        r.rows.emplace_back("verified", d.verified ? "yes" : "no");
        r.rows.emplace_back("nodes", std::to_string(d.node_count));
        if (d.outcome == DecompositionOutcome::found && !o.out.empty()) {
            std::ofstream f(o.out);
            if (!f) throw Error("cannot write " + o.out);
            write_decomposition(f, d);
            r.rows.emplace_back("written", o.out);
        }
    } catch (const NecessaryConditionFails& e) {
        r.verdict = Json{{"outcome", "necessary_condition_fails"}, {"message", e.what()}};
        r.code = kFail;
        r.rows.emplace_back("outcome", e.what());
    }
    return r;
}

Report cmd_ordering(const std::string& arg, const Options& o) {
    auto f = load_family(arg, o);
    auto k = f.family.uniform_size();
    if (!k) throw Error("admissible orderings need a uniform family");
    auto order = find_admissible_ordering(f.family, *k, o.budget);
    Report r;
    r.inputs["family"] = describe_input(arg);
    r.rows = {{"family", family_row(arg, f.family)}, {"window", std::to_string(*k)}};
    if (order) {
        std::vector<std::string> labels;
        for (auto x : *order) labels.push_back(f.family.ground().label(x));
        r.verdict = Json{{"admissible", true}, {"ordering", labels}};
        r.rows.emplace_back("ordering", join_labels(labels));
        r.code = kPass;
    } else {
        r.verdict = Json{{"admissible", false}};
        r.rows.emplace_back("ordering", "none exists");
        r.code = kFail;
    }
    return r;
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    write(f);
}

std::string echo(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        std::string a = argv[i];
        if (a.find_first_of(" \t\"'") != std::string::npos) a = "'" + a + "'";
        s += (i ? " " : "") + a;
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Erdős–Ko–Rado verification engine"};
    app.set_version_flag("--version", std::string(EKR_VERSION));
    app.require_subcommand(1);

    Options o;
    auto solver_flags = [&](CLI::App* sub) {
        sub->add_option("--t", o.t, "Intersection threshold")->check(CLI::PositiveNumber);
        sub->add_option("--mode", o.mode, "Intersection mode")->check(CLI::IsMember({"element", "vertex"}));
        sub->add_option("--ambient", o.ambient, "Ambient descriptor for .fam inputs (Kn:9, Knn:4,4, Kr:7,3)");
        sub->add_option("--cap", o.cap, "Member cap for generated families");
        sub->add_option("--budget", o.budget, "Solver node budget");
        sub->add_option("--witness-cap", o.witness_cap, "Maximum number of maxima enumerated");
        sub->add_option("--threads", o.threads, "Worker cap (searches are single-threaded)")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json, "Print the report as JSON");
        sub->add_option("--out", o.out, "Also write the JSON report to this path");
    };

    std::string family_arg, second_arg, third_arg, rel_path;
    bool inclusion = false, special = false, identities = false;
    std::size_t j = 0;
    std::uint64_t cover_budget = kDefaultCoverBudget;

    auto* gen = app.add_subcommand("generate", "Write a generated family as .fam");
    gen->add_option("family", family_arg, "Family descriptor")->required();
    gen->add_option("--cap", o.cap, "Member cap");
    gen->add_option("--out", o.out, "Output path (default stdout)");

    auto* ver = app.add_subcommand("verify", "Check the EKR (or strong EKR) property");
    ver->add_option("family", family_arg, "Family descriptor or .fam file")->required();
    ver->add_flag("--strong", o.strong, "Check strong EKR");
    solver_flags(ver);

    auto* chn = app.add_subcommand("chain", "Check the EKR-chain conditions of a relation family");
    chn->add_option("lower", family_arg, "Lower family")->required();
    chn->add_option("upper", second_arg, "Upper family")->required();
    chn->add_flag("--inclusion", inclusion, "Use the single inclusion relation");
    chn->add_option("--rel", rel_path, "Relation file (.rel)");
    chn->add_flag("--special", special, "Also check the special-chain conditions");
    chn->add_flag("--identities", identities, "Also check the counting identities");
    solver_flags(chn);

    auto* bal = app.add_subcommand("balanced", "Check the (G, j)-balanced conditions");
    bal->add_option("family", family_arg, "Family descriptor or .fam file")->required();
    bal->add_option("group", second_arg, "Generator kit or .gen file")->required();
    bal->add_option("cover", third_arg, "walecki, circle, shift, unions, or a .fam cover")->required();
    bal->add_option("--j", j, "Cover multiplicity")->required()->check(CLI::PositiveNumber);
    solver_flags(bal);

    auto* dec = app.add_subcommand("decompose", "Search for a decomposition into pattern copies");
    dec->add_option("ambient", family_arg, "Ambient descriptor")->required();
    dec->add_option("pattern", second_arg, "Builtin pattern name or .pat file")->required();
    dec->add_option("--budget", cover_budget, "Exact-cover node budget");
    dec->add_flag("--json", o.json, "Print the report as JSON");
    dec->add_option("--out", o.out, "Write the decomposition (.fam with j= header)");

    auto* ord = app.add_subcommand("ordering", "Search for an admissible cyclic ordering");
    ord->add_option("family", family_arg, "Family descriptor or .fam file")->required();
    solver_flags(ord);

    auto* dim = app.add_subcommand("dimacs", "Export the intersection graph in DIMACS format");
    dim->add_option("family", family_arg, "Family descriptor or .fam file")->required();
    dim->add_option("--t", o.t, "Intersection threshold")->check(CLI::PositiveNumber);
    dim->add_option("--mode", o.mode, "Intersection mode")->check(CLI::IsMember({"element", "vertex"}));
    dim->add_option("--ambient", o.ambient, "Ambient descriptor for .fam inputs");
    dim->add_option("--cap", o.cap, "Member cap");
    dim->add_option("--out", o.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kUsage;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        Report r;
        if (*gen) {
            auto f = load_family(family_arg, o);
            write_to(o.out, [&](std::ostream& os) { write_fam(os, f.family); });
            return kPass;
        }
        if (*dim) {
            auto f = load_family(family_arg, o);
            auto ig = build_intersection_graph(f.family, make_rule(o, f));
            write_to(o.out, [&](std::ostream& os) { write_dimacs(os, ig.graph); });
            return kPass;
        }
        if (*ver) r = cmd_verify(family_arg, o);
        if (*chn) r = cmd_chain(family_arg, second_arg, inclusion, rel_path, special, identities, o);
        if (*bal) r = cmd_balanced(family_arg, second_arg, third_arg, j, o);
        if (*ord) r = cmd_ordering(family_arg, o);
        if (*dec) {
            r = cmd_decompose(family_arg, second_arg, cover_budget, o);
            o.out.clear();  // already used for the decomposition itself
        }
        r.command = echo(argc, argv);
        emit(r, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return r.code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExhausted& e) {
        std::cerr << "unknown: " << e.what() << '\n';
        return kUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
