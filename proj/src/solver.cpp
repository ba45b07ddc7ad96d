#include "ekr/solver.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ekr {

IntersectionRule IntersectionRule::element(std::size_t t) {
    if (t < 1) throw Error("intersection threshold t must be at least 1");
    IntersectionRule r;
    r.t_ = t;
    return r;
}

IntersectionRule IntersectionRule::vertex(std::size_t t, AmbientGraph ambient) {
    if (t < 1) throw Error("intersection threshold t must be at least 1");
    IntersectionRule r;
    r.t_ = t;
    r.mode_ = IntersectionMode::vertex;
    r.ambient_ = std::move(ambient);
    return r;
}

Subset IntersectionRule::key(const Subset& member) const {
    if (mode_ == IntersectionMode::element) return member;
    return vertex_set_of(*ambient_, member);
}

std::size_t IntersectionRule::key_universe(std::size_t ground_size) const {
    return mode_ == IntersectionMode::element ? ground_size : ambient_->vertex_count();
}

bool IntersectionRule::related(const Subset& a, const Subset& b) const {
    if (mode_ == IntersectionMode::element) return intersection_size(a, b) >= t_;
    return intersection_size(key(a), key(b)) >= t_;
}

BitGraph::BitGraph(std::size_t order) : n_(order), w_((order + 63) / 64), bits_(order * ((order + 63) / 64), 0) {}

void BitGraph::add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) throw Error("vertex out of range");
    if (i == j) return;
    bits_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64);
    bits_[j * w_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

std::size_t BitGraph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (auto w : row(i)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

std::size_t BitGraph::edge_count() const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += degree(i);
    return s / 2;
}

IntersectionGraph build_intersection_graph(std::span<const Subset> members, const IntersectionRule& rule) {
    if (members.size() > kMaxGraphOrder)
        throw Error("intersection graph of order " + std::to_string(members.size()) + " exceeds the bit-matrix cap");
    std::vector<Subset> keys;
    keys.reserve(members.size());
    for (const auto& m : members) keys.push_back(rule.key(m));
    IntersectionGraph ig{BitGraph(members.size()), rule.t(), rule.mode()};
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (intersection_size(keys[i], keys[j]) >= rule.t()) ig.graph.add_edge(i, j);
    return ig;
}

IntersectionGraph build_intersection_graph(const SetFamily& family, const IntersectionRule& rule) {
    return build_intersection_graph(family.members(), rule);
}

namespace {

/// Branch and bound over a degeneracy-ordered copy of the graph. Greedy sequential
/// colouring of the candidate set, with re-numbering of vertices that would get a
/// branching colour, bounds the clique reachable from each branch.
class CliqueSearch {
public:
    CliqueSearch(const BitGraph& g, std::uint64_t budget) : budget_(budget) {
        const auto n = g.order();
        peel_order(g);
        std::vector<std::size_t> pos(n);
        for (std::size_t p = 0; p < n; ++p) pos[perm_[p]] = p;
        g_ = BitGraph(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (g.adjacent(i, j)) g_.add_edge(pos[i], pos[j]);
        w_ = g_.words_per_row();
        levels_.assign((n + 2) * std::max<std::size_t>(w_, 1), 0);
        scratch_u_.resize(w_);
        scratch_q_.resize(w_);
        members_.resize(n + 2);
        no_free_.assign(n, 0);
        order_.resize(n + 2);
        color_.resize(n + 2);
    }

    CliqueResult run_max(std::span<const std::size_t> incumbent) {
        maximize_ = true;
        best_ = incumbent.size();
        std::vector<std::size_t> pos(perm_.size());
        for (std::size_t p = 0; p < perm_.size(); ++p) pos[perm_[p]] = p;
        best_clique_.clear();
        for (auto v : incumbent) best_clique_.push_back(pos.at(v));
        if (g_.order() > 0) {
            fill_root();
            expand(0);
        }
        CliqueResult r;
        r.size = best_;
        r.witness = to_original(best_clique_);
        r.node_count = nodes_;
        return r;
    }

    std::uint64_t run_enumerate(std::size_t target, const std::function<bool(std::span<const std::size_t>)>& visit) {
        maximize_ = false;
        target_ = target;
        visit_ = &visit;
        if (target == 0 || g_.order() == 0) {
            if (target == 0) visit(std::span<const std::size_t>{});
            return nodes_;
        }
        fill_root();
        expand(0);
        return nodes_;
    }

private:
    std::uint64_t* level(std::size_t depth) { return levels_.data() + depth * w_; }

    void fill_root() {
        auto* p = level(0);
        for (std::size_t i = 0; i < g_.order(); ++i) p[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    std::vector<std::size_t> to_original(const std::vector<std::size_t>& clique) const {
        std::vector<std::size_t> out;
        out.reserve(clique.size());
        for (auto v : clique) out.push_back(perm_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Degeneracy order: repeatedly remove the smallest-index vertex of minimum
    /// remaining degree; vertices appear in removal order. O(n^2).
    void peel_order(const BitGraph& g) {
        const auto n = g.order();
        std::vector<std::size_t> deg(n);
        for (std::size_t i = 0; i < n; ++i) deg[i] = g.degree(i);
        std::vector<char> gone(n, 0);
        perm_.clear();
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t v = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!gone[i] && (v == n || deg[i] < deg[v])) v = i;
            gone[v] = 1;
            perm_.push_back(v);
            auto r = g.row(v);
            for (std::size_t wi = 0; wi < r.size(); ++wi)
                for (auto word = r[wi]; word != 0; word &= word - 1)
                    --deg[wi * 64 + static_cast<std::size_t>(std::countr_zero(word))];
        }
    }

    bool adjacent_to(const std::uint64_t* row, std::uint32_t x) const { return (row[x / 64] >> (x % 64)) & 1; }

    /// Tries to move each still-uncoloured vertex into one of the classes 1..classes,
    /// relocating its single conflicting vertex to another class when needed.
    void renumber(std::uint64_t* u, std::size_t classes) {
        ++generation_;  // no_free_[x] == generation_: x conflicts with every class
        for (std::size_t wi = 0; wi < w_; ++wi) {
            for (auto word = u[wi]; word != 0; word &= word - 1) {
                const auto v = static_cast<std::uint32_t>(wi * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                const auto rv = g_.row(v).data();
                for (std::size_t k1 = 1; k1 <= classes; ++k1) {
                    auto& c1 = members_[k1];
                    std::size_t conflicts = 0, at = 0;
                    for (std::size_t i = 0; i < c1.size() && conflicts < 2; ++i)
                        if (adjacent_to(rv, c1[i])) {
                            ++conflicts;
                            at = i;
                        }
                    if (conflicts > 1) continue;
                    if (conflicts == 1) {
                        const auto x = c1[at];
                        if (no_free_[x] == generation_) continue;
                        const auto rx = g_.row(x).data();
                        std::size_t k2 = 0;
                        for (std::size_t c = 1; c <= classes && k2 == 0; ++c) {
                            if (c == k1) continue;
                            bool free = true;
                            for (auto y : members_[c])
                                if (adjacent_to(rx, y)) {
                                    free = false;
                                    break;
                                }
                            if (free) k2 = c;
                        }
                        if (k2 == 0) {
                            no_free_[x] = generation_;
                            continue;
                        }
                        ++generation_;
                        c1[at] = c1.back();
                        c1.pop_back();
                        members_[k2].push_back(x);
                    }
                    c1.push_back(v);
                    u[wi] &= ~(std::uint64_t{1} << (v % 64));
                    break;
                }
            }
        }
    }

    void expand(std::size_t depth) {
        if (++nodes_ > budget_) throw BudgetExhausted(nodes_);
        std::uint64_t* p = level(depth);
        auto& ord = order_[depth];
        auto& col = color_[depth];
        ord.clear();
        col.clear();

        const std::size_t have = clique_.size();
        std::size_t kmin = 1;
        if (maximize_) {
            if (best_ + 1 > have) kmin = best_ + 1 - have;
        } else if (target_ > have) {
            kmin = target_ - have;
        }

        auto* u = scratch_u_.data();
        auto* q = scratch_q_.data();
        std::copy(p, p + w_, u);
        std::size_t color = 0;
        std::size_t first_word = 0;
        bool renumbered = false;
        while (true) {
            while (first_word < w_ && u[first_word] == 0) ++first_word;
            if (first_word == w_) break;
            if (color + 1 == kmin && !renumbered && color > 1) {
                renumbered = true;
                renumber(u, color);
                continue;
            }
            ++color;
            std::vector<std::uint32_t>* cls = color < kmin ? &members_[color] : nullptr;
            if (cls) cls->clear();
            std::copy(u, u + w_, q);
            for (std::size_t wi = first_word; wi < w_;) {
                if (q[wi] == 0) {
                    ++wi;
                    continue;
                }
                auto v = wi * 64 + static_cast<std::size_t>(std::countr_zero(q[wi]));
                auto bit = std::uint64_t{1} << (v % 64);
                u[wi] &= ~bit;
                q[wi] &= ~bit;
                auto r = g_.row(v);
                for (std::size_t k = wi; k < w_; ++k) q[k] &= ~r[k];
                if (cls) {
                    cls->push_back(static_cast<std::uint32_t>(v));
                } else {
                    ord.push_back(static_cast<std::uint32_t>(v));
                    col.push_back(static_cast<std::uint32_t>(color));
                }
            }
        }

        std::uint64_t* child = level(depth + 1);
        for (std::size_t i = ord.size(); i-- > 0;) {
            const std::size_t bound = clique_.size() + col[i];
            if (maximize_ ? bound <= best_ : bound < target_) return;
            const auto v = ord[i];
            clique_.push_back(v);
            auto r = g_.row(v);
            bool any = false;
            for (std::size_t k = 0; k < w_; ++k) {
                child[k] = p[k] & r[k];
                any |= child[k] != 0;
            }
            if (maximize_) {
                if (!any) {
                    if (clique_.size() > best_) {
                        best_ = clique_.size();
                        best_clique_ = clique_;
                    }
                } else {
                    expand(depth + 1);
                }
            } else if (clique_.size() == target_) {
                auto orig = to_original(clique_);
                if (!(*visit_)(orig)) stopped_ = true;
            } else if (any) {
                expand(depth + 1);
            }
            clique_.pop_back();
            p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
            if (stopped_) return;
        }
    }

    BitGraph g_;
    std::vector<std::size_t> perm_;
    std::size_t w_ = 0;
    std::vector<std::uint64_t> levels_;
    std::vector<std::uint64_t> scratch_u_, scratch_q_;
    std::vector<std::vector<std::uint32_t>> members_;  // colour classes below kmin, for re-numbering
    std::vector<std::uint64_t> no_free_;
    std::uint64_t generation_ = 0;
    std::vector<std::vector<std::uint32_t>> order_, color_;
    std::vector<std::size_t> clique_, best_clique_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool maximize_ = true;
    std::size_t best_ = 0;
    std::size_t target_ = 0;
    const std::function<bool(std::span<const std::size_t>)>* visit_ = nullptr;
    bool stopped_ = false;
};

}  // namespace

CliqueResult max_clique(const BitGraph& g, const SolverOptions& options, std::span<const std::size_t> incumbent) {
    for (std::size_t a = 0; a < incumbent.size(); ++a) {
        if (incumbent[a] >= g.order()) throw Error("incumbent vertex out of range");
        for (std::size_t b = a + 1; b < incumbent.size(); ++b)
            if (!g.adjacent(incumbent[a], incumbent[b])) throw Error("incumbent is not a clique");
    }
    CliqueSearch s(g, options.node_budget);
    return s.run_max(incumbent);
}

std::uint64_t for_each_clique_of_size(const BitGraph& g, std::size_t size,
                                      const std::function<bool(std::span<const std::size_t>)>& visit,
                                      const SolverOptions& options) {
    CliqueSearch s(g, options.node_budget);
    return s.run_enumerate(size, visit);
}

CliqueResult max_intersecting(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options,
                              std::span<const std::size_t> incumbent) {
    if (family.empty()) throw Error("max_intersecting needs a nonempty family");
    auto ig = build_intersection_graph(family, rule);
    return max_clique(ig.graph, options, incumbent);
}

Enumeration enumerate_maximum(const SetFamily& family, const IntersectionRule& rule, const SolverOptions& options) {
    if (family.empty()) throw Error("enumerate_maximum needs a nonempty family");
    auto ig = build_intersection_graph(family, rule);
    auto best = max_clique(ig.graph, options);
    Enumeration e;
    e.size = best.size;
    SolverOptions rest = options;
    rest.node_budget = options.node_budget > best.node_count ? options.node_budget - best.node_count : 0;
    e.node_count = best.node_count;
    e.node_count += for_each_clique_of_size(
        ig.graph, best.size,
        [&](std::span<const std::size_t> c) {
            if (e.witnesses.size() == options.witness_cap) {
                e.exhaustive = false;
                return false;
            }
            e.witnesses.emplace_back(c.begin(), c.end());
            return true;
        },
        rest);
    std::sort(e.witnesses.begin(), e.witnesses.end());
    return e;
}

bool is_intersecting(std::span<const Subset> members, std::span<const std::size_t> indices, const IntersectionRule& rule) {
    std::vector<Subset> keys;
    keys.reserve(indices.size());
    for (auto i : indices) {
        if (i >= members.size()) throw Error("member index out of range");
        keys.push_back(rule.key(members[i]));
    }
    for (std::size_t a = 0; a < keys.size(); ++a)
        for (std::size_t b = a + 1; b < keys.size(); ++b)
            if (intersection_size(keys[a], keys[b]) < rule.t()) return false;
    return true;
}

bool is_intersecting(const SetFamily& family, std::span<const std::size_t> indices, const IntersectionRule& rule) {
    return is_intersecting(family.members(), indices, rule);
}

void write_dimacs(std::ostream& os, const BitGraph& g) {
    os << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = i + 1; j < g.order(); ++j)
            if (g.adjacent(i, j)) os << "e " << i + 1 << ' ' << j + 1 << '\n';
}

BitGraph read_dimacs(std::istream& is) {
    BitGraph g;
    bool have_header = false;
    std::size_t declared_edges = 0;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            std::size_t n = 0;
            if (!(ls >> fmt >> n >> declared_edges) || (fmt != "edge" && fmt != "col"))
                throw Error("DIMACS: malformed problem line");
            g = BitGraph(n);
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw Error("DIMACS: edge before problem line");
            std::size_t a = 0, b = 0;
            if (!(ls >> a >> b) || a < 1 || b < 1 || a > g.order() || b > g.order())
                throw Error("DIMACS: malformed edge line");
            g.add_edge(a - 1, b - 1);
        } else {
            throw Error("DIMACS: unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw Error("DIMACS: missing problem line");
    return g;
}

}  // namespace ekr
