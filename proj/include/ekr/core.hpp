#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ekr {

/// Base class of every error the engine raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a search exceeds its node budget. Never carries a partial answer.
class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(std::uint64_t nodes)
        : Error("budget exhausted after " + std::to_string(nodes) + " nodes"), nodes_(nodes) {}
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::uint64_t nodes_;
};

inline constexpr std::size_t kMaxUniverse = 4096;

class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> labels);

    /// Points labeled "0".."n-1".
    static GroundSet points(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    friend bool operator==(const GroundSet&, const GroundSet&) = default;

private:
    std::vector<std::string> labels_;
};

/// Fixed-universe bit vector. Bit i lives in word i / 64 at position i % 64.
class Subset {
public:
    Subset() = default;
    explicit Subset(std::size_t universe_size);

    static Subset from_indices(std::size_t universe_size, std::span<const std::size_t> indices);
    static Subset from_indices(std::size_t universe_size, std::initializer_list<std::size_t> indices);

    std::size_t universe_size() const noexcept { return universe_; }
    std::size_t count() const noexcept;
    bool empty() const noexcept;
    bool test(std::size_t i) const;
    void set(std::size_t i);
    void reset(std::size_t i);

    bool is_subset_of(const Subset& other) const;
    Subset operator&(const Subset& other) const;
    Subset operator|(const Subset& other) const;

    std::vector<std::size_t> indices() const;
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::size_t hash() const noexcept;

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    void check_same_universe(const Subset& other) const;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SubsetHash {
    std::size_t operator()(const Subset& s) const noexcept { return s.hash(); }
};

/// Canonical order: at the lowest index where two members differ, the one
/// containing that index comes first. Equal-size members therefore sort like
/// their ascending index lists ({0,1} < {0,2} < {1,2}).
bool canonical_less(const Subset& a, const Subset& b);

/// |a ∩ b|. Throws Error("universe mismatch") when universes differ.
std::size_t intersection_size(const Subset& a, const Subset& b);

/// Deduplicated, canonically ordered, immutable list of members over one ground set.
class SetFamily {
public:
    SetFamily() = default;

    const GroundSet& ground() const noexcept { return ground_; }
    std::span<const Subset> members() const noexcept { return members_; }
    const Subset& member(std::size_t i) const { return members_.at(i); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::optional<std::size_t> uniform_size() const noexcept { return uniform_size_; }

    /// Index of a member, if present (binary search in canonical order).
    std::optional<std::size_t> find(const Subset& s) const;

    /// Subfamily picked by member indices, canonicalized.
    SetFamily select(std::span<const std::size_t> indices) const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;
    friend SetFamily canonicalize(std::vector<Subset> members, GroundSet ground);

private:
    GroundSet ground_;
    std::vector<Subset> members_;
    std::optional<std::size_t> uniform_size_;
};

SetFamily canonicalize(std::vector<Subset> members, GroundSet ground);

/// Subfamily of members containing element x.
SetFamily star(const SetFamily& family, std::size_t x);

/// Members as sorted index lists; handy for tests and reports.
std::vector<std::vector<std::size_t>> as_index_lists(const SetFamily& family);

std::string format_subset(const Subset& s, const GroundSet& ground);

// ".fam" text format.
void write_fam(std::ostream& os, const SetFamily& family);
SetFamily read_fam(std::istream& is);
void save_fam(const std::string& path, const SetFamily& family);
SetFamily load_fam(const std::string& path);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Calls fn(span of k ascending indices) for every k-subset of [0, n) in lexicographic order.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        fn(std::span<const std::size_t>(c));
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace ekr
