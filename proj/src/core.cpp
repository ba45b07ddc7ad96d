#include "ekr/core.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace ekr {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error("ground set must have at least one element");
    if (labels_.size() > kMaxUniverse)
        throw Error("ground set of size " + std::to_string(labels_.size()) + " exceeds " +
                    std::to_string(kMaxUniverse));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty() || l.find_first_of(" \t\r\n") != std::string::npos)
            throw Error("ground label '" + l + "' is empty or contains whitespace");
        if (!seen.insert(l).second) throw Error("duplicate ground label '" + l + "'");
    }
}

GroundSet GroundSet::points(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
}

Subset::Subset(std::size_t universe_size)
    : universe_(universe_size), words_((universe_size + 63) / 64, 0) {
    if (universe_size > kMaxUniverse) throw Error("universe too large");
}

Subset Subset::from_indices(std::size_t universe_size, std::span<const std::size_t> indices) {
    Subset s(universe_size);
    for (auto i : indices) s.set(i);
    return s;
}

Subset Subset::from_indices(std::size_t universe_size, std::initializer_list<std::size_t> indices) {
    return from_indices(universe_size, std::span<const std::size_t>(indices.begin(), indices.size()));
}

std::size_t Subset::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Subset::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Subset::test(std::size_t i) const {
    if (i >= universe_) throw Error("element index " + std::to_string(i) + " out of range");
    return (words_[i / 64] >> (i % 64)) & 1U;
}

void Subset::set(std::size_t i) {
    if (i >= universe_) throw Error("element index " + std::to_string(i) + " out of range");
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void Subset::reset(std::size_t i) {
    if (i >= universe_) throw Error("element index " + std::to_string(i) + " out of range");
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

void Subset::check_same_universe(const Subset& other) const {
    if (universe_ != other.universe_) throw Error("universe mismatch");
}

bool Subset::is_subset_of(const Subset& other) const {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

Subset Subset::operator&(const Subset& other) const {
    check_same_universe(other);
    Subset r(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= other.words_[w];
    return r;
}

Subset Subset::operator|(const Subset& other) const {
    check_same_universe(other);
    Subset r(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] |= other.words_[w];
    return r;
}

std::vector<std::size_t> Subset::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t Subset::hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ universe_;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool canonical_less(const Subset& a, const Subset& b) {
    if (a.universe_size() != b.universe_size()) return a.universe_size() < b.universe_size();
    auto wa = a.words();
    auto wb = b.words();
    for (std::size_t w = 0; w < wa.size(); ++w) {
        auto diff = wa[w] ^ wb[w];
        if (diff) {
            auto bit = std::uint64_t{1} << std::countr_zero(diff);
            return (wa[w] & bit) != 0;
        }
    }
    return false;
}

std::size_t intersection_size(const Subset& a, const Subset& b) {
    if (a.universe_size() != b.universe_size()) throw Error("universe mismatch");
    auto wa = a.words();
    auto wb = b.words();
    std::size_t c = 0;
    for (std::size_t w = 0; w < wa.size(); ++w) c += static_cast<std::size_t>(std::popcount(wa[w] & wb[w]));
    return c;
}

SetFamily canonicalize(std::vector<Subset> members, GroundSet ground) {
    for (const auto& m : members)
        if (m.universe_size() != ground.size()) throw Error("universe mismatch");
    std::sort(members.begin(), members.end(), canonical_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());

    SetFamily f;
    f.ground_ = std::move(ground);
    if (!members.empty()) {
        auto k = members.front().count();
        bool uniform = std::all_of(members.begin(), members.end(), [k](const Subset& s) { return s.count() == k; });
        if (uniform) f.uniform_size_ = k;
    }
    f.members_ = std::move(members);
    return f;
}

std::optional<std::size_t> SetFamily::find(const Subset& s) const {
    if (s.universe_size() != ground_.size()) return std::nullopt;
    auto it = std::lower_bound(members_.begin(), members_.end(), s, canonical_less);
    if (it == members_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

SetFamily SetFamily::select(std::span<const std::size_t> indices) const {
    std::vector<Subset> picked;
    picked.reserve(indices.size());
    for (auto i : indices) picked.push_back(member(i));
    return canonicalize(std::move(picked), ground_);
}

SetFamily star(const SetFamily& family, std::size_t x) {
    if (x >= family.ground().size()) throw Error("element index " + std::to_string(x) + " out of range");
    std::vector<Subset> picked;
    for (const auto& m : family.members())
        if (m.test(x)) picked.push_back(m);
    return canonicalize(std::move(picked), family.ground());
}

std::vector<std::vector<std::size_t>> as_index_lists(const SetFamily& family) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(family.size());
    for (const auto& m : family.members()) out.push_back(m.indices());
    return out;
}

std::string format_subset(const Subset& s, const GroundSet& ground) {
    std::string out = "{";
    bool first = true;
    for (auto i : s.indices()) {
        if (!first) out += ' ';
        out += ground.label(i);
        first = false;
    }
    return out + "}";
}

void write_fam(std::ostream& os, const SetFamily& family) {
    const auto& g = family.ground();
    os << g.size() << ' ' << family.size() << ' ';
    if (family.uniform_size()) os << *family.uniform_size();
    else os << '-';
    os << '\n';
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? " " : "") << g.label(i);
    os << '\n';
    for (const auto& m : family.members()) {
        bool first = true;
        for (auto i : m.indices()) {
            os << (first ? "" : " ") << i;
            first = false;
        }
        os << '\n';
    }
}

namespace {

std::string next_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line)) throw Error(std::string(".fam: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

SetFamily read_fam(std::istream& is) {
    std::istringstream header(next_line(is, "header"));
    std::size_t n = 0, m = 0;
    std::string k_token;
    if (!(header >> n >> m >> k_token)) throw Error(".fam: malformed header");

    std::istringstream label_line(next_line(is, "label line"));
    std::vector<std::string> labels;
    for (std::string l; label_line >> l;) labels.push_back(l);
    if (labels.size() != n) throw Error(".fam: expected " + std::to_string(n) + " labels");
    GroundSet ground(std::move(labels));

    std::vector<Subset> members;
    members.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::istringstream row(next_line(is, "member line"));
        std::vector<std::size_t> idx;
        long long v = 0;
        while (row >> v) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(".fam: element index out of range");
            idx.push_back(static_cast<std::size_t>(v));
        }
        if (!row.eof()) throw Error(".fam: malformed member line");
        if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            throw Error(".fam: member indices must be strictly increasing");
        members.push_back(Subset::from_indices(n, idx));
    }
    auto family = canonicalize(members, std::move(ground));
    if (family.size() != m) throw Error(".fam: duplicate members");
    for (std::size_t i = 0; i < m; ++i)
        if (!(family.member(i) == members[i])) throw Error(".fam: members not in canonical order");
    std::string declared = k_token == "-" ? "-" : k_token;
    std::string actual = family.uniform_size() ? std::to_string(*family.uniform_size()) : "-";
    if (m > 0 && declared != actual) throw Error(".fam: declared uniform size does not match members");
    return family;
}

void save_fam(const std::string& path, const SetFamily& family) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_fam(os, family);
}

SetFamily load_fam(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_fam(is);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw Error("binomial overflow");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace ekr
