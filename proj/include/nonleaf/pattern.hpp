#pragma once

#include "nonleaf/blocks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nonleaf {

struct NotSymbolicallyComputable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Declared usage or generator output contradicts itself.
struct UsageViolation : std::runtime_error {
    UsageViolation(const std::string& msg, std::uint64_t vertex)
        : std::runtime_error(msg), vertex(vertex) {}
    std::uint64_t vertex;
};

// ---------------------------------------------------------------------------
// patterns

// A finite connected multigraph with a block name per vertex. Self-loops and
// parallel edges are allowed; each contributes to the cycle rank.
struct FiniteGraph {
    std::uint64_t num_vertices = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::vector<std::string> assignment;

    std::uint64_t cycle_rank() const {
        return static_cast<std::uint64_t>(edges.size()) - num_vertices + 1;
    }

    bool is_tree() const { return edges.size() + 1 == num_vertices; }

    void validate() const {
        if (num_vertices == 0) throw std::invalid_argument("pattern: no vertices");
        if (assignment.size() != num_vertices)
            throw std::invalid_argument("pattern: assignment must name every vertex");
        std::vector<std::vector<std::uint64_t>> adj(num_vertices);
        for (const auto& [a, b] : edges) {
            if (a >= num_vertices || b >= num_vertices)
                throw std::invalid_argument("pattern: edge endpoint out of range");
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<char> seen(num_vertices, 0);
        std::vector<std::uint64_t> stack{0};
        seen[0] = 1;
        std::uint64_t reached = 1;
        while (!stack.empty()) {
            std::uint64_t v = stack.back();
            stack.pop_back();
            for (std::uint64_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != num_vertices) throw std::invalid_argument("pattern: graph is not connected");
    }
};

// A deterministic presentation of a rooted locally finite infinite tree:
// vertex n >= 1 attaches below parent(n) < n, and vertex v acquires no
// children with index beyond child_bound(v). Generators must be total,
// deterministic and re-entrant.
struct TreeGen {
    std::function<std::uint64_t(std::uint64_t)> parent;
    std::function<std::uint64_t(std::uint64_t)> child_bound;
    std::string description;
};

inline TreeGen ray_tree() {
    return {[](std::uint64_t n) { return n - 1; }, [](std::uint64_t v) { return v + 1; }, "ray"};
}

inline TreeGen binary_tree() {
    return {[](std::uint64_t n) { return (n - 1) / 2; },
            [](std::uint64_t v) { return 2 * v + 2; }, "binary_tree"};
}

// Spine vertices 0, 2, 4, ...; vertex 2i+1 is the tooth below spine vertex 2i.
inline TreeGen comb_tree() {
    return {[](std::uint64_t n) { return n % 2 == 1 ? n - 1 : n - 2; },
            [](std::uint64_t v) { return v % 2 == 0 ? v + 2 : v; }, "comb"};
}

// parent(n) = n - offsets[(n - 1) mod period]; offsets are validated lazily
// (an offset exceeding the vertex index is an input error).
inline TreeGen parent_table_tree(std::vector<std::uint64_t> offsets) {
    if (offsets.empty()) throw std::invalid_argument("parent_table: offsets must be nonempty");
    for (std::uint64_t o : offsets)
        if (o == 0) throw std::invalid_argument("parent_table: offsets must be >= 1");
    std::uint64_t max_off = *std::max_element(offsets.begin(), offsets.end());
    auto off = std::make_shared<std::vector<std::uint64_t>>(std::move(offsets));
    return {[off](std::uint64_t n) {
                std::uint64_t o = (*off)[(n - 1) % off->size()];
                if (o > n)
                    throw std::invalid_argument("parent_table: offset " + std::to_string(o) +
                                                " exceeds vertex " + std::to_string(n));
                return n - o;
            },
            [max_off](std::uint64_t v) { return v + max_off; }, "parent_table"};
}

// ---------------------------------------------------------------------------
// prime sequences and usage counts

namespace pattern_detail {

// Sieved table of odd primes; covers every index a desk-scale sampling depth
// can reach, with a deterministic fallback beyond.
inline const std::vector<std::uint32_t>& odd_prime_table() {
    static const std::vector<std::uint32_t> table = [] {
        constexpr std::uint32_t limit = 1u << 20;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t n = 3; n < limit; n += 2) {
            if (composite[n]) continue;
            out.push_back(n);
            for (std::uint64_t m = std::uint64_t(n) * n; m < limit; m += 2ull * n)
                composite[static_cast<std::size_t>(m)] = true;
        }
        return out;
    }();
    return table;
}

}  // namespace pattern_detail

// A deterministic sequence of primes p_1, p_2, ... Either the odd primes in
// ascending order (infinite) or an explicit list.
class PrimeSequence {
public:
    static PrimeSequence odd_ascending() { return PrimeSequence(true, {}); }

    static PrimeSequence from_list(std::vector<Int> primes) {
        if (primes.empty()) throw std::invalid_argument("prime list must be nonempty");
        for (const Int& p : primes)
            if (!is_prime(p))
                throw std::invalid_argument("prime list entry " + p.str() + " is not prime");
        return PrimeSequence(false, std::move(primes));
    }

    bool infinite() const { return odd_ascending_; }

    std::size_t list_size() const { return list_.size(); }

    // 1-based.
    Int at(std::uint64_t i) const {
        if (i < 1) throw std::invalid_argument("prime sequence index is 1-based");
        if (odd_ascending_) {
            const auto& table = pattern_detail::odd_prime_table();
            if (i <= table.size()) return Int(table[i - 1]);
            Int p = table.back();
            for (std::uint64_t seen = table.size(); seen < i;) {
                p += 2;
                if (is_prime(p)) ++seen;
            }
            return p;
        }
        if (i > list_.size()) throw std::out_of_range("prime list exhausted at index " + std::to_string(i));
        return list_[i - 1];
    }

    // Exact membership test; never scans.
    bool contains(const Int& p) const {
        if (odd_ascending_) return p >= 3 && p % 2 == 1 && is_prime(p);
        for (const Int& q : list_)
            if (q == p) return true;
        return false;
    }

    // Index of p in the sequence. nullopt either when p is absent or when p
    // lies beyond the sieved indexing range; disambiguate with contains().
    std::optional<std::uint64_t> index_of(const Int& p) const {
        if (odd_ascending_) {
            const auto& table = pattern_detail::odd_prime_table();
            if (p < 3 || p > Int(table.back())) return std::nullopt;
            const std::uint32_t v = static_cast<std::uint32_t>(p);
            auto it = std::lower_bound(table.begin(), table.end(), v);
            if (it == table.end() || *it != v) return std::nullopt;
            return static_cast<std::uint64_t>(it - table.begin()) + 1;
        }
        for (std::size_t i = 0; i < list_.size(); ++i)
            if (list_[i] == p) return i + 1;
        return std::nullopt;
    }

    bool all_odd() const {
        if (odd_ascending_) return true;
        for (const Int& p : list_)
            if (p == 2) return false;
        return true;
    }

    bool strictly_ascending() const {
        if (odd_ascending_) return true;
        for (std::size_t i = 1; i < list_.size(); ++i)
            if (!(list_[i - 1] < list_[i])) return false;
        return true;
    }

    bool pairwise_distinct() const {
        if (odd_ascending_) return true;
        std::set<Int> s(list_.begin(), list_.end());
        return s.size() == list_.size();
    }

    std::string str() const {
        if (odd_ascending_) return "odd primes ascending";
        std::string s = "primes [";
        for (std::size_t i = 0; i < list_.size(); ++i)
            s += (i ? "," : "") + list_[i].str();
        return s + "]";
    }

private:
    PrimeSequence(bool odd, std::vector<Int> list) : odd_ascending_(odd), list_(std::move(list)) {}
    bool odd_ascending_;
    std::vector<Int> list_;
};

// Per-member usage counts for a block family: the i-th member is used
// counts(i) times, occupying a contiguous run of vertices in order. An omega
// entry must be the last one (later members would be unreachable).
class CountsRule {
public:
    enum class Then { index, end };

    static CountsRule index_rule() { return CountsRule(true, {}, Then::index); }

    static CountsRule list_rule(std::vector<ExtCount> counts, Then then) {
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i].is_omega() && i + 1 != counts.size())
                throw std::invalid_argument(
                    "counts: an omega entry must be last (later members are unreachable)");
        if (!counts.empty() && counts.back().is_omega() && then == Then::index)
            throw std::invalid_argument("counts: cannot continue past an omega entry");
        return CountsRule(false, std::move(counts), then);
    }

    // Declared usage of member i (1-based).
    ExtCount usage(std::uint64_t i) const {
        if (i < 1) throw std::invalid_argument("member index is 1-based");
        if (index_) return ExtCount(Int(i));
        if (i <= list_.size()) return list_[i - 1];
        if (then_ == Then::index) return ExtCount(Int(i));
        return ExtCount(0);
    }

    // Member index at which enumeration stops: beyond it every member is
    // unused. nullopt = members keep coming forever.
    std::optional<std::uint64_t> cutoff() const {
        if (index_) return std::nullopt;
        if (!list_.empty() && list_.back().is_omega()) return list_.size();
        if (then_ == Then::end) return list_.size();
        return std::nullopt;
    }

    // True when infinitely many members have nonzero usage.
    bool infinitely_many_used() const { return !cutoff().has_value(); }

    // Member owning vertex v (0-based within the family-assigned range).
    std::uint64_t member_at_vertex(std::uint64_t v) const {
        Int seen = 0;
        for (std::uint64_t i = 1;; ++i) {
            if (auto c = cutoff(); c && i > *c)
                throw std::out_of_range("assignment exhausted at relative vertex " +
                                        std::to_string(v));
            ExtCount u = usage(i);
            if (u.is_omega()) return i;
            if (Int(v) < seen + u.finite()) return i;
            seen += u.finite();
        }
    }

    // First and last (0-based, relative) vertices of member i's run, when the
    // run is reachable and finite.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> vertex_run(std::uint64_t i) const {
        Int start = 0;
        for (std::uint64_t m = 1; m < i; ++m) {
            ExtCount u = usage(m);
            if (u.is_omega()) return std::nullopt;
            start += u.finite();
        }
        ExtCount u = usage(i);
        if (u.is_omega() || u.is_zero()) return std::nullopt;
        Int last = start + u.finite() - 1;
        return std::make_pair(static_cast<std::uint64_t>(start), static_cast<std::uint64_t>(last));
    }

    std::string str() const {
        if (index_) return "counts: member i used i times";
        std::string s = "counts [";
        for (std::size_t i = 0; i < list_.size(); ++i) s += (i ? "," : "") + list_[i].str();
        s += "]";
        s += then_ == Then::index ? " then index" : "";
        return s;
    }

private:
    CountsRule(bool idx, std::vector<ExtCount> list, Then then)
        : index_(idx), list_(std::move(list)), then_(then) {}
    bool index_;
    std::vector<ExtCount> list_;
    Then then_;
};

// ---------------------------------------------------------------------------
// block families and catalogs

// An enumerated family of catalog blocks, one per prime of a sequence, all
// built by the same preset. Guarantees are user declarations about the whole
// family; the engine verifies them on sampled members and records them as
// assumptions when a conclusion depends on the unsampled remainder.
class BlockFamily {
public:
    enum class Preset { lens, smale, suspension };

    struct Guarantees {
        bool distinct = false;             // members pairwise distinct, prime powers disjoint
        bool all_odd = false;              // every prime in the sequence is odd
        bool finite_nonzero_usage = false; // every member is used a finite nonzero number of times
    };

    BlockFamily(std::string name, Preset preset, int dim, int k, unsigned exponent,
                PrimeSequence primes, Guarantees g)
        : name_(std::move(name)),
          preset_(preset),
          dim_(dim),
          k_(k),
          exponent_(exponent),
          primes_(std::move(primes)),
          guarantees_(g) {
        if (name_.empty()) throw std::invalid_argument("family: name must be nonempty");
        if (exponent_ < 1) throw std::invalid_argument("family: exponent must be >= 1");
        switch (preset_) {
            case Preset::lens: dim_ = 3; break;
            case Preset::smale: dim_ = 5; break;
            case Preset::suspension:
                if (k_ < 2 || dim_ < k_ + 4)
                    throw std::invalid_argument("family: suspension needs k >= 2 and d >= k + 4");
                break;
        }
    }

    const std::string& name() const { return name_; }
    Preset preset() const { return preset_; }
    int dimension() const { return dim_; }
    int k() const { return k_; }
    unsigned exponent() const { return exponent_; }
    const PrimeSequence& primes() const { return primes_; }
    const Guarantees& guarantees() const { return guarantees_; }
    bool infinite() const { return primes_.infinite(); }

    std::string member_name(std::uint64_t i) const { return name_ + "_" + std::to_string(i); }

    std::optional<std::uint64_t> parse_member_index(const std::string& block_name) const {
        if (block_name.size() <= name_.size() + 1) return std::nullopt;
        if (block_name.compare(0, name_.size(), name_) != 0) return std::nullopt;
        if (block_name[name_.size()] != '_') return std::nullopt;
        std::uint64_t idx = 0;
        for (std::size_t i = name_.size() + 1; i < block_name.size(); ++i) {
            char c = block_name[i];
            if (c < '0' || c > '9') return std::nullopt;
            idx = idx * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return idx >= 1 ? std::optional<std::uint64_t>(idx) : std::nullopt;
    }

    PrimePower member_prime_power(std::uint64_t i) const {
        return PrimePower(primes_.at(i), exponent_);
    }

    Block member(std::uint64_t i) const {
        const PrimePower q = member_prime_power(i);
        switch (preset_) {
            case Preset::lens: return lens_block(q.value(), 1, member_name(i));
            case Preset::smale: {
                FgAbelianGroup g;
                g.add_torsion(q, 1);
                return smale_block(g, member_name(i));
            }
            case Preset::suspension: return suspension_block(dim_, q, k_, member_name(i));
        }
        throw std::logic_error("unreachable");
    }

    bool members_simply_connected() const { return preset_ != Preset::lens; }

    // How many Z_q summands one use of a member contributes to H_r.
    unsigned torsion_copies_at(int r) const {
        switch (preset_) {
            case Preset::lens: return 0;
            case Preset::smale: return r == 2 ? 2 : 0;
            case Preset::suspension: return (r == k_ || r == dim_ - k_ - 1) ? 1 : 0;
        }
        return 0;
    }

    // pi1 label of member i, for families with non-trivial fundamental groups.
    std::optional<FactorLabel> member_label(std::uint64_t i) const {
        if (preset_ != Preset::lens) return std::nullopt;
        return FactorLabel::finite_cyclic(member_prime_power(i).value());
    }

    // Membership of a prime in the family: in_family is exact; index is
    // absent for members beyond the sequence's indexing range.
    struct MemberMatch {
        bool in_family = false;
        std::optional<std::uint64_t> index;
    };

    MemberMatch match_prime(const Int& p) const {
        if (!primes_.contains(p)) return {};
        return {true, primes_.index_of(p)};
    }

    // Which member carries Z_q as a homology summand.
    MemberMatch match_prime_power(const PrimePower& q) const {
        if (q.exponent() != exponent_) return {};
        return match_prime(q.prime());
    }

    // Which member has the given pi1 factor. A root test against the fixed
    // exponent avoids factoring untrusted label orders.
    MemberMatch match_label(const FactorLabel& q) const {
        if (preset_ != Preset::lens) return {};
        if (q.kind() != FactorLabel::Kind::finite_cyclic) return {};
        const Int root = iroot(q.order(), exponent_);
        if (pow_int(root, exponent_) != q.order() || !is_prime(root)) return {};
        return match_prime(root);
    }

    std::optional<std::uint64_t> member_for_prime_power(const PrimePower& q) const {
        return match_prime_power(q).index;
    }

    std::optional<std::uint64_t> member_for_label(const FactorLabel& q) const {
        return match_label(q).index;
    }

    std::vector<std::string> guarantee_strings() const {
        std::vector<std::string> out;
        if (guarantees_.distinct)
            out.push_back("family '" + name_ +
                          "': members pairwise distinct with disjoint prime powers (declared)");
        if (guarantees_.all_odd)
            out.push_back("family '" + name_ + "': all primes odd (declared)");
        if (guarantees_.finite_nonzero_usage)
            out.push_back("family '" + name_ +
                          "': every member used a finite nonzero number of times (declared)");
        return out;
    }

    std::string str() const {
        std::string kind = preset_ == Preset::lens ? "lens"
                           : preset_ == Preset::smale ? "smale"
                                                      : "suspension";
        std::string s = "family '" + name_ + "' (" + kind + " d=" + std::to_string(dim_);
        if (preset_ == Preset::suspension) s += " k=" + std::to_string(k_);
        s += ", " + primes_.str() + ", exponent " + std::to_string(exponent_) + ")";
        return s;
    }

private:
    std::string name_;
    Preset preset_;
    int dim_;
    int k_;
    unsigned exponent_;
    PrimeSequence primes_;
    Guarantees guarantees_;
};

// Named block records plus at most one enumerated family. Lookup resolves
// explicit names first, then family member names of the form "<family>_<i>".
class Catalog {
public:
    void add_block(Block b) {
        const std::string name = b.name();
        if (blocks_.count(name)) throw std::invalid_argument("catalog: duplicate block '" + name + "'");
        if (family_ && family_->parse_member_index(name))
            throw std::invalid_argument("catalog: block '" + name + "' collides with family member names");
        blocks_.emplace(name, std::move(b));
    }

    void set_family(BlockFamily f) {
        for (const auto& [name, b] : blocks_)
            if (f.parse_member_index(name))
                throw std::invalid_argument("catalog: block '" + name +
                                            "' collides with family member names");
        family_ = std::move(f);
    }

    const std::map<std::string, Block>& blocks() const { return blocks_; }
    const std::optional<BlockFamily>& family() const { return family_; }

    std::optional<Block> find(const std::string& name) const {
        auto it = blocks_.find(name);
        if (it != blocks_.end()) return it->second;
        if (family_) {
            if (auto idx = family_->parse_member_index(name)) return family_->member(*idx);
        }
        return std::nullopt;
    }

    bool empty() const { return blocks_.empty() && !family_; }

    // The common dimension, or nullopt if blocks disagree.
    std::optional<int> uniform_dimension() const {
        std::optional<int> d;
        for (const auto& [name, b] : blocks_) {
            if (d && *d != b.dim()) return std::nullopt;
            d = b.dim();
        }
        if (family_) {
            if (d && *d != family_->dimension()) return std::nullopt;
            d = family_->dimension();
        }
        return d;
    }

    std::string str() const {
        std::string s = std::to_string(blocks_.size()) + " explicit block" +
                        (blocks_.size() == 1 ? "" : "s");
        if (family_) s += ", " + family_->str();
        return s;
    }

private:
    std::map<std::string, Block> blocks_;
    std::optional<BlockFamily> family_;
};

// ---------------------------------------------------------------------------
// assignment plans

// Maps vertex indices of an infinite tree to block names and carries the
// declared usage bookkeeping. Manifest-built plans are internally consistent;
// the custom form lets tests wire deliberately inconsistent generators.
class AssignmentPlan {
public:
    enum class Rule { cycle, family_counts, custom };

    static AssignmentPlan cycle(std::vector<std::string> names,
                                std::vector<std::string> prefix = {}) {
        if (names.empty()) throw std::invalid_argument("assignment: cycle needs at least one block");
        AssignmentPlan p;
        p.rule_ = Rule::cycle;
        p.cycle_ = std::move(names);
        p.prefix_ = std::move(prefix);
        return p;
    }

    static AssignmentPlan family_counts(std::string family_name, CountsRule counts,
                                        std::vector<std::string> prefix = {}) {
        AssignmentPlan p;
        p.rule_ = Rule::family_counts;
        p.family_name_ = std::move(family_name);
        p.counts_ = std::move(counts);
        p.prefix_ = std::move(prefix);
        return p;
    }

    static AssignmentPlan custom(std::function<std::string(std::uint64_t)> assign,
                                 std::map<std::string, ExtCount> declared_usage,
                                 std::string description = "custom") {
        AssignmentPlan p;
        p.rule_ = Rule::custom;
        p.custom_assign_ = std::move(assign);
        p.custom_usage_ = std::move(declared_usage);
        p.custom_desc_ = std::move(description);
        return p;
    }

    Rule rule() const { return rule_; }
    const std::vector<std::string>& prefix() const { return prefix_; }
    const std::string& family_name() const { return family_name_; }
    const CountsRule& counts() const {
        if (!counts_) throw std::logic_error("assignment plan has no counts rule");
        return *counts_;
    }
    bool family_based() const { return rule_ == Rule::family_counts; }

    std::string assign(std::uint64_t v) const {
        if (rule_ == Rule::custom) return custom_assign_(v);
        if (v < prefix_.size()) return prefix_[v];
        const std::uint64_t w = v - prefix_.size();
        if (rule_ == Rule::cycle) return cycle_[w % cycle_.size()];
        return family_name_ + "_" + std::to_string(counts_->member_at_vertex(w));
    }

    // Declared total usage of a block name. nullopt = no declaration (the
    // manifold is then not symbolically computable).
    std::optional<ExtCount> declared_usage(const std::string& name,
                                           const BlockFamily* family) const {
        if (rule_ == Rule::custom) {
            auto it = custom_usage_.find(name);
            if (it != custom_usage_.end()) return it->second;
            return std::nullopt;
        }
        ExtCount total(0);
        for (const auto& p : prefix_)
            if (p == name) total += ExtCount(1);
        if (rule_ == Rule::cycle) {
            for (const auto& c : cycle_)
                if (c == name) return ExtCount::omega();
            return total;
        }
        if (family) {
            if (auto idx = family->parse_member_index(name)) {
                if (auto cut = counts_->cutoff(); cut && *idx > *cut) return total;
                return total + counts_->usage(*idx);
            }
        }
        return total;
    }

    // Last vertex at which the name is assigned, when that is computable and
    // final. nullopt = used forever or not computable.
    std::optional<std::uint64_t> last_use_vertex(const std::string& name,
                                                 const BlockFamily* family) const {
        if (rule_ == Rule::custom) return std::nullopt;
        std::optional<std::uint64_t> last;
        for (std::size_t i = 0; i < prefix_.size(); ++i)
            if (prefix_[i] == name) last = i;
        if (rule_ == Rule::cycle) {
            for (const auto& c : cycle_)
                if (c == name) return std::nullopt;
            return last;
        }
        if (family) {
            if (auto idx = family->parse_member_index(name)) {
                if (auto cut = counts_->cutoff(); cut && *idx > *cut) return last;
                auto run = counts_->vertex_run(*idx);
                if (!run) return std::nullopt;
                return prefix_.size() + run->second;
            }
        }
        return last;
    }

    std::string str() const {
        std::string s;
        switch (rule_) {
            case Rule::cycle: {
                s = "cycle [";
                for (std::size_t i = 0; i < cycle_.size(); ++i) s += (i ? "," : "") + cycle_[i];
                s += "]";
                break;
            }
            case Rule::family_counts:
                s = "family_counts(" + family_name_ + "; " + counts_->str() + ")";
                break;
            case Rule::custom: s = custom_desc_; break;
        }
        if (!prefix_.empty()) {
            s += " with prefix [";
            for (std::size_t i = 0; i < prefix_.size(); ++i) s += (i ? "," : "") + prefix_[i];
            s += "]";
        }
        return s;
    }

private:
    Rule rule_ = Rule::custom;
    std::vector<std::string> prefix_;
    std::vector<std::string> cycle_;
    std::string family_name_;
    std::optional<CountsRule> counts_;
    std::function<std::string(std::uint64_t)> custom_assign_;
    std::map<std::string, ExtCount> custom_usage_;
    std::string custom_desc_;
};

}  // namespace nonleaf
