#pragma once

#include "nonleaf/pattern.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

// One enumerated torsion entry of an infinite direct sum.
struct TailEntry {
    PrimePower q;
    ExtCount count;
};

// Enumerates the torsion contributed by an infinite block family: entry(i)
// for i = 1, 2, ... until exhausted (nullopt). When `ascending` holds, the
// prime powers strictly increase and membership is decidable; otherwise a
// lookup can only sample. The guarantee flags are user declarations; checks
// that lean on them beyond the sampled range must record the assumption
// strings.
class TailSchema {
public:
    using EntryFn = std::function<std::optional<TailEntry>(std::uint64_t)>;

    TailSchema(EntryFn entry, bool infinite, bool ascending, bool g_all_odd, bool g_distinct,
               bool g_finite_nonzero, std::vector<std::string> assumptions, std::string description)
        : entry_(std::move(entry)),
          infinite_(infinite),
          ascending_(ascending),
          g_all_odd_(g_all_odd),
          g_distinct_(g_distinct),
          g_finite_nonzero_(g_finite_nonzero),
          assumptions_(std::move(assumptions)),
          description_(std::move(description)) {}

    std::optional<TailEntry> entry(std::uint64_t i) const { return entry_(i); }
    bool infinite() const { return infinite_; }
    bool ascending() const { return ascending_; }
    bool guarantee_all_odd() const { return g_all_odd_; }
    bool guarantee_distinct() const { return g_distinct_; }
    bool guarantee_finite_nonzero() const { return g_finite_nonzero_; }
    const std::vector<std::string>& assumptions() const { return assumptions_; }
    const std::string& description() const { return description_; }

    // Direct membership query, when the backing enumeration supports one
    // (family tails do); spares the entry-by-entry scan. May itself return
    // nullopt for entries whose position is beyond the indexable range.
    void set_exact_lookup(std::function<std::optional<ExtCount>(const PrimePower&)> fn) {
        exact_lookup_ = std::move(fn);
    }

    // Multiplicity of q among tail entries. Exact when an exact lookup is
    // installed or the entries ascend (the scan stops past q); otherwise
    // samples the first `cap` entries and returns nullopt if q was not seen.
    std::optional<ExtCount> lookup(const PrimePower& q, std::uint64_t cap) const {
        if (exact_lookup_) return exact_lookup_(q);
        if (ascending_) {
            for (std::uint64_t i = 1; i <= (1u << 20); ++i) {
                auto e = entry_(i);
                if (!e) return ExtCount(0);
                if (e->q == q) return e->count;
                if (q < e->q) return ExtCount(0);
            }
            return std::nullopt;
        }
        for (std::uint64_t i = 1; i <= cap; ++i) {
            auto e = entry_(i);
            if (!e) return ExtCount(0);
            if (e->q == q) return e->count;
        }
        return std::nullopt;
    }

private:
    EntryFn entry_;
    std::function<std::optional<ExtCount>(const PrimePower&)> exact_lookup_;
    bool infinite_;
    bool ascending_;
    bool g_all_odd_;
    bool g_distinct_;
    bool g_finite_nonzero_;
    std::vector<std::string> assumptions_;
    std::string description_;
};

// An abelian group that may involve infinitely many summands: an extended
// rank, a finite head of prime power multiplicities, and an optional
// enumerated tail. Head and tail supports are kept disjoint by folding
// resolvable collisions into the head.
class SymbolicAbelianGroup {
public:
    ExtCount rank;
    std::map<PrimePower, ExtCount> head;
    std::optional<TailSchema> tail;

    SymbolicAbelianGroup() : rank(0) {}

    static SymbolicAbelianGroup from_finite(const FgAbelianGroup& g) {
        SymbolicAbelianGroup s;
        s.rank = ExtCount(Int(g.rank()));
        for (const auto& [q, m] : g.torsion()) s.head[q] = ExtCount(Int(m));
        return s;
    }

    void add_head(const PrimePower& q, const ExtCount& c) {
        if (c.is_zero()) return;
        auto it = head.find(q);
        if (it == head.end())
            head.emplace(q, c);
        else
            it->second += c;
    }

    // Fold tail entries that collide with head prime powers into the head,
    // so supports stay disjoint. Requires decidable tail lookups for the
    // (finitely many) head entries; with only a declared disjointness
    // guarantee the fold is a no-op and lookups report the reliance.
    void normalize(std::uint64_t sample_cap) {
        if (!tail) return;
        for (auto& [q, c] : head) {
            if (excluded_.count(q)) continue;
            auto t = tail->lookup(q, sample_cap);
            if (t && !t->is_zero()) {
                c += *t;
                excluded_.insert(q);
            } else if (t) {
                excluded_.insert(q);  // conclusively absent from the tail
            }
        }
    }

    struct Multiplicity {
        std::optional<ExtCount> value;  // nullopt = not determinable at this depth
        bool relied_on_declaration = false;
    };

    Multiplicity multiplicity(const PrimePower& q, std::uint64_t sample_cap) const {
        ExtCount h(0);
        if (auto it = head.find(q); it != head.end()) h = it->second;
        if (!tail || excluded_.count(q)) return {h, false};
        auto t = tail->lookup(q, sample_cap);
        if (t) return {h + *t, false};
        if (tail->guarantee_distinct()) return {h, true};  // declared disjoint from head
        return {std::nullopt, false};
    }

    bool fully_finite() const {
        if (tail) return false;
        if (rank.is_omega()) return false;
        for (const auto& [q, m] : head)
            if (m.is_omega()) return false;
        return true;
    }

    FgAbelianGroup to_finite() const {
        if (!fully_finite()) throw std::logic_error("symbolic group is not finite");
        FgAbelianGroup g = FgAbelianGroup::free_of_rank(
            static_cast<std::uint64_t>(rank.finite()));
        for (const auto& [q, m] : head)
            g.add_torsion(q, static_cast<std::uint64_t>(m.finite()));
        return g;
    }

    const std::set<PrimePower>& excluded() const { return excluded_; }

    std::string str() const {
        std::ostringstream os;
        os << "rank " << rank.str();
        for (const auto& [q, m] : head) os << "; " << q.str() << " x" << m.str();
        if (tail) os << "; tail: " << tail->description();
        return os.str();
    }

private:
    std::set<PrimePower> excluded_;
};

// Fundamental group of a sum-manifold: a head multiset plus, for families
// whose members have non-trivial fundamental groups, an enumerated tail of
// labels (one label per used member).
class SymbolicFreeProduct {
public:
    struct Tail {
        std::function<std::optional<std::pair<FactorLabel, ExtCount>>(std::uint64_t)> entry;
        // exact membership; nullopt when the member exists but its position
        // (hence its usage) is beyond the indexable range
        std::function<std::optional<ExtCount>(const FactorLabel&)> lookup;
        bool infinite;
        bool all_odd_declared;
        std::vector<std::string> assumptions;
        std::string description;
    };

    FreeProductClass head;
    std::optional<Tail> tail;

    // nullopt: not determinable (tail member beyond the indexable range)
    std::optional<ExtCount> count_factor(const FactorLabel& q) const {
        ExtCount c = head.count_factor(q);
        if (tail) {
            auto t = tail->lookup(q);
            if (!t) return std::nullopt;
            c += *t;
        }
        return c;
    }

    ExtCount grushko_factor_count() const {
        ExtCount c = head.grushko_factor_count();
        if (tail) {
            if (tail->infinite) return ExtCount::omega();
            for (std::uint64_t i = 1;; ++i) {
                auto e = tail->entry(i);
                if (!e) break;
                c += e->second;
            }
        }
        return c;
    }

    bool is_trivial() const { return head.is_trivial() && !tail; }

    // The plain multiset form; only available without a tail.
    const FreeProductClass& as_class() const {
        if (tail) throw std::logic_error("fundamental group has an enumerated tail");
        return head;
    }

    std::string str() const {
        std::string s = head.str();
        if (tail) s += (head.is_trivial() ? "" : " * ") + ("tail: " + tail->description);
        return s;
    }
};

}  // namespace nonleaf
