#pragma once

#include "nonleaf/symbolic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nonleaf {

// A sum-manifold: a pattern (finite connected multigraph, or deterministic
// rooted infinite tree with an assignment plan) over a block catalog of one
// dimension. All invariant computations are pure; truncations of infinite
// trees are finite sum-manifolds over the materialized blocks.
class SumManifold {
public:
    SumManifold(FiniteGraph graph, Catalog catalog, std::uint64_t sample_depth = 64)
        : pattern_(std::move(graph)),
          catalog_(std::move(catalog)),
          sample_depth_(sample_depth) {
        const auto& g = std::get<FiniteGraph>(pattern_);
        g.validate();
        init_dimension();
        for (std::uint64_t v = 0; v < g.num_vertices; ++v)
            if (!catalog_.find(g.assignment[v]))
                throw std::invalid_argument("pattern: vertex " + std::to_string(v) +
                                            " assigned unknown block '" + g.assignment[v] + "'");
    }

    struct Infinite {
        TreeGen tree;
        AssignmentPlan plan;
    };

    SumManifold(TreeGen tree, AssignmentPlan plan, Catalog catalog,
                std::uint64_t sample_depth = 64, std::uint64_t truncation_cap = 100000)
        : pattern_(Infinite{std::move(tree), std::move(plan)}),
          catalog_(std::move(catalog)),
          sample_depth_(sample_depth),
          truncation_cap_(truncation_cap) {
        init_dimension();
        const auto& inf = std::get<Infinite>(pattern_);
        if (inf.plan.family_based()) {
            if (!catalog_.family() || catalog_.family()->name() != inf.plan.family_name())
                throw std::invalid_argument("assignment references family '" +
                                            inf.plan.family_name() + "' not present in catalog");
        }
        // family members are only accounted for through the counts rule; any
        // other route of assigning them would silently drop their invariants
        if (catalog_.family())
            for (const auto& name : inf.plan.prefix())
                if (catalog_.family()->parse_member_index(name))
                    throw std::invalid_argument(
                        "family member '" + name +
                        "' cannot appear in an assignment prefix; declare an explicit block");
        validate_samples();
    }

    bool finite() const { return std::holds_alternative<FiniteGraph>(pattern_); }
    bool infinite_tree() const { return !finite(); }

    bool is_tree() const {
        if (!finite()) return true;
        return std::get<FiniteGraph>(pattern_).is_tree();
    }

    std::uint64_t cycle_rank() const {
        if (!finite()) return 0;
        return std::get<FiniteGraph>(pattern_).cycle_rank();
    }

    int dimension() const { return dim_; }
    const Catalog& catalog() const { return catalog_; }
    std::uint64_t sample_depth() const { return sample_depth_; }
    std::uint64_t truncation_cap() const { return truncation_cap_; }

    const FiniteGraph& graph() const {
        if (!finite()) throw std::logic_error("not a finite pattern");
        return std::get<FiniteGraph>(pattern_);
    }

    const TreeGen& tree() const {
        if (finite()) throw std::logic_error("not an infinite tree");
        return std::get<Infinite>(pattern_).tree;
    }

    const AssignmentPlan& plan() const {
        if (finite()) throw std::logic_error("not an infinite tree");
        return std::get<Infinite>(pattern_).plan;
    }

    std::uint64_t num_vertices() const {
        if (!finite()) throw std::logic_error("infinite pattern has no vertex count");
        return std::get<FiniteGraph>(pattern_).num_vertices;
    }

    std::string block_name_at(std::uint64_t v) const {
        if (finite()) {
            const auto& g = std::get<FiniteGraph>(pattern_);
            if (v >= g.num_vertices) throw std::out_of_range("vertex out of range");
            return g.assignment[v];
        }
        return std::get<Infinite>(pattern_).plan.assign(v);
    }

    Block assigned_block(std::uint64_t v) const {
        auto b = catalog_.find(block_name_at(v));
        if (!b) throw std::invalid_argument("vertex assigned unknown block");
        return *b;
    }

    // ---- truncation ------------------------------------------------------

    // The sub-sum-manifold on the first n vertices. Prefixes of the rooted
    // enumeration are connected subtrees. Finite patterns are returned whole.
    SumManifold truncate(std::uint64_t n) const {
        if (finite()) return *this;
        if (n < 1) throw std::invalid_argument("truncate: depth must be >= 1");
        if (n > truncation_cap_)
            throw std::invalid_argument("truncate: depth " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(truncation_cap_));
        const auto& inf = std::get<Infinite>(pattern_);
        FiniteGraph g;
        g.num_vertices = n;
        g.assignment.reserve(n);
        Catalog used;
        for (std::uint64_t v = 0; v < n; ++v) {
            if (v >= 1) {
                std::uint64_t p = inf.tree.parent(v);
                if (p >= v)
                    throw std::invalid_argument("tree generator violates parent(n) < n at vertex " +
                                                std::to_string(v));
                g.edges.emplace_back(p, v);
            }
            std::string name = inf.plan.assign(v);
            g.assignment.push_back(name);
            if (!used.blocks().count(name)) {
                auto b = catalog_.find(name);
                if (!b)
                    throw std::invalid_argument("vertex " + std::to_string(v) +
                                                " assigned unknown block '" + name + "'");
                used.add_block(*b);
            }
        }
        return SumManifold(std::move(g), std::move(used), sample_depth_);
    }

    // ---- usage -----------------------------------------------------------

    // Usage count of a catalog block: exact for finite patterns, declared
    // (and spot-checked against the generator) for infinite ones.
    ExtCount usage_count(const std::string& name) const {
        if (!catalog_.find(name)) throw std::invalid_argument("unknown block '" + name + "'");
        if (finite()) {
            const auto& g = std::get<FiniteGraph>(pattern_);
            Int c = 0;
            for (const auto& a : g.assignment)
                if (a == name) ++c;
            return ExtCount(c);
        }
        const auto& inf = std::get<Infinite>(pattern_);
        auto declared = inf.plan.declared_usage(name, family_ptr());
        if (!declared)
            throw NotSymbolicallyComputable("usage of block '" + name + "' is not declared");
        // spot check against the generator
        Int seen = 0;
        for (std::uint64_t v = 0; v < sample_depth_; ++v) {
            if (inf.plan.assign(v) == name) {
                ++seen;
                if (declared->is_finite() && ExtCount(seen) > *declared)
                    throw UsageViolation("block '" + name + "' assigned more often than declared (" +
                                             declared->str() + ") at vertex " + std::to_string(v),
                                         v);
            }
        }
        return *declared;
    }

    // ---- invariants ------------------------------------------------------

    SymbolicFreeProduct fundamental_group() const {
        SymbolicFreeProduct pi;
        if (finite()) {
            const auto& g = std::get<FiniteGraph>(pattern_);
            for (const auto& name : g.assignment)
                pi.head = free_product(pi.head, catalog_.find(name)->pi1());
            if (g.cycle_rank() > 0)
                pi.head.add(FactorLabel::infinite_cyclic(), ExtCount(Int(g.cycle_rank())));
            return pi;
        }
        const auto& inf = std::get<Infinite>(pattern_);
        for (const auto& [name, block] : catalog_.blocks()) {
            ExtCount u = required_usage(name);
            if (u.is_zero()) continue;
            for (const auto& [label, m] : block.pi1().factors()) pi.head.add(label, u * m);
        }
        if (inf.plan.family_based() && !family_ptr()->members_simply_connected())
            pi.tail = make_pi1_tail();
        return pi;
    }

    SymbolicAbelianGroup homology(int r) const {
        if (r < 2 || r > dim_ - 1)
            throw std::out_of_range("homology: degree out of [2, d-1]");
        SymbolicAbelianGroup g;
        if (finite()) {
            const auto& fg = std::get<FiniteGraph>(pattern_);
            FgAbelianGroup sum;
            for (const auto& name : fg.assignment)
                sum = direct_sum(sum, catalog_.find(name)->homology(r));
            return SymbolicAbelianGroup::from_finite(sum);
        }
        const auto& inf = std::get<Infinite>(pattern_);
        for (const auto& [name, block] : catalog_.blocks()) {
            ExtCount u = required_usage(name);
            if (u.is_zero()) continue;
            const FgAbelianGroup& h = block.homology(r);
            g.rank += u * ExtCount(Int(h.rank()));
            for (const auto& [q, m] : h.torsion()) g.add_head(q, u * ExtCount(Int(m)));
        }
        if (inf.plan.family_based()) {
            const BlockFamily* fam = family_ptr();
            const unsigned copies = fam->torsion_copies_at(r);
            if (copies > 0) g.tail = make_homology_tail(copies);
        }
        g.normalize(sample_depth_);
        return g;
    }

    // pi2 of a simply connected tree-patterned sum-manifold, identified with
    // its second homology.
    SymbolicAbelianGroup pi2() const {
        require_simply_connected_tree(2);
        return homology(2);
    }

    // 2 <= k: every assigned block must be (k-1)-connected and the pattern a
    // tree; used by the homotopy-mode checks.
    void require_simply_connected_tree(int k) const {
        if (!is_tree())
            throw std::invalid_argument("pattern has cycles; homotopy groups are not computed");
        auto check_block = [&](const Block& b) {
            if (!b.simply_connected())
                throw std::invalid_argument("block '" + b.name() +
                                            "' is not simply connected");
            for (int r = 2; r < k; ++r)
                if (!b.homology(r).is_trivial())
                    throw std::invalid_argument("block '" + b.name() + "' has non-trivial H_" +
                                                std::to_string(r) +
                                                "; not (k-1)-connected for k = " +
                                                std::to_string(k));
        };
        if (finite()) {
            const auto& g = std::get<FiniteGraph>(pattern_);
            for (const auto& name : g.assignment) check_block(*catalog_.find(name));
            return;
        }
        for (const auto& [name, block] : catalog_.blocks())
            if (!required_usage(name).is_zero()) check_block(block);
        const auto& inf = std::get<Infinite>(pattern_);
        if (inf.plan.family_based()) {
            const BlockFamily* fam = family_ptr();
            if (!fam->members_simply_connected())
                throw std::invalid_argument("family '" + fam->name() +
                                            "' members are not simply connected");
            check_block(fam->member(1));  // members share one shape; only the prime varies
        }
        for (std::uint64_t v = 0; v < std::min<std::uint64_t>(sample_depth_, 16); ++v)
            check_block(assigned_block(v));
    }

    std::string description() const {
        if (finite()) {
            const auto& g = std::get<FiniteGraph>(pattern_);
            return "finite pattern (" + std::to_string(g.num_vertices) + " vertices, " +
                   std::to_string(g.edges.size()) + " edges" + (g.is_tree() ? ", tree" : "") +
                   "), catalog: " + catalog_.str();
        }
        const auto& inf = std::get<Infinite>(pattern_);
        return "infinite tree (" + inf.tree.description + "), assignment " + inf.plan.str() +
               ", catalog: " + catalog_.str();
    }

private:
    void init_dimension() {
        if (catalog_.empty()) throw std::invalid_argument("catalog is empty");
        auto d = catalog_.uniform_dimension();
        if (!d)
            throw std::invalid_argument("catalog mixes dimensions; all blocks of a sum-manifold "
                                        "must share one dimension");
        dim_ = *d;
    }

    const BlockFamily* family_ptr() const {
        return catalog_.family() ? &*catalog_.family() : nullptr;
    }

    ExtCount required_usage(const std::string& name) const {
        const auto& inf = std::get<Infinite>(pattern_);
        auto u = inf.plan.declared_usage(name, family_ptr());
        if (!u)
            throw NotSymbolicallyComputable("usage of block '" + name + "' is not declared");
        return *u;
    }

    void validate_samples() const {
        const auto& inf = std::get<Infinite>(pattern_);
        const std::uint64_t n = sample_depth_;
        std::vector<std::uint64_t> parents(n, 0);
        for (std::uint64_t v = 0; v < n; ++v) {
            if (v >= 1) {
                std::uint64_t p = inf.tree.parent(v);
                if (p >= v)
                    throw std::invalid_argument(
                        "tree generator violates parent(n) < n at vertex " + std::to_string(v));
                parents[v] = p;
                if (v > inf.tree.child_bound(p))
                    throw std::invalid_argument("vertex " + std::to_string(v) +
                                                " is a child of " + std::to_string(p) +
                                                " beyond its declared child bound");
            }
            std::string name = inf.plan.assign(v);
            if (!catalog_.find(name))
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " assigned unknown block '" + name + "'");
            if (!inf.plan.family_based() && catalog_.family() &&
                catalog_.family()->parse_member_index(name))
                throw std::invalid_argument(
                    "vertex " + std::to_string(v) + " assigns family member '" + name +
                    "' outside a family_counts rule; its invariants would not be counted");
        }
    }

    SymbolicFreeProduct::Tail make_pi1_tail() const {
        const auto& inf = std::get<Infinite>(pattern_);
        const BlockFamily fam = *catalog_.family();
        const CountsRule counts = inf.plan.counts();
        SymbolicFreeProduct::Tail tail;
        tail.entry = [fam, counts](std::uint64_t j)
            -> std::optional<std::pair<FactorLabel, ExtCount>> {
            auto idx = surviving_member(counts, j);
            if (!idx) return std::nullopt;
            return std::make_pair(*fam.member_label(*idx), counts.usage(*idx));
        };
        tail.lookup = [fam, counts](const FactorLabel& q) -> std::optional<ExtCount> {
            const BlockFamily::MemberMatch m = fam.match_label(q);
            if (!m.in_family) return ExtCount(0);
            if (!m.index) return std::nullopt;  // member exists, usage not indexable
            if (auto cut = counts.cutoff(); cut && *m.index > *cut) return ExtCount(0);
            return counts.usage(*m.index);
        };
        tail.infinite = fam.infinite() && counts.infinitely_many_used();
        tail.all_odd_declared = fam.guarantees().all_odd;
        tail.assumptions = fam.guarantee_strings();
        tail.description = "one " +
                           std::string(fam.preset() == BlockFamily::Preset::lens ? "Z_p" : "factor") +
                           " per used member of " + fam.str();
        return tail;
    }

    TailSchema make_homology_tail(unsigned copies) const {
        const auto& inf = std::get<Infinite>(pattern_);
        const BlockFamily fam = *catalog_.family();
        const CountsRule counts = inf.plan.counts();
        auto entry = [fam, counts, copies](std::uint64_t j) -> std::optional<TailEntry> {
            auto idx = surviving_member(counts, j);
            if (!idx) return std::nullopt;
            return TailEntry{fam.member_prime_power(*idx),
                             counts.usage(*idx) * ExtCount(Int(copies))};
        };
        const bool infinite = fam.infinite() && counts.infinitely_many_used();
        const bool ascending = fam.primes().strictly_ascending();
        TailSchema tail(entry, infinite, ascending, fam.guarantees().all_odd,
                        fam.guarantees().distinct, fam.guarantees().finite_nonzero_usage,
                        fam.guarantee_strings(),
                        std::to_string(copies) + " x Z_q per use of each member of " + fam.str());
        tail.set_exact_lookup(
            [fam, counts, copies](const PrimePower& q) -> std::optional<ExtCount> {
                const BlockFamily::MemberMatch m = fam.match_prime_power(q);
                if (!m.in_family) return ExtCount(0);
                if (!m.index) return std::nullopt;  // member exists, usage not indexable
                if (auto cut = counts.cutoff(); cut && *m.index > *cut) return ExtCount(0);
                return counts.usage(*m.index) * ExtCount(Int(copies));
            });
        return tail;
    }

    // Index of the j-th family member with nonzero usage.
    static std::optional<std::uint64_t> surviving_member(const CountsRule& counts,
                                                         std::uint64_t j) {
        std::uint64_t seen = 0;
        for (std::uint64_t i = 1;; ++i) {
            if (auto cut = counts.cutoff(); cut && i > *cut) return std::nullopt;
            if (!counts.usage(i).is_zero()) {
                if (++seen == j) return i;
            }
        }
    }

    std::variant<FiniteGraph, Infinite> pattern_;
    Catalog catalog_;
    std::uint64_t sample_depth_ = 64;
    std::uint64_t truncation_cap_ = 100000;
    int dim_ = 0;
};

}  // namespace nonleaf
