#pragma once

#include "nonleaf/criteria.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

struct OracleReport {
    std::string check;
    std::string instance;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::uint64_t seed = 0;
};

struct OracleCaps {
    Int enumeration_cap = 10000;
    std::uint64_t max_tree_vertices = 12;
    std::uint64_t max_matrix_dim = 6;
    std::int64_t max_entry = 10;
};

namespace oracle_detail {

// Cofactor-expansion determinant. Deliberately not the elimination code that
// backs the Smith normal form.
inline Int det_cofactor(const std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor(n - 1, std::vector<Int>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        Int term = m[0][j] * det_cofactor(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

inline std::vector<std::vector<Int>> to_rows(const IntegerPresentation& m) {
    std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

// adj(m)[i][j] = (-1)^{i+j} * minor(m with row j, column i removed)
inline std::vector<std::vector<Int>> adjugate(const std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Int>> adj(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Int>> minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Int> row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == i) continue;
                    row.push_back(m[r][c]);
                }
                minor.push_back(std::move(row));
            }
            Int v = det_cofactor(minor);
            adj[i][j] = ((i + j) % 2 == 0) ? v : -v;
        }
    return adj;
}

}  // namespace oracle_detail

// Brute-force reconstruction of a finite cokernel, independent of the Smith
// normal form path. x lies in the row lattice of M iff adj(M^T) x vanishes
// mod det, so reducing adj(M^T) x mod |det| is an injective fingerprint of
// the quotient; breadth-first closure over the generator images enumerates
// every element, and the multiset of element orders determines the group.
inline FgAbelianGroup cokernel_enumeration(const IntegerPresentation& m,
                                           const Int& cap = Int(10000)) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("cokernel_enumeration: matrix must be square");
    const std::size_t n = m.cols();
    if (n == 0) return FgAbelianGroup{};

    std::vector<std::vector<Int>> mt(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mt[i][j] = m.at(j, i);

    const Int det = oracle_detail::det_cofactor(mt);
    if (det == 0)
        throw std::invalid_argument("cokernel_enumeration: cokernel is infinite (det = 0)");
    const Int order = abs_int(det);
    if (order > cap)
        throw std::invalid_argument("cokernel_enumeration: cokernel order " + order.str() +
                                    " exceeds cap " + cap.str());
    const std::uint64_t d = static_cast<std::uint64_t>(order);

    const auto adj = oracle_detail::adjugate(mt);
    // generator fingerprints: columns of adj reduced mod d
    std::vector<std::vector<std::uint64_t>> gens(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int v = adj[j][i] % Int(d);
            if (v < 0) v += Int(d);
            gens[i][j] = static_cast<std::uint64_t>(v);
        }

    std::set<std::vector<std::uint64_t>> states;
    std::vector<std::vector<std::uint64_t>> frontier{std::vector<std::uint64_t>(n, 0)};
    states.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& s : frontier)
            for (std::size_t g = 0; g < n; ++g) {
                std::vector<std::uint64_t> t(n);
                for (std::size_t j = 0; j < n; ++j) t[j] = (s[j] + gens[g][j]) % d;
                if (states.insert(t).second) next.push_back(std::move(t));
            }
        frontier = std::move(next);
    }
    if (states.size() != d)
        throw std::logic_error("cokernel_enumeration: enumerated " +
                               std::to_string(states.size()) + " elements, determinant says " +
                               std::to_string(d));

    // element orders in (Z/d)^n
    std::map<std::uint64_t, std::uint64_t> order_count;
    for (const auto& s : states) {
        std::uint64_t o = 1;
        for (std::uint64_t c : s) o = std::lcm(o, d / std::gcd(d, c));
        ++order_count[o];
    }

    // per prime p: the counts of elements of order dividing p^k give the
    // conjugate partition of the exponent multiset
    FgAbelianGroup out;
    for (const auto& [p, e] : factorize(order)) {
        const std::uint64_t pu = static_cast<std::uint64_t>(p);
        std::vector<std::uint64_t> s_log{0};  // s_log[k] with N_k = p^{s_log[k]}
        for (unsigned k = 1;; ++k) {
            std::uint64_t pk = 1;
            for (unsigned t = 0; t < k; ++t) pk *= pu;
            std::uint64_t count = 0;
            for (const auto& [o, c] : order_count)
                if (pk % o == 0) count += c;
            std::uint64_t lg = 0;
            std::uint64_t acc = 1;
            while (acc < count) {
                acc *= pu;
                ++lg;
            }
            if (acc != count)
                throw std::logic_error("cokernel_enumeration: order statistics are not a p-group");
            s_log.push_back(lg);
            if (k > 1 && s_log[k] == s_log[k - 1]) break;
        }
        std::vector<std::uint64_t> conj;  // conj[k-1] = #parts >= k
        for (std::size_t k = 1; k < s_log.size(); ++k) conj.push_back(s_log[k] - s_log[k - 1]);
        for (std::size_t k = 0; k < conj.size(); ++k) {
            std::uint64_t here = conj[k];
            std::uint64_t next = k + 1 < conj.size() ? conj[k + 1] : 0;
            if (here > next)
                out.add_torsion(PrimePower(p, static_cast<unsigned>(k + 1)), here - next);
        }
    }
    return out;
}

// Canonical presentation of a finitely generated abelian group: one diagonal
// relation per prime power summand, plus one relation-free generator per
// infinite cyclic summand.
inline IntegerPresentation canonical_presentation(const FgAbelianGroup& g) {
    std::vector<Int> diag;
    for (const auto& [q, m] : g.torsion())
        for (std::uint64_t i = 0; i < m; ++i) diag.push_back(q.value());
    const std::size_t t = diag.size();
    IntegerPresentation m(t, t + static_cast<std::size_t>(g.rank()));
    for (std::size_t i = 0; i < t; ++i) m.at(i, i) = diag[i];
    return m;
}

// Mayer-Vietoris additivity check: the homology of a finite sum-manifold must
// equal the group presented by the block-diagonal stack of the per-vertex
// canonical presentations.
inline OracleReport stacked_presentation_check(const SumManifold& w, int r,
                                               std::uint64_t seed = 0) {
    if (!w.finite())
        throw std::invalid_argument("stacked_presentation_check: finite pattern required");
    OracleReport rep;
    rep.check = "stacked-presentation";
    rep.seed = seed;
    rep.instance = "r=" + std::to_string(r) + ", " + w.description();

    std::vector<IntegerPresentation> parts;
    std::size_t rows = 0, cols = 0;
    for (std::uint64_t v = 0; v < w.num_vertices(); ++v) {
        // regenerated from primary form, not from manifest input
        parts.push_back(canonical_presentation(w.assigned_block(v).homology(r)));
        rows += parts.back().rows();
        cols += parts.back().cols();
    }
    IntegerPresentation stacked(rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) stacked.at(ro + i, co + j) = p.at(i, j);
        ro += p.rows();
        co += p.cols();
    }

    const FgAbelianGroup via_presentation = from_presentation(stacked);
    const FgAbelianGroup via_sum = w.homology(r).to_finite();
    rep.expected = via_presentation.str();
    rep.computed = via_sum.str();
    rep.pass = via_presentation == via_sum;
    return rep;
}

// The number of vertices assigned B is a lower bound for disjoint deleted
// B-blocks; it must never exceed the counting upper bound.
inline OracleReport counting_consistency(const SumManifold& w, const Block& b,
                                         std::uint64_t seed = 0) {
    if (!w.finite())
        throw std::invalid_argument("counting_consistency: finite pattern required");
    OracleReport rep;
    rep.check = "counting-consistency";
    rep.seed = seed;
    rep.instance = "block=" + b.name() + ", " + w.description();
    ExtCount lower = w.usage_count(b.name());
    BoundResult br = max_disjoint_deleted_blocks_bound(w, b);
    rep.expected = "vertex count " + lower.str() + " <= bound";
    rep.computed = "bound " + (br.bound ? br.bound->str() : std::string("undecided"));
    rep.pass = br.bound && lower <= *br.bound;
    return rep;
}

// Monotone convergence of truncation invariants toward the declared symbolic
// values, plus a generator determinism re-check. Fails loudly with the first
// offending vertex, label or prime power.
inline OracleReport truncation_convergence(const SumManifold& w,
                                           const std::vector<std::uint64_t>& depths,
                                           std::uint64_t seed = 0) {
    if (w.finite())
        throw std::invalid_argument("truncation_convergence: infinite pattern required");
    OracleReport rep;
    rep.check = "truncation-convergence";
    rep.seed = seed;
    {
        std::ostringstream os;
        os << "depths ";
        for (std::size_t i = 0; i < depths.size(); ++i) os << (i ? "," : "") << depths[i];
        os << ", " << w.description();
        rep.instance = os.str();
    }
    rep.expected = "monotone nondecreasing, within declared usage, attained past last use";
    for (std::size_t i = 1; i < depths.size(); ++i)
        if (depths[i] <= depths[i - 1]) {
            rep.computed = "depths not increasing";
            rep.pass = false;
            return rep;
        }

    auto fail = [&](const std::string& msg) {
        rep.computed = msg;
        rep.pass = false;
        return rep;
    };

    std::map<std::string, Int> prev_block_counts;
    std::map<FactorLabel, ExtCount> prev_label_counts;
    std::map<int, std::map<PrimePower, std::uint64_t>> prev_torsion;
    const int d = w.dimension();

    for (std::uint64_t depth : depths) {
        SumManifold t1 = w.truncate(depth);
        SumManifold t2 = w.truncate(depth);
        for (std::uint64_t v = 0; v < depth; ++v)
            if (t1.graph().assignment[v] != t2.graph().assignment[v])
                return fail("generator nondeterminism at vertex " + std::to_string(v) + ": '" +
                            t1.graph().assignment[v] + "' vs '" + t2.graph().assignment[v] + "'");

        // per-block usage monotonicity against the declaration
        std::map<std::string, Int> counts;
        for (std::uint64_t v = 0; v < depth; ++v) ++counts[t1.graph().assignment[v]];
        for (const auto& [name, c] : prev_block_counts)
            if (!counts.count(name))
                return fail("usage of '" + name + "' decreased between truncations");
        for (const auto& [name, c] : counts) {
            auto it = prev_block_counts.find(name);
            if (it != prev_block_counts.end() && c < it->second)
                return fail("usage of '" + name + "' decreased between truncations");
            auto declared = w.plan().declared_usage(
                name, w.catalog().family() ? &*w.catalog().family() : nullptr);
            if (!declared) return fail("usage of '" + name + "' is not declared");
            if (declared->is_finite()) {
                if (Int(c) > declared->finite()) {
                    Int seen = 0;
                    std::uint64_t offender = 0;
                    for (std::uint64_t v = 0; v < depth; ++v)
                        if (t1.graph().assignment[v] == name && ++seen > declared->finite()) {
                            offender = v;
                            break;
                        }
                    return fail("block '" + name + "' assigned " + c.str() +
                                " times by depth " + std::to_string(depth) + ", declared " +
                                declared->str() + "; first excess at vertex " +
                                std::to_string(offender));
                }
                auto last = w.plan().last_use_vertex(
                    name, w.catalog().family() ? &*w.catalog().family() : nullptr);
                if (last && depth >= *last + 1 && Int(c) != declared->finite())
                    return fail("block '" + name + "' attained only " + c.str() + " of " +
                                declared->str() + " declared uses past its final vertex " +
                                std::to_string(*last));
            }
        }
        prev_block_counts = counts;

        // pi1 label monotonicity and consistency with the symbolic value
        SymbolicFreeProduct sym_pi = w.fundamental_group();
        const FreeProductClass pi_t = t1.fundamental_group().as_class();
        for (const auto& [label, c] : prev_label_counts)
            if (pi_t.count_factor(label) < c)
                return fail("pi1 multiplicity of " + label.str() + " decreased");
        for (const auto& [label, c] : pi_t.factors()) {
            const auto sym_c = sym_pi.count_factor(label);
            if (sym_c && c > *sym_c)
                return fail("pi1 multiplicity of " + label.str() + " exceeds the symbolic value " +
                            sym_c->str());
            prev_label_counts[label] = c;
        }

        // homology monotonicity and consistency, all degrees
        for (int r = 2; r <= d - 1; ++r) {
            SymbolicAbelianGroup sym = w.homology(r);
            FgAbelianGroup ht = t1.homology(r).to_finite();
            auto& prev = prev_torsion[r];
            for (const auto& [q, m] : prev)
                if (ht.count_summands(q) < m)
                    return fail("H_" + std::to_string(r) + " multiplicity of " + q.str() +
                                " decreased");
            for (const auto& [q, m] : ht.torsion()) {
                auto sm = sym.multiplicity(q, std::max<std::uint64_t>(w.sample_depth(), depth));
                if (sm.value && ExtCount(Int(m)) > *sm.value)
                    return fail("H_" + std::to_string(r) + " multiplicity of " + q.str() +
                                " exceeds the symbolic value " + sm.value->str());
                prev[q] = m;
            }
        }
    }
    rep.computed = "monotone and consistent across " + std::to_string(depths.size()) + " depths";
    rep.pass = true;
    return rep;
}

// ---------------------------------------------------------------------------
// seeded random instances for the oracle batteries

inline IntegerPresentation random_presentation(Rng& rng, const OracleCaps& caps) {
    const std::size_t rows = 1 + rng.below(caps.max_matrix_dim);
    const std::size_t cols = 1 + rng.below(caps.max_matrix_dim);
    IntegerPresentation m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = Int(rng.range(-caps.max_entry, caps.max_entry));
    return m;
}

inline FiniteGraph random_tree(Rng& rng, const std::vector<std::string>& names,
                               std::uint64_t max_vertices) {
    FiniteGraph g;
    g.num_vertices = 1 + rng.below(max_vertices);
    for (std::uint64_t v = 1; v < g.num_vertices; ++v) g.edges.emplace_back(rng.below(v), v);
    for (std::uint64_t v = 0; v < g.num_vertices; ++v)
        g.assignment.push_back(names[rng.below(names.size())]);
    return g;
}

// One SNF instance checked three ways: divisibility chain; for square
// full-rank matrices the invariant factor product against an independent
// determinant; and, when the cokernel is small enough, against full
// enumeration.
struct SnfInstanceResult {
    bool pass = true;
    bool det_checked = false;
    bool enumerated = false;
    std::string failure;
};

inline SnfInstanceResult check_snf_instance(const IntegerPresentation& m, const OracleCaps& caps) {
    SnfInstanceResult res;
    const std::vector<Int> diag = smith_normal_form(m);
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] < 0) {
            res.pass = false;
            res.failure = "negative invariant factor";
            return res;
        }
        if (i + 1 < diag.size()) {
            if (diag[i] == 0 && diag[i + 1] != 0) {
                res.pass = false;
                res.failure = "zero before nonzero in the chain";
                return res;
            }
            if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) {
                res.pass = false;
                res.failure = diag[i].str() + " does not divide " + diag[i + 1].str();
                return res;
            }
        }
    }
    if (m.rows() == m.cols()) {
        const Int det = oracle_detail::det_cofactor(oracle_detail::to_rows(m));
        if (det != 0) {
            res.det_checked = true;
            Int prod = 1;
            for (const Int& v : diag) prod *= v;
            if (prod != abs_int(det)) {
                res.pass = false;
                res.failure = "invariant factor product " + prod.str() + " != |det| " +
                              abs_int(det).str();
                return res;
            }
            if (abs_int(det) <= caps.enumeration_cap) {
                res.enumerated = true;
                const FgAbelianGroup via_enum = cokernel_enumeration(m, caps.enumeration_cap);
                const FgAbelianGroup via_snf = from_presentation(m);
                if (!(via_enum == via_snf)) {
                    res.pass = false;
                    res.failure = "enumeration " + via_enum.str() + " != snf " + via_snf.str();
                    return res;
                }
            }
        }
    }
    return res;
}

}  // namespace nonleaf
