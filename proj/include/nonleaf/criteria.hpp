#pragma once

#include "nonleaf/manifold.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

enum class Status { certified, refuted, undecidable_at_depth };

inline const char* status_str(Status s) {
    switch (s) {
        case Status::certified: return "certified";
        case Status::refuted: return "refuted";
        case Status::undecidable_at_depth: return "undecidable-at-depth";
    }
    return "?";
}

inline constexpr const char* kNonLeafConclusion =
    "not homeomorphic to any leaf of a codimension one foliation of a compact manifold";

inline constexpr const char* kLimitationSignatures =
    "block distinctness is decided at the level of invariant signatures; equal signatures mean "
    "indistinguishable in this model, not homeomorphic";
inline constexpr const char* kLimitationNominalIsomorphism =
    "group factor isomorphism is nominal: factors compare equal exactly when their labels agree";
inline constexpr const char* kLimitationDualityFill =
    "suspension presets fill degree d-k-1 homology with the torsion dual of degree k as a "
    "modeling convention";

struct Witness {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
};

struct Verdict {
    std::string check;
    Status status = Status::refuted;
    std::vector<Witness> witnesses;
    std::vector<std::string> assumptions;
    std::string detail;
};

struct Certificate {
    std::string theorem;  // "A" | "B-via-4.2" | "C"
    std::string manifold;
    Status status = Status::refuted;
    std::vector<Verdict> hypotheses;
    std::string conclusion;  // non-empty only when certified
    std::vector<std::string> assumptions;
    std::vector<std::string> model_limitations;
};

namespace detail {

inline void merge_assumptions(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const auto& a : from)
        if (std::find(into.begin(), into.end(), a) == into.end()) into.push_back(a);
}

inline std::vector<std::string> model_limitations_for(const Catalog& cat) {
    std::vector<std::string> out{kLimitationSignatures, kLimitationNominalIsomorphism};
    bool suspension = cat.family() && cat.family()->preset() == BlockFamily::Preset::suspension;
    for (const auto& [name, b] : cat.blocks())
        if (b.name().rfind("susp(", 0) == 0) suspension = true;
    if (suspension) out.push_back(kLimitationDualityFill);
    return out;
}

inline void finalize(Certificate& cert) {
    cert.status = Status::certified;
    for (const auto& h : cert.hypotheses) {
        if (h.status == Status::refuted) {
            cert.status = Status::refuted;
            break;
        }
        if (h.status == Status::undecidable_at_depth) cert.status = Status::undecidable_at_depth;
    }
    if (cert.status == Status::certified) cert.conclusion = kNonLeafConclusion;
    std::vector<std::string> as;
    for (const auto& h : cert.hypotheses) merge_assumptions(as, h.assumptions);
    std::sort(as.begin(), as.end());
    cert.assumptions = std::move(as);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// non-repeating sets

// Certifies that a catalog is non-repeating: no two blocks share a pi1
// factor, and every simply connected block owns a prime power homology
// summand no other block has. For an enumerated family the pairwise checks
// run on the first `sample_depth` members; the family's declared distinctness
// guarantee covers the remainder and is recorded as an assumption.
inline Verdict check_non_repeating(const Catalog& s, std::uint64_t sample_depth = 64) {
    Verdict v;
    v.check = "catalog-non-repeating";

    if (s.empty()) {
        v.status = Status::certified;
        v.detail = "empty catalog is vacuously non-repeating";
        return v;
    }
    if (!s.uniform_dimension()) {
        v.status = Status::refuted;
        Witness w{"dimension-mismatch", {}};
        std::optional<int> d;
        for (const auto& [name, b] : s.blocks()) {
            if (d && b.dim() != *d) {
                w.fields.emplace_back("block", name);
                w.fields.emplace_back("dim", std::to_string(b.dim()));
            } else if (!d) {
                d = b.dim();
                w.fields.emplace_back("block", name);
                w.fields.emplace_back("dim", std::to_string(b.dim()));
            }
        }
        if (s.family()) {
            w.fields.emplace_back("family", s.family()->name());
            w.fields.emplace_back("dim", std::to_string(s.family()->dimension()));
        }
        v.witnesses.push_back(std::move(w));
        v.detail = "blocks do not share one dimension";
        return v;
    }

    const BlockFamily* fam = s.family() ? &*s.family() : nullptr;
    std::uint64_t sampled_members = 0;
    bool exhaustive = true;
    if (fam) {
        if (fam->infinite()) {
            sampled_members = sample_depth;
            exhaustive = false;
        } else {
            sampled_members = fam->primes().list_size();
            if (sampled_members > sample_depth) {
                sampled_members = sample_depth;
                exhaustive = false;
            }
        }
    }

    std::vector<std::pair<std::string, Block>> all;
    for (const auto& [name, b] : s.blocks()) all.emplace_back(name, b);
    std::map<std::string, std::uint64_t> member_index;
    for (std::uint64_t i = 1; i <= sampled_members; ++i) {
        all.emplace_back(fam->member_name(i), fam->member(i));
        member_index[fam->member_name(i)] = i;
    }

    // condition 1: no pair shares a free factor
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            if (!shares_factor(all[a].second.pi1(), all[b].second.pi1())) continue;
            for (const auto& [q, m] : all[a].second.pi1().factors())
                if (!all[b].second.pi1().count_factor(q).is_zero()) {
                    v.status = Status::refuted;
                    v.witnesses.push_back(Witness{"shared-free-factor",
                                                  {{"block", all[a].first},
                                                   {"block", all[b].first},
                                                   {"factor", q.str()}}});
                    v.detail = "blocks '" + all[a].first + "' and '" + all[b].first +
                               "' share the free factor " + q.str();
                    return v;
                }
        }
    // condition 1 against unsampled family members (exact: label membership in
    // the family is decidable even where the member index is not)
    if (fam && !exhaustive)
        for (const auto& [name, b] : s.blocks())
            for (const auto& [q, m] : b.pi1().factors()) {
                const BlockFamily::MemberMatch match = fam->match_label(q);
                if (!match.in_family) continue;
                if (match.index && *match.index <= sampled_members) continue;  // caught pairwise
                const std::string member = match.index
                                               ? fam->member_name(*match.index)
                                               : fam->name() + "[factor " + q.str() + "]";
                v.status = Status::refuted;
                v.witnesses.push_back(Witness{"shared-free-factor",
                                              {{"block", name},
                                               {"block", member},
                                               {"factor", q.str()}}});
                v.detail = "block '" + name + "' shares the free factor " + q.str() +
                           " with family member " + member;
                return v;
            }

    // condition 2: every simply connected block owns a distinguishing summand
    const int d = *s.uniform_dimension();
    for (const auto& [name, b1] : all) {
        if (!b1.simply_connected()) continue;
        std::uint64_t self_idx = member_index.count(name) ? member_index[name] : 0;
        std::optional<std::pair<int, PrimePower>> found;
        for (int r = 2; r <= d - 1 && !found; ++r)
            for (const auto& [q, c] : b1.homology(r).torsion()) {
                bool unique = true;
                for (const auto& [oname, other] : all) {
                    if (oname == name) continue;
                    if (other.homology(r).count_summands(q) > 0) {
                        unique = false;
                        break;
                    }
                }
                if (unique && fam && !exhaustive && fam->torsion_copies_at(r) > 0) {
                    const BlockFamily::MemberMatch match = fam->match_prime_power(q);
                    if (match.in_family &&
                        (!match.index || (*match.index != self_idx &&
                                          *match.index > sampled_members)))
                        unique = false;
                }
                if (unique) {
                    found = std::make_pair(r, q);
                    break;
                }
            }
        if (!found) {
            v.status = Status::refuted;
            v.witnesses.push_back(Witness{
                "no-distinguishing-summand",
                {{"block", name}}});
            v.detail = "simply connected block '" + name +
                       "' has no prime power summand absent from every other block";
            return v;
        }
        v.witnesses.push_back(Witness{"distinguishing-summand",
                                      {{"block", name},
                                       {"r", std::to_string(found->first)},
                                       {"prime_power", found->second.str()}}});
    }

    // condition 2 for unsampled simply connected members whose prime power is
    // also carried by an explicit block (exact collision scan, keyed by prime)
    if (fam && !exhaustive && fam->members_simply_connected()) {
        std::map<Int, std::set<int>> blocked;
        for (const auto& [name, b] : s.blocks())
            for (int r = 2; r <= d - 1; ++r)
                for (const auto& [q, c] : b.homology(r).torsion()) {
                    const BlockFamily::MemberMatch match = fam->match_prime_power(q);
                    if (match.in_family && (!match.index || *match.index > sampled_members))
                        blocked[q.prime()].insert(r);
                }
        for (const auto& [prime, degrees] : blocked) {
            bool free_degree = false;
            for (int r = 2; r <= d - 1; ++r)
                if (fam->torsion_copies_at(r) > 0 && !degrees.count(r)) free_degree = true;
            if (!free_degree) {
                auto idx = fam->primes().index_of(prime);
                const std::string member = idx ? fam->member_name(*idx)
                                               : fam->name() + "[p=" + prime.str() + "]";
                v.status = Status::refuted;
                v.witnesses.push_back(Witness{"no-distinguishing-summand",
                                              {{"block", member}}});
                v.detail = "family member " + member +
                           "'s prime power also occurs in an explicit block at every degree";
                return v;
            }
        }
    }

    if (!exhaustive) {
        if (!fam->guarantees().distinct) {
            v.status = Status::undecidable_at_depth;
            v.detail = "pairwise checks pass on the first " + std::to_string(sampled_members) +
                       " family members, but the family declares no distinctness guarantee";
            return v;
        }
        v.assumptions = fam->guarantee_strings();
    }
    v.status = Status::certified;
    v.detail = "no shared free factors; every simply connected block has a distinguishing summand";
    return v;
}

// ---------------------------------------------------------------------------
// counting bounds

struct BoundResult {
    std::optional<ExtCount> bound;  // nullopt: not determinable at this depth
    std::optional<Witness> minimizer;
    std::vector<std::string> assumptions;
    std::string detail;
};

// Upper bound on the number of disjoint deleted B-blocks a sum-manifold can
// contain. Non-trivial pi1: minimize floor(count of q in pi1(W) / count in
// pi1(B)) over factors q of B. Simply connected B: minimize over homology
// prime power summands instead. Ties resolve to the least (r, p, j).
inline BoundResult max_disjoint_deleted_blocks_bound(const SumManifold& w, const Block& b) {
    if (b.is_trivial_sphere())
        throw std::invalid_argument(
            "bound is undefined for the trivial block: every manifold contains arbitrarily many "
            "deleted spheres");
    BoundResult res;
    if (!b.pi1().is_trivial()) {
        SymbolicFreeProduct pi = w.fundamental_group();
        for (const auto& [q, c] : b.pi1().factors()) {
            auto avail = pi.count_factor(q);
            if (!avail) {
                res.bound = std::nullopt;
                res.minimizer = std::nullopt;
                res.detail = "multiplicity of " + q.str() +
                             " in pi1 is not determinable at the sampling depth";
                return res;
            }
            ExtCount val = avail->floor_div(c.finite());
            if (!res.bound || val < *res.bound) {
                res.bound = val;
                res.minimizer = Witness{"pi1-factor",
                                        {{"factor", q.str()},
                                         {"available", avail->str()},
                                         {"per_block", c.str()}}};
            }
        }
        res.detail = "minimum over pi1 factors of B";
        return res;
    }
    const int d = w.dimension();
    for (int r = 2; r <= d - 1; ++r) {
        const auto& torsion = b.homology(r).torsion();
        if (torsion.empty()) continue;
        SymbolicAbelianGroup hw = w.homology(r);
        for (const auto& [q, c] : torsion) {
            auto mult = hw.multiplicity(q, w.sample_depth());
            if (mult.relied_on_declaration && hw.tail)
                detail::merge_assumptions(res.assumptions, hw.tail->assumptions());
            if (!mult.value) {
                res.bound = std::nullopt;
                res.minimizer = std::nullopt;
                res.detail = "multiplicity of " + q.str() + " in H_" + std::to_string(r) +
                             " is not determinable at the sampling depth";
                return res;
            }
            ExtCount val = mult.value->floor_div(Int(c));
            if (!res.bound || val < *res.bound) {
                res.bound = val;
                res.minimizer = Witness{"homology-summand",
                                        {{"r", std::to_string(r)},
                                         {"prime_power", q.str()},
                                         {"available", mult.value->str()},
                                         {"per_block", std::to_string(c)}}};
            }
        }
    }
    if (!res.bound) {
        res.bound = ExtCount::omega();
        res.detail = "B has no torsion summands; no finite bound is derivable";
    } else {
        res.detail = "minimum over homology prime power summands of B";
    }
    return res;
}

// A block repeats finitely when the manifold witnesses at least one deleted
// copy and the disjoint-copies bound is finite.
inline Verdict repeats_finitely(const SumManifold& w, const Block& b) {
    Verdict v;
    v.check = "repeats-finitely(" + b.name() + ")";
    ExtCount usage = w.usage_count(b.name());
    if (usage.is_zero()) {
        v.status = Status::refuted;
        v.witnesses.push_back(Witness{"no-deleted-block", {{"block", b.name()}, {"usage", "0"}}});
        v.detail = "block '" + b.name() + "' is never used; no deleted copy is witnessed";
        return v;
    }
    BoundResult br = max_disjoint_deleted_blocks_bound(w, b);
    v.assumptions = br.assumptions;
    if (!br.bound) {
        v.status = Status::undecidable_at_depth;
        v.detail = br.detail;
        return v;
    }
    if (br.bound->is_omega()) {
        v.status = Status::refuted;
        Witness w1{"unbounded-repetition", {{"block", b.name()}, {"bound", "omega"}}};
        if (br.minimizer)
            for (const auto& f : br.minimizer->fields) w1.fields.push_back(f);
        v.witnesses.push_back(std::move(w1));
        v.detail = "no finite bound on disjoint deleted copies of '" + b.name() + "'";
        return v;
    }
    v.status = Status::certified;
    Witness w1{"finite-repetition",
               {{"block", b.name()}, {"usage", usage.str()}, {"bound", br.bound->str()}}};
    if (br.minimizer)
        for (const auto& f : br.minimizer->fields) w1.fields.push_back(f);
    v.witnesses.push_back(std::move(w1));
    v.detail = "at most " + br.bound->str() + " disjoint deleted copies of '" + b.name() + "'";
    return v;
}

// ---------------------------------------------------------------------------
// non-periodicity

enum class PeriodicityMode { homotopy, homology };

inline const char* mode_str(PeriodicityMode m) {
    return m == PeriodicityMode::homotopy ? "homotopy" : "homology";
}

// Certifies that pi_k (homotopy mode, Hurewicz identification) or H_k of the
// manifold is an all-odd-prime-power torsion sum in which infinitely many
// prime powers occur with finite nonzero multiplicity.
inline Verdict check_non_periodic(const SumManifold& w, int k, PeriodicityMode mode) {
    Verdict v;
    v.check = std::string("non-periodic(k=") + std::to_string(k) + ", mode=" + mode_str(mode) + ")";
    if (k < 2 || k > w.dimension() - 1)
        throw std::invalid_argument("non-periodic: k must lie in [2, d-1]");

    if (mode == PeriodicityMode::homotopy) {
        try {
            w.require_simply_connected_tree(k);
        } catch (const std::invalid_argument& e) {
            v.status = Status::refuted;
            v.witnesses.push_back(Witness{"connectivity", {{"reason", e.what()}}});
            v.detail = std::string("homotopy mode requires (k-1)-connected blocks on a tree: ") +
                       e.what();
            return v;
        }
    }

    SymbolicAbelianGroup g = w.homology(k);

    if (!g.rank.is_zero()) {
        v.status = Status::refuted;
        v.witnesses.push_back(Witness{"infinite-order-summand", {{"rank", g.rank.str()}}});
        v.detail = "the group has infinite cyclic summands; it is not an odd prime power "
                   "torsion sum";
        return v;
    }
    for (const auto& [q, m] : g.head)
        if (!q.odd()) {
            v.status = Status::refuted;
            v.witnesses.push_back(
                Witness{"even-prime-power", {{"prime_power", q.str()}, {"multiplicity", m.str()}}});
            v.detail = "summand " + q.str() + " has even order";
            return v;
        }

    if (!g.tail || !g.tail->infinite()) {
        v.status = Status::refuted;
        Witness w1{"finite-support", {}};
        std::size_t listed = 0;
        for (const auto& [q, m] : g.head) {
            if (listed++ == 8) break;
            w1.fields.emplace_back(q.str(), m.str());
        }
        w1.fields.emplace_back("distinct_prime_powers",
                               g.tail ? ">= " + std::to_string(g.head.size()) + " (tail exhausts)"
                                      : std::to_string(g.head.size()));
        v.witnesses.push_back(std::move(w1));
        v.detail = "only finitely many prime powers occur; the group cannot contain infinitely "
                   "many with finite nonzero multiplicity";
        return v;
    }

    // sample the tail
    const std::uint64_t n = w.sample_depth();
    std::set<PrimePower> seen;
    std::optional<PrimePower> prev;
    std::ostringstream preview;
    std::size_t previewed = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        auto e = g.tail->entry(i);
        if (!e) break;  // cannot happen for an infinite tail
        if (g.excluded().count(e->q)) continue;  // folded into the head
        if (!e->q.odd()) {
            v.status = Status::refuted;
            v.witnesses.push_back(Witness{"even-prime-power",
                                          {{"prime_power", e->q.str()},
                                           {"multiplicity", e->count.str()},
                                           {"tail_entry", std::to_string(i)}}});
            v.detail = "tail entry " + std::to_string(i) + " has even order " + e->q.str();
            return v;
        }
        if (e->count.is_omega() || e->count.is_zero()) {
            v.status = Status::refuted;
            v.witnesses.push_back(Witness{"non-finite-nonzero-multiplicity",
                                          {{"prime_power", e->q.str()},
                                           {"multiplicity", e->count.str()},
                                           {"tail_entry", std::to_string(i)}}});
            v.detail = "tail entry " + std::to_string(i) + " has multiplicity " + e->count.str();
            return v;
        }
        bool duplicate = seen.count(e->q) || g.head.count(e->q) ||
                         (g.tail->ascending() && prev && !(*prev < e->q));
        if (duplicate) {
            v.status = Status::refuted;
            v.witnesses.push_back(Witness{"duplicate-prime-power",
                                          {{"prime_power", e->q.str()},
                                           {"tail_entry", std::to_string(i)}}});
            v.detail = "tail entry " + std::to_string(i) + " repeats the prime power " +
                       e->q.str();
            return v;
        }
        seen.insert(e->q);
        prev = e->q;
        if (previewed < 3) {
            preview << (previewed ? ", " : "") << e->q.str() << " x" << e->count.str();
            ++previewed;
        }
    }

    const bool guaranteed = g.tail->guarantee_all_odd() && g.tail->guarantee_distinct() &&
                            g.tail->guarantee_finite_nonzero();
    if (!guaranteed) {
        v.status = Status::undecidable_at_depth;
        v.detail = "the first " + std::to_string(n) +
                   " tail entries are consistent, but the schema does not declare the "
                   "guarantees needed to cover the remainder";
        return v;
    }
    v.status = Status::certified;
    v.assumptions = g.tail->assumptions();
    v.witnesses.push_back(Witness{"tail-sample",
                                  {{"sampled_entries", std::to_string(n)},
                                   {"first_entries", preview.str()}}});
    v.detail = "all-odd prime power torsion with an infinite tail of finite nonzero "
               "multiplicities";
    return v;
}

// ---------------------------------------------------------------------------
// theorems

namespace detail {

// Hypothesis: the fundamental group of every used block is trivial or
// generated by torsion elements of odd order.
inline Verdict odd_torsion_hypothesis(const SumManifold& w) {
    Verdict v;
    v.check = "odd-torsion-fundamental-groups";
    auto fail = [&](const std::string& block, const FactorLabel& q) {
        v.status = Status::refuted;
        v.witnesses.push_back(
            Witness{"non-odd-torsion-factor", {{"block", block}, {"factor", q.str()}}});
        v.detail = "fundamental group of block '" + block +
                   "' is not generated by torsion elements of odd order (offending factor " +
                   q.str() + ")";
    };
    auto check_block = [&](const std::string& name, const Block& b) -> bool {
        for (const auto& [q, m] : b.pi1().factors()) {
            if (!q.odd_torsion_ok()) {
                fail(name, q);
                return false;
            }
            if (q.kind() == FactorLabel::Kind::opaque)
                merge_assumptions(v.assumptions,
                                  {"opaque group '" + q.name() +
                                   "' generated by torsion of odd order (declared)"});
        }
        return true;
    };

    if (w.finite()) {
        const auto& g = w.graph();
        std::set<std::string> done;
        for (const auto& name : g.assignment) {
            if (!done.insert(name).second) continue;
            if (!check_block(name, *w.catalog().find(name))) return v;
        }
        v.status = Status::certified;
        v.detail = "every used block passes";
        return v;
    }

    for (const auto& [name, b] : w.catalog().blocks()) {
        if (w.usage_count(name).is_zero()) continue;
        if (!check_block(name, b)) return v;
    }
    const BlockFamily* fam = w.catalog().family() ? &*w.catalog().family() : nullptr;
    if (fam && w.plan().family_based()) {
        const std::uint64_t n = w.sample_depth();
        for (std::uint64_t i = 1; i <= n; ++i) {
            if (w.plan().counts().usage(i).is_zero()) continue;
            if (auto cut = w.plan().counts().cutoff(); cut && i > *cut) break;
            if (!check_block(fam->member_name(i), fam->member(i))) return v;
        }
        if (!fam->members_simply_connected()) {
            // the unsampled remainder leans on the declared all-odd guarantee
            if (!fam->guarantees().all_odd) {
                v.status = Status::undecidable_at_depth;
                v.detail = "family members beyond the sampling depth need a declared all-odd "
                           "guarantee";
                return v;
            }
            merge_assumptions(v.assumptions, fam->guarantee_strings());
        }
    }
    v.status = Status::certified;
    v.detail = "every used block passes";
    return v;
}

}  // namespace detail

// Theorem A hypotheses: infinite tree pattern; every used block's pi1 trivial
// or generated by odd-order torsion; an enumerated infinite family of
// pairwise distinct blocks, each repeating finitely.
inline Certificate check_theorem_A(const SumManifold& w) {
    Certificate cert;
    cert.theorem = "A";
    cert.manifold = w.description();
    cert.model_limitations = detail::model_limitations_for(w.catalog());

    {
        Verdict h;
        h.check = "pattern-is-infinite-tree";
        if (w.infinite_tree()) {
            h.status = Status::certified;
            h.detail = "pattern is an infinite rooted tree";
        } else {
            h.status = Status::refuted;
            h.witnesses.push_back(Witness{"finite-pattern", {{"pattern", w.description()}}});
            h.detail = "pattern is finite";
        }
        cert.hypotheses.push_back(std::move(h));
        if (cert.hypotheses.back().status != Status::certified) {
            detail::finalize(cert);
            return cert;
        }
    }

    cert.hypotheses.push_back(detail::odd_torsion_hypothesis(w));
    if (cert.hypotheses.back().status != Status::certified) {
        detail::finalize(cert);
        return cert;
    }

    {
        Verdict h;
        h.check = "infinitely-many-distinct-blocks-repeat-finitely";
        const BlockFamily* fam = w.catalog().family() ? &*w.catalog().family() : nullptr;
        if (!fam || !w.plan().family_based()) {
            h.status = Status::refuted;
            h.detail = "the catalog enumerates only finitely many distinct blocks";
            h.witnesses.push_back(Witness{"no-infinite-family", {}});
        } else if (!fam->infinite() || !w.plan().counts().infinitely_many_used()) {
            h.status = Status::refuted;
            h.detail = "only finitely many family members are ever used";
            h.witnesses.push_back(Witness{"finitely-many-members-used", {}});
        } else {
            const std::uint64_t n = w.sample_depth();
            std::map<std::string, std::string> sigs;  // signature -> member name
            std::ostringstream preview;
            std::size_t previewed = 0;
            h.status = Status::certified;
            for (std::uint64_t i = 1; i <= n; ++i) {
                ExtCount u = w.plan().counts().usage(i);
                if (u.is_zero() || u.is_omega()) {
                    h.status = Status::refuted;
                    h.witnesses.push_back(Witness{"usage-declaration-violated",
                                                  {{"block", fam->member_name(i)},
                                                   {"usage", u.str()}}});
                    h.detail = "family member " + fam->member_name(i) + " is declared used " +
                               u.str() + " times; a finite nonzero count is required";
                    break;
                }
                Block member = fam->member(i);
                auto [it, fresh] = sigs.emplace(member.signature(), member.name());
                if (!fresh) {
                    h.status = Status::refuted;
                    h.witnesses.push_back(Witness{"indistinct-members",
                                                  {{"block", it->second},
                                                   {"block", member.name()}}});
                    h.detail = "family members " + it->second + " and " + member.name() +
                               " have equal signatures";
                    break;
                }
                Verdict rf = repeats_finitely(w, member);
                detail::merge_assumptions(h.assumptions, rf.assumptions);
                if (rf.status != Status::certified) {
                    h.status = rf.status;
                    h.witnesses = rf.witnesses;
                    h.detail = "family member " + member.name() + ": " + rf.detail;
                    break;
                }
                if (previewed < 3 && !rf.witnesses.empty()) {
                    // keep the first few full finite-repetition witnesses so the
                    // certificate shows which factor or summand bounded them
                    h.witnesses.push_back(rf.witnesses[0]);
                    for (const auto& [key, val] : rf.witnesses[0].fields)
                        if (key == "bound")
                            preview << (previewed ? "; " : "") << member.name() << ": " << val;
                    ++previewed;
                }
            }
            if (h.status == Status::certified) {
                if (!fam->guarantees().distinct || !fam->guarantees().finite_nonzero_usage) {
                    h.status = Status::undecidable_at_depth;
                    h.witnesses.clear();
                    h.detail = "the first " + std::to_string(n) +
                               " members certify, but the family does not declare the "
                               "distinctness/finite-usage guarantees needed beyond the samples";
                } else {
                    detail::merge_assumptions(h.assumptions, fam->guarantee_strings());
                    h.witnesses.push_back(Witness{"sampled-members",
                                                  {{"count", std::to_string(n)},
                                                   {"bounds", preview.str()}}});
                    h.detail = "the first " + std::to_string(n) +
                               " family members are pairwise distinct and repeat finitely";
                }
            }
        }
        cert.hypotheses.push_back(std::move(h));
    }

    detail::finalize(cert);
    return cert;
}

// Theorem C hypotheses: the pattern is an infinite tree over the catalog S,
// S is non-repeating, every block's pi1 passes the odd-torsion hypothesis,
// and infinitely many blocks are used a finite nonzero number of times.
inline Certificate check_theorem_C(const SumManifold& w, const Catalog& s) {
    Certificate cert;
    cert.theorem = "C";
    cert.manifold = w.description();
    cert.model_limitations = detail::model_limitations_for(s);

    {
        Verdict h;
        h.check = "blocks-belong-to-catalog";
        h.status = Status::certified;
        h.detail = "every assigned block belongs to the catalog";
        if (w.finite()) {
            for (const auto& name : w.graph().assignment)
                if (!s.find(name)) {
                    h.status = Status::refuted;
                    h.witnesses.push_back(Witness{"foreign-block", {{"block", name}}});
                    h.detail = "assigned block '" + name + "' is not in the catalog";
                    break;
                }
        } else {
            for (std::uint64_t v = 0; v < w.sample_depth(); ++v) {
                std::string name = w.plan().assign(v);
                if (!s.find(name)) {
                    h.status = Status::refuted;
                    h.witnesses.push_back(Witness{"foreign-block",
                                                  {{"block", name},
                                                   {"vertex", std::to_string(v)}}});
                    h.detail = "assigned block '" + name + "' is not in the catalog";
                    break;
                }
            }
        }
        cert.hypotheses.push_back(std::move(h));
        if (cert.hypotheses.back().status != Status::certified) {
            detail::finalize(cert);
            return cert;
        }
    }

    {
        Verdict h;
        h.check = "pattern-is-infinite-tree";
        if (w.infinite_tree()) {
            h.status = Status::certified;
            h.detail = "pattern is an infinite rooted tree";
        } else {
            h.status = Status::refuted;
            h.witnesses.push_back(Witness{"finite-pattern", {{"pattern", w.description()}}});
            h.detail = "pattern is finite";
        }
        cert.hypotheses.push_back(std::move(h));
        if (cert.hypotheses.back().status != Status::certified) {
            detail::finalize(cert);
            return cert;
        }
    }

    cert.hypotheses.push_back(check_non_repeating(s, w.sample_depth()));
    if (cert.hypotheses.back().status != Status::certified) {
        detail::finalize(cert);
        return cert;
    }

    cert.hypotheses.push_back(detail::odd_torsion_hypothesis(w));
    if (cert.hypotheses.back().status != Status::certified) {
        detail::finalize(cert);
        return cert;
    }

    {
        Verdict h;
        h.check = "infinitely-many-finitely-used-blocks";
        const BlockFamily* fam = s.family() ? &*s.family() : nullptr;
        if (!fam || !w.infinite_tree() || !w.plan().family_based()) {
            h.status = Status::refuted;
            Witness w1{"finitely-used-set-is-finite", {}};
            if (!w.finite())
                for (const auto& [name, b] : s.blocks())
                    w1.fields.emplace_back(name, w.usage_count(name).str());
            h.witnesses.push_back(std::move(w1));
            h.detail = "the set of blocks used a finite nonzero number of times is finite";
        } else if (!fam->infinite() || !w.plan().counts().infinitely_many_used()) {
            h.status = Status::refuted;
            h.witnesses.push_back(Witness{"finitely-many-members-used", {}});
            h.detail = "only finitely many family members are ever used";
        } else {
            h.status = Status::certified;
            const std::uint64_t n = w.sample_depth();
            for (std::uint64_t i = 1; i <= n; ++i) {
                ExtCount u = w.plan().counts().usage(i);
                if (u.is_zero() || u.is_omega()) {
                    h.status = Status::refuted;
                    h.witnesses.push_back(Witness{"usage-declaration-violated",
                                                  {{"block", fam->member_name(i)},
                                                   {"usage", u.str()}}});
                    h.detail = "family member " + fam->member_name(i) + " is declared used " +
                               u.str() + " times; a finite nonzero count is required";
                    break;
                }
            }
            if (h.status == Status::certified) {
                if (!fam->guarantees().finite_nonzero_usage) {
                    h.status = Status::undecidable_at_depth;
                    h.detail = "usage counts are finite and nonzero on the first " +
                               std::to_string(n) +
                               " members, but the family does not declare the finite-nonzero "
                               "usage guarantee";
                } else {
                    detail::merge_assumptions(h.assumptions, fam->guarantee_strings());
                    h.witnesses.push_back(Witness{"sampled-members",
                                                  {{"count", std::to_string(n)}}});
                    h.detail = "infinitely many family members are used a finite nonzero number "
                               "of times";
                }
            }
        }
        cert.hypotheses.push_back(std::move(h));
    }

    detail::finalize(cert);
    return cert;
}

// Theorem B route: certify non-periodicity, then replay the Theorem A check.
inline Certificate check_theorem_B(const SumManifold& w, int k, PeriodicityMode mode) {
    Certificate cert;
    cert.theorem = "B-via-4.2";
    cert.manifold = w.description();
    cert.model_limitations = detail::model_limitations_for(w.catalog());

    Verdict np = check_non_periodic(w, k, mode);
    cert.hypotheses.push_back(np);
    if (np.status != Status::certified) {
        detail::finalize(cert);
        return cert;
    }

    Certificate a = check_theorem_A(w);
    for (auto& h : a.hypotheses) cert.hypotheses.push_back(std::move(h));
    detail::finalize(cert);
    return cert;
}

}  // namespace nonleaf
