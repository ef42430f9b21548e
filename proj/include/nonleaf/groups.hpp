#pragma once

#include "nonleaf/extended_count.hpp"
#include "nonleaf/numeric.hpp"

#include <map>
#include <sstream>
#include <string>

namespace nonleaf {

// A label naming a freely indecomposable group. Comparison is nominal: two
// labels denote isomorphic factors exactly when they are equal. Opaque labels
// carry a user-declared odd-torsion-generation flag that the engine trusts.
class FactorLabel {
public:
    enum class Kind { infinite_cyclic, finite_cyclic, opaque };

    static FactorLabel infinite_cyclic() { return FactorLabel(Kind::infinite_cyclic, 0, "", false); }

    static FactorLabel finite_cyclic(Int n) {
        if (n < 2) throw std::invalid_argument("FactorLabel: finite cyclic order must be >= 2");
        return FactorLabel(Kind::finite_cyclic, std::move(n), "", false);
    }

    static FactorLabel opaque(std::string name, bool odd_torsion_generated) {
        if (name.empty()) throw std::invalid_argument("FactorLabel: opaque name must be nonempty");
        return FactorLabel(Kind::opaque, 0, std::move(name), odd_torsion_generated);
    }

    Kind kind() const { return kind_; }
    const Int& order() const { return n_; }
    const std::string& name() const { return name_; }
    bool odd_torsion_declared() const { return odd_torsion_generated_; }

    // Whether this factor is generated by torsion elements of odd order.
    bool odd_torsion_ok() const {
        switch (kind_) {
            case Kind::infinite_cyclic: return false;
            case Kind::finite_cyclic: return n_ % 2 == 1;
            case Kind::opaque: return odd_torsion_generated_;
        }
        return false;
    }

    // Identity ignores the opaque flag; two opaque labels are the same group
    // iff their names agree.
    friend bool operator==(const FactorLabel& a, const FactorLabel& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_ && a.name_ == b.name_;
    }
    friend bool operator!=(const FactorLabel& a, const FactorLabel& b) { return !(a == b); }
    friend bool operator<(const FactorLabel& a, const FactorLabel& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.name_ < b.name_;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::infinite_cyclic: return "Z";
            case Kind::finite_cyclic: return "Z_" + n_.str();
            case Kind::opaque: return "opaque(" + name_ + ")";
        }
        return "?";
    }

private:
    FactorLabel(Kind k, Int n, std::string name, bool flag)
        : kind_(k), n_(std::move(n)), name_(std::move(name)), odd_torsion_generated_(flag) {}

    Kind kind_;
    Int n_;
    std::string name_;
    bool odd_torsion_generated_;
};

// A free product of labeled freely indecomposable factors, as a multiset with
// multiplicities in N ∪ {omega}. The sorted multiset is the normal form; no
// trivial factor is ever stored, so the empty class is the trivial group.
class FreeProductClass {
public:
    FreeProductClass() = default;

    static FreeProductClass trivial() { return {}; }

    static FreeProductClass single(const FactorLabel& q, ExtCount mult = ExtCount(1)) {
        FreeProductClass g;
        g.add(q, mult);
        return g;
    }

    void add(const FactorLabel& q, const ExtCount& mult) {
        if (mult.is_zero()) return;
        auto it = factors_.find(q);
        if (it == factors_.end()) {
            factors_.emplace(q, mult);
        } else {
            if (q.kind() == FactorLabel::Kind::opaque &&
                it->first.odd_torsion_declared() != q.odd_torsion_declared())
                throw std::invalid_argument("conflicting declarations for opaque group '" +
                                            q.name() + "'");
            it->second += mult;
        }
    }

    const std::map<FactorLabel, ExtCount>& factors() const { return factors_; }
    bool is_trivial() const { return factors_.empty(); }

    ExtCount count_factor(const FactorLabel& q) const {
        auto it = factors_.find(q);
        return it == factors_.end() ? ExtCount(0) : it->second;
    }

    // Total number of factors in the normal form.
    ExtCount grushko_factor_count() const {
        ExtCount total(0);
        for (const auto& [q, m] : factors_) total += m;
        return total;
    }

    bool all_finite() const {
        for (const auto& [q, m] : factors_)
            if (m.is_omega()) return false;
        return true;
    }

    // True iff trivial, or every factor is generated by torsion of odd order.
    bool generated_by_odd_torsion() const {
        for (const auto& [q, m] : factors_)
            if (!q.odd_torsion_ok()) return false;
        return true;
    }

    friend FreeProductClass free_product(const FreeProductClass& a, const FreeProductClass& b) {
        FreeProductClass g = a;
        for (const auto& [q, m] : b.factors_) g.add(q, m);
        return g;
    }

    friend bool shares_factor(const FreeProductClass& a, const FreeProductClass& b) {
        for (const auto& [q, m] : a.factors_)
            if (!b.count_factor(q).is_zero()) return true;
        return false;
    }

    friend bool operator==(const FreeProductClass& a, const FreeProductClass& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator!=(const FreeProductClass& a, const FreeProductClass& b) {
        return !(a == b);
    }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [q, m] : factors_) {
            if (!first) os << " * ";
            first = false;
            os << q.str();
            if (m != ExtCount(1)) os << " x" << m.str();
        }
        return os.str();
    }

private:
    std::map<FactorLabel, ExtCount> factors_;
};

}  // namespace nonleaf
