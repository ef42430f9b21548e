#pragma once

#include "nonleaf/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

// Z_{p^j}, a cyclic group of prime power order. Totally ordered by (p, j).
class PrimePower {
public:
    PrimePower(Int p, unsigned j) : p_(std::move(p)), j_(j) {
        if (!is_prime(p_)) throw std::invalid_argument("PrimePower: " + p_.str() + " is not prime");
        if (j_ < 1) throw std::invalid_argument("PrimePower: exponent must be >= 1");
    }

    const Int& prime() const { return p_; }
    unsigned exponent() const { return j_; }
    Int value() const { return pow_int(p_, j_); }
    bool odd() const { return p_ != 2; }

    friend bool operator==(const PrimePower& a, const PrimePower& b) {
        return a.p_ == b.p_ && a.j_ == b.j_;
    }
    friend bool operator!=(const PrimePower& a, const PrimePower& b) { return !(a == b); }
    friend bool operator<(const PrimePower& a, const PrimePower& b) {
        if (a.p_ != b.p_) return a.p_ < b.p_;
        return a.j_ < b.j_;
    }
    friend bool operator>(const PrimePower& a, const PrimePower& b) { return b < a; }
    friend bool operator<=(const PrimePower& a, const PrimePower& b) { return !(b < a); }
    friend bool operator>=(const PrimePower& a, const PrimePower& b) { return !(a < b); }

    std::string str() const { return p_.str() + "^" + std::to_string(j_); }

private:
    Int p_;
    unsigned j_;
};

// A finitely generated abelian group in primary normal form: free rank plus a
// multiset of prime power cyclic factors. Isomorphism is structural equality.
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;

    static FgAbelianGroup free_of_rank(std::uint64_t r) {
        FgAbelianGroup g;
        g.rank_ = r;
        return g;
    }

    // Z_n in primary form; n = 0 gives Z, n = 1 gives the trivial group.
    static FgAbelianGroup cyclic(const Int& n) {
        if (n < 0) throw std::invalid_argument("FgAbelianGroup::cyclic: negative order");
        FgAbelianGroup g;
        if (n == 0) {
            g.rank_ = 1;
            return g;
        }
        for (const auto& [p, e] : factorize(n)) g.torsion_[PrimePower(p, e)] += 1;
        return g;
    }

    void add_rank(std::uint64_t r) { rank_ += r; }

    void add_torsion(const PrimePower& q, std::uint64_t mult) {
        if (mult > 0) torsion_[q] += mult;
    }

    std::uint64_t rank() const { return rank_; }
    const std::map<PrimePower, std::uint64_t>& torsion() const { return torsion_; }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

    // Multiplicity of Z_q as a direct summand. Z_{p^j} is a summand iff > 0;
    // in particular Z_p is not a summand of Z_{p^2}.
    std::uint64_t count_summands(const PrimePower& q) const {
        auto it = torsion_.find(q);
        return it == torsion_.end() ? 0 : it->second;
    }

    // Number of cyclic summands (infinite plus prime power).
    std::uint64_t cyclic_summand_total() const {
        std::uint64_t n = rank_;
        for (const auto& [q, m] : torsion_) n += m;
        return n;
    }

    friend FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        FgAbelianGroup g = a;
        g.rank_ += b.rank_;
        for (const auto& [q, m] : b.torsion_) g.torsion_[q] += m;
        return g;
    }

    friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
    }
    friend bool operator!=(const FgAbelianGroup& a, const FgAbelianGroup& b) { return !(a == b); }

    std::string str() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank_ > 0) {
            os << (rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_));
            first = false;
        }
        for (const auto& [q, m] : torsion_) {
            if (!first) os << " + ";
            first = false;
            if (m > 1) os << m << "*";
            os << "Z_" << q.value().str();
            if (q.exponent() > 1) os << "(" << q.str() << ")";
        }
        return os.str();
    }

private:
    std::uint64_t rank_ = 0;
    std::map<PrimePower, std::uint64_t> torsion_;
};

// An integer relation matrix: rows are relations, columns are generators.
// The group presented is the cokernel Z^cols / rowspan.
class IntegerPresentation {
public:
    IntegerPresentation(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static IntegerPresentation from_rows(const std::vector<std::vector<Int>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows[0].size();
        IntegerPresentation m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw std::invalid_argument("IntegerPresentation: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Smith normal form diagonal d_1, ..., d_t with t = min(rows, cols):
// d_i >= 0, d_i | d_{i+1}, zeros last. All operations are exact integer
// row/column combinations; pivots shrink via remainder steps, never division
// by anything but the pivot itself.
inline std::vector<Int> smith_normal_form(IntegerPresentation m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t t = std::min(rows, cols);
    std::vector<Int> diag(t, 0);

    for (std::size_t k = 0; k < t; ++k) {
        for (;;) {
            // pivot: minimal nonzero |entry| in the trailing submatrix
            std::size_t pi = k, pj = k;
            Int best = 0;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j) {
                    const Int v = abs_int(m.at(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;  // trailing block is zero; remaining diagonal stays 0
            if (pi != k)
                for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(k, j), m.at(pi, j));
            if (pj != k)
                for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, k), m.at(i, pj));
            if (m.at(k, k) < 0)
                for (std::size_t j = 0; j < cols; ++j) m.at(k, j) = -m.at(k, j);

            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (m.at(i, k) == 0) continue;
                const Int q = m.at(i, k) / m.at(k, k);
                for (std::size_t j = k; j < cols; ++j) m.at(i, j) -= q * m.at(k, j);
                if (m.at(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (m.at(k, j) == 0) continue;
                const Int q = m.at(k, j) / m.at(k, k);
                for (std::size_t i = k; i < rows; ++i) m.at(i, j) -= q * m.at(i, k);
                if (m.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // force divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = k + 1; i < rows && divides; ++i)
                for (std::size_t j = k + 1; j < cols && divides; ++j)
                    if (m.at(i, j) % m.at(k, k) != 0) {
                        for (std::size_t jj = k; jj < cols; ++jj) m.at(k, jj) += m.at(i, jj);
                        divides = false;
                    }
            if (divides) {
                diag[k] = m.at(k, k);
                break;
            }
        }
        if (diag[k] == 0) break;
    }
    return diag;
}

// Splits each invariant factor n > 1 into its prime power parts; each 0
// contributes one infinite cyclic summand; 1 entries normalize away.
inline FgAbelianGroup primary_decomposition(const std::vector<Int>& invariant_factors) {
    FgAbelianGroup g;
    for (const Int& d : invariant_factors) {
        if (d < 0) throw std::invalid_argument("primary_decomposition: negative factor");
        if (d == 0) {
            g.add_rank(1);
        } else if (d > 1) {
            for (const auto& [p, e] : factorize(d)) g.add_torsion(PrimePower(p, e), 1);
        }
    }
    return g;
}

inline FgAbelianGroup from_presentation(const IntegerPresentation& m) {
    const std::vector<Int> diag = smith_normal_form(m);
    std::uint64_t nonzero = 0;
    std::vector<Int> factors;
    for (const Int& d : diag)
        if (d != 0) {
            ++nonzero;
            factors.push_back(d);
        }
    FgAbelianGroup g = primary_decomposition(factors);
    g.add_rank(static_cast<std::uint64_t>(m.cols()) - nonzero);
    return g;
}

}  // namespace nonleaf
