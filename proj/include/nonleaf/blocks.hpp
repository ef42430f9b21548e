#pragma once

#include "nonleaf/abelian.hpp"
#include "nonleaf/groups.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

// A closed connected d-manifold model: dimension, fundamental group class and
// the middle homology vector H_2 .. H_{d-1}. Simply connected means exactly
// that the pi1 class is trivial, and then pi2 is H_2 (Hurewicz). The trivial
// block (sphere model) has trivial pi1 and vanishing middle homology.
class Block {
public:
    Block(std::string name, int dim, FreeProductClass pi1, std::vector<FgAbelianGroup> homology,
          std::optional<bool> orientable = std::nullopt,
          std::optional<bool> prime_asserted = std::nullopt)
        : name_(std::move(name)),
          dim_(dim),
          pi1_(std::move(pi1)),
          h_(std::move(homology)),
          orientable_(orientable),
          prime_asserted_(prime_asserted) {
        if (dim_ < 3) throw std::invalid_argument("Block: dimension must be >= 3");
        if (h_.size() != static_cast<std::size_t>(dim_ - 2))
            throw std::invalid_argument("Block '" + name_ + "': homology vector must cover r = 2.." +
                                        std::to_string(dim_ - 1));
        if (!pi1_.all_finite())
            throw std::invalid_argument("Block '" + name_ + "': pi1 multiplicities must be finite");
        if (name_.empty()) throw std::invalid_argument("Block: name must be nonempty");
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const FreeProductClass& pi1() const { return pi1_; }
    std::optional<bool> orientable() const { return orientable_; }
    std::optional<bool> prime_asserted() const { return prime_asserted_; }

    const FgAbelianGroup& homology(int r) const {
        if (r < 2 || r > dim_ - 1)
            throw std::out_of_range("Block::homology: r out of [2, d-1]");
        return h_[static_cast<std::size_t>(r - 2)];
    }

    bool simply_connected() const { return pi1_.is_trivial(); }

    bool is_trivial_sphere() const {
        if (!pi1_.is_trivial()) return false;
        for (const auto& g : h_)
            if (!g.is_trivial()) return false;
        return true;
    }

    // pi2 of a simply connected block, identified with H_2.
    const FgAbelianGroup& pi2() const {
        if (!simply_connected())
            throw std::logic_error("Block::pi2: block '" + name_ + "' is not simply connected");
        return homology(2);
    }

    // Torsion linking check for orientable blocks: torsion(H_r) must equal
    // torsion(H_{d-r-1}) for every r with both degrees in [2, d-1]. Returns a
    // description of the first violated pair, if any; blocks not declared
    // orientable are skipped.
    std::optional<std::string> duality_defect() const {
        if (orientable_ != std::optional<bool>(true)) return std::nullopt;
        for (int r = 2; r <= dim_ - 1; ++r) {
            const int s = dim_ - r - 1;
            if (s < 2 || s > dim_ - 1) continue;
            if (homology(r).torsion() != homology(s).torsion())
                return "torsion of H_" + std::to_string(r) + " differs from torsion of H_" +
                       std::to_string(s);
        }
        return std::nullopt;
    }

    // Canonical encoding of (dim, pi1, homology). Two blocks with equal
    // signatures are indistinguishable in this model; distinct signatures
    // certify model-level distinctness.
    std::string signature() const {
        std::ostringstream os;
        os << "d=" << dim_ << "|pi1=" << pi1_.str();
        for (int r = 2; r <= dim_ - 1; ++r) os << "|H" << r << "=" << homology(r).str();
        return os.str();
    }

    std::string str() const { return name_ + " [" + signature() + "]"; }

private:
    std::string name_;
    int dim_;
    FreeProductClass pi1_;
    std::vector<FgAbelianGroup> h_;  // H_2 .. H_{d-1}
    std::optional<bool> orientable_;
    std::optional<bool> prime_asserted_;
};

// Sphere model of dimension d.
inline Block sphere_block(int d, std::string name = "") {
    if (name.empty()) name = "S" + std::to_string(d);
    return Block(std::move(name), d, FreeProductClass::trivial(),
                 std::vector<FgAbelianGroup>(static_cast<std::size_t>(d - 2)), true, false);
}

// Lens space model L(p, q): dimension 3, pi1 = Z_p, H_2 = 0. gcd(p, q) = 1.
inline Block lens_block(const Int& p, const Int& q, std::string name = "") {
    if (p < 2) throw std::invalid_argument("lens_block: p must be >= 2");
    if (gcd_int(p, q) != 1)
        throw std::invalid_argument("lens_block: gcd(" + p.str() + ", " + q.str() + ") != 1");
    if (name.empty()) name = "lens(" + p.str() + "," + q.str() + ")";
    return Block(std::move(name), 3, FreeProductClass::single(FactorLabel::finite_cyclic(p)),
                 {FgAbelianGroup{}}, true, true);
}

// Simply connected 5-manifold model with pi2 = G + G for a finite abelian G.
inline Block smale_block(const FgAbelianGroup& g, std::string name = "") {
    if (g.rank() != 0) throw std::invalid_argument("smale_block: group must be finite (rank 0)");
    if (name.empty()) name = "smale(" + g.str() + ")";
    return Block(std::move(name), 5, FreeProductClass::trivial(),
                 {direct_sum(g, g), FgAbelianGroup{}, FgAbelianGroup{}}, true, true);
}

// Simply connected suspension-double model: H_k = Z_q and H_{d-k-1} = Z_q
// (a single copy when the degrees coincide), everything else zero. The
// degree d-k-1 copy is the torsion dual fill; see the duality check above.
inline Block suspension_block(int d, const PrimePower& q, int k = 2, std::string name = "") {
    if (k < 2) throw std::invalid_argument("suspension_block: k must be >= 2");
    if (d < k + 4)
        throw std::invalid_argument("suspension_block: dimension must be >= k + 4 (d >= " +
                                    std::to_string(k + 4) + " for k = " + std::to_string(k) + ")");
    if (name.empty())
        name = "susp(d=" + std::to_string(d) + ",k=" + std::to_string(k) + "," + q.str() + ")";
    std::vector<FgAbelianGroup> h(static_cast<std::size_t>(d - 2));
    FgAbelianGroup zq;
    zq.add_torsion(q, 1);
    h[static_cast<std::size_t>(k - 2)] = zq;
    h[static_cast<std::size_t>(d - k - 1 - 2)] = zq;  // same slot when d = 2k + 1
    return Block(std::move(name), d, FreeProductClass::trivial(), std::move(h), true, true);
}

// Invariant-level connected sum: pi1 is the free product, each H_r the direct
// sum. Primality is not preserved unless one side is a sphere model.
inline Block connected_sum(const Block& a, const Block& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("connected_sum: dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                    ")");
    std::vector<FgAbelianGroup> h;
    h.reserve(static_cast<std::size_t>(a.dim() - 2));
    for (int r = 2; r <= a.dim() - 1; ++r) h.push_back(direct_sum(a.homology(r), b.homology(r)));

    std::optional<bool> prime;
    if (a.is_trivial_sphere())
        prime = b.prime_asserted();
    else if (b.is_trivial_sphere())
        prime = a.prime_asserted();
    else
        prime = false;

    // Kleene conjunction: false dominates, true + unknown stays unknown.
    std::optional<bool> orientable;
    if (a.orientable() == std::optional<bool>(false) || b.orientable() == std::optional<bool>(false))
        orientable = false;
    else if (a.orientable() && b.orientable())
        orientable = true;

    return Block(a.name() + "#" + b.name(), a.dim(), free_product(a.pi1(), b.pi1()), std::move(h),
                 orientable, prime);
}

// Upper bound m + n on the number of non-trivial summands in any connected
// sum decomposition: m free factors of pi1 plus n cyclic summands across the
// middle homology.
inline Int prime_count_bound(const Block& b) {
    Int n = 0;
    for (int r = 2; r <= b.dim() - 1; ++r) n += b.homology(r).cyclic_summand_total();
    return b.pi1().grushko_factor_count().finite() + n;
}

}  // namespace nonleaf
