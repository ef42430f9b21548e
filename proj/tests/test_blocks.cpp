#include "nonleaf/blocks.hpp"

#include <catch_amalgamated.hpp>

using namespace nonleaf;

namespace {

FgAbelianGroup zq(int p, unsigned j) {
    FgAbelianGroup g;
    g.add_torsion(PrimePower(p, j), 1);
    return g;
}

}  // namespace

TEST_CASE("lens blocks") {
    const Block l31 = lens_block(3, 1);
    CHECK(l31.dim() == 3);
    CHECK(l31.pi1() == FreeProductClass::single(FactorLabel::finite_cyclic(3)));
    CHECK(l31.homology(2).is_trivial());
    CHECK(l31.prime_asserted() == std::optional<bool>(true));
    CHECK(l31.orientable() == std::optional<bool>(true));
    CHECK(!l31.simply_connected());

    CHECK(lens_block(5, 2).pi1() == FreeProductClass::single(FactorLabel::finite_cyclic(5)));
    CHECK_THROWS_AS(lens_block(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(lens_block(1, 1), std::invalid_argument);
}

TEST_CASE("smale blocks double the group") {
    const Block b = smale_block(FgAbelianGroup::cyclic(3));
    CHECK(b.dim() == 5);
    CHECK(b.simply_connected());
    CHECK(b.homology(2) == direct_sum(zq(3, 1), zq(3, 1)));
    CHECK(b.homology(3).is_trivial());
    CHECK(b.homology(4).is_trivial());

    CHECK(smale_block(FgAbelianGroup{}).is_trivial_sphere());

    const Block z9 = smale_block(FgAbelianGroup::cyclic(9));
    CHECK(z9.homology(2).count_summands(PrimePower(3, 2)) == 2);

    CHECK_THROWS_AS(smale_block(FgAbelianGroup::free_of_rank(1)), std::invalid_argument);
}

TEST_CASE("suspension blocks carry the prime power in two degrees") {
    const Block b = suspension_block(6, PrimePower(3, 1));
    CHECK(b.dim() == 6);
    CHECK(b.simply_connected());
    CHECK(b.homology(2) == zq(3, 1));
    CHECK(b.homology(3) == zq(3, 1));
    CHECK(b.homology(4).is_trivial());
    CHECK(b.homology(5).is_trivial());

    CHECK(suspension_block(6, PrimePower(7, 2)).homology(2) == zq(7, 2));
    CHECK_THROWS_AS(suspension_block(5, PrimePower(3, 1), 2), std::invalid_argument);
    CHECK_THROWS_AS(suspension_block(6, PrimePower(3, 1), 1), std::invalid_argument);

    // d = 2k + 1: the two degrees coincide and carry a single copy
    const Block c = suspension_block(7, PrimePower(5, 1), 3);
    CHECK(c.homology(3) == zq(5, 1));
    CHECK(c.homology(3).count_summands(PrimePower(5, 1)) == 1);

    // generalized k on a higher dimension
    const Block g = suspension_block(9, PrimePower(3, 1), 4);
    CHECK(g.homology(4) == zq(3, 1));
    CHECK(g.homology(9 - 4 - 1) == zq(3, 1));
}

TEST_CASE("connected sums compose invariants") {
    const Block l3 = lens_block(3, 1), l5 = lens_block(5, 1);
    const Block s = connected_sum(l3, l5);
    CHECK(s.pi1().count_factor(FactorLabel::finite_cyclic(3)) == ExtCount(1));
    CHECK(s.pi1().count_factor(FactorLabel::finite_cyclic(5)) == ExtCount(1));
    CHECK(s.prime_asserted() == std::optional<bool>(false));

    const Block sphere = sphere_block(3);
    const Block t = connected_sum(l3, sphere);
    CHECK(t.signature() == l3.signature());
    CHECK(t.prime_asserted() == std::optional<bool>(true));

    CHECK_THROWS_AS(connected_sum(l3, suspension_block(6, PrimePower(3, 1))),
                    std::invalid_argument);
}

TEST_CASE("the two Milnor-style assemblies are indistinguishable") {
    const Block p("P", 4, FreeProductClass::trivial(),
                  {FgAbelianGroup::free_of_rank(1), FgAbelianGroup{}}, true, true);
    const Block q("Q", 4, FreeProductClass::trivial(),
                  {FgAbelianGroup::free_of_rank(2), FgAbelianGroup{}}, true, true);
    const Block ppp = connected_sum(connected_sum(p, p), p);
    const Block qp = connected_sum(q, p);
    CHECK(ppp.signature() == qp.signature());
    CHECK(ppp.name() != qp.name());
}

TEST_CASE("signatures ignore names, distinguish invariants") {
    CHECK(lens_block(3, 1).signature() == lens_block(3, 2).signature());
    CHECK(lens_block(3, 1).signature() != lens_block(5, 1).signature());
    CHECK(suspension_block(6, PrimePower(3, 1)).signature() !=
          suspension_block(6, PrimePower(3, 2)).signature());
}

TEST_CASE("prime count bound") {
    CHECK(prime_count_bound(sphere_block(5)) == 0);
    CHECK(prime_count_bound(connected_sum(lens_block(3, 1), lens_block(5, 1))) == 2);
    CHECK(prime_count_bound(suspension_block(6, PrimePower(3, 1))) == 2);
    CHECK(prime_count_bound(smale_block(FgAbelianGroup::cyclic(3))) == 2);
    CHECK(prime_count_bound(lens_block(3, 1)) == 1);
}

TEST_CASE("prime count bound is additive under connected sum") {
    Rng rng(5);
    std::vector<Block> catalog{lens_block(3, 1), lens_block(5, 1), lens_block(7, 1),
                               lens_block(9, 2), sphere_block(3)};
    for (int i = 0; i < 100; ++i) {
        Block acc = catalog[rng.below(catalog.size())];
        Int total = prime_count_bound(acc);
        const int steps = 1 + static_cast<int>(rng.below(4));
        for (int s = 0; s < steps; ++s) {
            const Block& next = catalog[rng.below(catalog.size())];
            total += prime_count_bound(next);
            acc = connected_sum(acc, next);
        }
        CHECK(prime_count_bound(acc) == total);
    }
}

TEST_CASE("hurewicz identification for simply connected blocks") {
    const Block b = suspension_block(6, PrimePower(3, 1));
    CHECK(b.pi2() == b.homology(2));
    CHECK_THROWS_AS(lens_block(3, 1).pi2(), std::logic_error);
}

TEST_CASE("duality validator accepts the catalog presets") {
    CHECK(!lens_block(3, 1).duality_defect());
    CHECK(!smale_block(FgAbelianGroup::cyclic(3)).duality_defect());
    CHECK(!suspension_block(6, PrimePower(3, 1)).duality_defect());
    CHECK(!suspension_block(8, PrimePower(5, 2)).duality_defect());
    CHECK(!sphere_block(6).duality_defect());

    // a declared-orientable block with asymmetric torsion fails
    std::vector<FgAbelianGroup> h(4);
    h[0] = zq(3, 1);  // H_2 = Z_3, H_3 = 0: violates the (2,3) pairing in dim 6
    const Block bad("bad", 6, FreeProductClass::trivial(), h, true, std::nullopt);
    CHECK(bad.duality_defect().has_value());

    // the same block without the orientable declaration is skipped
    const Block undeclared("u", 6, FreeProductClass::trivial(), h, std::nullopt, std::nullopt);
    CHECK(!undeclared.duality_defect());
}

TEST_CASE("trivial block detection") {
    CHECK(sphere_block(4).is_trivial_sphere());
    CHECK(!lens_block(3, 1).is_trivial_sphere());
    CHECK(!suspension_block(6, PrimePower(3, 1)).is_trivial_sphere());
}

TEST_CASE("block validation") {
    CHECK_THROWS_AS(Block("x", 2, FreeProductClass::trivial(), {}, {}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Block("x", 4, FreeProductClass::trivial(), {FgAbelianGroup{}}, {}, {}),
                    std::invalid_argument);
    FreeProductClass inf;
    inf.add(FactorLabel::finite_cyclic(3), ExtCount::omega());
    CHECK_THROWS_AS(Block("x", 3, inf, {FgAbelianGroup{}}, {}, {}), std::invalid_argument);
}

TEST_CASE("connected sums orient by three-valued conjunction") {
    std::vector<FgAbelianGroup> h3(1);
    const Block a("a", 3, FreeProductClass::trivial(), h3, true, {});
    const Block b("b", 3, FreeProductClass::trivial(), h3, false, {});
    const Block c("c", 3, FreeProductClass::trivial(), h3, std::nullopt, {});
    CHECK(connected_sum(a, a).orientable() == std::optional<bool>(true));
    CHECK(connected_sum(a, b).orientable() == std::optional<bool>(false));
    CHECK(connected_sum(c, b).orientable() == std::optional<bool>(false));
    CHECK(connected_sum(a, c).orientable() == std::nullopt);
}
