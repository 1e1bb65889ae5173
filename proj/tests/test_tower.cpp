#include "support/fixtures_algebra.hpp"

#include "frobforge/errors.hpp"
#include "frobforge/oracle.hpp"
#include "frobforge/tower.hpp"

#include <doctest.h>

using namespace frobforge;
using fixtures::algebra;
using fixtures::map;
using fixtures::poly;

namespace {

// Is the map from `from` given by the image strings an isomorphism?
bool isomorphic_via(const FPAlgebra& from, const FPAlgebra& to, std::vector<std::string> images)
{
    return is_isomorphism(map(from, to, std::move(images))).is_isomorphism();
}

} // namespace

TEST_CASE("tower stage examples")
{
    FPAlgebra fx = algebra(2, {"x"});
    for (std::size_t n = 0; n <= 3; ++n) {
        TowerStage st = tower_stage(AlgebraMap::identity(fx), n);
        CHECK(is_isomorphism(st.base_map));
    }

    // Stage n of F_2[x] → F_2[x]/(x^2) is F_2[x]/(x^{2^{n+1}}).
    AlgebraMap q = map(fx, algebra(2, {"x"}, {"x^2"}), {"x"});
    TowerStage st2 = tower_stage(q, 2);
    REQUIRE(st2.stage.ring()->names() == std::vector<std::string>{"x", "x_1"});
    CHECK(isomorphic_via(algebra(2, {"z"}, {"z^8"}), st2.stage, {"x_1"}));
    CHECK(enumerate_algebra(st2.stage).dimension() == 8);

    FPAlgebra idem = algebra(2, {"e"}, {"e^2+e"});
    AlgebraMap to_point = map(idem, algebra(2, {}), {"0"});
    TowerStage st1 = tower_stage(to_point, 1);
    CHECK(enumerate_algebra(st1.stage).dimension() == 1);
    CHECK(is_isomorphism(*st1.transition));
}

TEST_CASE("tower stage invariants")
{
    std::vector<AlgebraMap> corpus = {
        map(algebra(2, {"x"}), algebra(2, {"x"}, {"x^2"}), {"x"}),
        map(algebra(2, {"x"}), algebra(2, {"x", "y"}, {"y^2+y+x"}), {"x"}),
        map(algebra(3, {"t"}), algebra(3, {"x"}), {"x^3"}),
        map(algebra(2, {"x"}, {"x^2"}), algebra(2, {"x", "y"}, {"x^2", "y^2+y"}), {"x"}),
    };
    for (const AlgebraMap& f : corpus) {
        TowerStage one = tower_stage(f, 1);
        // transition(1) ∘ (S → stage 1) is the absolute Frobenius of S.
        CHECK(maps_equal(compose(*one.transition, one.from_target), absolute_frobenius(f.codomain())));
        CHECK(maps_equal(*one.transition, relative_frobenius(f)));
        // Composite n → 0: u ↦ u^{p^n}, x ↦ f(x).
        for (std::size_t n = 2; n <= 3; ++n) {
            AlgebraMap composite = *tower_stage(f, n).transition;
            for (std::size_t m = n - 1; m >= 1; --m)
                composite = compose(*tower_stage(f, m).transition, composite);
            std::vector<Polynomial> expected;
            for (std::size_t i = 0; i < f.codomain().num_vars(); ++i)
                expected.push_back(frobenius_power_poly(f.codomain().variable(i), static_cast<std::uint32_t>(n)));
            for (const Polynomial& img : f.images())
                expected.push_back(img);
            CHECK(maps_equal(composite, AlgebraMap(tower_stage(f, n).stage, f.codomain(), expected)));
        }
    }
}

TEST_CASE("gabber presentation examples")
{
    FPAlgebra ft = algebra(2, {"t"});
    AlgebraMap id = AlgebraMap::identity(ft);
    FPAlgebra k0 = gabber_stage(id, 0);
    CHECK(isomorphic_via(ft, k0, {"t"}));

    AlgebraMap q = map(ft, algebra(2, {"t"}, {"t^2"}), {"t"});
    FPAlgebra g1 = gabber_stage(q, {poly(q.codomain().ring(), "t")}, 1);
    CHECK(g1.ring()->names() == std::vector<std::string>{"t", "t_1"});
    CHECK(isomorphic_via(algebra(2, {"z"}, {"z^4"}), g1, {"t_1"}));

    FPAlgebra g2 = gabber_stage(id, 2);
    CHECK(isomorphic_via(algebra(2, {"z"}), g2, {"t_1"}));

    CHECK_THROWS_AS(gabber_stage(map(algebra(2, {"x"}, {"x^2"}), algebra(2, {"x"}, {"x^2"}), {"x"}), 1),
                    PreconditionError);
    // F_2[t] → F_2[x], t ↦ x^2 is not relatively semiperfect with s = x^2, but is with s = x.
    AlgebraMap sq = map(ft, algebra(2, {"x"}), {"x^2"});
    CHECK_THROWS_AS(gabber_stage(sq, 1), PreconditionError);
    CHECK_NOTHROW(gabber_stage(sq, {poly(sq.codomain().ring(), "x")}, 1));
}

TEST_CASE("gabber stage matches the tower on a polynomial base")
{
    std::vector<AlgebraMap> corpus = {
        map(algebra(2, {"x"}), algebra(2, {"x"}, {"x^2"}), {"x"}),
        map(algebra(2, {"x"}), algebra(2, {"x", "y"}, {"y^2+y+x"}), {"x"}),
        map(algebra(3, {"x", "y"}), algebra(3, {"x"}, {"x^3"}), {"x", "0"}),
        AlgebraMap::identity(algebra(2, {"t"})),
    };
    for (const AlgebraMap& f : corpus) {
        for (std::size_t n = 0; n <= 3; ++n) {
            TowerStage st = tower_stage(f, n);
            FPAlgebra g = gabber_stage(f, n);
            std::vector<Polynomial> images;
            for (std::size_t i = 0; i < st.stage.num_vars(); ++i)
                images.push_back(g.variable(i));
            if (n == 0) {
                CHECK(g.num_vars() == f.codomain().num_vars() + f.domain().num_vars());
                continue;
            }
            CHECK(is_isomorphism(AlgebraMap(st.stage, g, std::move(images))));
        }
    }
}

TEST_CASE("quotient towers")
{
    FPAlgebra fx = algebra(2, {"x"});
    Ideal i = fixtures::ideal(fx.ring(), {"x^2"});
    CHECK(ideal_equal(quotient_tower_stage(fx, i, 0).relations(), i));
    for (std::size_t n = 0; n <= 3; ++n) {
        std::string gen = "x^" + std::to_string(std::size_t{1} << (n + 1));
        CHECK(ideal_equal(quotient_tower_stage(fx, i, n).relations(), fixtures::ideal(fx.ring(), std::vector<std::string>{gen})));
    }
    FPAlgebra idem = algebra(2, {"e"}, {"e^2+e"});
    for (std::size_t n = 0; n <= 3; ++n) {
        FPAlgebra st = quotient_tower_stage(idem, fixtures::ideal(idem.ring(), {"e"}), n);
        CHECK(enumerate_algebra(st).dimension() == 1);
    }
}

TEST_CASE("tower of a surjection is the quotient tower")
{
    struct Case {
        FPAlgebra r;
        std::vector<std::string> kernel;
    };
    std::vector<Case> corpus = {
        {algebra(2, {"x"}), {"x^2"}},
        {algebra(2, {"x", "y"}), {"x*y", "y^2+x"}},
        {algebra(3, {"x"}, {"x^4"}), {"x^2"}},
        {algebra(2, {"e"}, {"e^2+e"}), {"e"}},
    };
    for (const Case& c : corpus) {
        Ideal kernel = fixtures::ideal(c.r.ring(), c.kernel);
        FPAlgebra s = c.r.quotient(kernel.generators());
        std::vector<std::string> ids = c.r.ring()->names();
        AlgebraMap f = map(c.r, s, ids);
        for (std::size_t n = 0; n <= 2; ++n) {
            FPAlgebra q = quotient_tower_stage(c.r, kernel, n);
            TowerStage st = tower_stage(f, n);
            // R/I^[p^n] → stage n along the base map.
            AlgebraMap cmp(q, st.stage, st.base_map.images());
            CHECK(is_isomorphism(cmp));
        }
    }
}

TEST_CASE("stabilization examples")
{
    FPAlgebra idem = algebra(2, {"e"}, {"e^2+e"});
    StabilizationReport fixed = detect_stabilization(idem, fixtures::ideal(idem.ring(), {"e"}), 6);
    CHECK(fixed.stabilized);
    CHECK(fixed.stage == 0u);
    CHECK(fixed.absorbing);

    FPAlgebra fx = algebra(2, {"x"});
    StabilizationReport shrinking = detect_stabilization(fx, fixtures::ideal(fx.ring(), {"x"}), 6);
    CHECK_FALSE(shrinking.stabilized);
    CHECK(shrinking.explored == 6);
    REQUIRE(shrinking.failing_element.has_value());
    CHECK(*shrinking.failing_element == poly(fx.ring(), "x^64"));

    FPAlgebra xy = algebra(2, {"x", "y"}, {"x*y"});
    StabilizationReport node = detect_stabilization(xy, fixtures::ideal(xy.ring(), {"x"}), 3);
    CHECK_FALSE(node.stabilized);
    CHECK(node.explored == 3);

    // In F_2[x]/(x^2) × F_2[x]/(x^2) the ideal (e + x) shrinks once, to (e).
    FPAlgebra prod = algebra(2, {"e", "x"}, {"e^2+e", "x^2"});
    StabilizationReport late = detect_stabilization(prod, fixtures::ideal(prod.ring(), {"e+x"}), 6);
    CHECK(late.stabilized);
    CHECK(late.stage == 1u);
    CHECK(late.absorbing);
}

TEST_CASE("quotient-tower stabilization agrees with transition isomorphisms")
{
    struct Case {
        FPAlgebra r;
        std::vector<std::string> kernel;
    };
    std::vector<Case> corpus = {
        {algebra(2, {"e"}, {"e^2+e"}), {"e"}},
        {algebra(2, {"x"}), {"x"}},
        {algebra(2, {"e", "x"}, {"e^2+e", "x^2"}), {"e+x"}},
        {algebra(3, {"e"}, {"e^3-e"}), {"e^2"}},
        {algebra(2, {"x", "y"}, {"x*y"}), {"x"}},
    };
    for (const Case& c : corpus) {
        Ideal kernel = fixtures::ideal(c.r.ring(), c.kernel);
        AlgebraMap f = map(c.r, c.r.quotient(kernel.generators()), c.r.ring()->names());
        StabilizationReport ideal_side = detect_stabilization(c.r, kernel, 3);
        StabilizationReport map_side = detect_tower_stabilization(f, 3);
        CHECK(ideal_side.stabilized == map_side.stabilized);
        CHECK(ideal_side.stage == map_side.stage);
        if (map_side.stabilized)
            CHECK(map_side.absorbing);
    }
}

TEST_CASE("cofinality bounds")
{
    FPAlgebra fx = algebra(2, {"x"});
    CHECK(cofinality_bound(fx, fixtures::ideal(fx.ring(), {"x"}), 1) == 2);
    FPAlgebra xy = algebra(2, {"x", "y"});
    CHECK(cofinality_bound(xy, fixtures::ideal(xy.ring(), {"x", "y"}), 1) == 3);
    FPAlgebra f3 = algebra(3, {"x"});
    CHECK(cofinality_bound(f3, fixtures::ideal(f3.ring(), {"x"}), 1) == 3);
    CHECK_THROWS_AS(cofinality_bound(algebra(2, {"x"}, {"x^3"}), fixtures::ideal(fx.ring(), {"x"}), 1),
                    PreconditionError);

    struct Case {
        FPAlgebra r;
        std::vector<std::string> gens;
    };
    std::vector<Case> corpus = {
        {xy, {"x", "y"}},
        {xy, {"x^2", "y"}},
        {xy, {"x*y", "x+y^2"}},
        {algebra(3, {"x", "y", "z"}), {"x", "y*z"}},
        {fx, {"x^2+x"}},
    };
    for (const Case& c : corpus) {
        Ideal i = fixtures::ideal(c.r.ring(), c.gens);
        for (std::size_t n = 1; n <= 2; ++n) {
            std::uint32_t m = cofinality_bound(c.r, i, n);
            Ideal frob = frobenius_power_ideal(i, static_cast<std::uint32_t>(n));
            CHECK(ideal_contains(frob, ideal_power(i, m)));
            std::uint32_t q = static_cast<std::uint32_t>(checked_power(c.r.characteristic(), static_cast<std::uint32_t>(n)));
            CHECK(ideal_contains(ideal_power(i, q), frob));
            if (m > 1)
                CHECK_FALSE(ideal_contains(frob, ideal_power(i, m - 1)));
            CHECK(m <= c.gens.size() * (q - 1) + 1);
        }
    }
}
