#include "support/fixtures_algebra.hpp"
#include "support/random_artinian.hpp"

#include "frobforge/errors.hpp"
#include "frobforge/oracle.hpp"

#include <doctest.h>

using namespace frobforge;
using fixtures::algebra;
using fixtures::map;
using fixtures::poly;

TEST_CASE("well-definedness is checked at construction")
{
    FPAlgebra r = algebra(2, {"x"}, {"x^2"});
    FPAlgebra s = algebra(2, {"y"}, {"y^3"});
    CHECK_THROWS_AS(map(r, s, {"y"}), PreconditionError);
    CHECK_NOTHROW(map(r, s, {"y^2"}));
    CHECK_THROWS_AS(map(r, s, {"y", "y"}), MismatchError);
    CHECK(map(r, s, {"y^5+y^2"}).images()[0] == poly(s.ring(), "y^2"));
}

TEST_CASE("composition")
{
    FPAlgebra fs = algebra(2, {"s"});
    FPAlgebra ft = algebra(2, {"t"});
    FPAlgebra fx = algebra(2, {"x"});
    AlgebraMap f = map(fs, ft, {"t"});
    AlgebraMap g = map(ft, fx, {"x^2"});
    CHECK(maps_equal(compose(g, f), map(fs, fx, {"x^2"})));
    CHECK(maps_equal(compose(AlgebraMap::identity(ft), f), f));
    CHECK_THROWS_AS(compose(f, f), MismatchError);
}

TEST_CASE("pushouts")
{
    FPAlgebra k = FPAlgebra::prime_field(PrimeField(3));
    FPAlgebra fx = algebra(3, {"x"});
    FPAlgebra fy = algebra(3, {"y"});
    Pushout po = pushout(fixtures::from_prime_field(fx), fixtures::from_prime_field(fy));
    CHECK(po.algebra.ring()->names() == std::vector<std::string>{"x", "y"});
    CHECK(po.algebra.is_polynomial());

    FPAlgebra t = algebra(2, {"t"});
    FPAlgebra f2 = FPAlgebra::prime_field(PrimeField(2));
    Pushout p2 = pushout(map(t, t, {"t^2"}), map(t, f2, {"0"}));
    CHECK(enumerate_algebra(p2.algebra).dimension() == 2);
    CHECK(ideal_equal(p2.algebra.relations(), fixtures::ideal(p2.algebra.ring(), {"t^2"})));

    // pushout(id_R, g) ≅ codomain(g) through the right coprojection.
    FPAlgebra r = algebra(2, {"x"}, {"x^3"});
    FPAlgebra s = algebra(2, {"y"}, {"y^2+y"});
    AlgebraMap g = map(r, s, {"0"});
    Pushout p3 = pushout(AlgebraMap::identity(r), g);
    CHECK(is_isomorphism(p3.right).is_isomorphism());
}

TEST_CASE("frobenius twists")
{
    FPAlgebra r = algebra(2, {"x"});
    CHECK(is_isomorphism(frobenius_twist(AlgebraMap::identity(r), 1).from_base));

    FPAlgebra s = algebra(2, {"x"}, {"x^2"});
    FrobeniusTwist tw = frobenius_twist(map(r, s, {"x"}), 1);
    REQUIRE(tw.algebra.ring()->names() == std::vector<std::string>{"x", "x_1"});
    FPAlgebra x4 = algebra(2, {"z"}, {"z^4"});
    AlgebraMap comparison = map(x4, tw.algebra, {"x_1"});
    CHECK(is_isomorphism(comparison));
    CHECK(oracle_map_bijective(comparison));

    FPAlgebra poly_x = algebra(2, {"x"});
    CHECK(is_isomorphism(frobenius_twist(fixtures::from_prime_field(poly_x), 1).from_target));
}

TEST_CASE("relative frobenius examples")
{
    FPAlgebra r = algebra(2, {"x"}, {"x^3+x+1"});
    CHECK(is_isomorphism(relative_frobenius(AlgebraMap::identity(r))));

    FPAlgebra fx = algebra(2, {"x"});
    AlgebraMap rf = relative_frobenius(fixtures::from_prime_field(fx));
    CHECK(rf.images() == std::vector<Polynomial>{poly(fx.ring(), "x^2")});
    CHECK_FALSE(is_surjective(rf));

    FPAlgebra s = algebra(2, {"x"}, {"x^2"});
    AlgebraMap q = relative_frobenius(map(fx, s, {"x"}));
    auto iso = is_isomorphism(q);
    CHECK(iso.surjective);
    CHECK_FALSE(iso.injective);
    // Kernel is (x^2)/(x^4) in the twist [x, x_1]/(x^2, x - x_1^2).
    Ideal kernel = map_kernel(q);
    CHECK(ideal_equal(kernel, ideal_sum(q.domain().relations(), fixtures::ideal(q.domain().ring(), {"x_1^2"}))));
}

TEST_CASE("kernels")
{
    FPAlgebra fx = algebra(2, {"x"});
    FPAlgebra s = algebra(2, {"x"}, {"x^2"});
    CHECK(ideal_equal(map_kernel(map(fx, s, {"x"})), fixtures::ideal(fx.ring(), {"x^2"})));
    FPAlgebra ft = algebra(2, {"t"});
    CHECK(map_kernel(map(ft, fx, {"x^2"})).is_zero());
    FPAlgebra uv = algebra(2, {"u", "v"});
    CHECK(ideal_equal(map_kernel(map(uv, fx, {"x^2", "x^3"})), fixtures::ideal(uv.ring(), {"u^3+v^2"})));
}

TEST_CASE("image membership and surjectivity")
{
    FPAlgebra fx = algebra(2, {"x"});
    FPAlgebra s = algebra(2, {"x"}, {"x^2"});
    CHECK(in_image(map(fx, s, {"x"}), poly(s.ring(), "x+1")).has_value());
    FPAlgebra ft = algebra(2, {"t"});
    AlgebraMap sq = map(ft, fx, {"x^2"});
    CHECK_FALSE(in_image(sq, poly(fx.ring(), "x")).has_value());
    auto w = in_image(sq, poly(fx.ring(), "x^6+x^2+1"));
    REQUIRE(w.has_value());
    CHECK(sq.apply(*w) == poly(fx.ring(), "x^6+x^2+1"));
    CHECK_FALSE(is_surjective(sq));
    CHECK(is_surjective(AlgebraMap::identity(fx)));

    // Artin–Schreier: y = y^2 + x in S, so y lies in S^p[R].
    FPAlgebra as = algebra(2, {"x", "y"}, {"y^2+y+x"});
    AlgebraMap structure = map(fx, as, {"x"});
    AlgebraMap rf = relative_frobenius(structure);
    auto witness = in_image(rf, poly(as.ring(), "y"));
    REQUIRE(witness.has_value());
    CHECK(rf.apply(*witness) == poly(as.ring(), "y"));
}

TEST_CASE("isomorphisms")
{
    FPAlgebra fx = algebra(2, {"x"});
    auto id = is_isomorphism(AlgebraMap::identity(fx));
    CHECK(id.is_isomorphism());
    AlgebraMap shift = map(fx, fx, {"x+1"});
    auto check = is_isomorphism(shift);
    REQUIRE(check.is_isomorphism());
    CHECK(check.inverse->images() == std::vector<Polynomial>{poly(fx.ring(), "x+1")});
    CHECK(maps_equal(compose(*check.inverse, shift), AlgebraMap::identity(fx)));
    CHECK_FALSE(is_isomorphism(map(fx, fx, {"x^2"})));
}

TEST_CASE("zero ring")
{
    FPAlgebra zero = algebra(2, {"x"}, {"x", "x+1"});
    CHECK(zero.is_zero_ring());
    CHECK(is_isomorphism(AlgebraMap::identity(zero)));
    FPAlgebra fx = algebra(2, {"x"});
    AlgebraMap to_zero = map(fx, zero, {"0"});
    CHECK(is_surjective(to_zero));
    CHECK_FALSE(is_isomorphism(to_zero).injective);
}

TEST_CASE("diagram: relative frobenius after the left coprojection is absolute frobenius")
{
    std::vector<AlgebraMap> corpus = {
        map(algebra(2, {"x"}), algebra(2, {"x", "y"}, {"y^2+y+x"}), {"x"}),
        map(algebra(2, {"t"}), algebra(2, {"x"}), {"x^2"}),
        map(algebra(3, {"x"}, {"x^3"}), algebra(3, {"y"}, {"y^6"}), {"y^2"}),
        fixtures::from_prime_field(algebra(2, {"x"}, {"x^2+x+1"})),
    };
    for (const AlgebraMap& f : corpus) {
        AlgebraMap rf = relative_frobenius(f);
        FrobeniusTwist tw = frobenius_twist(f, 1);
        CHECK(maps_equal(compose(rf, tw.from_target), absolute_frobenius(f.codomain())));
        CHECK(maps_equal(compose(rf, tw.from_base), f));
    }
}

namespace {

// T_{a+b} → twist(twist(f, a).from_base, b), s ↦ s, x ↦ x (outer copy).
AlgebraMap twist_comparison(const AlgebraMap& f, std::uint32_t a, std::uint32_t b)
{
    FrobeniusTwist whole = frobenius_twist(f, a + b);
    FrobeniusTwist first = frobenius_twist(f, a);
    FrobeniusTwist second = frobenius_twist(first.from_base, b);
    std::vector<Polynomial> images;
    std::size_t ns = f.codomain().num_vars();
    for (std::size_t i = 0; i < ns; ++i)
        images.push_back(second.from_target.apply(first.from_target.images()[i]));
    for (const Polynomial& x : second.from_base.images())
        images.push_back(x);
    return AlgebraMap(whole.algebra, second.algebra, std::move(images));
}

} // namespace

TEST_CASE("twist functoriality")
{
    std::vector<AlgebraMap> corpus = {
        map(algebra(2, {"x"}), algebra(2, {"x"}, {"x^2"}), {"x"}),
        map(algebra(2, {"x"}), algebra(2, {"x", "y"}, {"y^2+y+x"}), {"x"}),
        map(algebra(2, {"t"}), algebra(2, {"x"}), {"x^2"}),
    };
    for (const AlgebraMap& f : corpus) {
        for (std::uint32_t a : {1u, 2u}) {
            for (std::uint32_t b : {1u, 2u})
                CHECK(is_isomorphism(twist_comparison(f, a, b)));
        }
    }
}

TEST_CASE("composition law for relative frobenius")
{
    FPAlgebra r = algebra(2, {"x"});
    FPAlgebra s = algebra(2, {"x", "y"}, {"y^2+y+x"});
    FPAlgebra t = algebra(2, {"x", "y", "z"}, {"y^2+y+x", "z^2+x*z+y"});
    AlgebraMap f = map(r, s, {"x"});
    AlgebraMap g = map(s, t, {"x", "y"});
    AlgebraMap tr = relative_frobenius(compose(g, f));
    AlgebraMap ts = relative_frobenius(g);
    // Induced T ⊗_{R,F} R → T ⊗_{S,F} S: t ↦ t, r ↦ f(r).
    const FPAlgebra& dom = tr.domain();
    const FPAlgebra& cod = ts.domain();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < t.num_vars(); ++i)
        images.push_back(cod.variable(i));
    std::vector<std::size_t> s_positions;
    for (std::size_t i = 0; i < s.num_vars(); ++i)
        s_positions.push_back(t.num_vars() + i);
    for (const Polynomial& img : f.images())
        images.push_back(embed(img, cod.ring(), s_positions));
    AlgebraMap induced(dom, cod, std::move(images));
    CHECK(maps_equal(compose(ts, induced), tr));
}

TEST_CASE("base change of the relative frobenius")
{
    struct Case {
        AlgebraMap f;
        AlgebraMap g;
    };
    FPAlgebra r = algebra(2, {"x"});
    std::vector<Case> corpus = {
        {map(r, algebra(2, {"x", "y"}, {"y^2+y+x"}), {"x"}), map(r, algebra(2, {"w"}), {"w^3"})},
        {map(r, algebra(2, {"x"}, {"x^2"}), {"x"}), map(r, algebra(2, {"w"}, {"w^2+w"}), {"w"})},
        {map(r, algebra(2, {"s"}), {"s^2"}), map(r, algebra(2, {"w"}), {"w+1"})},
    };
    for (const Case& c : corpus) {
        Pushout p = pushout(c.f, c.g);
        // S'' = S ⊗_R R'' over R'' via the right coprojection.
        FrobeniusTwist lhs = frobenius_twist(p.right, 1);
        FrobeniusTwist tf = frobenius_twist(c.f, 1);
        Pushout rhs = pushout(tf.from_base, c.g);
        // lhs vars: vars(S) ⊔ vars(R'') ⊔ vars(R''); rhs: vars(S) ⊔ vars(R) ⊔ vars(R'').
        std::size_t ns = c.f.codomain().num_vars();
        std::size_t nr2 = c.g.codomain().num_vars();
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < ns; ++i)
            images.push_back(rhs.left.apply(tf.from_target.images()[i]));
        for (std::size_t j = 0; j < nr2; ++j)
            images.push_back(frobenius_power_poly(rhs.right.images()[j], 1));
        for (std::size_t j = 0; j < nr2; ++j)
            images.push_back(rhs.right.images()[j]);
        AlgebraMap comparison(lhs.algebra, rhs.algebra, std::move(images));
        CHECK(is_isomorphism(comparison));
    }
}

TEST_CASE("isomorphism verdicts agree with the oracle on random Artinian maps")
{
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        std::mt19937 rng(2024 + p);
        fixtures::RandomMapOptions opt{p, p == 2 ? 12u : 8u, 2};
        for (int trial = 0; trial < 30; ++trial) {
            AlgebraMap f = fixtures::random_artinian_map(rng, opt);
            bool oracle;
            try {
                oracle = oracle_map_bijective(f);
            } catch (const ResourceError&) {
                continue;
            }
            CHECK(is_isomorphism(f).is_isomorphism() == oracle);
            AlgebraMap rf = relative_frobenius(f);
            std::optional<bool> rf_oracle;
            try {
                rf_oracle = oracle_map_bijective(rf);
            } catch (const ResourceError&) {
            }
            if (rf_oracle)
                CHECK(is_isomorphism(rf).is_isomorphism() == *rf_oracle);
            ++checked;
        }
    }
    CHECK(checked >= 40);
}
