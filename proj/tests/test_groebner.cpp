#include "support/box_oracle.hpp"
#include "support/fixtures.hpp"

#include "frobforge/errors.hpp"

#include <algorithm>
#include <doctest.h>

using namespace frobforge;
using fixtures::ideal;
using fixtures::poly;
using fixtures::ring;

namespace {

bool is_reduced(const std::vector<Polynomial>& basis, const MonomialOrder& order)
{
    for (const Polynomial& g : basis) {
        if (g.leading_term(order)->coeff != 1)
            return false;
        for (const Polynomial& h : basis) {
            if (&g == &h)
                continue;
            Monomial lead = h.leading_term(order)->monomial;
            for (const Term& t : g.terms()) {
                if (lead.divides(t.monomial))
                    return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("reduced bases of small ideals")
{
    auto r = ring(2, {"x", "y"});
    auto lex = MonomialOrder::lex(2);
    CHECK(reduced_groebner(ideal(r, {"x"}), lex) == std::vector<Polynomial>{poly(r, "x")});
    CHECK(reduced_groebner(ideal(r, {"x", "x+1"}), lex) == std::vector<Polynomial>{poly(r, "1")});

    Ideal i = ideal(r, {"x^2+y", "y^2"});
    auto basis = reduced_groebner(i, lex);
    CHECK(basis == std::vector<Polynomial>{poly(r, "x^2+y"), poly(r, "y^2")});

    // The quotient is 4-dimensional with basis 1, x, y, xy.
    fixtures::BoxOracle oracle(r, {4, 2}, {poly(r, "x^2+y")});
    CHECK(oracle.quotient_dimension() == 4);
}

TEST_CASE("normal forms")
{
    auto r = ring(2, {"x", "y"});
    auto lex = MonomialOrder::lex(2);
    CHECK(normal_form(poly(r, "x^2"), ideal(r, {"x^2+y"}), lex) == poly(r, "y"));
    CHECK(normal_form(poly(r, "y"), ideal(r, {"x"}), lex) == poly(r, "y"));
    CHECK(normal_form(poly(r, "x^2*y+y"), ideal(r, {"x^2+y", "y^2"}), lex) == poly(r, "y"));
}

TEST_CASE("containment and equality")
{
    auto r = ring(3, {"x", "y"});
    CHECK(ideal_contains(ideal(r, {"x"}), ideal(r, {"x^2"})));
    CHECK_FALSE(ideal_contains(ideal(r, {"x^2"}), ideal(r, {"x"})));
    CHECK(ideal_equal(ideal(r, {"x+y", "y"}), ideal(r, {"x", "y"})));
    CHECK_FALSE(ideal_equal(ideal(r, {"x"}), ideal(r, {"y"})));
    CHECK(ideal(r, {"x", "x+1"}).is_unit());
    CHECK(Ideal::zero(r).is_zero());
}

TEST_CASE("elimination")
{
    auto r = ring(2, {"u", "v", "x"});
    Ideal i = ideal(r, {"u+x^2", "v+x^3"});
    std::vector<std::size_t> keep = {0, 1};
    Ideal e = eliminate(i, keep);
    REQUIRE(e.ring()->names() == std::vector<std::string>{"u", "v"});
    CHECK(ideal_equal(e, ideal(e.ring(), {"u^3+v^2"})));

    auto r2 = ring(3, {"x", "y"});
    std::vector<std::size_t> only_y = {1};
    CHECK(eliminate(ideal(r2, {"x+y"}), only_y).is_zero());
    Ideal ey = eliminate(ideal(r2, {"x", "y"}), only_y);
    CHECK(ideal_equal(ey, ideal(ey.ring(), {"y"})));
}

TEST_CASE("frobenius powers of ideals")
{
    auto r2 = ring(2, {"x", "y", "e"});
    CHECK(frobenius_power_ideal(ideal(r2, {"x+y"}), 1).generators() == std::vector<Polynomial>{poly(r2, "x^2+y^2")});
    CHECK(frobenius_power_ideal(ideal(r2, {"e^2+e", "e"}), 1).generators() ==
          std::vector<Polynomial>{poly(r2, "e^4+e^2"), poly(r2, "e^2")});
    auto r3 = ring(3, {"x", "y"});
    CHECK(ideal_equal(frobenius_power_ideal(ideal(r3, {"x", "y"}), 1), ideal(r3, {"x^3", "y^3"})));
}

TEST_CASE("minors")
{
    auto r = ring(2, {"x", "y"});
    PolyMatrix diag = {{poly(r, "x"), poly(r, "0")}, {poly(r, "0"), poly(r, "y")}};
    CHECK(ideal_equal(minors_ideal(r, diag, 2), ideal(r, {"x*y"})));
    CHECK(ideal_equal(minors_ideal(r, diag, 1), ideal(r, {"x", "y"})));
    CHECK(minors_ideal(r, diag, 0).is_unit());
    CHECK(minors_ideal(r, diag, 3).is_zero());

    auto r5 = ring(5, {"x", "y"});
    PolyMatrix column = {{poly(r5, "-3*x^2")}, {poly(r5, "2*y")}};
    CHECK(ideal_equal(minors_ideal(r5, column, 1), ideal(r5, {"x^2", "y"})));

    PolyMatrix m3 = {{poly(r, "x"), poly(r, "1"), poly(r, "0")},
                     {poly(r, "0"), poly(r, "y"), poly(r, "1")},
                     {poly(r, "1"), poly(r, "0"), poly(r, "x")}};
    CHECK(determinant(m3) == poly(r, "x^2*y+1"));
}

TEST_CASE("bases are canonical, idempotent and permutation-invariant")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto r = ring(p, {"x", "y", "z"});
        std::mt19937 rng(100 + p);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Polynomial> gens;
            for (int g = 0; g < 3; ++g)
                gens.push_back(fixtures::random_poly(rng, r, 3, 3));
            for (const auto& order : {MonomialOrder::grevlex(3), MonomialOrder::lex(3)}) {
                auto basis = Ideal(r, gens).reduced_basis(order);
                CHECK(is_reduced(basis, order));
                CHECK(Ideal(r, basis).reduced_basis(order) == basis);
                auto shuffled = gens;
                std::shuffle(shuffled.begin(), shuffled.end(), rng);
                CHECK(Ideal(r, shuffled).reduced_basis(order) == basis);
                for (const Polynomial& g : gens)
                    CHECK(Ideal(r, basis).contains(g));
            }
        }
    }
}

TEST_CASE("normal form membership agrees with linear algebra on Artinian quotients")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto r = ring(p, {"x", "y"});
        std::mt19937 rng(7 * p);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Exponent> box = {3, 3};
            std::vector<Polynomial> extra = {fixtures::random_poly(rng, r, 3, 3), fixtures::random_poly(rng, r, 2, 3)};
            std::vector<Polynomial> gens = extra;
            gens.push_back(poly(r, "x^3"));
            gens.push_back(poly(r, "y^3"));
            Ideal i(r, gens);
            fixtures::BoxOracle oracle(r, box, extra);
            for (int probe = 0; probe < 20; ++probe) {
                Polynomial f = fixtures::random_poly(rng, r, 3, 4);
                if (probe % 3 == 0)
                    f = extra[0] * fixtures::random_poly(rng, r, 2, 3);
                CHECK(i.contains(f) == oracle.contains(f));
                Polynomial nf = i.normal_form(f);
                CHECK(i.normal_form(nf) == nf);
                CHECK(oracle.contains(f - nf));
            }
        }
    }
}

TEST_CASE("frobenius power identities")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto r = ring(p, {"x", "y"});
        std::vector<Ideal> corpus = {ideal(r, {"x", "y"}), ideal(r, {"x^2+y", "x*y"}), ideal(r, {"x+y^2"}),
                                     ideal(r, {"x*y", "y^2+x"})};
        for (const Ideal& i : corpus) {
            for (std::uint32_t a = 0; a <= 2; ++a) {
                for (std::uint32_t b = 0; b + a <= 2 + (p == 2); ++b) {
                    CHECK(ideal_equal(frobenius_power_ideal(frobenius_power_ideal(i, a), b),
                                      frobenius_power_ideal(i, a + b)));
                }
            }
            std::uint32_t rgens = static_cast<std::uint32_t>(i.generators().size());
            for (std::uint32_t k = 1; k <= 1 + (p == 2); ++k) {
                std::uint32_t q = static_cast<std::uint32_t>(checked_power(p, k));
                Ideal frob = frobenius_power_ideal(i, k);
                CHECK(ideal_contains(ideal_power(i, q), frob));
                CHECK(ideal_contains(frob, ideal_power(i, rgens * (q - 1) + 1)));
            }
        }
        // I ⊆ J implies I^[q] ⊆ J^[q].
        Ideal small = ideal(r, {"x^2*y", "y^3"});
        Ideal big = ideal(r, {"x^2", "y"});
        REQUIRE(ideal_contains(big, small));
        CHECK(ideal_contains(frobenius_power_ideal(big, 1), frobenius_power_ideal(small, 1)));
    }
}

TEST_CASE("step budget raises a resource error")
{
    auto r = ring(2, {"x", "y", "z"});
    std::size_t saved = step_budget();
    set_step_budget(1);
    Ideal i = ideal(r, {"x^2*y+z", "y^2*z+x", "z^2*x+y"});
    try {
        i.reduced_basis();
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(e.budget() == "spair-steps");
        CHECK(e.module() == "groebner");
    }
    set_step_budget(saved);
    CHECK_NOTHROW(ideal(r, {"x^2*y+z", "y^2*z+x", "z^2*x+y"}).reduced_basis());
}

TEST_CASE("submodule bases and syzygies")
{
    auto r = ring(2, {"x", "y"});
    auto vec = [&](std::initializer_list<const char*> c) {
        std::vector<Polynomial> out;
        for (const char* s : c)
            out.push_back(poly(r, s));
        return ModuleElement(std::move(out));
    };
    std::vector<ModuleElement> koszul = {vec({"x"}), vec({"y"})};
    auto syz = syzygies(r, 1, koszul);
    REQUIRE(syz.size() == 1);
    CHECK(syz[0] == vec({"y", "x"}));

    std::vector<ModuleElement> twice = {vec({"x"}), vec({"x"})};
    auto syz2 = syzygies(r, 1, twice);
    REQUIRE(syz2.size() == 1);
    CHECK(syz2[0] == vec({"1", "1"}));

    std::vector<ModuleElement> single = {vec({"x"})};
    CHECK(syzygies(r, 1, single).empty());

    auto r3 = ring(3, {"x", "y", "z"});
    auto vec3 = [&](std::initializer_list<const char*> c) {
        std::vector<Polynomial> out;
        for (const char* s : c)
            out.push_back(poly(r3, s));
        return ModuleElement(std::move(out));
    };
    std::vector<ModuleElement> gens = {vec3({"x", "y"}), vec3({"z", "x+y"}), vec3({"y*z", "x^2"})};
    auto s3 = syzygies(r3, 2, gens);
    for (const ModuleElement& s : s3) {
        ModuleElement total = ModuleElement::zero(r3, 2);
        for (std::size_t k = 0; k < gens.size(); ++k)
            total += gens[k].scaled(s.components[k]);
        CHECK(total.is_zero());
    }
    // Cramer syzygy (det(g2,g3), -det(g1,g3), det(g1,g2)) must lie in the computed module.
    ModuleElement known = vec3({"x^2*z - (x+y)*y*z", "-(x^3 - y^2*z)", "x*(x+y) - y*z"});
    ModuleElement check = ModuleElement::zero(r3, 2);
    for (std::size_t k = 0; k < gens.size(); ++k)
        check += gens[k].scaled(known.components[k]);
    REQUIRE(check.is_zero());
    SubmoduleBasis basis(r3, 3, s3, ModuleOrder::position_over_term(3));
    CHECK(basis.contains(known));
}
