#pragma once

#include "frobforge/groebner.hpp"
#include "frobforge/polyring.hpp"
#include "frobforge/workbench/text.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace frobforge;

inline RingPtr ring(std::uint32_t p, std::vector<std::string> names)
{
    return PolyRing::make(PrimeField(p), std::move(names));
}

inline Polynomial poly(const RingPtr& r, const std::string& text)
{
    return workbench::parse_polynomial(r, text);
}

inline Ideal ideal(const RingPtr& r, std::initializer_list<const char*> gens)
{
    std::vector<Polynomial> out;
    for (const char* g : gens)
        out.push_back(poly(r, g));
    return Ideal(r, std::move(out));
}

inline Ideal ideal(const RingPtr& r, const std::vector<std::string>& gens)
{
    std::vector<Polynomial> out;
    for (const std::string& g : gens)
        out.push_back(poly(r, g));
    return Ideal(r, std::move(out));
}

// Random polynomial with up to `terms` terms and per-variable degree < max_exp.
inline Polynomial random_poly(std::mt19937& rng, const RingPtr& r, int terms, Exponent max_exp)
{
    std::uniform_int_distribution<Coeff> coeff(0, r->characteristic() - 1);
    std::uniform_int_distribution<Exponent> exp(0, max_exp - 1);
    std::vector<Term> out;
    for (int t = 0; t < terms; ++t) {
        std::vector<Exponent> e(r->num_vars());
        for (auto& x : e)
            x = exp(rng);
        out.push_back(Term{Monomial(std::move(e)), coeff(rng)});
    }
    return Polynomial::from_terms(r, std::move(out));
}

} // namespace fixtures
