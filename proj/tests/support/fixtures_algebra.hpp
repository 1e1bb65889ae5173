#pragma once

#include "support/fixtures.hpp"

#include "frobforge/algebra.hpp"

#include <map>

namespace fixtures {

// "[x, y]/(x^2, y^3)" style: names and relation strings.
inline FPAlgebra algebra(std::uint32_t p, std::vector<std::string> names, std::vector<std::string> relations = {})
{
    RingPtr r = ring(p, std::move(names));
    std::vector<Polynomial> rels;
    for (const std::string& g : relations)
        rels.push_back(poly(r, g));
    return FPAlgebra(r, std::move(rels));
}

inline AlgebraMap map(const FPAlgebra& domain, const FPAlgebra& codomain, std::vector<std::string> images)
{
    std::vector<Polynomial> out;
    for (const std::string& s : images)
        out.push_back(poly(codomain.ring(), s));
    return AlgebraMap(domain, codomain, std::move(out));
}

// Structure map F_p → A.
inline AlgebraMap from_prime_field(const FPAlgebra& target)
{
    return AlgebraMap(FPAlgebra::prime_field(target.field()), target, {});
}

} // namespace fixtures
