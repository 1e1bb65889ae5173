#pragma once

// Internal Buchberger core shared by ideal and submodule computations.
// An ideal is a submodule of rank 1 (every term in component 0).

#include "frobforge/groebner.hpp"

#include <cstdint>
#include <vector>

namespace frobforge::detail {

struct MTerm {
    Monomial monomial;
    std::uint32_t component = 0;
    Coeff coeff = 0;
};

// Terms sorted strictly descending under a TermOrder, nonzero coefficients.
using Vec = std::vector<MTerm>;

class TermOrder {
public:
    explicit TermOrder(ModuleOrder order) : order_(std::move(order)) {}

    const ModuleOrder& module_order() const noexcept { return order_; }

    std::strong_ordering compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b) const;
    bool greater(const MTerm& a, const MTerm& b) const
    {
        return compare(a.component, a.monomial, b.component, b.monomial) == std::strong_ordering::greater;
    }

private:
    ModuleOrder order_;
};

struct Basis {
    std::vector<Vec> elements;        // monic, reduced, sorted by leading term (descending)
    std::vector<std::uint64_t> masks; // support of each leading monomial
};

// Combine like terms, drop zeros and sort descending.
Vec canonicalize(Vec v, const PrimeField& field, const TermOrder& order);

Vec from_polynomial(const Polynomial& f, const TermOrder& order, std::uint32_t component = 0);
Vec from_module_element(const ModuleElement& v, const TermOrder& order);
Polynomial to_polynomial(const Vec& v, const RingPtr& ring);
ModuleElement to_module_element(const Vec& v, const RingPtr& ring, std::size_t rank);

// Throws ResourceError once more than `budget` S-pairs have been reduced.
Basis buchberger(const PrimeField& field, const TermOrder& order, std::vector<Vec> generators, std::size_t budget);

// Fully reduced remainder of f modulo the basis.
Vec reduce(const Vec& f, const Basis& basis, const PrimeField& field, const TermOrder& order);

} // namespace frobforge::detail
