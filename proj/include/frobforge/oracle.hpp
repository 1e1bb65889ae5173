#pragma once

// Brute-force models of Artinian algebras. Elements are coordinate vectors over
// the standard-monomial basis; everything past construction uses only the
// multiplication table, so verdicts here are independent of the engine's
// predicates.

#include "frobforge/algebra.hpp"

#include <cstdint>
#include <vector>

namespace frobforge {

inline constexpr std::size_t kOracleMaxDimension = 16;
// Exhaustive loops over all elements stop here.
inline constexpr std::uint64_t kOracleMaxElements = std::uint64_t{1} << 20;

class FiniteAlgebraTable {
public:
    using Vector = std::vector<Coeff>;

    const FPAlgebra& algebra() const noexcept { return algebra_; }
    const std::vector<Monomial>& basis() const noexcept { return basis_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    // p^dim, saturating at UINT64_MAX.
    std::uint64_t element_count() const noexcept;

    const Vector& product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
    Vector zero() const { return Vector(basis_.size(), 0); }
    const Vector& one() const noexcept { return one_; }
    const Vector& variable(std::size_t i) const { return variables_.at(i); }

    Vector add(const Vector& a, const Vector& b) const;
    Vector scale(const Vector& a, Coeff c) const;
    Vector multiply(const Vector& a, const Vector& b) const;
    Vector power(const Vector& a, std::uint64_t e) const;
    // f evaluated at the variable vectors through the table.
    Vector evaluate(const Polynomial& f) const;
    Polynomial to_polynomial(const Vector& v) const;

    // Base-p digits of `index` (index < element_count()).
    Vector decode(std::uint64_t index) const;
    std::uint64_t encode(const Vector& v) const;

private:
    friend FiniteAlgebraTable enumerate_algebra(const FPAlgebra& algebra);
    explicit FiniteAlgebraTable(FPAlgebra algebra) : algebra_(std::move(algebra)) {}

    FPAlgebra algebra_;
    std::vector<Monomial> basis_;
    std::vector<Vector> table_;
    std::vector<Vector> variables_;
    Vector one_;
};

// Throws InfiniteDimensionalError naming a variable with no pure-power leading
// term, or ResourceError("oracle-dimension") past kOracleMaxDimension.
FiniteAlgebraTable enumerate_algebra(const FPAlgebra& algebra);

// Rank of a set of vectors over F_p.
std::size_t span_dimension(const std::vector<FiniteAlgebraTable::Vector>& vectors, const PrimeField& field);

// Is S^p[R] = S? Computed by closing the set of all p-th powers together with
// the image of R under products and sums.
bool oracle_subring_closure(const AlgebraMap& f);
// F_p-dimension of S^p[R].
std::size_t oracle_subring_closure_dimension(const AlgebraMap& f);

// Evaluates ψ on every element of its (Artinian) domain and counts images.
bool oracle_map_bijective(const AlgebraMap& map);

// f ∈ relations, decided by evaluating f through the table.
bool oracle_is_zero(const FiniteAlgebraTable& table, const Polynomial& f);

// F_p-dimension of A^rank / (submodule generated by `relations`), A Artinian.
std::size_t oracle_module_dimension(const FiniteAlgebraTable& table, std::size_t rank,
                                    const std::vector<ModuleElement>& relations);

} // namespace frobforge
