#pragma once

// Finitely presented F_p-algebras F_p[vars]/I and maps between them.

#include "frobforge/groebner.hpp"
#include "frobforge/polyring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobforge {

class FPAlgebra {
public:
    FPAlgebra(RingPtr ring, std::vector<Polynomial> relations);
    // F_p[vars] with no relations.
    static FPAlgebra polynomial(RingPtr ring);
    // F_p itself, presented on no variables.
    static FPAlgebra prime_field(const PrimeField& field);

    const RingPtr& ring() const noexcept { return ring_; }
    const PrimeField& field() const noexcept { return ring_->field(); }
    std::uint32_t characteristic() const noexcept { return ring_->characteristic(); }
    std::size_t num_vars() const noexcept { return ring_->num_vars(); }
    const Ideal& relations() const noexcept { return relations_; }

    // 1 ∈ relations; answered from the cached basis.
    bool is_zero_ring() const;
    // Relations generate the zero ideal.
    bool is_polynomial() const;
    // Canonical representative modulo the relations (grevlex normal form).
    Polynomial reduce(const Polynomial& f) const;
    Reducer reducer() const;
    bool is_zero(const Polynomial& f) const { return reduce(f).is_zero(); }
    Polynomial variable(std::size_t i) const { return Polynomial::variable(ring_, i); }
    Polynomial one() const { return Polynomial::constant(ring_, 1); }

    // Adds relations.
    FPAlgebra quotient(const std::vector<Polynomial>& extra) const;

    // "[x, y]/(x^2, y)"; the relation list is printed as given.
    std::string to_string() const;

private:
    RingPtr ring_;
    Ideal relations_;
};

// Same ambient ring and equal relation ideals.
bool same_algebra(const FPAlgebra& a, const FPAlgebra& b);

// A map of algebras given by the images of the domain variables.
class AlgebraMap {
public:
    // Images are stored in normal form. Throws PreconditionError if a domain
    // relation does not map to zero.
    AlgebraMap(FPAlgebra domain, FPAlgebra codomain, std::vector<Polynomial> images);
    static AlgebraMap identity(const FPAlgebra& algebra);

    const FPAlgebra& domain() const noexcept { return domain_; }
    const FPAlgebra& codomain() const noexcept { return codomain_; }
    const std::vector<Polynomial>& images() const noexcept { return images_; }

    // Image of a domain-ring polynomial, reduced in the codomain.
    Polynomial apply(const Polynomial& f) const;

    std::string to_string() const;

private:
    FPAlgebra domain_;
    FPAlgebra codomain_;
    std::vector<Polynomial> images_;
};

// Same endpoints and equal images on generators.
bool maps_equal(const AlgebraMap& a, const AlgebraMap& b);

// g ∘ f.
AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f);

// Union of two variable lists. The first ring keeps its names; clashing names
// of the second get fresh suffixes.
struct VariableUnion {
    RingPtr ring;
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};
VariableUnion disjoint_union(const RingPtr& first, const RingPtr& second);

struct Pushout {
    FPAlgebra algebra;
    AlgebraMap left;  // S → P
    AlgebraMap right; // T → P
};
// P = S ⊗_R T for f: R → S and g: R → T.
Pushout pushout(const AlgebraMap& f, const AlgebraMap& g);

struct FrobeniusTwist {
    FPAlgebra algebra;
    AlgebraMap from_target; // S → T_k, s ↦ s
    AlgebraMap from_base;   // R → T_k, r ↦ r
};
// S ⊗_{R,F^k} R on vars(S) ⊔ vars(R) with relations rel(S) + rel(R) + (f(x_j) − x_j^{p^k}).
FrobeniusTwist frobenius_twist(const AlgebraMap& f, std::uint32_t k);

// Twist(f, 1) → S: u ↦ u^p on S-variables, x_j ↦ f(x_j) on R-variables.
AlgebraMap relative_frobenius(const AlgebraMap& f);
// A → A, x ↦ x^{p^k}.
AlgebraMap absolute_frobenius(const FPAlgebra& algebra, std::uint32_t k = 1);

// Graph of ψ: A → B on vars(B) ⊔ vars(A), relations rel(B) + (a_j − ψ(a_j)) + rel(A),
// with a reduced basis for the order eliminating vars(B).
class GraphIdeal {
public:
    explicit GraphIdeal(const AlgebraMap& map);

    const Ideal& ideal() const noexcept { return ideal_; }
    const MonomialOrder& order() const noexcept { return order_; }
    // Kernel as an ideal of the domain ring; always contains the domain relations.
    Ideal kernel() const;
    // Some a with ψ(a) = b, in normal form for the elimination order, or nothing.
    std::optional<Polynomial> preimage(const Polynomial& b) const;

private:
    AlgebraMap map_;
    VariableUnion vars_;
    Ideal ideal_;
    MonomialOrder order_;
};

Ideal map_kernel(const AlgebraMap& map);
std::optional<Polynomial> in_image(const AlgebraMap& map, const Polynomial& b);
bool is_surjective(const AlgebraMap& map);

struct IsomorphismCheck {
    bool surjective = false;
    bool injective = false;
    // Codomain variables with no preimage.
    std::vector<std::string> missing;
    // Kernel generators that are nonzero in the domain.
    std::vector<Polynomial> kernel_witness;
    std::optional<AlgebraMap> inverse;

    bool is_isomorphism() const noexcept { return surjective && injective; }
    explicit operator bool() const noexcept { return is_isomorphism(); }
};
IsomorphismCheck is_isomorphism(const AlgebraMap& map);

} // namespace frobforge
