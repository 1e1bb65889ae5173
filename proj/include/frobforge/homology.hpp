#pragma once

// Finitely presented modules over an FPAlgebra, truncated free resolutions,
// Tor, and pushforwards of module-finite maps (F_*A in particular).
//
// All submodule computations happen in the ambient polynomial ring: a
// submodule N of A^g with A = P/J is handled as N + J·P^g.

#include "frobforge/algebra.hpp"

#include <optional>
#include <vector>

namespace frobforge {

inline constexpr std::size_t kDefaultTorBound = 3;
// Largest F_p-dimension reported numerically.
inline constexpr std::size_t kMaxNumericDimension = std::size_t{1} << 20;

// coker(A^relations → A^rank).
class ModulePresentation {
public:
    // Entries are reduced modulo the algebra's relations; zero and repeated relations are dropped.
    ModulePresentation(FPAlgebra algebra, std::size_t rank, std::vector<ModuleElement> relations);
    static ModulePresentation free(const FPAlgebra& algebra, std::size_t rank);
    // A/(gens).
    static ModulePresentation cyclic(const FPAlgebra& algebra, const std::vector<Polynomial>& gens);

    const FPAlgebra& algebra() const noexcept { return algebra_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<ModuleElement>& relations() const noexcept { return relations_; }

    // Removes generators that a relation with a nonzero constant entry expresses
    // through the others. The result presents an isomorphic module.
    ModulePresentation pruned() const;

    // Relations plus J·e_c, as a submodule of P^rank.
    std::vector<ModuleElement> lifted_relations() const;
    // Matrix with one column per relation.
    PolyMatrix matrix() const;

    std::string to_string() const;

private:
    FPAlgebra algebra_;
    std::size_t rank_;
    std::vector<ModuleElement> relations_;
};

// Generators of ker(A^t → A^rank), e_k ↦ gens[k]; elements of A^t in normal form.
std::vector<ModuleElement> syzygy_module(const FPAlgebra& algebra, std::size_t rank,
                                         const std::vector<ModuleElement>& gens);

// F_p-dimension of the module; empty when infinite.
std::optional<std::uint64_t> vector_space_dimension(const ModulePresentation& module);

// A^{r_L} → … → A^{r_0}; differentials[i-1] holds the columns of d_i : A^{r_i} → A^{r_{i-1}}.
struct Complex {
    FPAlgebra algebra;
    std::vector<std::size_t> ranks;
    std::vector<std::vector<ModuleElement>> differentials;

    std::size_t length() const noexcept { return differentials.size(); }
    // d_i ∘ d_{i+1} vanishes modulo the algebra's relations.
    bool is_complex() const;
};

// Resolution of length `length` with H_0 = M, by iterated syzygies with
// redundant generators removed.
Complex free_resolution(const ModulePresentation& module, std::size_t length);

struct TorGroup {
    std::size_t degree = 0;
    // F_p-dimension when finite.
    std::optional<std::uint64_t> dimension;
    // Vanishing decided either way; empty when only a positive-dimension bound is unknown.
    std::optional<bool> vanishes;
    // Cycles not known to be boundaries, as elements of the chain module (symbolic case).
    std::vector<ModuleElement> survivors;
    std::size_t chain_rank = 0;
};

struct TorResult {
    std::vector<TorGroup> groups; // degrees 0..bound
    bool numeric() const;
    // Degrees 1..bound all vanish.
    bool independent() const;
};

// Tor^A_i(M, N) for i = 0..bound.
TorResult tor(const ModulePresentation& m, const ModulePresentation& n, std::size_t bound);
// Tor^R_i(M, T) for an R-module M and g: R → T, computed as H_i(g(F_M)) over T.
TorResult tor_along(const ModulePresentation& m, const AlgebraMap& g, std::size_t bound);

struct Pushforward {
    ModulePresentation module; // over the domain of the map
    // Codomain elements that map to the generators (monomials in the codomain's variables).
    std::vector<Polynomial> generators;
};
// T as an R-module for g: R → T; empty when T is not visibly module-finite
// (some variable has no monic pure-power leading term over R).
std::optional<Pushforward> module_finite_pushforward(const AlgebraMap& g);
// F_*A as a module over A through x ↦ x^p.
ModulePresentation frobenius_pushforward(const FPAlgebra& algebra);

} // namespace frobforge
