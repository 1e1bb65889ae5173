#pragma once

// Relative semiperfectness through Kähler differentials, semiperfect covers,
// relative perfectness, the factorization R → R' → T → S, and p-bases.

#include "frobforge/homology.hpp"
#include "frobforge/tower.hpp"

#include <optional>
#include <string>

namespace frobforge {

// Ω_{S/R} = coker of the Jacobian of S = R[u]/(rel(S), x_j − f(x_j)) with respect to u.
struct KahlerPresentation {
    ModulePresentation module; // over S, one generator du_i per S-variable
    PolyMatrix jacobian;       // rows: S-variables; columns: relations
};
KahlerPresentation kahler_presentation(const AlgebraMap& f);

struct SemiperfectVerdict {
    bool semiperfect = false;
    // Fitt_0(Ω) + rel(S), reduced; the unit ideal exactly when semiperfect.
    Ideal obstruction;
    explicit operator bool() const noexcept { return semiperfect; }
};
SemiperfectVerdict is_relatively_semiperfect(const AlgebraMap& f);

struct SemiperfectCover {
    AlgebraMap to_cover;                // R → R' = R[x_1..x_n]
    AlgebraMap cover_map;               // R' → S
    std::size_t adjoined = 0;           // n
    std::vector<Polynomial> generators; // images of x_1..x_n in S
};
// Adjoins one variable per S-variable, then drops variables in declaration
// order while the cover stays relatively semiperfect.
SemiperfectCover semiperfect_cover(const AlgebraMap& f);

struct PerfectnessCertificate {
    bool perfect = false; // relative Frobenius is an isomorphism
    IsomorphismCheck frobenius;
    std::size_t tor_bound = 0;
    // Tor^R_i(F_*R, S) for i ≤ tor_bound when it could be computed.
    std::optional<TorResult> tor;
    std::string tor_note;
    explicit operator bool() const noexcept { return perfect; }
};
PerfectnessCertificate is_relatively_perfect(const AlgebraMap& f, std::size_t tor_bound = kDefaultTorBound);

struct FactorizationCertificate {
    AlgebraMap input;
    SemiperfectCover cover;
    // Middle algebra: T_{k0} when stabilized, else the deepest stage explored.
    FPAlgebra middle;
    std::size_t stage = 0;
    bool stabilized = false;
    std::size_t budget = 0;
    AlgebraMap to_middle;   // R' → T
    AlgebraMap from_middle; // T → S
    std::vector<FPAlgebra> stages; // T_0 .. T_{explored}

    bool cover_semiperfect = false;
    // Stabilized case: is_relatively_perfect(R' → T).
    std::optional<bool> middle_perfect;
    // Truncated case: relative Frobenius of R'/K → T is an isomorphism, K = ker(A → T).
    std::optional<bool> truncated_perfect;
    bool last_surjective = false;
    bool composition_ok = false;
    bool first_free = false;

    bool valid() const noexcept;
};
FactorizationCertificate factorize(const AlgebraMap& f, std::size_t stage_budget);

struct PBasisResult {
    bool found = false;
    std::size_t rank = 0;
    // S-variables chosen as the basis and the verified map R[x_1..x_n] → S.
    std::vector<std::string> basis;
    std::optional<AlgebraMap> map;
    // Failure: index j and Fitt_j(Ω) when Ω is not projective of constant rank.
    std::optional<std::size_t> fitting_index;
    std::optional<Ideal> fitting_ideal;
    std::string message;
};
PBasisResult find_p_basis(const AlgebraMap& f);

} // namespace frobforge
