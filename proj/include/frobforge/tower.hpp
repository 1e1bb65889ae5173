#pragma once

// Relative Frobenius towers S ⊗_{R,F^n} R, Gabber's presentation over a
// polynomial base, quotient towers R/I^[p^n], and stabilization detection.

#include "frobforge/algebra.hpp"

#include <optional>
#include <string>

namespace frobforge {

inline constexpr std::size_t kDefaultMaxStage = 6;

struct TowerStage {
    std::size_t index = 0;
    FPAlgebra stage;
    // stage(n) → stage(n−1): S-variables u ↦ u^p; R-variables x ↦ x (x ↦ f(x) when n = 1).
    std::optional<AlgebraMap> transition;
    AlgebraMap base_map;    // R → stage
    AlgebraMap from_target; // S → stage
};

// Stage n of the tower of f: R → S; stage 0 is S itself.
TowerStage tower_stage(const AlgebraMap& f, std::size_t n);

// S[x_1..x_m]/(rel(S), x_i^{p^k} − s_i). Requires a polynomial base and S = S^p[R, s_1..s_m].
// The new variables take the base's names (made fresh against S).
FPAlgebra gabber_stage(const AlgebraMap& f, const std::vector<Polynomial>& s, std::size_t k);
// With s_i = f(x_i); the stage then has the same variables as tower_stage(f, k).
FPAlgebra gabber_stage(const AlgebraMap& f, std::size_t k);

// R/(rel(R) + I^[p^n]).
FPAlgebra quotient_tower_stage(const FPAlgebra& r, const Ideal& ideal, std::size_t n);

struct StabilizationReport {
    bool stabilized = false;
    std::optional<std::size_t> stage;
    std::size_t explored = 0;
    // Human-readable certificate or failure.
    std::string witness;
    // Element of stage n's ideal outside stage n+1's, for the last stage examined.
    std::optional<Polynomial> failing_element;
    // I^[p^{n0}] = I^[p^{n0+2}] was confirmed.
    bool absorbing = false;
};

// Smallest n0 ≤ n_max with I^[p^{n0}] = I^[p^{n0+1}] modulo rel(R).
StabilizationReport detect_stabilization(const FPAlgebra& r, const Ideal& ideal, std::size_t n_max = kDefaultMaxStage);
// Smallest n0 ≤ n_max whose transition stage(n0+1) → stage(n0) is an isomorphism.
StabilizationReport detect_tower_stabilization(const AlgebraMap& f, std::size_t n_max = kDefaultMaxStage);

// Minimal m with I^m ⊆ I^[p^n] in a polynomial ring; at most r(p^n − 1) + 1 for r generators.
std::uint32_t cofinality_bound(const FPAlgebra& r, const Ideal& ideal, std::size_t n);

} // namespace frobforge
