#pragma once

// Buchberger engine: reduced Groebner bases of ideals and of submodules of
// free modules, normal forms, elimination, Frobenius powers of ideals and
// determinantal ideals.

#include "frobforge/polyring.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace frobforge {

inline constexpr std::size_t kDefaultStepBudget = 200000;

// Process-wide S-pair budget; exceeding it raises ResourceError("spair-steps").
std::size_t step_budget() noexcept;
void set_step_budget(std::size_t steps) noexcept;

// Deterministic work counters, reset per workbench command.
struct ResourceUsage {
    std::uint64_t groebner_runs = 0;
    std::uint64_t spairs_reduced = 0;
    std::uint64_t spairs_skipped = 0;
    std::uint64_t reduction_steps = 0;
};
ResourceUsage& resource_usage() noexcept;
void reset_resource_usage() noexcept;

class Ideal {
public:
    Ideal(RingPtr ring, std::vector<Polynomial> generators);
    static Ideal zero(RingPtr ring);
    static Ideal unit(RingPtr ring);

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Polynomial>& generators() const noexcept { return generators_; }

    // Cached; recomputation yields the identical basis.
    const std::vector<Polynomial>& reduced_basis(const MonomialOrder& order) const;
    const std::vector<Polynomial>& reduced_basis() const;
    Polynomial normal_form(const Polynomial& f, const MonomialOrder& order) const;
    Polynomial normal_form(const Polynomial& f) const;
    bool contains(const Polynomial& f) const;
    bool is_unit() const;
    bool is_zero() const;
    // Leading monomials of the reduced basis.
    std::vector<Monomial> leading_monomials(const MonomialOrder& order) const;
    std::vector<Monomial> leading_monomials() const;

    std::string to_string() const;

private:
    struct Cache;
    RingPtr ring_;
    std::vector<Polynomial> generators_;
    std::shared_ptr<Cache> cache_;
};

std::vector<Polynomial> reduced_groebner(const Ideal& ideal, const MonomialOrder& order);
Polynomial normal_form(const Polynomial& f, const Ideal& ideal, const MonomialOrder& order);

// big ⊇ small.
bool ideal_contains(const Ideal& big, const Ideal& small);
bool ideal_equal(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_power(const Ideal& ideal, std::uint32_t m);
// Same generators reinterpreted in `target` via var_map (see embed()).
Ideal embed_ideal(const Ideal& ideal, const RingPtr& target, std::span<const std::size_t> var_map);

// I ∩ F_p[keep], presented in the ring on the kept variables (in the given order).
Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep);

// I^[p^k]: generated by the p^k-th powers of the generators.
Ideal frobenius_power_ideal(const Ideal& ideal, std::uint32_t k);

// Monomials outside the leading-term ideal under `order`, in ascending order.
// Empty optional when the quotient is infinite-dimensional; ResourceError
// ("quotient-dimension") when there are more than `cap`.
std::optional<std::vector<Monomial>> standard_monomials(const Ideal& ideal, const MonomialOrder& order,
                                                        std::size_t cap);
// Monomials divisible by none of `leads` (unordered); empty optional when infinitely many.
std::optional<std::vector<Monomial>> monomials_outside(std::span<const Monomial> leads, std::size_t num_vars,
                                                       std::size_t cap);
// Index of a variable with no pure power among the leading monomials, if any.
std::optional<std::size_t> variable_without_pure_power(const Ideal& ideal, const MonomialOrder& order);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Cofactor expansion; `reduce` is applied to intermediate products when given.
Polynomial determinant(const PolyMatrix& square, const Reducer& reduce = {});

// Ideal of all t×t minors; t = 0 gives the unit ideal, t beyond the matrix size the zero ideal.
Ideal minors_ideal(const RingPtr& ring, const PolyMatrix& matrix, std::size_t t, const Reducer& reduce = {});

// ----------------------------------------------------------------- modules

struct ModuleElement {
    std::vector<Polynomial> components;

    ModuleElement() = default;
    explicit ModuleElement(std::vector<Polynomial> c) : components(std::move(c)) {}
    static ModuleElement zero(const RingPtr& ring, std::size_t rank);
    static ModuleElement unit_vector(const RingPtr& ring, std::size_t rank, std::size_t index);

    std::size_t rank() const noexcept { return components.size(); }
    bool is_zero() const noexcept;
    ModuleElement scaled(const Polynomial& by) const;
    ModuleElement& operator+=(const ModuleElement& other);
    friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
    friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

    std::string to_string() const;
};

// Term order on F^rank. Components are split into two groups at
// `group_split` (group 0 is larger). Within a group, with
// `block_before_position` set the first block of a block monomial order is
// compared before the component index; otherwise position comes first (POT).
struct ModuleOrder {
    MonomialOrder monomial_order;
    std::size_t group_split = std::numeric_limits<std::size_t>::max();
    bool block_before_position = false;

    static ModuleOrder position_over_term(std::size_t num_vars)
    {
        return ModuleOrder{MonomialOrder::grevlex(num_vars)};
    }
};

// Reduced Groebner basis of a submodule of F_p[vars]^rank.
class SubmoduleBasis {
public:
    SubmoduleBasis(RingPtr ring, std::size_t rank, std::span<const ModuleElement> generators, ModuleOrder order);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    const ModuleOrder& order() const noexcept { return order_; }
    const std::vector<ModuleElement>& elements() const noexcept { return elements_; }
    struct Leading {
        std::size_t component;
        Monomial monomial;
    };
    const std::vector<Leading>& leading_terms() const noexcept { return leading_; }

    ModuleElement normal_form(const ModuleElement& v) const;
    bool contains(const ModuleElement& v) const { return normal_form(v).is_zero(); }
    // dim_Fp of F_p[vars]^rank / submodule; empty when infinite, ResourceError past `cap`.
    std::optional<std::uint64_t> quotient_dimension(std::size_t cap) const;

private:
    RingPtr ring_;
    std::size_t rank_;
    ModuleOrder order_;
    std::vector<ModuleElement> elements_;
    std::vector<Leading> leading_;
    std::shared_ptr<const void> engine_basis_;
};

// Generators of {a ∈ F_p[vars]^t : Σ a_i g_i = 0} for g_1..g_t in F_p[vars]^rank.
std::vector<ModuleElement> syzygies(const RingPtr& ring, std::size_t rank, std::span<const ModuleElement> generators);

} // namespace frobforge
