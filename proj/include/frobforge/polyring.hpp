#pragma once

// Sparse multivariate polynomials over a prime field F_p.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace frobforge {

using Coeff = std::uint32_t;
using Exponent = std::uint32_t;

inline constexpr std::size_t kMaxVariables = 64;

class PrimeField {
public:
    // Throws PreconditionError unless 2 <= p < 2^16 and p is prime.
    explicit PrimeField(std::uint32_t p);

    std::uint32_t characteristic() const noexcept { return p_; }

    Coeff reduce(std::int64_t value) const noexcept
    {
        std::int64_t r = value % static_cast<std::int64_t>(p_);
        return static_cast<Coeff>(r < 0 ? r + p_ : r);
    }
    Coeff add(Coeff a, Coeff b) const noexcept { return static_cast<Coeff>((a + b) % p_); }
    Coeff sub(Coeff a, Coeff b) const noexcept { return static_cast<Coeff>((a + p_ - b) % p_); }
    Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const noexcept
    {
        return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Coeff pow(Coeff a, std::uint64_t e) const noexcept;
    // a must be nonzero.
    Coeff inv(Coeff a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
    explicit Monomial(std::vector<Exponent> exps);

    static Monomial variable(std::size_t num_vars, std::size_t index, Exponent e = 1);

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exps_; }
    std::uint64_t total_degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }
    // Bit i set when variable i (< 64) occurs.
    std::uint64_t support_mask() const noexcept;

    bool divides(const Monomial& other) const noexcept;
    bool coprime(const Monomial& other) const noexcept;
    Monomial lcm(const Monomial& other) const;
    // Exact quotient; requires divisor.divides(*this).
    Monomial quotient(const Monomial& divisor) const;
    // Every exponent multiplied by `factor`; throws ResourceError on overflow.
    Monomial scaled(std::uint64_t factor) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }
    // Lexicographic on the exponent vector; a storage order, not a term order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept
    {
        return a.exps_ <=> b.exps_;
    }

    std::size_t hash() const noexcept;

private:
    std::vector<Exponent> exps_;
    std::uint64_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

// Term orders. Every kind compares variables in a priority sequence; a block
// order compares the first `split` priority variables by grevlex and breaks
// ties with grevlex on the rest, so the first block is eliminated.
class MonomialOrder {
public:
    enum class Kind { lex, grevlex, block };

    static MonomialOrder lex(std::size_t num_vars);
    static MonomialOrder grevlex(std::size_t num_vars);
    static MonomialOrder lex(std::vector<std::size_t> priority);
    static MonomialOrder grevlex(std::vector<std::size_t> priority);
    static MonomialOrder block(std::vector<std::size_t> priority, std::size_t split);
    // Block order whose first block is `eliminated` (in the given order),
    // followed by the remaining variables in index order.
    static MonomialOrder elimination(std::size_t num_vars, std::span<const std::size_t> eliminated);

    Kind kind() const noexcept { return kind_; }
    std::size_t num_vars() const noexcept { return priority_.size(); }
    std::size_t split() const noexcept { return split_; }
    std::span<const std::size_t> priority() const noexcept { return priority_; }

    // Throws MismatchError when the monomials do not match the order's width.
    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    // Comparison restricted to the first block (block orders only).
    std::strong_ordering compare_first_block(const Monomial& a, const Monomial& b) const noexcept;
    std::strong_ordering compare_second_block(const Monomial& a, const Monomial& b) const noexcept;

    std::string describe() const;

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
    friend auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;

private:
    MonomialOrder(Kind kind, std::vector<std::size_t> priority, std::size_t split);

    Kind kind_;
    std::vector<std::size_t> priority_;
    std::size_t split_;
};

std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b);

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// An ambient polynomial ring F_p[names...].
class PolyRing {
public:
    // Throws PreconditionError for duplicate or invalid names, or more than 64 variables.
    static RingPtr make(PrimeField field, std::vector<std::string> names);

    const PrimeField& field() const noexcept { return field_; }
    std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
    std::size_t num_vars() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const noexcept;

    friend bool operator==(const PolyRing& a, const PolyRing& b) noexcept
    {
        return a.field_ == b.field_ && a.names_ == b.names_;
    }

private:
    PolyRing(PrimeField field, std::vector<std::string> names)
        : field_(field), names_(std::move(names)) {}

    PrimeField field_;
    std::vector<std::string> names_;
};

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept;
bool is_identifier(std::string_view name) noexcept;
// `base` itself if unused, else base_1, base_2, ... (first one not in `taken`).
std::string fresh_name(const std::string& base, std::span<const std::string> taken);

struct Term {
    Monomial monomial;
    Coeff coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

// Canonical sparse form: terms sorted by grevlex (descending), no zero
// coefficients, so structural equality is mathematical equality.
class Polynomial {
public:
    explicit Polynomial(RingPtr ring);

    static Polynomial constant(RingPtr ring, std::int64_t c);
    static Polynomial variable(RingPtr ring, std::size_t index);
    static Polynomial monomial(RingPtr ring, Monomial m, Coeff c = 1);
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const noexcept { return ring_; }
    const PrimeField& field() const noexcept { return ring_->field(); }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    // Constant coefficient (0 if absent).
    Coeff constant_term() const noexcept;
    // -1 for the zero polynomial.
    std::int64_t total_degree() const noexcept;
    std::uint64_t support_mask() const noexcept;
    bool uses_only(std::span<const std::size_t> vars) const;
    std::optional<Term> leading_term(const MonomialOrder& order) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(Coeff c) const;
    Polynomial times_monomial(const Monomial& m, Coeff c = 1) const;
    Polynomial pow(std::uint64_t e) const;
    // Divides by the leading coefficient under `order`.
    Polynomial monic(const MonomialOrder& order) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept;

    std::string to_string() const;

private:
    Polynomial(RingPtr ring, std::vector<Term> sorted_terms, int /*tag*/)
        : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}
    void require_same_ring(const Polynomial& other) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

// f^(p^k), computed term-wise: exponents scale by p^k and coefficients are fixed by Fermat.
Polynomial frobenius_power_poly(const Polynomial& f, std::uint32_t k);
// Throws PreconditionError when i is not a variable index.
Polynomial partial_derivative(const Polynomial& f, std::size_t i);

// Reinterprets f in `target`, sending variable i to variable var_map[i].
Polynomial embed(const Polynomial& f, const RingPtr& target, std::span<const std::size_t> var_map);

using Reducer = std::function<Polynomial(const Polynomial&)>;

// f(images...) in `target`. `reduce`, when given, is applied after each
// multiplication so intermediate results stay small in a quotient ring.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images, const RingPtr& target,
                      const Reducer& reduce = {});

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exponent);

} // namespace frobforge
