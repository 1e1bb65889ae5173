#include "frobforge/polyring.hpp"

#include "frobforge/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace frobforge {

namespace {

constexpr const char* kModule = "polyring";

// Grevlex in natural variable order, used for canonical storage.
std::strong_ordering natural_grevlex(const Monomial& a, const Monomial& b) noexcept
{
    if (a.total_degree() != b.total_degree())
        return a.total_degree() <=> b.total_degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return b[i] <=> a[i];
    }
    return std::strong_ordering::equal;
}

bool term_greater(const Term& a, const Term& b) noexcept
{
    return natural_grevlex(a.monomial, b.monomial) == std::strong_ordering::greater;
}

} // namespace

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0)
            return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (p < 2 || p >= (1u << 16))
        throw PreconditionError(kModule, "characteristic " + std::to_string(p) + " outside [2, 65536)");
    if (!is_prime(p))
        throw PreconditionError(kModule, std::to_string(p) + " is not prime");
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const noexcept
{
    Coeff result = 1 % p_;
    Coeff base = a % p_;
    while (e > 0) {
        if (e & 1u)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return result;
}

Coeff PrimeField::inv(Coeff a) const
{
    if (a % p_ == 0)
        throw PreconditionError(kModule, "division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exponent)
{
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<Exponent>::max() / base)
            throw ResourceError(kModule, "exponent-width",
                                std::to_string(base) + "^" + std::to_string(exponent) + " exceeds the exponent range");
        result *= base;
    }
    return result;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps))
{
    for (Exponent e : exps_)
        degree_ += e;
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index, Exponent e)
{
    std::vector<Exponent> exps(num_vars, 0);
    exps.at(index) = e;
    return Monomial(std::move(exps));
}

std::uint64_t Monomial::support_mask() const noexcept
{
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < exps_.size() && i < 64; ++i) {
        if (exps_[i] != 0)
            mask |= std::uint64_t{1} << i;
    }
    return mask;
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    if (degree_ > other.degree_)
        return false;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] > other.exps_[i])
            return false;
    }
    return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept
{
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] != 0 && other.exps_[i] != 0)
            return false;
    }
    return true;
}

Monomial Monomial::lcm(const Monomial& other) const
{
    std::vector<Exponent> exps(exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i)
        exps[i] = std::max(exps_[i], other.exps_[i]);
    return Monomial(std::move(exps));
}

Monomial Monomial::quotient(const Monomial& divisor) const
{
    std::vector<Exponent> exps(exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i)
        exps[i] = exps_[i] - divisor.exps_[i];
    return Monomial(std::move(exps));
}

Monomial Monomial::scaled(std::uint64_t factor) const
{
    std::vector<Exponent> exps(exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        std::uint64_t e = static_cast<std::uint64_t>(exps_[i]) * factor;
        if (e > std::numeric_limits<Exponent>::max())
            throw ResourceError(kModule, "exponent-width", "exponent overflow in Frobenius power");
        exps[i] = static_cast<Exponent>(e);
    }
    return Monomial(std::move(exps));
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    std::vector<Exponent> exps(a.exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        std::uint64_t e = static_cast<std::uint64_t>(a.exps_[i]) + b.exps_[i];
        if (e > std::numeric_limits<Exponent>::max())
            throw ResourceError(kModule, "exponent-width", "exponent overflow in monomial product");
        exps[i] = static_cast<Exponent>(e);
    }
    return Monomial(std::move(exps));
}

std::size_t Monomial::hash() const noexcept
{
    std::size_t h = 0xcbf29ce484222325ull;
    for (Exponent e : exps_) {
        h ^= e;
        h *= 0x100000001b3ull;
    }
    return h;
}

// ---------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> priority, std::size_t split)
    : kind_(kind), priority_(std::move(priority)), split_(split)
{
    std::vector<std::size_t> sorted = priority_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i)
            throw PreconditionError(kModule, "variable priority is not a permutation");
    }
    if (split_ > priority_.size())
        throw PreconditionError(kModule, "block split exceeds variable count");
}

namespace {
std::vector<std::size_t> identity_priority(std::size_t n)
{
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i;
    return v;
}
} // namespace

MonomialOrder MonomialOrder::lex(std::size_t num_vars) { return lex(identity_priority(num_vars)); }
MonomialOrder MonomialOrder::grevlex(std::size_t num_vars) { return grevlex(identity_priority(num_vars)); }
MonomialOrder MonomialOrder::lex(std::vector<std::size_t> priority)
{
    return MonomialOrder(Kind::lex, std::move(priority), 0);
}
MonomialOrder MonomialOrder::grevlex(std::vector<std::size_t> priority)
{
    return MonomialOrder(Kind::grevlex, std::move(priority), 0);
}
MonomialOrder MonomialOrder::block(std::vector<std::size_t> priority, std::size_t split)
{
    return MonomialOrder(Kind::block, std::move(priority), split);
}

MonomialOrder MonomialOrder::elimination(std::size_t num_vars, std::span<const std::size_t> eliminated)
{
    std::vector<std::size_t> priority(eliminated.begin(), eliminated.end());
    std::vector<bool> used(num_vars, false);
    for (std::size_t v : eliminated) {
        if (v >= num_vars || used[v])
            throw PreconditionError(kModule, "invalid elimination variable set");
        used[v] = true;
    }
    for (std::size_t i = 0; i < num_vars; ++i) {
        if (!used[i])
            priority.push_back(i);
    }
    return block(std::move(priority), eliminated.size());
}

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::span<const std::size_t> vars) noexcept
{
    std::uint64_t da = 0;
    std::uint64_t db = 0;
    for (std::size_t v : vars) {
        da += a[v];
        db += b[v];
    }
    if (da != db)
        return da <=> db;
    for (std::size_t i = vars.size(); i-- > 0;) {
        std::size_t v = vars[i];
        if (a[v] != b[v])
            return b[v] <=> a[v];
    }
    return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering MonomialOrder::compare_first_block(const Monomial& a, const Monomial& b) const noexcept
{
    return grevlex_range(a, b, std::span<const std::size_t>(priority_).first(split_));
}

std::strong_ordering MonomialOrder::compare_second_block(const Monomial& a, const Monomial& b) const noexcept
{
    return grevlex_range(a, b, std::span<const std::size_t>(priority_).subspan(split_));
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    if (a.size() != priority_.size() || b.size() != priority_.size())
        throw MismatchError(kModule, "monomial width does not match the order's ambient ring");
    switch (kind_) {
    case Kind::lex:
        for (std::size_t v : priority_) {
            if (a[v] != b[v])
                return a[v] <=> b[v];
        }
        return std::strong_ordering::equal;
    case Kind::grevlex:
        return grevlex_range(a, b, priority_);
    case Kind::block: {
        auto first = compare_first_block(a, b);
        if (first != std::strong_ordering::equal)
            return first;
        return compare_second_block(a, b);
    }
    }
    return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const
{
    std::ostringstream out;
    switch (kind_) {
    case Kind::lex: out << "lex"; break;
    case Kind::grevlex: out << "grevlex"; break;
    case Kind::block: out << "block(" << split_ << ")"; break;
    }
    bool natural = true;
    for (std::size_t i = 0; i < priority_.size(); ++i)
        natural = natural && priority_[i] == i;
    if (!natural) {
        out << "[";
        for (std::size_t i = 0; i < priority_.size(); ++i)
            out << (i ? "," : "") << priority_[i];
        out << "]";
    }
    return out.str();
}

std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b)
{
    return order.compare(a, b);
}

// ---------------------------------------------------------------- PolyRing

bool is_identifier(std::string_view name) noexcept
{
    if (name.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front()))
        return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

RingPtr PolyRing::make(PrimeField field, std::vector<std::string> names)
{
    if (names.size() > kMaxVariables)
        throw PreconditionError(kModule, "at most 64 variables per ring, got " + std::to_string(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!is_identifier(names[i]))
            throw PreconditionError(kModule, "invalid variable name '" + names[i] + "'");
        for (std::size_t j = 0; j < i; ++j) {
            if (names[i] == names[j])
                throw PreconditionError(kModule, "duplicate variable name '" + names[i] + "'");
        }
    }
    return RingPtr(new PolyRing(field, std::move(names)));
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const noexcept
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name)
            return i;
    }
    return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept
{
    return a == b || (a && b && *a == *b);
}

std::string fresh_name(const std::string& base, std::span<const std::string> taken)
{
    auto used = [&](const std::string& n) { return std::find(taken.begin(), taken.end(), n) != taken.end(); };
    if (!used(base))
        return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!used(candidate))
            return candidate;
    }
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring))
{
    if (!ring_)
        throw PreconditionError(kModule, "polynomial without an ambient ring");
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c)
{
    Polynomial out(std::move(ring));
    Coeff r = out.field().reduce(c);
    if (r != 0)
        out.terms_.push_back(Term{Monomial(out.ring_->num_vars()), r});
    return out;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index)
{
    if (index >= ring->num_vars())
        throw PreconditionError(kModule, "variable index " + std::to_string(index) + " out of range");
    std::size_t n = ring->num_vars();
    return monomial(std::move(ring), Monomial::variable(n, index), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Coeff c)
{
    Polynomial out(std::move(ring));
    if (m.size() != out.ring_->num_vars())
        throw MismatchError(kModule, "monomial width does not match ring");
    c %= out.field().characteristic();
    if (c != 0)
        out.terms_.push_back(Term{std::move(m), c});
    return out;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms)
{
    Polynomial out(std::move(ring));
    const PrimeField& k = out.field();
    std::map<Monomial, Coeff> acc;
    for (Term& t : terms) {
        if (t.monomial.size() != out.ring_->num_vars())
            throw MismatchError(kModule, "monomial width does not match ring");
        Coeff c = t.coeff % k.characteristic();
        auto [it, inserted] = acc.try_emplace(std::move(t.monomial), c);
        if (!inserted)
            it->second = k.add(it->second, c);
    }
    for (auto& [m, c] : acc) {
        if (c != 0)
            out.terms_.push_back(Term{m, c});
    }
    std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
    return out;
}

bool Polynomial::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Coeff Polynomial::constant_term() const noexcept
{
    if (!terms_.empty() && terms_.back().monomial.is_one())
        return terms_.back().coeff;
    return 0;
}

std::int64_t Polynomial::total_degree() const noexcept
{
    if (terms_.empty())
        return -1;
    return static_cast<std::int64_t>(terms_.front().monomial.total_degree());
}

std::uint64_t Polynomial::support_mask() const noexcept
{
    std::uint64_t mask = 0;
    for (const Term& t : terms_)
        mask |= t.monomial.support_mask();
    return mask;
}

bool Polynomial::uses_only(std::span<const std::size_t> vars) const
{
    std::uint64_t allowed = 0;
    for (std::size_t v : vars)
        allowed |= std::uint64_t{1} << v;
    return (support_mask() & ~allowed) == 0;
}

std::optional<Term> Polynomial::leading_term(const MonomialOrder& order) const
{
    if (terms_.empty())
        return std::nullopt;
    const Term* best = &terms_.front();
    for (const Term& t : terms_) {
        if (order.compare(t.monomial, best->monomial) == std::strong_ordering::greater)
            best = &t;
    }
    return *best;
}

void Polynomial::require_same_ring(const Polynomial& other) const
{
    if (!same_ring(ring_, other.ring_))
        throw MismatchError(kModule, "polynomials live in different rings");
}

Polynomial Polynomial::operator-() const
{
    Polynomial out = *this;
    for (Term& t : out.terms_)
        t.coeff = field().neg(t.coeff);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    require_same_ring(other);
    const PrimeField& k = field();
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        if (j == other.terms_.size()) {
            merged.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size()) {
            merged.push_back(other.terms_[j++]);
        } else {
            auto c = natural_grevlex(terms_[i].monomial, other.terms_[j].monomial);
            if (c == std::strong_ordering::greater) {
                merged.push_back(std::move(terms_[i++]));
            } else if (c == std::strong_ordering::less) {
                merged.push_back(other.terms_[j++]);
            } else {
                Coeff s = k.add(terms_[i].coeff, other.terms_[j].coeff);
                if (s != 0)
                    merged.push_back(Term{std::move(terms_[i].monomial), s});
                ++i;
                ++j;
            }
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    return *this += -other;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    a.require_same_ring(b);
    const PrimeField& k = a.field();
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const Term& s : a.terms_) {
        for (const Term& t : b.terms_) {
            Coeff c = k.mul(s.coeff, t.coeff);
            auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, c);
            if (!inserted)
                it->second = k.add(it->second, c);
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (c != 0)
            terms.push_back(Term{m, c});
    }
    std::sort(terms.begin(), terms.end(), term_greater);
    return Polynomial(a.ring_, std::move(terms), 0);
}

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    *this = *this * other;
    return *this;
}

Polynomial Polynomial::scaled(Coeff c) const
{
    c %= field().characteristic();
    if (c == 0)
        return Polynomial(ring_);
    Polynomial out = *this;
    for (Term& t : out.terms_)
        t.coeff = field().mul(t.coeff, c);
    return out;
}

Polynomial Polynomial::times_monomial(const Monomial& m, Coeff c) const
{
    c %= field().characteristic();
    if (c == 0)
        return Polynomial(ring_);
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const Term& t : terms_)
        terms.push_back(Term{t.monomial * m, field().mul(t.coeff, c)});
    // Multiplication by a monomial preserves grevlex order.
    return Polynomial(ring_, std::move(terms), 0);
}

Polynomial Polynomial::pow(std::uint64_t e) const
{
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e > 0)
            base *= base;
    }
    return result;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const
{
    auto lt = leading_term(order);
    if (!lt)
        return *this;
    return scaled(field().inv(lt->coeff));
}

bool operator==(const Polynomial& a, const Polynomial& b) noexcept
{
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first)
            out << " + ";
        first = false;
        bool wrote = false;
        if (t.coeff != 1 || t.monomial.is_one()) {
            out << t.coeff;
            wrote = true;
        }
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            Exponent e = t.monomial[i];
            if (e == 0)
                continue;
            if (wrote)
                out << "*";
            out << ring_->name(i);
            if (e != 1)
                out << "^" << e;
            wrote = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------- free functions

Polynomial frobenius_power_poly(const Polynomial& f, std::uint32_t k)
{
    std::uint64_t q = checked_power(f.ring()->characteristic(), k);
    std::vector<Term> terms;
    terms.reserve(f.num_terms());
    for (const Term& t : f.terms())
        terms.push_back(Term{t.monomial.scaled(q), t.coeff});
    return Polynomial::from_terms(f.ring(), std::move(terms));
}

Polynomial partial_derivative(const Polynomial& f, std::size_t i)
{
    if (i >= f.ring()->num_vars())
        throw PreconditionError(kModule, "partial derivative index " + std::to_string(i) + " out of range");
    const PrimeField& k = f.field();
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        Exponent e = t.monomial[i];
        Coeff c = k.mul(t.coeff, k.reduce(e));
        if (e == 0 || c == 0)
            continue;
        std::vector<Exponent> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
        exps[i] -= 1;
        terms.push_back(Term{Monomial(std::move(exps)), c});
    }
    return Polynomial::from_terms(f.ring(), std::move(terms));
}

Polynomial embed(const Polynomial& f, const RingPtr& target, std::span<const std::size_t> var_map)
{
    if (var_map.size() != f.ring()->num_vars())
        throw MismatchError(kModule, "variable map has the wrong length");
    if (!(f.field() == target->field()))
        throw MismatchError(kModule, "cannot embed across characteristics");
    std::vector<Term> terms;
    terms.reserve(f.num_terms());
    for (const Term& t : f.terms()) {
        std::vector<Exponent> exps(target->num_vars(), 0);
        for (std::size_t i = 0; i < var_map.size(); ++i) {
            if (t.monomial[i] == 0)
                continue;
            if (var_map[i] >= target->num_vars())
                throw MismatchError(kModule, "variable map points outside the target ring");
            exps[var_map[i]] += t.monomial[i];
        }
        terms.push_back(Term{Monomial(std::move(exps)), t.coeff});
    }
    return Polynomial::from_terms(target, std::move(terms));
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images, const RingPtr& target,
                      const Reducer& reduce)
{
    if (images.size() != f.ring()->num_vars())
        throw MismatchError(kModule, "substitution needs one image per variable");
    for (const Polynomial& img : images) {
        if (!same_ring(img.ring(), target))
            throw MismatchError(kModule, "substitution image outside the target ring");
    }
    auto maybe_reduce = [&](Polynomial p) { return reduce ? reduce(p) : p; };

    // powers[i][e] cache, filled by repeated squaring on demand.
    std::vector<std::map<Exponent, Polynomial>> powers(images.size());
    auto power_of = [&](std::size_t var, Exponent e) -> Polynomial {
        auto& cache = powers[var];
        if (auto it = cache.find(e); it != cache.end())
            return it->second;
        Polynomial result = Polynomial::constant(target, 1);
        Polynomial base = images[var];
        Exponent rest = e;
        while (rest > 0) {
            if (rest & 1u)
                result = maybe_reduce(result * base);
            rest >>= 1u;
            if (rest > 0)
                base = maybe_reduce(base * base);
        }
        cache.emplace(e, result);
        return result;
    };

    Polynomial total(target);
    for (const Term& t : f.terms()) {
        Polynomial term = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < t.monomial.size() && !term.is_zero(); ++i) {
            if (t.monomial[i] != 0)
                term = maybe_reduce(term * power_of(i, t.monomial[i]));
        }
        total += term;
    }
    return maybe_reduce(total);
}

} // namespace frobforge
