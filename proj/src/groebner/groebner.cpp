#include "frobforge/groebner.hpp"

#include "engine.hpp"
#include "frobforge/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>

namespace frobforge {

namespace {

constexpr const char* kModule = "groebner";

std::atomic<std::size_t> g_step_budget{kDefaultStepBudget};

thread_local ResourceUsage t_usage;

} // namespace

std::size_t step_budget() noexcept { return g_step_budget.load(); }
void set_step_budget(std::size_t steps) noexcept { g_step_budget.store(steps); }
ResourceUsage& resource_usage() noexcept { return t_usage; }
void reset_resource_usage() noexcept { t_usage = ResourceUsage{}; }

// Bases are canonical, so concurrent computation of the same entry is benign:
// whichever write lands first is kept.
struct Ideal::Cache {
    struct Entry {
        detail::Basis basis;
        std::vector<Polynomial> polynomials;
    };
    std::mutex mutex;
    std::map<MonomialOrder, std::shared_ptr<const Entry>> entries;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)), cache_(std::make_shared<Cache>())
{
    for (const Polynomial& g : generators_) {
        if (!same_ring(g.ring(), ring_))
            throw MismatchError(kModule, "ideal generator outside the ambient ring");
    }
}

Ideal Ideal::zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

Ideal Ideal::unit(RingPtr ring)
{
    Polynomial one = Polynomial::constant(ring, 1);
    return Ideal(std::move(ring), {one});
}

const std::vector<Polynomial>& Ideal::reduced_basis(const MonomialOrder& order) const
{
    if (order.num_vars() != ring_->num_vars())
        throw MismatchError(kModule, "monomial order does not match the ideal's ring");
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->entries.find(order); it != cache_->entries.end())
            return it->second->polynomials;
    }
    detail::TermOrder term_order(ModuleOrder{order});
    std::vector<detail::Vec> gens;
    gens.reserve(generators_.size());
    for (const Polynomial& g : generators_)
        gens.push_back(detail::from_polynomial(g, term_order));
    auto entry = std::make_shared<Cache::Entry>();
    entry->basis = detail::buchberger(ring_->field(), term_order, std::move(gens), step_budget());
    for (const detail::Vec& v : entry->basis.elements)
        entry->polynomials.push_back(detail::to_polynomial(v, ring_));
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->entries.emplace(order, std::move(entry));
    return it->second->polynomials;
}

const std::vector<Polynomial>& Ideal::reduced_basis() const
{
    return reduced_basis(MonomialOrder::grevlex(ring_->num_vars()));
}

Polynomial Ideal::normal_form(const Polynomial& f, const MonomialOrder& order) const
{
    if (!same_ring(f.ring(), ring_))
        throw MismatchError(kModule, "normal form of a polynomial outside the ideal's ring");
    reduced_basis(order);
    std::shared_ptr<const Cache::Entry> entry;
    {
        std::lock_guard lock(cache_->mutex);
        entry = cache_->entries.at(order);
    }
    detail::TermOrder term_order(ModuleOrder{order});
    detail::Vec r = detail::reduce(detail::from_polynomial(f, term_order), entry->basis, ring_->field(), term_order);
    return detail::to_polynomial(r, ring_);
}

Polynomial Ideal::normal_form(const Polynomial& f) const
{
    return normal_form(f, MonomialOrder::grevlex(ring_->num_vars()));
}

bool Ideal::contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

bool Ideal::is_unit() const
{
    const auto& basis = reduced_basis();
    return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

bool Ideal::is_zero() const { return reduced_basis().empty(); }

std::vector<Monomial> Ideal::leading_monomials(const MonomialOrder& order) const
{
    std::vector<Monomial> out;
    for (const Polynomial& g : reduced_basis(order))
        out.push_back(g.leading_term(order)->monomial);
    return out;
}

std::vector<Monomial> Ideal::leading_monomials() const
{
    return leading_monomials(MonomialOrder::grevlex(ring_->num_vars()));
}

std::string Ideal::to_string() const
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < generators_.size(); ++i)
        out << (i ? ", " : "") << generators_[i].to_string();
    out << ")";
    return out.str();
}

std::vector<Polynomial> reduced_groebner(const Ideal& ideal, const MonomialOrder& order)
{
    return ideal.reduced_basis(order);
}

Polynomial normal_form(const Polynomial& f, const Ideal& ideal, const MonomialOrder& order)
{
    return ideal.normal_form(f, order);
}

bool ideal_contains(const Ideal& big, const Ideal& small)
{
    if (!same_ring(big.ring(), small.ring()))
        throw MismatchError(kModule, "containment test across different rings");
    return std::all_of(small.generators().begin(), small.generators().end(),
                       [&](const Polynomial& g) { return big.contains(g); });
}

bool ideal_equal(const Ideal& a, const Ideal& b)
{
    if (!same_ring(a.ring(), b.ring()))
        throw MismatchError(kModule, "equality test across different rings");
    return a.reduced_basis() == b.reduced_basis();
}

Ideal ideal_sum(const Ideal& a, const Ideal& b)
{
    if (!same_ring(a.ring(), b.ring()))
        throw MismatchError(kModule, "sum of ideals in different rings");
    std::vector<Polynomial> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b)
{
    if (!same_ring(a.ring(), b.ring()))
        throw MismatchError(kModule, "product of ideals in different rings");
    std::vector<Polynomial> gens;
    for (const Polynomial& f : a.generators()) {
        for (const Polynomial& g : b.generators()) {
            Polynomial h = f * g;
            if (!h.is_zero() && std::find(gens.begin(), gens.end(), h) == gens.end())
                gens.push_back(std::move(h));
        }
    }
    return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_power(const Ideal& ideal, std::uint32_t m)
{
    Ideal result = Ideal::unit(ideal.ring());
    for (std::uint32_t i = 0; i < m; ++i)
        result = ideal_product(result, ideal);
    return result;
}

Ideal embed_ideal(const Ideal& ideal, const RingPtr& target, std::span<const std::size_t> var_map)
{
    std::vector<Polynomial> gens;
    gens.reserve(ideal.generators().size());
    for (const Polynomial& g : ideal.generators())
        gens.push_back(embed(g, target, var_map));
    return Ideal(target, std::move(gens));
}

Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep)
{
    const RingPtr& ring = ideal.ring();
    std::size_t n = ring->num_vars();
    std::vector<bool> kept(n, false);
    std::vector<std::string> names;
    for (std::size_t v : keep) {
        if (v >= n || kept[v])
            throw PreconditionError(kModule, "invalid variable subset for elimination");
        kept[v] = true;
        names.push_back(ring->name(v));
    }
    std::vector<std::size_t> removed;
    for (std::size_t i = 0; i < n; ++i) {
        if (!kept[i])
            removed.push_back(i);
    }
    RingPtr smaller = PolyRing::make(ring->field(), names);

    MonomialOrder order = MonomialOrder::elimination(n, removed);
    std::vector<Polynomial> gens;
    for (const Polynomial& g : ideal.reduced_basis(order)) {
        if (!g.uses_only(keep))
            continue;
        std::vector<Term> terms;
        for (const Term& t : g.terms()) {
            std::vector<Exponent> exps(keep.size());
            for (std::size_t j = 0; j < keep.size(); ++j)
                exps[j] = t.monomial[keep[j]];
            terms.push_back(Term{Monomial(std::move(exps)), t.coeff});
        }
        gens.push_back(Polynomial::from_terms(smaller, std::move(terms)));
    }
    return Ideal(smaller, std::move(gens));
}

Ideal frobenius_power_ideal(const Ideal& ideal, std::uint32_t k)
{
    std::vector<Polynomial> gens;
    gens.reserve(ideal.generators().size());
    for (const Polynomial& g : ideal.generators())
        gens.push_back(frobenius_power_poly(g, k));
    return Ideal(ideal.ring(), std::move(gens));
}

namespace {

std::optional<std::size_t> unbounded_variable(std::span<const Monomial> leads, std::size_t n)
{
    std::vector<bool> bounded(n, false);
    for (const Monomial& m : leads) {
        if (m.is_one())
            return std::nullopt;
        std::uint64_t mask = m.support_mask();
        if ((mask & (mask - 1)) == 0)
            bounded[static_cast<std::size_t>(std::countr_zero(mask))] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!bounded[i])
            return i;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<Monomial>> monomials_outside(std::span<const Monomial> leads, std::size_t num_vars,
                                                       std::size_t cap)
{
    if (unbounded_variable(leads, num_vars))
        return std::nullopt;
    auto is_standard = [&](const Monomial& m) {
        return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    std::vector<Monomial> out;
    // Depth-first over exponent vectors; the standard set is closed under division,
    // so raising one exponent past a non-standard monomial never helps.
    std::vector<Exponent> exps(num_vars, 0);
    auto visit = [&](auto&& self, std::size_t var) -> void {
        if (var == num_vars) {
            Monomial m(exps);
            if (!is_standard(m))
                return;
            out.push_back(std::move(m));
            if (out.size() > cap)
                throw ResourceError(kModule, "quotient-dimension",
                                    "quotient has more than " + std::to_string(cap) + " standard monomials");
            return;
        }
        for (exps[var] = 0;; ++exps[var]) {
            if (!is_standard(Monomial(exps)))
                break;
            self(self, var + 1);
        }
        exps[var] = 0;
    };
    visit(visit, 0);
    return out;
}

std::optional<std::size_t> variable_without_pure_power(const Ideal& ideal, const MonomialOrder& order)
{
    return unbounded_variable(ideal.leading_monomials(order), ideal.ring()->num_vars());
}

std::optional<std::vector<Monomial>> standard_monomials(const Ideal& ideal, const MonomialOrder& order,
                                                        std::size_t cap)
{
    auto out = monomials_outside(ideal.leading_monomials(order), ideal.ring()->num_vars(), cap);
    if (out)
        std::sort(out->begin(), out->end(),
                  [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) < 0; });
    return out;
}

Polynomial determinant(const PolyMatrix& square, const Reducer& reduce)
{
    std::size_t n = square.size();
    if (n == 0)
        throw PreconditionError(kModule, "determinant of an empty matrix needs a ring; use minors_ideal");
    for (const auto& row : square) {
        if (row.size() != n)
            throw PreconditionError(kModule, "determinant of a non-square matrix");
    }
    const RingPtr& ring = square[0][0].ring();
    auto maybe_reduce = [&](Polynomial p) { return reduce ? reduce(p) : p; };
    if (n == 1)
        return maybe_reduce(square[0][0]);
    // Expansion along the first row over the remaining rows' minors.
    Polynomial total(ring);
    for (std::size_t col = 0; col < n; ++col) {
        if (square[0][col].is_zero())
            continue;
        PolyMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != col)
                    row.push_back(square[r][c]);
            }
            minor.push_back(std::move(row));
        }
        Polynomial term = maybe_reduce(square[0][col] * determinant(minor, reduce));
        if (col % 2 == 1)
            term = -term;
        total += term;
    }
    return maybe_reduce(total);
}

namespace {

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out)
{
    if (current.size() == k) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i + (k - current.size()) <= n; ++i) {
        current.push_back(i);
        combinations(n, k, i + 1, current, out);
        current.pop_back();
    }
}

} // namespace

Ideal minors_ideal(const RingPtr& ring, const PolyMatrix& matrix, std::size_t t, const Reducer& reduce)
{
    if (t == 0)
        return Ideal::unit(ring);
    std::size_t rows = matrix.size();
    std::size_t cols = rows == 0 ? 0 : matrix[0].size();
    for (const auto& row : matrix) {
        if (row.size() != cols)
            throw PreconditionError(kModule, "ragged matrix");
        for (const Polynomial& e : row) {
            if (!same_ring(e.ring(), ring))
                throw MismatchError(kModule, "matrix entry outside the ring");
        }
    }
    if (t > rows || t > cols)
        return Ideal::zero(ring);
    std::vector<std::vector<std::size_t>> row_sets;
    std::vector<std::vector<std::size_t>> col_sets;
    std::vector<std::size_t> scratch;
    combinations(rows, t, 0, scratch, row_sets);
    combinations(cols, t, 0, scratch, col_sets);
    std::vector<Polynomial> gens;
    for (const auto& rs : row_sets) {
        for (const auto& cs : col_sets) {
            PolyMatrix sub;
            for (std::size_t r : rs) {
                std::vector<Polynomial> row;
                for (std::size_t c : cs)
                    row.push_back(matrix[r][c]);
                sub.push_back(std::move(row));
            }
            Polynomial d = determinant(sub, reduce);
            if (!d.is_zero() && std::find(gens.begin(), gens.end(), d) == gens.end())
                gens.push_back(std::move(d));
        }
    }
    return Ideal(ring, std::move(gens));
}

} // namespace frobforge
