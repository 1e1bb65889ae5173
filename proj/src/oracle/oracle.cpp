#include "frobforge/oracle.hpp"

#include "frobforge/errors.hpp"

#include <limits>
#include <map>

namespace frobforge {

namespace {

constexpr const char* kModule = "oracle";

using Vector = FiniteAlgebraTable::Vector;

// Row-echelon accumulator over F_p.
class Echelon {
public:
    explicit Echelon(const PrimeField& field) : field_(field) {}

    bool insert(Vector v)
    {
        reduce(v);
        std::size_t col = 0;
        while (col < v.size() && v[col] == 0)
            ++col;
        if (col == v.size())
            return false;
        Coeff inv = field_.inv(v[col]);
        for (Coeff& c : v)
            c = field_.mul(c, inv);
        rows_.emplace(col, std::move(v));
        return true;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

private:
    void reduce(Vector& v) const
    {
        for (const auto& [col, row] : rows_) {
            if (v[col] == 0)
                continue;
            Coeff factor = v[col];
            for (std::size_t i = col; i < v.size(); ++i)
                v[i] = field_.sub(v[i], field_.mul(factor, row[i]));
        }
    }

    PrimeField field_;
    std::map<std::size_t, Vector> rows_;
};

void require_enumerable(const FiniteAlgebraTable& table)
{
    if (table.element_count() > kOracleMaxElements)
        throw ResourceError(kModule, "oracle-elements",
                            "exhaustive enumeration of " + std::to_string(table.element_count()) +
                                " elements exceeds the oracle limit");
}

} // namespace

std::uint64_t FiniteAlgebraTable::element_count() const noexcept
{
    std::uint64_t count = 1;
    std::uint64_t p = algebra_.characteristic();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / p)
            return std::numeric_limits<std::uint64_t>::max();
        count *= p;
    }
    return count;
}

Vector FiniteAlgebraTable::add(const Vector& a, const Vector& b) const
{
    const PrimeField& k = algebra_.field();
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = k.add(a[i], b[i]);
    return out;
}

Vector FiniteAlgebraTable::scale(const Vector& a, Coeff c) const
{
    const PrimeField& k = algebra_.field();
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = k.mul(a[i], c);
    return out;
}

Vector FiniteAlgebraTable::multiply(const Vector& a, const Vector& b) const
{
    const PrimeField& k = algebra_.field();
    std::size_t d = basis_.size();
    Vector out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b[j] == 0)
                continue;
            Coeff c = k.mul(a[i], b[j]);
            const Vector& row = product(i, j);
            for (std::size_t t = 0; t < d; ++t) {
                if (row[t] != 0)
                    out[t] = k.add(out[t], k.mul(c, row[t]));
            }
        }
    }
    return out;
}

Vector FiniteAlgebraTable::power(const Vector& a, std::uint64_t e) const
{
    Vector result = one_;
    Vector base = a;
    while (e > 0) {
        if (e & 1u)
            result = multiply(result, base);
        e >>= 1u;
        if (e > 0)
            base = multiply(base, base);
    }
    return result;
}

Vector FiniteAlgebraTable::evaluate(const Polynomial& f) const
{
    if (!same_ring(f.ring(), algebra_.ring()))
        throw MismatchError(kModule, "evaluating a polynomial outside the table's ring");
    std::map<std::pair<std::size_t, Exponent>, Vector> powers;
    Vector total = zero();
    for (const Term& t : f.terms()) {
        Vector term = scale(one_, t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            Exponent e = t.monomial[i];
            if (e == 0)
                continue;
            auto it = powers.find({i, e});
            if (it == powers.end())
                it = powers.emplace(std::make_pair(i, e), power(variables_[i], e)).first;
            term = multiply(term, it->second);
        }
        total = add(total, term);
    }
    return total;
}

Polynomial FiniteAlgebraTable::to_polynomial(const Vector& v) const
{
    std::vector<Term> terms;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0)
            terms.push_back(Term{basis_[i], v[i]});
    }
    return Polynomial::from_terms(algebra_.ring(), std::move(terms));
}

Vector FiniteAlgebraTable::decode(std::uint64_t index) const
{
    std::uint64_t p = algebra_.characteristic();
    Vector v(basis_.size());
    for (Coeff& c : v) {
        c = static_cast<Coeff>(index % p);
        index /= p;
    }
    return v;
}

std::uint64_t FiniteAlgebraTable::encode(const Vector& v) const
{
    std::uint64_t p = algebra_.characteristic();
    std::uint64_t index = 0;
    for (std::size_t i = v.size(); i-- > 0;)
        index = index * p + v[i];
    return index;
}

FiniteAlgebraTable enumerate_algebra(const FPAlgebra& algebra)
{
    FiniteAlgebraTable table(algebra);
    const Ideal& rel = algebra.relations();
    MonomialOrder order = MonomialOrder::grevlex(algebra.num_vars());
    if (auto v = variable_without_pure_power(rel, order))
        throw InfiniteDimensionalError(kModule, algebra.ring()->name(*v),
                                       "algebra " + algebra.to_string() + " is infinite-dimensional: no power of " +
                                           algebra.ring()->name(*v) + " is a leading term");
    std::optional<std::vector<Monomial>> basis;
    try {
        basis = standard_monomials(rel, order, kOracleMaxDimension);
    } catch (const ResourceError&) {
        throw ResourceError(kModule, "oracle-dimension",
                            "algebra " + algebra.to_string() + " has dimension above the oracle cap of " +
                                std::to_string(kOracleMaxDimension));
    }
    table.basis_ = std::move(*basis);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < table.basis_.size(); ++i)
        index.emplace(table.basis_[i], i);
    auto to_vector = [&](const Polynomial& nf) {
        Vector v(table.basis_.size(), 0);
        for (const Term& t : nf.terms())
            v.at(index.at(t.monomial)) = t.coeff;
        return v;
    };
    const RingPtr& ring = algebra.ring();
    std::size_t d = table.basis_.size();
    table.table_.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            table.table_.push_back(to_vector(rel.normal_form(Polynomial::monomial(ring, table.basis_[i] * table.basis_[j]))));
    }
    for (std::size_t i = 0; i < algebra.num_vars(); ++i)
        table.variables_.push_back(to_vector(rel.normal_form(Polynomial::variable(ring, i))));
    table.one_ = to_vector(rel.normal_form(Polynomial::constant(ring, 1)));
    return table;
}

std::size_t span_dimension(const std::vector<Vector>& vectors, const PrimeField& field)
{
    Echelon e(field);
    for (const Vector& v : vectors)
        e.insert(v);
    return e.rank();
}

std::size_t oracle_subring_closure_dimension(const AlgebraMap& f)
{
    FiniteAlgebraTable s = enumerate_algebra(f.codomain());
    require_enumerable(s);
    const PrimeField& k = s.algebra().field();
    Echelon closure(k);
    std::vector<Vector> span;
    auto add = [&](const Vector& v) {
        if (closure.insert(v))
            span.push_back(v);
    };
    add(s.one());
    for (std::uint64_t idx = 0; idx < s.element_count(); ++idx)
        add(s.power(s.decode(idx), k.characteristic()));
    for (const Polynomial& img : f.images())
        add(s.evaluate(img));
    // Close the span under products; new vectors are multiplied against everything seen.
    for (std::size_t i = 0; i < span.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j)
            add(s.multiply(span[i], span[j]));
    }
    return closure.rank();
}

bool oracle_subring_closure(const AlgebraMap& f)
{
    std::size_t dim = enumerate_algebra(f.codomain()).dimension();
    return oracle_subring_closure_dimension(f) == dim;
}

bool oracle_map_bijective(const AlgebraMap& map)
{
    FiniteAlgebraTable a = enumerate_algebra(map.domain());
    FiniteAlgebraTable b = enumerate_algebra(map.codomain());
    require_enumerable(a);
    require_enumerable(b);
    std::vector<Vector> image_vars;
    for (const Polynomial& img : map.images())
        image_vars.push_back(b.evaluate(img));
    // Images of the domain basis monomials.
    std::vector<Vector> basis_images;
    for (const Monomial& m : a.basis()) {
        Vector v = b.one();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0)
                v = b.multiply(v, b.power(image_vars[i], m[i]));
        }
        basis_images.push_back(std::move(v));
    }
    std::vector<bool> hit(static_cast<std::size_t>(b.element_count()), false);
    std::uint64_t distinct = 0;
    bool injective = true;
    for (std::uint64_t idx = 0; idx < a.element_count(); ++idx) {
        Vector x = a.decode(idx);
        Vector y = b.zero();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0)
                y = b.add(y, b.scale(basis_images[i], x[i]));
        }
        std::uint64_t code = b.encode(y);
        if (hit[code])
            injective = false;
        else
            ++distinct;
        hit[code] = true;
    }
    return injective && distinct == b.element_count();
}

bool oracle_is_zero(const FiniteAlgebraTable& table, const Polynomial& f)
{
    for (Coeff c : table.evaluate(f)) {
        if (c != 0)
            return false;
    }
    return true;
}

std::size_t oracle_module_dimension(const FiniteAlgebraTable& table, std::size_t rank,
                                    const std::vector<ModuleElement>& relations)
{
    std::size_t d = table.dimension();
    std::vector<Vector> rows;
    for (const ModuleElement& rel : relations) {
        if (rel.rank() != rank)
            throw MismatchError(kModule, "module relation of the wrong rank");
        std::vector<Vector> parts;
        for (const Polynomial& c : rel.components)
            parts.push_back(table.evaluate(c));
        for (std::size_t i = 0; i < d; ++i) {
            Vector unit = table.zero();
            unit[i] = 1;
            Vector row;
            row.reserve(rank * d);
            for (const Vector& part : parts) {
                Vector prod = table.multiply(unit, part);
                row.insert(row.end(), prod.begin(), prod.end());
            }
            rows.push_back(std::move(row));
        }
    }
    return rank * d - span_dimension(rows, table.algebra().field());
}

} // namespace frobforge
