#include "frobforge/algebra.hpp"

#include "frobforge/errors.hpp"

#include <sstream>

namespace frobforge {

namespace {

constexpr const char* kModule = "algebra";

// f uses only the variables at `positions`; rewrite it in `target`, whose
// variable j is positions[j].
Polynomial project(const Polynomial& f, const RingPtr& target, std::span<const std::size_t> positions)
{
    std::vector<Term> terms;
    terms.reserve(f.num_terms());
    for (const Term& t : f.terms()) {
        std::vector<Exponent> exps(positions.size());
        for (std::size_t j = 0; j < positions.size(); ++j)
            exps[j] = t.monomial[positions[j]];
        terms.push_back(Term{Monomial(std::move(exps)), t.coeff});
    }
    return Polynomial::from_terms(target, std::move(terms));
}

std::vector<Polynomial> embed_all(const std::vector<Polynomial>& polys, const RingPtr& target,
                                  std::span<const std::size_t> var_map)
{
    std::vector<Polynomial> out;
    out.reserve(polys.size());
    for (const Polynomial& f : polys)
        out.push_back(embed(f, target, var_map));
    return out;
}

void require_same_field(const FPAlgebra& a, const FPAlgebra& b)
{
    if (a.field() != b.field())
        throw MismatchError(kModule, "algebras over different prime fields");
}

} // namespace

// ---------------------------------------------------------------- FPAlgebra

FPAlgebra::FPAlgebra(RingPtr ring, std::vector<Polynomial> relations)
    : ring_(ring), relations_(std::move(ring), std::move(relations))
{
}

FPAlgebra FPAlgebra::polynomial(RingPtr ring) { return FPAlgebra(std::move(ring), {}); }

FPAlgebra FPAlgebra::prime_field(const PrimeField& field) { return polynomial(PolyRing::make(field, {})); }

bool FPAlgebra::is_zero_ring() const { return relations_.is_unit(); }

bool FPAlgebra::is_polynomial() const { return relations_.is_zero(); }

Polynomial FPAlgebra::reduce(const Polynomial& f) const
{
    if (relations_.generators().empty())
        return f;
    return relations_.normal_form(f);
}

Reducer FPAlgebra::reducer() const
{
    if (relations_.generators().empty())
        return {};
    Ideal rel = relations_;
    return [rel](const Polynomial& f) { return rel.normal_form(f); };
}

FPAlgebra FPAlgebra::quotient(const std::vector<Polynomial>& extra) const
{
    std::vector<Polynomial> rels = relations_.generators();
    rels.insert(rels.end(), extra.begin(), extra.end());
    return FPAlgebra(ring_, std::move(rels));
}

std::string FPAlgebra::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < ring_->num_vars(); ++i)
        out << (i ? ", " : "") << ring_->name(i);
    out << "]";
    if (!relations_.generators().empty())
        out << "/" << relations_.to_string();
    return out.str();
}

bool same_algebra(const FPAlgebra& a, const FPAlgebra& b)
{
    return same_ring(a.ring(), b.ring()) && ideal_equal(a.relations(), b.relations());
}

// --------------------------------------------------------------- AlgebraMap

AlgebraMap::AlgebraMap(FPAlgebra domain, FPAlgebra codomain, std::vector<Polynomial> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain))
{
    require_same_field(domain_, codomain_);
    if (images.size() != domain_.num_vars())
        throw MismatchError(kModule, "map needs " + std::to_string(domain_.num_vars()) + " images, got " +
                                         std::to_string(images.size()));
    for (Polynomial& img : images) {
        if (!same_ring(img.ring(), codomain_.ring()))
            throw MismatchError(kModule, "map image outside the codomain ring");
        images_.push_back(codomain_.reduce(img));
    }
    for (const Polynomial& g : domain_.relations().generators()) {
        Polynomial value = apply(g);
        if (!value.is_zero())
            throw PreconditionError(kModule, "map is not well defined: relation " + g.to_string() + " maps to " +
                                                 value.to_string());
    }
}

AlgebraMap AlgebraMap::identity(const FPAlgebra& algebra)
{
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < algebra.num_vars(); ++i)
        images.push_back(algebra.variable(i));
    return AlgebraMap(algebra, algebra, std::move(images));
}

Polynomial AlgebraMap::apply(const Polynomial& f) const
{
    if (!same_ring(f.ring(), domain_.ring()))
        throw MismatchError(kModule, "applying a map to a polynomial outside its domain");
    return substitute(f, images_, codomain_.ring(), codomain_.reducer());
}

std::string AlgebraMap::to_string() const
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < images_.size(); ++i)
        out << (i ? ", " : " ") << domain_.ring()->name(i) << " -> " << images_[i].to_string();
    out << (images_.empty() ? "}" : " }");
    return out.str();
}

bool maps_equal(const AlgebraMap& a, const AlgebraMap& b)
{
    return same_algebra(a.domain(), b.domain()) && same_algebra(a.codomain(), b.codomain()) &&
           a.images() == b.images();
}

AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f)
{
    if (!same_algebra(f.codomain(), g.domain()))
        throw MismatchError(kModule, "cannot compose: codomain " + f.codomain().to_string() +
                                         " differs from domain " + g.domain().to_string());
    std::vector<Polynomial> images;
    for (const Polynomial& img : f.images())
        images.push_back(g.apply(img));
    return AlgebraMap(f.domain(), g.codomain(), std::move(images));
}

VariableUnion disjoint_union(const RingPtr& first, const RingPtr& second)
{
    if (first->field() != second->field())
        throw MismatchError(kModule, "rings over different prime fields");
    VariableUnion u;
    std::vector<std::string> names = first->names();
    for (std::size_t i = 0; i < first->num_vars(); ++i)
        u.first.push_back(i);
    for (const std::string& n : second->names()) {
        u.second.push_back(names.size());
        names.push_back(fresh_name(n, names));
    }
    u.ring = PolyRing::make(first->field(), std::move(names));
    return u;
}

Pushout pushout(const AlgebraMap& f, const AlgebraMap& g)
{
    if (!same_algebra(f.domain(), g.domain()))
        throw MismatchError(kModule, "pushout of maps with different domains");
    const FPAlgebra& s = f.codomain();
    const FPAlgebra& t = g.codomain();
    VariableUnion u = disjoint_union(s.ring(), t.ring());
    std::vector<Polynomial> rels = embed_all(s.relations().generators(), u.ring, u.first);
    auto trels = embed_all(t.relations().generators(), u.ring, u.second);
    rels.insert(rels.end(), trels.begin(), trels.end());
    for (std::size_t j = 0; j < f.domain().num_vars(); ++j) {
        Polynomial d = embed(f.images()[j], u.ring, u.first) - embed(g.images()[j], u.ring, u.second);
        if (!d.is_zero())
            rels.push_back(std::move(d));
    }
    FPAlgebra p(u.ring, std::move(rels));
    std::vector<Polynomial> left, right;
    for (std::size_t i : u.first)
        left.push_back(p.variable(i));
    for (std::size_t i : u.second)
        right.push_back(p.variable(i));
    return Pushout{p, AlgebraMap(s, p, std::move(left)), AlgebraMap(t, p, std::move(right))};
}

FrobeniusTwist frobenius_twist(const AlgebraMap& f, std::uint32_t k)
{
    const FPAlgebra& r = f.domain();
    const FPAlgebra& s = f.codomain();
    VariableUnion u = disjoint_union(s.ring(), r.ring());
    std::vector<Polynomial> rels = embed_all(s.relations().generators(), u.ring, u.first);
    auto rrels = embed_all(r.relations().generators(), u.ring, u.second);
    rels.insert(rels.end(), rrels.begin(), rrels.end());
    for (std::size_t j = 0; j < r.num_vars(); ++j) {
        Polynomial x = Polynomial::variable(u.ring, u.second[j]);
        rels.push_back(embed(f.images()[j], u.ring, u.first) - frobenius_power_poly(x, k));
    }
    FPAlgebra twist(u.ring, std::move(rels));
    std::vector<Polynomial> from_s, from_r;
    for (std::size_t i : u.first)
        from_s.push_back(twist.variable(i));
    for (std::size_t i : u.second)
        from_r.push_back(twist.variable(i));
    return FrobeniusTwist{twist, AlgebraMap(s, twist, std::move(from_s)), AlgebraMap(r, twist, std::move(from_r))};
}

AlgebraMap relative_frobenius(const AlgebraMap& f)
{
    FrobeniusTwist tw = frobenius_twist(f, 1);
    const FPAlgebra& s = f.codomain();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < s.num_vars(); ++i)
        images.push_back(frobenius_power_poly(s.variable(i), 1));
    for (const Polynomial& img : f.images())
        images.push_back(img);
    return AlgebraMap(tw.algebra, s, std::move(images));
}

AlgebraMap absolute_frobenius(const FPAlgebra& algebra, std::uint32_t k)
{
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < algebra.num_vars(); ++i)
        images.push_back(frobenius_power_poly(algebra.variable(i), k));
    return AlgebraMap(algebra, algebra, std::move(images));
}

// --------------------------------------------------------------- GraphIdeal

namespace {

Ideal build_graph(const AlgebraMap& map, const VariableUnion& u)
{
    std::vector<Polynomial> rels = embed_all(map.codomain().relations().generators(), u.ring, u.first);
    for (std::size_t j = 0; j < map.domain().num_vars(); ++j)
        rels.push_back(Polynomial::variable(u.ring, u.second[j]) - embed(map.images()[j], u.ring, u.first));
    auto drels = embed_all(map.domain().relations().generators(), u.ring, u.second);
    rels.insert(rels.end(), drels.begin(), drels.end());
    return Ideal(u.ring, std::move(rels));
}

} // namespace

GraphIdeal::GraphIdeal(const AlgebraMap& map)
    : map_(map), vars_(disjoint_union(map.codomain().ring(), map.domain().ring())), ideal_(build_graph(map, vars_)),
      order_(MonomialOrder::elimination(vars_.ring->num_vars(), vars_.first))
{
}

Ideal GraphIdeal::kernel() const
{
    std::vector<Polynomial> gens;
    for (const Polynomial& g : ideal_.reduced_basis(order_)) {
        if (g.uses_only(vars_.second))
            gens.push_back(project(g, map_.domain().ring(), vars_.second));
    }
    return Ideal(map_.domain().ring(), std::move(gens));
}

std::optional<Polynomial> GraphIdeal::preimage(const Polynomial& b) const
{
    if (!same_ring(b.ring(), map_.codomain().ring()))
        throw MismatchError(kModule, "preimage of a polynomial outside the codomain");
    Polynomial nf = ideal_.normal_form(embed(b, vars_.ring, vars_.first), order_);
    if (!nf.uses_only(vars_.second))
        return std::nullopt;
    return map_.domain().reduce(project(nf, map_.domain().ring(), vars_.second));
}

Ideal map_kernel(const AlgebraMap& map) { return GraphIdeal(map).kernel(); }

std::optional<Polynomial> in_image(const AlgebraMap& map, const Polynomial& b) { return GraphIdeal(map).preimage(b); }

bool is_surjective(const AlgebraMap& map)
{
    GraphIdeal graph(map);
    for (std::size_t i = 0; i < map.codomain().num_vars(); ++i) {
        if (!graph.preimage(map.codomain().variable(i)))
            return false;
    }
    return true;
}

IsomorphismCheck is_isomorphism(const AlgebraMap& map)
{
    IsomorphismCheck check;
    GraphIdeal graph(map);
    std::vector<Polynomial> witnesses;
    for (std::size_t i = 0; i < map.codomain().num_vars(); ++i) {
        auto pre = graph.preimage(map.codomain().variable(i));
        if (pre)
            witnesses.push_back(*pre);
        else
            check.missing.push_back(map.codomain().ring()->name(i));
    }
    check.surjective = check.missing.empty();
    Ideal kernel = graph.kernel();
    for (const Polynomial& g : kernel.generators()) {
        if (!map.domain().is_zero(g))
            check.kernel_witness.push_back(map.domain().reduce(g));
    }
    check.injective = check.kernel_witness.empty();
    if (check.is_isomorphism())
        check.inverse.emplace(map.codomain(), map.domain(), std::move(witnesses));
    return check;
}

} // namespace frobforge
