#include "engine.hpp"
#include "frobforge/errors.hpp"
#include "frobforge/groebner.hpp"

#include <sstream>

namespace frobforge {

namespace {
constexpr const char* kModule = "groebner";
}

ModuleElement ModuleElement::zero(const RingPtr& ring, std::size_t rank)
{
    return ModuleElement(std::vector<Polynomial>(rank, Polynomial(ring)));
}

ModuleElement ModuleElement::unit_vector(const RingPtr& ring, std::size_t rank, std::size_t index)
{
    ModuleElement e = zero(ring, rank);
    e.components.at(index) = Polynomial::constant(ring, 1);
    return e;
}

bool ModuleElement::is_zero() const noexcept
{
    for (const Polynomial& c : components) {
        if (!c.is_zero())
            return false;
    }
    return true;
}

ModuleElement ModuleElement::scaled(const Polynomial& by) const
{
    ModuleElement out = *this;
    for (Polynomial& c : out.components)
        c = c * by;
    return out;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other)
{
    if (other.rank() != rank())
        throw MismatchError(kModule, "adding module elements of different rank");
    for (std::size_t i = 0; i < components.size(); ++i)
        components[i] += other.components[i];
    return *this;
}

std::string ModuleElement::to_string() const
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < components.size(); ++i)
        out << (i ? ", " : "") << components[i].to_string();
    out << ")";
    return out.str();
}

namespace {

void check_elements(const RingPtr& ring, std::size_t rank, std::span<const ModuleElement> elements)
{
    for (const ModuleElement& v : elements) {
        if (v.rank() != rank)
            throw MismatchError(kModule, "module element of rank " + std::to_string(v.rank()) + ", expected " +
                                             std::to_string(rank));
        for (const Polynomial& c : v.components) {
            if (!same_ring(c.ring(), ring))
                throw MismatchError(kModule, "module element outside the ambient ring");
        }
    }
}

} // namespace

SubmoduleBasis::SubmoduleBasis(RingPtr ring, std::size_t rank, std::span<const ModuleElement> generators,
                               ModuleOrder order)
    : ring_(std::move(ring)), rank_(rank), order_(std::move(order))
{
    check_elements(ring_, rank_, generators);
    if (order_.monomial_order.num_vars() != ring_->num_vars())
        throw MismatchError(kModule, "module order does not match the ring");
    detail::TermOrder term_order(order_);
    std::vector<detail::Vec> gens;
    for (const ModuleElement& g : generators)
        gens.push_back(detail::from_module_element(g, term_order));
    auto basis = std::make_shared<detail::Basis>(
        detail::buchberger(ring_->field(), term_order, std::move(gens), step_budget()));
    for (const detail::Vec& v : basis->elements) {
        elements_.push_back(detail::to_module_element(v, ring_, rank_));
        leading_.push_back(Leading{v.front().component, v.front().monomial});
    }
    engine_basis_ = std::move(basis);
}

ModuleElement SubmoduleBasis::normal_form(const ModuleElement& v) const
{
    check_elements(ring_, rank_, std::span<const ModuleElement>(&v, 1));
    detail::TermOrder term_order(order_);
    const auto& basis = *static_cast<const detail::Basis*>(engine_basis_.get());
    detail::Vec r = detail::reduce(detail::from_module_element(v, term_order), basis, ring_->field(), term_order);
    return detail::to_module_element(r, ring_, rank_);
}

std::optional<std::uint64_t> SubmoduleBasis::quotient_dimension(std::size_t cap) const
{
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < rank_; ++c) {
        std::vector<Monomial> leads;
        for (const Leading& l : leading_) {
            if (l.component == c)
                leads.push_back(l.monomial);
        }
        auto outside = monomials_outside(leads, ring_->num_vars(), cap - std::min<std::uint64_t>(total, cap));
        if (!outside)
            return std::nullopt;
        total += outside->size();
    }
    return total;
}

std::vector<ModuleElement> syzygies(const RingPtr& ring, std::size_t rank, std::span<const ModuleElement> generators)
{
    check_elements(ring, rank, generators);
    std::size_t t = generators.size();
    std::vector<ModuleElement> tagged;
    tagged.reserve(t);
    for (std::size_t k = 0; k < t; ++k) {
        ModuleElement v = ModuleElement::zero(ring, rank + t);
        for (std::size_t i = 0; i < rank; ++i)
            v.components[i] = generators[k].components[i];
        v.components[rank + k] = Polynomial::constant(ring, 1);
        tagged.push_back(std::move(v));
    }
    ModuleOrder order{MonomialOrder::grevlex(ring->num_vars()), rank, false};
    SubmoduleBasis basis(ring, rank + t, tagged, order);
    std::vector<ModuleElement> out;
    for (std::size_t e = 0; e < basis.elements().size(); ++e) {
        if (basis.leading_terms()[e].component < rank)
            continue;
        const ModuleElement& v = basis.elements()[e];
        out.emplace_back(std::vector<Polynomial>(v.components.begin() + static_cast<std::ptrdiff_t>(rank),
                                                 v.components.end()));
    }
    return out;
}

} // namespace frobforge
