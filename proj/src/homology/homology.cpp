#include "frobforge/homology.hpp"

#include "frobforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace frobforge {

namespace {

constexpr const char* kModule = "homology";

// Greedy trimming of generating sets is skipped above this many generators.
constexpr std::size_t kTrimLimit = 32;

ModuleElement reduce_entries(const ModuleElement& v, const FPAlgebra& algebra)
{
    ModuleElement out = v;
    for (Polynomial& c : out.components)
        c = algebra.reduce(c);
    return out;
}

std::vector<ModuleElement> ideal_multiples(const FPAlgebra& algebra, std::size_t rank)
{
    std::vector<ModuleElement> out;
    if (algebra.relations().generators().empty())
        return out;
    for (const Polynomial& g : algebra.relations().reduced_basis()) {
        for (std::size_t c = 0; c < rank; ++c) {
            ModuleElement v = ModuleElement::zero(algebra.ring(), rank);
            v.components[c] = g;
            out.push_back(std::move(v));
        }
    }
    return out;
}

SubmoduleBasis basis_of(const FPAlgebra& algebra, std::size_t rank, const std::vector<ModuleElement>& gens)
{
    return SubmoduleBasis(algebra.ring(), rank, gens, ModuleOrder::position_over_term(algebra.num_vars()));
}

// Drops zero and repeated columns, then greedily removes columns that the
// others generate modulo the algebra's relations.
std::vector<ModuleElement> trim(const FPAlgebra& algebra, std::size_t rank, std::vector<ModuleElement> cols)
{
    std::vector<ModuleElement> unique;
    for (ModuleElement& c : cols) {
        c = reduce_entries(c, algebra);
        if (!c.is_zero() && std::find(unique.begin(), unique.end(), c) == unique.end())
            unique.push_back(std::move(c));
    }
    if (unique.size() > kTrimLimit || rank == 0)
        return unique;
    std::vector<ModuleElement> base = ideal_multiples(algebra, rank);
    for (std::size_t j = unique.size(); j-- > 0;) {
        std::vector<ModuleElement> others = base;
        for (std::size_t k = 0; k < unique.size(); ++k) {
            if (k != j)
                others.push_back(unique[k]);
        }
        if (basis_of(algebra, rank, others).contains(unique[j]))
            unique.erase(unique.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return unique;
}

ModuleElement project(const ModuleElement& v, std::size_t from, std::size_t count)
{
    return ModuleElement(std::vector<Polynomial>(v.components.begin() + static_cast<std::ptrdiff_t>(from),
                                                 v.components.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

// Generators of {v ∈ P^n : Σ v_j cols_j ∈ target}, where target ⊆ P^m is given by generators.
std::vector<ModuleElement> preimage(const RingPtr& ring, std::size_t m, const std::vector<ModuleElement>& cols,
                                    const std::vector<ModuleElement>& target)
{
    std::vector<ModuleElement> all = cols;
    all.insert(all.end(), target.begin(), target.end());
    std::vector<ModuleElement> out;
    if (m == 0) {
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.push_back(ModuleElement::unit_vector(ring, cols.size(), j));
        return out;
    }
    for (const ModuleElement& s : syzygies(ring, m, all)) {
        ModuleElement v = project(s, 0, cols.size());
        if (!v.is_zero())
            out.push_back(std::move(v));
    }
    return out;
}

} // namespace

// ------------------------------------------------------- ModulePresentation

ModulePresentation::ModulePresentation(FPAlgebra algebra, std::size_t rank, std::vector<ModuleElement> relations)
    : algebra_(std::move(algebra)), rank_(rank)
{
    for (const ModuleElement& r : relations) {
        if (r.rank() != rank_)
            throw MismatchError(kModule, "relation of rank " + std::to_string(r.rank()) + " in a presentation of rank " +
                                             std::to_string(rank_));
        for (const Polynomial& c : r.components) {
            if (!same_ring(c.ring(), algebra_.ring()))
                throw MismatchError(kModule, "relation entry outside the algebra's ring");
        }
        ModuleElement reduced = reduce_entries(r, algebra_);
        if (!reduced.is_zero() && std::find(relations_.begin(), relations_.end(), reduced) == relations_.end())
            relations_.push_back(std::move(reduced));
    }
}

ModulePresentation ModulePresentation::free(const FPAlgebra& algebra, std::size_t rank)
{
    return ModulePresentation(algebra, rank, {});
}

ModulePresentation ModulePresentation::cyclic(const FPAlgebra& algebra, const std::vector<Polynomial>& gens)
{
    std::vector<ModuleElement> rels;
    for (const Polynomial& g : gens)
        rels.emplace_back(std::vector<Polynomial>{g});
    return ModulePresentation(algebra, 1, std::move(rels));
}

ModulePresentation ModulePresentation::pruned() const
{
    std::size_t rank = rank_;
    std::vector<ModuleElement> rels = relations_;
    const PrimeField& k = algebra_.field();
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t r = 0; r < rels.size() && !progress; ++r) {
            for (std::size_t c = 0; c < rank && !progress; ++c) {
                const Polynomial& entry = rels[r].components[c];
                if (entry.is_zero() || !entry.is_constant())
                    continue;
                Coeff inv = k.inv(entry.constant_term());
                ModuleElement pivot = rels[r];
                std::vector<ModuleElement> next;
                for (std::size_t o = 0; o < rels.size(); ++o) {
                    if (o == r)
                        continue;
                    ModuleElement v = rels[o];
                    Polynomial factor = v.components[c].scaled(k.neg(inv));
                    if (!factor.is_zero())
                        v += pivot.scaled(factor);
                    v.components.erase(v.components.begin() + static_cast<std::ptrdiff_t>(c));
                    v = reduce_entries(v, algebra_);
                    if (!v.is_zero())
                        next.push_back(std::move(v));
                }
                rels = std::move(next);
                --rank;
                progress = true;
            }
        }
    }
    return ModulePresentation(algebra_, rank, std::move(rels));
}

std::vector<ModuleElement> ModulePresentation::lifted_relations() const
{
    std::vector<ModuleElement> out = relations_;
    auto extra = ideal_multiples(algebra_, rank_);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

PolyMatrix ModulePresentation::matrix() const
{
    PolyMatrix m(rank_, std::vector<Polynomial>());
    for (std::size_t i = 0; i < rank_; ++i) {
        for (const ModuleElement& r : relations_)
            m[i].push_back(r.components[i]);
    }
    return m;
}

std::string ModulePresentation::to_string() const
{
    std::ostringstream out;
    out << "coker(" << rank_ << " generators; relations [";
    for (std::size_t i = 0; i < relations_.size(); ++i)
        out << (i ? ", " : "") << relations_[i].to_string();
    out << "]) over " << algebra_.to_string();
    return out.str();
}

std::vector<ModuleElement> syzygy_module(const FPAlgebra& algebra, std::size_t rank,
                                         const std::vector<ModuleElement>& gens)
{
    for (const ModuleElement& g : gens) {
        if (g.rank() != rank)
            throw MismatchError(kModule, "syzygy generators of different ranks");
    }
    std::vector<ModuleElement> out;
    for (ModuleElement& v : preimage(algebra.ring(), rank, gens, ideal_multiples(algebra, rank))) {
        v = reduce_entries(v, algebra);
        if (!v.is_zero() && std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::uint64_t> vector_space_dimension(const ModulePresentation& module)
{
    if (module.rank() == 0)
        return 0;
    return basis_of(module.algebra(), module.rank(), module.lifted_relations()).quotient_dimension(kMaxNumericDimension);
}

// ------------------------------------------------------------------ Complex

bool Complex::is_complex() const
{
    for (std::size_t i = 1; i < differentials.size(); ++i) {
        const auto& d = differentials[i - 1];
        for (const ModuleElement& col : differentials[i]) {
            ModuleElement image = ModuleElement::zero(algebra.ring(), ranks[i - 1]);
            for (std::size_t j = 0; j < col.rank(); ++j) {
                if (!col.components[j].is_zero())
                    image += d[j].scaled(col.components[j]);
            }
            for (const Polynomial& e : image.components) {
                if (!algebra.is_zero(e))
                    return false;
            }
        }
    }
    return true;
}

Complex free_resolution(const ModulePresentation& module, std::size_t length)
{
    if (length < 1)
        throw PreconditionError(kModule, "resolution length must be at least 1");
    const FPAlgebra& a = module.algebra();
    Complex c{a, {module.rank()}, {}};
    std::vector<ModuleElement> cols = trim(a, module.rank(), module.relations());
    for (std::size_t i = 1; i <= length; ++i) {
        c.ranks.push_back(cols.size());
        c.differentials.push_back(cols);
        if (i == length)
            break;
        std::size_t rank = cols.size();
        cols = cols.empty() ? std::vector<ModuleElement>{} : trim(a, rank, syzygy_module(a, c.ranks[i - 1], cols));
    }
    return c;
}

// --------------------------------------------------------------------- Tor

bool TorResult::numeric() const
{
    return std::all_of(groups.begin(), groups.end(), [](const TorGroup& g) { return g.dimension.has_value(); });
}

bool TorResult::independent() const
{
    for (const TorGroup& g : groups) {
        if (g.degree >= 1 && g.vanishes != true)
            return false;
    }
    return true;
}

namespace {

// Homology of C ⊗ N, where C is a complex of free modules over N's algebra.
TorResult homology_with_coefficients(const Complex& c, const ModulePresentation& n, std::size_t bound)
{
    const FPAlgebra& b = n.algebra();
    const RingPtr& ring = b.ring();
    std::size_t g = n.rank();
    auto chain_rank = [&](std::size_t i) { return i < c.ranks.size() ? c.ranks[i] * g : 0; };

    // L_i: relations of N in every block plus J in every coordinate.
    auto lifted = [&](std::size_t i) {
        std::size_t blocks = i < c.ranks.size() ? c.ranks[i] : 0;
        std::vector<ModuleElement> out;
        for (std::size_t k = 0; k < blocks; ++k) {
            for (const ModuleElement& rel : n.relations()) {
                ModuleElement v = ModuleElement::zero(ring, blocks * g);
                for (std::size_t s = 0; s < g; ++s)
                    v.components[k * g + s] = rel.components[s];
                out.push_back(std::move(v));
            }
        }
        auto extra = ideal_multiples(b, blocks * g);
        out.insert(out.end(), extra.begin(), extra.end());
        return out;
    };
    // Columns of d_i ⊗ N as elements of P^{r_{i-1} g}.
    auto columns = [&](std::size_t i) {
        std::vector<ModuleElement> out;
        if (i == 0 || i > c.differentials.size())
            return out;
        std::size_t rows = c.ranks[i - 1];
        for (const ModuleElement& col : c.differentials[i - 1]) {
            for (std::size_t s = 0; s < g; ++s) {
                ModuleElement v = ModuleElement::zero(ring, rows * g);
                for (std::size_t k = 0; k < rows; ++k)
                    v.components[k * g + s] = col.components[k];
                out.push_back(std::move(v));
            }
        }
        return out;
    };

    TorResult result;
    for (std::size_t i = 0; i <= bound; ++i) {
        TorGroup group;
        group.degree = i;
        std::size_t n_i = chain_rank(i);
        group.chain_rank = n_i;
        if (n_i == 0) {
            group.dimension = 0;
            group.vanishes = true;
            result.groups.push_back(std::move(group));
            continue;
        }
        std::vector<ModuleElement> cycles;
        if (i == 0) {
            for (std::size_t j = 0; j < n_i; ++j)
                cycles.push_back(ModuleElement::unit_vector(ring, n_i, j));
        } else {
            cycles = preimage(ring, chain_rank(i - 1), columns(i), lifted(i - 1));
        }
        std::vector<ModuleElement> boundaries = columns(i + 1);
        auto li = lifted(i);
        boundaries.insert(boundaries.end(), li.begin(), li.end());
        SubmoduleBasis bbasis = basis_of(b, n_i, boundaries);
        for (const ModuleElement& z : cycles) {
            ModuleElement nf = bbasis.normal_form(z);
            if (!nf.is_zero())
                group.survivors.push_back(std::move(nf));
        }
        std::optional<std::uint64_t> codim_b;
        try {
            codim_b = bbasis.quotient_dimension(kMaxNumericDimension);
        } catch (const ResourceError&) {
        }
        if (group.survivors.empty()) {
            group.dimension = 0;
            group.vanishes = true;
        } else if (codim_b) {
            auto codim_z = basis_of(b, n_i, cycles).quotient_dimension(kMaxNumericDimension);
            group.dimension = *codim_b - *codim_z;
            group.vanishes = *group.dimension == 0;
        } else {
            group.vanishes = false;
        }
        if (group.dimension)
            group.survivors.clear();
        result.groups.push_back(std::move(group));
    }
    return result;
}

void require_same_algebra(const FPAlgebra& a, const FPAlgebra& b)
{
    if (!same_algebra(a, b))
        throw MismatchError(kModule, "modules over different algebras");
}

} // namespace

TorResult tor(const ModulePresentation& m, const ModulePresentation& n, std::size_t bound)
{
    require_same_algebra(m.algebra(), n.algebra());
    Complex c = free_resolution(m, bound + 1);
    return homology_with_coefficients(c, n, bound);
}

TorResult tor_along(const ModulePresentation& m, const AlgebraMap& g, std::size_t bound)
{
    require_same_algebra(m.algebra(), g.domain());
    Complex c = free_resolution(m, bound + 1);
    Complex moved{g.codomain(), c.ranks, {}};
    for (const auto& d : c.differentials) {
        std::vector<ModuleElement> cols;
        for (const ModuleElement& col : d) {
            ModuleElement v;
            for (const Polynomial& e : col.components)
                v.components.push_back(g.apply(e));
            cols.push_back(std::move(v));
        }
        moved.differentials.push_back(std::move(cols));
    }
    return homology_with_coefficients(moved, ModulePresentation::free(g.codomain(), 1), bound);
}

// ------------------------------------------------------------ pushforwards

std::optional<Pushforward> module_finite_pushforward(const AlgebraMap& g)
{
    const FPAlgebra& r = g.domain();
    const FPAlgebra& t = g.codomain();
    VariableUnion u = disjoint_union(t.ring(), r.ring());
    std::vector<Polynomial> rels;
    for (const Polynomial& h : t.relations().generators())
        rels.push_back(embed(h, u.ring, u.first));
    for (std::size_t j = 0; j < r.num_vars(); ++j)
        rels.push_back(Polynomial::variable(u.ring, u.second[j]) - embed(g.images()[j], u.ring, u.first));
    for (const Polynomial& h : r.relations().generators())
        rels.push_back(embed(h, u.ring, u.second));
    Ideal graph(u.ring, rels);
    MonomialOrder order = MonomialOrder::elimination(u.ring->num_vars(), u.first);
    const std::vector<Polynomial>& basis = graph.reduced_basis(order);

    // Leading monomials free of R-variables bound the module generators.
    std::vector<Monomial> t_leads;
    for (const Polynomial& h : basis) {
        Monomial lead = h.leading_term(order)->monomial;
        bool t_only = true;
        for (std::size_t j : u.second)
            t_only = t_only && lead[j] == 0;
        if (!t_only)
            continue;
        std::vector<Exponent> e;
        for (std::size_t i : u.first)
            e.push_back(lead[i]);
        t_leads.emplace_back(std::move(e));
    }
    auto gens = monomials_outside(t_leads, t.num_vars(), kMaxNumericDimension);
    if (!gens)
        return std::nullopt;
    std::sort(gens->begin(), gens->end(), [](const Monomial& a, const Monomial& b) {
        return MonomialOrder::grevlex(a.size()).compare(a, b) < 0;
    });
    std::size_t m = gens->size();

    // Submodule of P^{1+m}: t^{e_k} ε_0 − ε_{k+1} and G ε_0; eliminate ε_0 and T-variables.
    std::vector<ModuleElement> vecs;
    for (std::size_t k = 0; k < m; ++k) {
        ModuleElement v = ModuleElement::zero(u.ring, 1 + m);
        std::vector<Exponent> e(u.ring->num_vars(), 0);
        for (std::size_t i = 0; i < t.num_vars(); ++i)
            e[u.first[i]] = (*gens)[k][i];
        v.components[0] = Polynomial::monomial(u.ring, Monomial(std::move(e)));
        v.components[1 + k] = Polynomial::constant(u.ring, -1);
        vecs.push_back(std::move(v));
    }
    for (const Polynomial& h : basis) {
        ModuleElement v = ModuleElement::zero(u.ring, 1 + m);
        v.components[0] = h;
        vecs.push_back(std::move(v));
    }
    ModuleOrder morder{order, 1, true};
    SubmoduleBasis sb(u.ring, 1 + m, vecs, morder);
    std::vector<ModuleElement> module_rels;
    for (std::size_t e = 0; e < sb.elements().size(); ++e) {
        const auto& lead = sb.leading_terms()[e];
        if (lead.component == 0)
            continue;
        bool t_free = true;
        for (std::size_t i : u.first)
            t_free = t_free && lead.monomial[i] == 0;
        if (!t_free)
            continue;
        const ModuleElement& v = sb.elements()[e];
        ModuleElement rel;
        for (std::size_t k = 0; k < m; ++k) {
            const Polynomial& c = v.components[1 + k];
            std::vector<Term> terms;
            for (const Term& term : c.terms()) {
                std::vector<Exponent> ex;
                for (std::size_t j : u.second)
                    ex.push_back(term.monomial[j]);
                terms.push_back(Term{Monomial(std::move(ex)), term.coeff});
            }
            rel.components.push_back(Polynomial::from_terms(r.ring(), std::move(terms)));
        }
        module_rels.push_back(std::move(rel));
    }
    std::vector<Polynomial> gen_polys;
    for (const Monomial& mono : *gens)
        gen_polys.push_back(Polynomial::monomial(t.ring(), mono));
    return Pushforward{ModulePresentation(r, m, std::move(module_rels)), std::move(gen_polys)};
}

ModulePresentation frobenius_pushforward(const FPAlgebra& algebra)
{
    auto push = module_finite_pushforward(absolute_frobenius(algebra));
    if (!push)
        throw PreconditionError(kModule, "Frobenius pushforward is not module-finite");
    return std::move(push->module);
}

} // namespace frobforge
