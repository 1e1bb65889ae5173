#include "frobforge/pipeline.hpp"

#include "frobforge/errors.hpp"

namespace frobforge {

namespace {

constexpr const char* kModule = "pipeline";

struct Adjoined {
    FPAlgebra algebra;
    AlgebraMap inclusion; // R → R[x]
    std::vector<std::size_t> new_vars;
};

// R[x_1..x_n] with the given (base) names, made fresh against R's variables.
Adjoined adjoin(const FPAlgebra& r, const std::vector<std::string>& names)
{
    VariableUnion u = disjoint_union(r.ring(), PolyRing::make(r.field(), names));
    std::vector<Polynomial> rels;
    for (const Polynomial& g : r.relations().generators())
        rels.push_back(embed(g, u.ring, u.first));
    FPAlgebra extended(u.ring, std::move(rels));
    std::vector<Polynomial> images;
    for (std::size_t i : u.first)
        images.push_back(extended.variable(i));
    AlgebraMap inclusion(r, extended, std::move(images));
    return Adjoined{extended, std::move(inclusion), u.second};
}

// R[x_C] → S with R-variables mapped by f and x_i ↦ u_i for i in `chosen`.
std::pair<Adjoined, AlgebraMap> cover_on(const AlgebraMap& f, const std::vector<std::size_t>& chosen)
{
    const FPAlgebra& s = f.codomain();
    std::vector<std::string> names;
    for (std::size_t i : chosen)
        names.push_back(s.ring()->names()[i]);
    Adjoined a = adjoin(f.domain(), names);
    std::vector<Polynomial> images = f.images();
    for (std::size_t i : chosen)
        images.push_back(s.variable(i));
    AlgebraMap to_s(a.algebra, s, std::move(images));
    return {std::move(a), std::move(to_s)};
}

bool unit_modulo(const Ideal& minors, const FPAlgebra& s)
{
    return ideal_sum(minors, s.relations()).is_unit();
}

// Generators of `ideal` + rel(S) that are nonzero in S, as an ideal of S's ring.
Ideal reduced_in(const Ideal& ideal, const FPAlgebra& s)
{
    Ideal sum = ideal_sum(ideal, s.relations());
    std::vector<Polynomial> gens;
    for (const Polynomial& g : sum.reduced_basis()) {
        if (!s.is_zero(g))
            gens.push_back(g);
    }
    return Ideal(s.ring(), std::move(gens));
}

} // namespace

// ------------------------------------------------------------------ Kähler

KahlerPresentation kahler_presentation(const AlgebraMap& f)
{
    const FPAlgebra& s = f.codomain();
    std::size_t n = s.num_vars();
    std::vector<Polynomial> relations = s.relations().generators();
    relations.insert(relations.end(), f.images().begin(), f.images().end());
    PolyMatrix jac(n);
    std::vector<ModuleElement> columns;
    for (const Polynomial& g : relations) {
        ModuleElement col;
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial d = s.reduce(partial_derivative(g, i));
            jac[i].push_back(d);
            col.components.push_back(std::move(d));
        }
        columns.push_back(std::move(col));
    }
    return KahlerPresentation{ModulePresentation(s, n, std::move(columns)), std::move(jac)};
}

SemiperfectVerdict is_relatively_semiperfect(const AlgebraMap& f)
{
    const FPAlgebra& s = f.codomain();
    KahlerPresentation omega = kahler_presentation(f);
    Ideal minors = minors_ideal(s.ring(), omega.jacobian, s.num_vars(), s.reducer());
    Ideal obstruction = reduced_in(minors, s);
    bool semiperfect = unit_modulo(minors, s);
    return SemiperfectVerdict{semiperfect, std::move(obstruction)};
}

SemiperfectCover semiperfect_cover(const AlgebraMap& f)
{
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < f.codomain().num_vars(); ++i)
        kept.push_back(i);
    for (std::size_t i = 0; i < f.codomain().num_vars(); ++i) {
        std::vector<std::size_t> trial;
        for (std::size_t k : kept) {
            if (k != i)
                trial.push_back(k);
        }
        if (is_relatively_semiperfect(cover_on(f, trial).second))
            kept = std::move(trial);
    }
    auto [adjoined, to_s] = cover_on(f, kept);
    if (!is_relatively_semiperfect(to_s))
        throw PreconditionError(kModule, "semiperfect cover failed verification");
    std::vector<Polynomial> gens;
    for (std::size_t i : kept)
        gens.push_back(f.codomain().variable(i));
    return SemiperfectCover{adjoined.inclusion, to_s, kept.size(), std::move(gens)};
}

// ------------------------------------------------------------- perfectness

PerfectnessCertificate is_relatively_perfect(const AlgebraMap& f, std::size_t tor_bound)
{
    if (tor_bound < 1)
        throw PreconditionError(kModule, "Tor bound must be at least 1");
    PerfectnessCertificate cert;
    cert.frobenius = is_isomorphism(relative_frobenius(f));
    cert.perfect = cert.frobenius.is_isomorphism();
    cert.tor_bound = tor_bound;
    try {
        cert.tor = tor_along(frobenius_pushforward(f.domain()), f, tor_bound);
        cert.tor_note = cert.tor->numeric() ? "numeric" : "symbolic";
    } catch (const ResourceError& e) {
        cert.tor_note = std::string("not computed: ") + e.what();
    }
    return cert;
}

// ----------------------------------------------------------- factorization

bool FactorizationCertificate::valid() const noexcept
{
    return composition_ok && first_free && cover_semiperfect && last_surjective &&
           (!stabilized || middle_perfect == true);
}

namespace {

// Middle stages T_k over the polynomial cover A of R'.
class MiddleTower {
public:
    explicit MiddleTower(const AlgebraMap& cover_map)
        : r_prime_(cover_map.domain()), s_(cover_map.codomain()), a_(FPAlgebra::polynomial(r_prime_.ring())),
          g_(a_, s_, cover_map.images())
    {
    }

    const FPAlgebra& stage(std::size_t k)
    {
        while (stages_.size() <= k) {
            std::size_t n = stages_.size();
            FPAlgebra twist = frobenius_twist(g_, static_cast<std::uint32_t>(n)).algebra;
            std::vector<Polynomial> extra;
            for (const Polynomial& j : r_prime_.relations().generators())
                extra.push_back(embed(j, twist.ring(), a_positions()));
            stages_.push_back(twist.quotient(extra));
        }
        return stages_[k];
    }

    // Twist variables are vars(S) followed by vars(A).
    std::vector<std::size_t> a_positions() const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < a_.num_vars(); ++j)
            out.push_back(s_.num_vars() + j);
        return out;
    }

    AlgebraMap transition(std::size_t k)
    {
        FPAlgebra upper = stage(k + 1);
        const FPAlgebra& lower = stage(k);
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < s_.num_vars(); ++i)
            images.push_back(frobenius_power_poly(lower.variable(i), 1));
        for (std::size_t j = 0; j < a_.num_vars(); ++j)
            images.push_back(lower.variable(s_.num_vars() + j));
        return AlgebraMap(upper, lower, std::move(images));
    }

    AlgebraMap to_middle(std::size_t k)
    {
        const FPAlgebra& t = stage(k);
        std::vector<Polynomial> images;
        for (std::size_t j = 0; j < a_.num_vars(); ++j)
            images.push_back(t.variable(s_.num_vars() + j));
        return AlgebraMap(r_prime_, t, std::move(images));
    }

    AlgebraMap from_middle(std::size_t k)
    {
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < s_.num_vars(); ++i)
            images.push_back(frobenius_power_poly(s_.variable(i), static_cast<std::uint32_t>(k)));
        for (const Polynomial& img : g_.images())
            images.push_back(img);
        return AlgebraMap(stage(k), s_, std::move(images));
    }

    // R'/K → T_k with K = ker(A → T_k).
    AlgebraMap truncated_base(std::size_t k)
    {
        const FPAlgebra& t = stage(k);
        std::vector<Polynomial> images;
        for (std::size_t j = 0; j < a_.num_vars(); ++j)
            images.push_back(t.variable(s_.num_vars() + j));
        Ideal kernel = map_kernel(AlgebraMap(a_, t, images));
        return AlgebraMap(FPAlgebra(a_.ring(), kernel.generators()), t, std::move(images));
    }

    std::vector<FPAlgebra> explored() const { return stages_; }

private:
    FPAlgebra r_prime_;
    FPAlgebra s_;
    FPAlgebra a_;
    AlgebraMap g_;
    std::vector<FPAlgebra> stages_;
};

} // namespace

FactorizationCertificate factorize(const AlgebraMap& f, std::size_t stage_budget)
{
    if (stage_budget < 1)
        throw PreconditionError(kModule, "stage budget must be at least 1");
    SemiperfectCover cover = semiperfect_cover(f);
    MiddleTower tower(cover.cover_map);

    std::size_t k = 1;
    bool stabilized = false;
    for (; k <= stage_budget; ++k) {
        if (is_isomorphism(tower.transition(k))) {
            stabilized = true;
            break;
        }
    }
    if (!stabilized)
        k = stage_budget;

    AlgebraMap to_middle = tower.to_middle(k);
    AlgebraMap from_middle = tower.from_middle(k);
    FactorizationCertificate cert{f,
                                  cover,
                                  tower.stage(k),
                                  k,
                                  stabilized,
                                  stage_budget,
                                  to_middle,
                                  from_middle,
                                  tower.explored(),
                                  false,
                                  std::nullopt,
                                  std::nullopt,
                                  false,
                                  false,
                                  false};
    cert.cover_semiperfect = is_relatively_semiperfect(cover.cover_map).semiperfect;
    if (stabilized)
        cert.middle_perfect = is_relatively_perfect(to_middle).perfect;
    else
        cert.truncated_perfect = is_isomorphism(relative_frobenius(tower.truncated_base(k))).is_isomorphism();
    cert.last_surjective = is_surjective(from_middle);
    cert.composition_ok = maps_equal(compose(from_middle, compose(to_middle, cover.to_cover)), f);

    // R' = R[x_1..x_n]: R-variables first, R's relations only.
    const FPAlgebra& r = f.domain();
    const FPAlgebra& rp = cover.to_cover.codomain();
    bool free = rp.num_vars() == r.num_vars() + cover.adjoined;
    for (std::size_t j = 0; free && j < r.num_vars(); ++j)
        free = cover.to_cover.images()[j] == rp.variable(j);
    if (free) {
        std::vector<std::size_t> positions;
        for (std::size_t j = 0; j < r.num_vars(); ++j)
            positions.push_back(j);
        std::vector<Polynomial> rels;
        for (const Polynomial& g : r.relations().generators())
            rels.push_back(embed(g, rp.ring(), positions));
        free = ideal_equal(rp.relations(), Ideal(rp.ring(), std::move(rels)));
    }
    cert.first_free = free;
    return cert;
}

// ------------------------------------------------------------------ p-basis

namespace {

// Next k-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n)
{
    std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

PBasisResult find_p_basis(const AlgebraMap& f)
{
    const FPAlgebra& s = f.codomain();
    std::size_t ns = s.num_vars();
    KahlerPresentation omega = kahler_presentation(f);
    PBasisResult result;

    // Fitt_j(Ω) = I_{ns−j}(Jacobian): projective of rank n iff zero below n and the unit ideal at n.
    std::optional<std::size_t> rank;
    for (std::size_t j = 0; j <= ns; ++j) {
        Ideal minors = minors_ideal(s.ring(), omega.jacobian, ns - j, s.reducer());
        if (unit_modulo(minors, s)) {
            rank = j;
            break;
        }
        if (ideal_contains(s.relations(), minors))
            continue;
        result.fitting_index = j;
        result.fitting_ideal = reduced_in(minors, s);
        result.message = "Fitt_" + std::to_string(j) + "(Omega) = " + result.fitting_ideal->to_string() +
                         " is neither zero nor the unit ideal";
        return result;
    }
    result.rank = *rank;

    std::vector<std::size_t> chosen(*rank);
    for (std::size_t i = 0; i < *rank; ++i)
        chosen[i] = i;
    do {
        PolyMatrix augmented = omega.jacobian;
        for (std::size_t i : chosen) {
            for (std::size_t row = 0; row < ns; ++row)
                augmented[row].push_back(Polynomial::constant(s.ring(), row == i ? 1 : 0));
        }
        if (!unit_modulo(minors_ideal(s.ring(), augmented, ns, s.reducer()), s))
            continue;
        AlgebraMap candidate = cover_on(f, chosen).second;
        if (!is_relatively_perfect(candidate))
            continue;
        result.found = true;
        for (std::size_t i : chosen)
            result.basis.push_back(s.ring()->names()[i]);
        result.map = std::move(candidate);
        result.message = "p-basis of size " + std::to_string(*rank);
        return result;
    } while (next_combination(chosen, ns));
    result.message = "no candidate found: Omega is projective of rank " + std::to_string(*rank) +
                     " but no set of variable differentials gives a relatively perfect presentation";
    return result;
}

} // namespace frobforge
