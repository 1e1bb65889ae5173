#include "frobforge/tower.hpp"

#include "frobforge/errors.hpp"

#include <limits>

namespace frobforge {

namespace {

constexpr const char* kModule = "tower";

std::uint32_t stage_exponent(std::size_t n)
{
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw ResourceError(kModule, "stage", "stage index too large");
    return static_cast<std::uint32_t>(n);
}

FPAlgebra twist_algebra(const AlgebraMap& f, std::size_t n)
{
    if (n == 0)
        return f.codomain();
    return frobenius_twist(f, stage_exponent(n)).algebra;
}

Ideal stage_ideal(const FPAlgebra& r, const Ideal& ideal, std::size_t n)
{
    return ideal_sum(r.relations(), frobenius_power_ideal(ideal, stage_exponent(n)));
}

} // namespace

TowerStage tower_stage(const AlgebraMap& f, std::size_t n)
{
    if (n == 0)
        return TowerStage{0, f.codomain(), std::nullopt, f, AlgebraMap::identity(f.codomain())};
    FrobeniusTwist tw = frobenius_twist(f, stage_exponent(n));
    FPAlgebra previous = twist_algebra(f, n - 1);
    std::size_t ns = f.codomain().num_vars();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ns; ++i)
        images.push_back(frobenius_power_poly(previous.variable(i), 1));
    for (std::size_t j = 0; j < f.domain().num_vars(); ++j)
        images.push_back(n == 1 ? f.images()[j] : previous.variable(ns + j));
    AlgebraMap transition(tw.algebra, previous, std::move(images));
    return TowerStage{n, tw.algebra, std::move(transition), tw.from_base, tw.from_target};
}

FPAlgebra gabber_stage(const AlgebraMap& f, const std::vector<Polynomial>& s, std::size_t k)
{
    const FPAlgebra& r = f.domain();
    const FPAlgebra& target = f.codomain();
    if (!r.is_polynomial())
        throw PreconditionError(kModule, "Gabber presentation needs a polynomial base");
    for (const Polynomial& g : s) {
        if (!same_ring(g.ring(), target.ring()))
            throw MismatchError(kModule, "chosen generators must lie in the target");
    }

    // S = S^p[R, s]: the map from F_p[y, z, w] sending y ↦ u^p, z ↦ f(x), w ↦ s must be onto.
    std::vector<std::string> names;
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < target.num_vars(); ++i) {
        names.push_back("y" + std::to_string(i));
        images.push_back(frobenius_power_poly(target.variable(i), 1));
    }
    for (std::size_t j = 0; j < r.num_vars(); ++j) {
        names.push_back("z" + std::to_string(j));
        images.push_back(f.images()[j]);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        names.push_back("w" + std::to_string(i));
        images.push_back(s[i]);
    }
    AlgebraMap generation(FPAlgebra::polynomial(PolyRing::make(target.field(), names)), target, std::move(images));
    if (!is_surjective(generation))
        throw PreconditionError(kModule, "the chosen generators do not witness relative semiperfectness");

    std::vector<std::string> fresh;
    if (s.size() == r.num_vars()) {
        fresh = r.ring()->names();
    } else {
        for (std::size_t i = 0; i < s.size(); ++i)
            fresh.push_back("x" + std::to_string(i + 1));
    }
    VariableUnion u = disjoint_union(target.ring(), PolyRing::make(target.field(), fresh));
    std::vector<Polynomial> rels;
    for (const Polynomial& g : target.relations().generators())
        rels.push_back(embed(g, u.ring, u.first));
    for (std::size_t i = 0; i < s.size(); ++i) {
        Polynomial x = Polynomial::variable(u.ring, u.second[i]);
        rels.push_back(frobenius_power_poly(x, stage_exponent(k)) - embed(s[i], u.ring, u.first));
    }
    return FPAlgebra(u.ring, std::move(rels));
}

FPAlgebra gabber_stage(const AlgebraMap& f, std::size_t k)
{
    return gabber_stage(f, f.images(), k);
}

FPAlgebra quotient_tower_stage(const FPAlgebra& r, const Ideal& ideal, std::size_t n)
{
    if (!same_ring(ideal.ring(), r.ring()))
        throw MismatchError(kModule, "ideal lives in a different ring");
    return FPAlgebra(r.ring(), stage_ideal(r, ideal, n).generators());
}

StabilizationReport detect_stabilization(const FPAlgebra& r, const Ideal& ideal, std::size_t n_max)
{
    if (!same_ring(ideal.ring(), r.ring()))
        throw MismatchError(kModule, "ideal lives in a different ring");
    StabilizationReport report;
    Ideal current = stage_ideal(r, ideal, 0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        report.explored = n;
        Ideal next = stage_ideal(r, ideal, n + 1);
        // I^[p^{n+1}] ⊆ I^[p^n] always holds, so one containment decides equality.
        std::optional<Polynomial> outside;
        for (const Polynomial& g : current.generators()) {
            if (!next.contains(g)) {
                outside = g;
                break;
            }
        }
        if (!outside) {
            report.stabilized = true;
            report.stage = n;
            Ideal after = stage_ideal(r, ideal, n + 2);
            report.absorbing = ideal_equal(current, after);
            report.witness = "I^[p^" + std::to_string(n) + "] = I^[p^" + std::to_string(n + 1) + "]";
            report.failing_element.reset();
            return report;
        }
        report.failing_element = outside;
        report.witness = outside->to_string() + " lies in I^[p^" + std::to_string(n) + "] but not in I^[p^" +
                         std::to_string(n + 1) + "]";
        current = std::move(next);
    }
    return report;
}

StabilizationReport detect_tower_stabilization(const AlgebraMap& f, std::size_t n_max)
{
    StabilizationReport report;
    for (std::size_t n = 0; n <= n_max; ++n) {
        report.explored = n;
        TowerStage stage = tower_stage(f, n + 1);
        IsomorphismCheck check = is_isomorphism(*stage.transition);
        if (check) {
            report.stabilized = true;
            report.stage = n;
            report.witness = "transition " + std::to_string(n + 1) + " -> " + std::to_string(n) + " is an isomorphism";
            report.failing_element.reset();
            // Stage n+2 → n+1 is the base change of an isomorphism along Frobenius; confirm it.
            report.absorbing = is_isomorphism(*tower_stage(f, n + 2).transition).is_isomorphism();
            return report;
        }
        if (!check.kernel_witness.empty()) {
            report.failing_element = check.kernel_witness.front();
            report.witness = "transition " + std::to_string(n + 1) + " -> " + std::to_string(n) + " kills " +
                             check.kernel_witness.front().to_string();
        } else {
            report.failing_element.reset();
            std::string missing;
            for (const std::string& m : check.missing)
                missing += (missing.empty() ? "" : ", ") + m;
            report.witness = "transition " + std::to_string(n + 1) + " -> " + std::to_string(n) +
                             " misses " + missing;
        }
    }
    return report;
}

std::uint32_t cofinality_bound(const FPAlgebra& r, const Ideal& ideal, std::size_t n)
{
    if (!r.is_polynomial())
        throw PreconditionError(kModule, "cofinality bound needs a polynomial ring");
    if (!same_ring(ideal.ring(), r.ring()))
        throw MismatchError(kModule, "ideal lives in a different ring");
    std::uint64_t gens = 0;
    for (const Polynomial& g : ideal.generators())
        gens += g.is_zero() ? 0 : 1;
    std::uint64_t q = checked_power(r.characteristic(), stage_exponent(n));
    std::uint64_t cap = gens * (q - 1) + 1;
    Ideal frob = frobenius_power_ideal(ideal, stage_exponent(n));
    for (std::uint64_t m = 1; m < cap; ++m) {
        if (ideal_contains(frob, ideal_power(ideal, static_cast<std::uint32_t>(m))))
            return static_cast<std::uint32_t>(m);
    }
    return static_cast<std::uint32_t>(cap);
}

} // namespace frobforge
