#include "engine.hpp"

#include "frobforge/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace frobforge::detail {

namespace {

struct Key {
    std::uint32_t component;
    Monomial monomial;
};

struct KeyGreater {
    const TermOrder* order;
    bool operator()(const Key& a, const Key& b) const
    {
        return order->compare(a.component, a.monomial, b.component, b.monomial) == std::strong_ordering::greater;
    }
};

using WorkPoly = std::map<Key, Coeff, KeyGreater>;

void add_scaled_shifted(WorkPoly& work, const Vec& g, std::size_t skip, const Monomial& shift, Coeff factor,
                        const PrimeField& field)
{
    for (std::size_t t = skip; t < g.size(); ++t) {
        Coeff c = field.mul(g[t].coeff, factor);
        Key key{g[t].component, g[t].monomial * shift};
        auto [it, inserted] = work.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second = field.add(it->second, c);
            if (it->second == 0)
                work.erase(it);
        }
    }
}

Vec make_monic(Vec v, const PrimeField& field)
{
    if (v.empty() || v.front().coeff == 1)
        return v;
    Coeff inv = field.inv(v.front().coeff);
    for (MTerm& t : v)
        t.coeff = field.mul(t.coeff, inv);
    return v;
}

// Index of the first basis element whose leading term divides (component, monomial), or npos.
std::size_t find_reducer(const std::vector<Vec>& elements, const std::vector<std::uint64_t>& masks,
                         const std::vector<bool>* active, std::uint32_t component, const Monomial& m)
{
    std::uint64_t mask = m.support_mask();
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (active && !(*active)[i])
            continue;
        const MTerm& lead = elements[i].front();
        if (lead.component != component || (masks[i] & ~mask) != 0)
            continue;
        if (lead.monomial.divides(m))
            return i;
    }
    return static_cast<std::size_t>(-1);
}

Vec reduce_against(const Vec& f, const std::vector<Vec>& elements, const std::vector<std::uint64_t>& masks,
                   const std::vector<bool>* active, const PrimeField& field, const TermOrder& order)
{
    WorkPoly work(KeyGreater{&order});
    for (const MTerm& t : f)
        work.emplace(Key{t.component, t.monomial}, t.coeff);
    Vec remainder;
    ResourceUsage& usage = resource_usage();
    while (!work.empty()) {
        auto it = work.begin();
        std::size_t r = find_reducer(elements, masks, active, it->first.component, it->first.monomial);
        if (r == static_cast<std::size_t>(-1)) {
            remainder.push_back(MTerm{it->first.monomial, it->first.component, it->second});
            work.erase(it);
            continue;
        }
        const Vec& g = elements[r];
        Monomial shift = it->first.monomial.quotient(g.front().monomial);
        Coeff factor = field.neg(it->second); // g is monic
        work.erase(it);
        add_scaled_shifted(work, g, 1, shift, factor, field);
        ++usage.reduction_steps;
    }
    return remainder;
}

} // namespace

std::strong_ordering TermOrder::compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b) const
{
    bool ga = ca >= order_.group_split;
    bool gb = cb >= order_.group_split;
    if (ga != gb)
        return ga ? std::strong_ordering::less : std::strong_ordering::greater;
    const MonomialOrder& mo = order_.monomial_order;
    bool block_first = order_.block_before_position && mo.kind() == MonomialOrder::Kind::block;
    if (block_first) {
        auto c = mo.compare_first_block(a, b);
        if (c != std::strong_ordering::equal)
            return c;
    }
    if (ca != cb)
        return ca < cb ? std::strong_ordering::greater : std::strong_ordering::less;
    if (block_first)
        return mo.compare_second_block(a, b);
    return mo.compare(a, b);
}

Vec canonicalize(Vec v, const PrimeField& field, const TermOrder& order)
{
    std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) { return order.greater(a, b); });
    Vec out;
    out.reserve(v.size());
    for (MTerm& t : v) {
        if (!out.empty() && out.back().component == t.component && out.back().monomial == t.monomial) {
            out.back().coeff = field.add(out.back().coeff, t.coeff);
            if (out.back().coeff == 0)
                out.pop_back();
        } else if (t.coeff % field.characteristic() != 0) {
            t.coeff %= field.characteristic();
            out.push_back(std::move(t));
        }
    }
    return out;
}

Vec from_polynomial(const Polynomial& f, const TermOrder& order, std::uint32_t component)
{
    Vec v;
    v.reserve(f.num_terms());
    for (const Term& t : f.terms())
        v.push_back(MTerm{t.monomial, component, t.coeff});
    std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) { return order.greater(a, b); });
    return v;
}

Vec from_module_element(const ModuleElement& m, const TermOrder& order)
{
    Vec v;
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        for (const Term& t : m.components[c].terms())
            v.push_back(MTerm{t.monomial, static_cast<std::uint32_t>(c), t.coeff});
    }
    std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) { return order.greater(a, b); });
    return v;
}

Polynomial to_polynomial(const Vec& v, const RingPtr& ring)
{
    std::vector<Term> terms;
    terms.reserve(v.size());
    for (const MTerm& t : v)
        terms.push_back(Term{t.monomial, t.coeff});
    return Polynomial::from_terms(ring, std::move(terms));
}

ModuleElement to_module_element(const Vec& v, const RingPtr& ring, std::size_t rank)
{
    std::vector<std::vector<Term>> parts(rank);
    for (const MTerm& t : v)
        parts.at(t.component).push_back(Term{t.monomial, t.coeff});
    ModuleElement out;
    out.components.reserve(rank);
    for (auto& p : parts)
        out.components.push_back(Polynomial::from_terms(ring, std::move(p)));
    return out;
}

Vec reduce(const Vec& f, const Basis& basis, const PrimeField& field, const TermOrder& order)
{
    return reduce_against(f, basis.elements, basis.masks, nullptr, field, order);
}

Basis buchberger(const PrimeField& field, const TermOrder& order, std::vector<Vec> generators, std::size_t budget)
{
    ResourceUsage& usage = resource_usage();
    ++usage.groebner_runs;

    bool ideal_mode = true;
    for (const Vec& g : generators) {
        for (const MTerm& t : g)
            ideal_mode = ideal_mode && t.component == 0;
    }

    std::vector<Vec> elements;
    std::vector<std::uint64_t> masks;
    std::vector<Monomial> leads;

    // Pairs are processed smallest lcm first; ties broken by indices for determinism.
    struct Pair {
        std::size_t i;
        std::size_t j;
        std::uint32_t component;
        Monomial lcm;
    };
    auto pair_less = [&order](const Pair& a, const Pair& b) {
        auto c = order.compare(a.component, a.lcm, b.component, b.lcm);
        if (c != std::strong_ordering::equal)
            return c == std::strong_ordering::less;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    };
    std::set<Pair, decltype(pair_less)> queue(pair_less);
    std::set<std::pair<std::size_t, std::size_t>> pending;

    auto add_element = [&](Vec h) {
        h = make_monic(std::move(h), field);
        std::size_t idx = elements.size();
        const MTerm& lead = h.front();
        for (std::size_t k = 0; k < idx; ++k) {
            if (elements[k].front().component != lead.component)
                continue;
            queue.insert(Pair{k, idx, lead.component, leads[k].lcm(lead.monomial)});
            pending.emplace(k, idx);
        }
        masks.push_back(lead.monomial.support_mask());
        leads.push_back(lead.monomial);
        elements.push_back(std::move(h));
    };

    for (Vec& g : generators) {
        g = canonicalize(std::move(g), field, order);
        Vec r = reduce_against(g, elements, masks, nullptr, field, order);
        if (!r.empty())
            add_element(std::move(r));
    }

    std::size_t reduced_pairs = 0;
    while (!queue.empty()) {
        Pair pr = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({pr.i, pr.j});

        if (ideal_mode && leads[pr.i].coprime(leads[pr.j])) {
            ++usage.spairs_skipped;
            continue;
        }
        bool chain = false;
        for (std::size_t k = 0; k < elements.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || elements[k].front().component != pr.component)
                continue;
            if (!leads[k].divides(pr.lcm))
                continue;
            auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            chain = !pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k));
        }
        if (chain) {
            ++usage.spairs_skipped;
            continue;
        }

        if (++reduced_pairs > budget)
            throw ResourceError("groebner", "spair-steps",
                                "S-pair step budget of " + std::to_string(budget) + " exceeded");
        ++usage.spairs_reduced;

        WorkPoly work(KeyGreater{&order});
        add_scaled_shifted(work, elements[pr.i], 1, pr.lcm.quotient(leads[pr.i]), 1, field);
        add_scaled_shifted(work, elements[pr.j], 1, pr.lcm.quotient(leads[pr.j]), field.neg(1), field);
        Vec s;
        s.reserve(work.size());
        for (auto& [key, c] : work)
            s.push_back(MTerm{key.monomial, key.component, c});
        Vec r = reduce_against(s, elements, masks, nullptr, field, order);
        if (!r.empty())
            add_element(std::move(r));
    }

    // Minimal basis: drop elements whose leading term is divisible by another's.
    std::vector<bool> keep(elements.size(), true);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = 0; j < elements.size() && keep[i]; ++j) {
            if (i == j || !keep[j] || elements[i].front().component != elements[j].front().component)
                continue;
            if (leads[j].divides(leads[i]) && (leads[j] != leads[i] || j < i))
                keep[i] = false;
        }
    }
    // Tail-reduce each survivor against the others.
    std::vector<Vec> reduced;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!keep[i])
            continue;
        keep[i] = false;
        Vec tail(elements[i].begin() + 1, elements[i].end());
        Vec r = reduce_against(tail, elements, masks, &keep, field, order);
        keep[i] = true;
        Vec full;
        full.reserve(r.size() + 1);
        full.push_back(elements[i].front());
        full.insert(full.end(), r.begin(), r.end());
        reduced.push_back(std::move(full));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Vec& a, const Vec& b) { return order.greater(a.front(), b.front()); });

    Basis basis;
    for (Vec& v : reduced) {
        basis.masks.push_back(v.front().monomial.support_mask());
        basis.elements.push_back(std::move(v));
    }
    return basis;
}

} // namespace frobforge::detail
