#pragma once

// Evidence-driven revision: conditioning a distribution on evidence
// learned with certainty, shifting the probability of an evidence
// proposition to a new value short of certainty, and both operations
// extended memberwise to credal sets.

#include <cstddef>
#include <utility>
#include <vector>

#include "credence/algebra.hpp"
#include "credence/credal.hpp"
#include "credence/errors.hpp"
#include "credence/rational.hpp"

namespace credence {

// Conditioning on e: weights outside e drop to zero, weights inside are
// renormalized by P(e). Defined only when P(e) > 0.
inline Distribution bayes_condition(const Distribution& d, const Proposition& e) {
    require_same_space(d.space(), e.space());
    Rational pe = probability(d, e);
    if (pe == 0) throw DomainError("evidence has probability zero");
    std::vector<Rational> w(d.space()->size(), Rational(0));
    const AtomSet& members = e.members();
    for (auto i = members.find_first(); i != AtomSet::npos; i = members.find_next(i))
        w[i] = d.weight(i) / pe;
    return Distribution(d.space(), std::move(w));
}

// Shifts P(e) to new_pe, scaling the two halves of the space so that
// probabilities conditional on e and on ~e are unchanged. A side whose
// new weight is zero is left out entirely; a side with current
// probability zero can only carry new weight zero.
inline Distribution jeffrey_condition(const Distribution& d, const Proposition& e,
                                      const Rational& new_pe) {
    require_same_space(d.space(), e.space());
    if (!in_unit_interval(new_pe)) throw DomainError("shifted probability must lie in [0, 1]");
    Rational pe = probability(d, e);
    Rational pnot = 1 - pe;
    if (new_pe > 0 && pe == 0)
        throw DomainError("evidence has probability zero but positive shifted weight");
    if (new_pe < 1 && pnot == 0)
        throw DomainError("negated evidence has probability zero but positive shifted weight");

    std::vector<Rational> w(d.space()->size(), Rational(0));
    const AtomSet& members = e.members();
    if (new_pe > 0) {
        Rational factor = new_pe / pe;
        for (auto i = members.find_first(); i != AtomSet::npos; i = members.find_next(i))
            w[i] = d.weight(i) * factor;
    }
    if (new_pe < 1) {
        Rational factor = (1 - new_pe) / pnot;
        AtomSet outside = ~members;
        for (auto i = outside.find_first(); i != AtomSet::npos; i = outside.find_next(i))
            w[i] = d.weight(i) * factor;
    }
    return Distribution(d.space(), std::move(w));
}

// Memberwise conditioning. Generators that give the evidence probability
// zero are dropped (their count is recorded on the result); at least one
// generator must survive.
inline CredalSet credal_condition(const CredalSet& k, const Proposition& e) {
    require_same_space(k.space(), e.space());
    std::vector<Distribution> updated;
    std::size_t dropped = 0;
    for (const Distribution& g : k.generators()) {
        if (probability(g, e) == 0) {
            ++dropped;
            continue;
        }
        updated.push_back(bayes_condition(g, e));
    }
    if (updated.empty()) throw DomainError("evidence has zero probability on all members");
    CredalSet result(std::move(updated));
    result.set_dropped_generators(dropped);
    return result;
}

// Memberwise Jeffrey shift; generators on which the shift is undefined
// (a zero-probability side that must receive positive weight) are dropped.
inline CredalSet credal_jeffrey(const CredalSet& k, const Proposition& e, const Rational& new_pe) {
    require_same_space(k.space(), e.space());
    if (!in_unit_interval(new_pe)) throw DomainError("shifted probability must lie in [0, 1]");
    std::vector<Distribution> updated;
    std::size_t dropped = 0;
    for (const Distribution& g : k.generators()) {
        Rational pe = probability(g, e);
        bool defined = !(new_pe > 0 && pe == 0) && !(new_pe < 1 && pe == 1);
        if (!defined) {
            ++dropped;
            continue;
        }
        updated.push_back(jeffrey_condition(g, e, new_pe));
    }
    if (updated.empty())
        throw DomainError("the shift is undefined on every member of the credal set");
    CredalSet result(std::move(updated));
    result.set_dropped_generators(dropped);
    return result;
}

} // namespace credence
