#pragma once

// Classical probability functions over a finite world space, convex sets
// of them represented by their generators, and the interval queries those
// sets support. All arithmetic in this header is exact.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credence/algebra.hpp"
#include "credence/errors.hpp"
#include "credence/rational.hpp"

namespace credence {

class Distribution {
  public:
    Distribution(SpacePtr space, std::vector<Rational> weights)
        : space_(std::move(space)), weights_(std::move(weights)) {
        if (!space_) throw DomainError("distribution needs a world space");
        if (weights_.size() != space_->size())
            throw DomainError("expected " + std::to_string(space_->size()) + " weights, got " +
                              std::to_string(weights_.size()));
        Rational total = 0;
        for (const Rational& w : weights_) {
            if (w < 0) throw DomainError("weights must be nonnegative");
            total += w;
        }
        if (total != 1)
            throw DomainError("weights sum to " + to_fraction(total) + ", expected 1/1");
    }

    static Distribution uniform(SpacePtr space) {
        std::vector<Rational> w(space->size(), Rational(1, space->size()));
        return Distribution(std::move(space), std::move(w));
    }

    static Distribution point_mass(SpacePtr space, std::size_t atom_index) {
        if (atom_index >= space->size()) throw DomainError("atom index out of range");
        std::vector<Rational> w(space->size(), Rational(0));
        w[atom_index] = 1;
        return Distribution(std::move(space), std::move(w));
    }

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    const Rational& weight(std::size_t atom_index) const { return weights_.at(atom_index); }

    bool operator==(const Distribution& other) const {
        return same_space(space_, other.space_) && weights_ == other.weights_;
    }

  private:
    SpacePtr space_;
    std::vector<Rational> weights_;
};

inline Rational probability(const Distribution& d, const Proposition& a) {
    require_same_space(d.space(), a.space());
    Rational sum = 0;
    const AtomSet& m = a.members();
    for (auto i = m.find_first(); i != AtomSet::npos; i = m.find_next(i)) sum += d.weight(i);
    return sum;
}

// P(h | e); the conditioning event must have positive probability.
inline Rational conditional(const Distribution& d, const Proposition& h, const Proposition& e) {
    Rational pe = probability(d, e);
    if (pe == 0) throw DomainError("conditioning event has probability zero");
    return probability(d, conjunction(h, e)) / pe;
}

struct ProbabilityInterval {
    Rational lower;
    Rational upper;

    ProbabilityInterval(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower > upper) throw DomainError("interval lower bound exceeds upper bound");
        if (!in_unit_interval(lower) || !in_unit_interval(upper))
            throw DomainError("probability interval endpoints must lie in [0, 1]");
    }

    bool contains(const Rational& r) const { return lower <= r && r <= upper; }
    bool is_degenerate() const { return lower == upper; }
    bool operator==(const ProbabilityInterval&) const = default;
};

// Expected utilities are not confined to [0, 1].
struct UtilityInterval {
    Rational lower;
    Rational upper;

    UtilityInterval(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower > upper) throw DomainError("interval lower bound exceeds upper bound");
    }

    bool contains(const Rational& r) const { return lower <= r && r <= upper; }
    bool operator==(const UtilityInterval&) const = default;
};

// Convex set of distributions, held as a finite generator list. Duplicate
// generators are allowed and harmless. `dropped_generators` records how
// many members a conditioning step discarded for zero evidence probability.
class CredalSet {
  public:
    explicit CredalSet(std::vector<Distribution> generators)
        : generators_(std::move(generators)) {
        if (generators_.empty()) throw DomainError("credal set needs at least one generator");
        space_ = generators_.front().space();
        for (const Distribution& g : generators_) require_same_space(space_, g.space());
    }

    static CredalSet singleton(Distribution d) {
        return CredalSet(std::vector<Distribution>{std::move(d)});
    }

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<Distribution>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }

    std::size_t dropped_generators() const noexcept { return dropped_generators_; }
    void set_dropped_generators(std::size_t n) noexcept { dropped_generators_ = n; }

  private:
    SpacePtr space_;
    std::vector<Distribution> generators_;
    std::size_t dropped_generators_ = 0;
};

// Lower and upper probability. Probability is linear in the distribution,
// so the extremes over the whole hull are attained at generators.
inline ProbabilityInterval prob_interval(const CredalSet& k, const Proposition& a) {
    require_same_space(k.space(), a.space());
    std::optional<Rational> lo, hi;
    for (const Distribution& g : k.generators()) {
        Rational p = probability(g, a);
        if (!lo || p < *lo) lo = p;
        if (!hi || p > *hi) hi = p;
    }
    return ProbabilityInterval(std::move(*lo), std::move(*hi));
}

struct UtilityFunction {
    SpacePtr space;
    std::vector<Rational> values; // utiles per atom

    UtilityFunction(SpacePtr s, std::vector<Rational> v) : space(std::move(s)), values(std::move(v)) {
        if (!space) throw DomainError("utility function needs a world space");
        if (values.size() != space->size())
            throw DomainError("expected one utility value per atom");
    }
};

inline Rational expected_utility(const Distribution& d, const UtilityFunction& u) {
    require_same_space(d.space(), u.space);
    Rational sum = 0;
    for (std::size_t i = 0; i < d.weights().size(); ++i) sum += d.weight(i) * u.values[i];
    return sum;
}

inline UtilityInterval expected_utility_interval(const CredalSet& k, const UtilityFunction& u) {
    require_same_space(k.space(), u.space);
    std::optional<Rational> lo, hi;
    for (const Distribution& g : k.generators()) {
        Rational v = expected_utility(g, u);
        if (!lo || v < *lo) lo = v;
        if (!hi || v > *hi) hi = v;
    }
    return UtilityInterval(std::move(*lo), std::move(*hi));
}

struct BetEntry {
    Proposition proposition;
    Rational quotient; // price of a unit bet, in [0, 1]
};

struct BettingQuotients {
    SpacePtr space;
    std::vector<BetEntry> entries;

    BettingQuotients(SpacePtr s, std::vector<BetEntry> e)
        : space(std::move(s)), entries(std::move(e)) {
        if (!space) throw DomainError("betting quotients need a world space");
        if (entries.empty()) throw DomainError("betting quotients need at least one entry");
        for (const BetEntry& entry : entries) {
            require_same_space(space, entry.proposition.space());
            if (!in_unit_interval(entry.quotient))
                throw DomainError("betting quotient must lie in [0, 1]");
        }
    }
};

} // namespace credence
