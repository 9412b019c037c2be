#pragma once

// Threshold acceptance over a credal evidence base. A corpus is evidence
// plus an acceptance level t in [1/2, 1); a proposition is accepted when
// its lower probability strictly exceeds t, so every member of the
// credal set must clear the threshold. Accepted statements are always
// derived on demand, never cached, which lets conditioning retract them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "credence/algebra.hpp"
#include "credence/credal.hpp"
#include "credence/errors.hpp"
#include "credence/rational.hpp"

namespace credence {

class Corpus {
  public:
    Corpus(CredalSet evidence, Rational acceptance_level)
        : evidence_(std::move(evidence)), level_(std::move(acceptance_level)) {
        if (level_ < Rational(1, 2) || level_ >= 1)
            throw DomainError("acceptance level must lie in [1/2, 1)");
    }

    const SpacePtr& space() const noexcept { return evidence_.space(); }
    const CredalSet& evidence() const noexcept { return evidence_; }
    const Rational& acceptance_level() const noexcept { return level_; }

    Corpus with_evidence(CredalSet evidence) const {
        return Corpus(std::move(evidence), level_);
    }

  private:
    CredalSet evidence_;
    Rational level_;
};

// Largest stakes contemplated, as odds of max_odds : 1.
struct StakesContext {
    Rational max_odds;

    explicit StakesContext(Rational odds) : max_odds(std::move(odds)) {
        if (max_odds < 1) throw DomainError("maximum odds must be at least 1:1");
    }
};

// At stakes of O:1, probabilities above O/(O+1) are behaviorally
// indistinguishable from 1: no contemplated bet can separate them.
inline Rational threshold_from_stakes(const StakesContext& ctx) {
    return ctx.max_odds / (ctx.max_odds + 1);
}

// Inverse of the stakes threshold: the largest odds O with O/(O+1) <= t.
// Probabilities beyond the acceptance level are not significant, so no
// meaningful bet exceeds these odds.
inline Rational max_meaningful_odds(const Corpus& c) {
    return c.acceptance_level() / (1 - c.acceptance_level());
}

inline bool is_accepted(const Corpus& c, const Proposition& a) {
    require_same_space(c.space(), a.space());
    return prob_interval(c.evidence(), a).lower > c.acceptance_level();
}

// Every accepted proposition, by enumeration of all subsets. Guarded to
// small spaces; use is_accepted for pointwise checks elsewhere.
inline std::vector<Proposition> accepted_set(const Corpus& c) {
    const std::size_t n = c.space()->size();
    if (n > 20) throw DomainError("space too large to enumerate; query propositions directly");
    const auto& generators = c.evidence().generators();

    // Gray-code walk: one weight is added or removed per step, keeping a
    // running probability per generator.
    std::vector<Rational> sums(generators.size(), Rational(0));
    std::vector<std::uint32_t> hits;
    std::uint32_t gray = 0;
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint32_t next = static_cast<std::uint32_t>(i ^ (i >> 1));
        std::uint32_t changed = gray ^ next;
        std::size_t bit = 0;
        while (!((changed >> bit) & 1u)) ++bit;
        bool added = (next >> bit) & 1u;
        for (std::size_t g = 0; g < generators.size(); ++g) {
            const Rational& w = generators[g].weight(bit);
            if (added)
                sums[g] += w;
            else
                sums[g] -= w;
        }
        gray = next;

        bool all_above = true;
        for (const Rational& s : sums) {
            if (s <= c.acceptance_level()) {
                all_above = false;
                break;
            }
        }
        if (all_above) hits.push_back(next);
    }

    std::vector<Proposition> out;
    out.reserve(hits.size());
    for (std::uint32_t mask : hits) {
        AtomSet bits(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((mask >> j) & 1u) bits.set(j);
        out.emplace_back(c.space(), std::move(bits));
    }
    return out;
}

enum class Verdict { Accepted, RejectedNegationAccepted, Unknown };

struct QueryAnswer {
    Verdict verdict;
    ProbabilityInterval interval;
};

// Accepted when the whole interval clears t; categorically rejected when
// the negation is accepted; otherwise the honest answer is the interval.
inline QueryAnswer query(const Corpus& c, const Proposition& a) {
    require_same_space(c.space(), a.space());
    ProbabilityInterval interval = prob_interval(c.evidence(), a);
    Verdict v = Verdict::Unknown;
    if (interval.lower > c.acceptance_level())
        v = Verdict::Accepted;
    else if (interval.upper < 1 - c.acceptance_level())
        v = Verdict::RejectedNegationAccepted;
    return QueryAnswer{v, std::move(interval)};
}

struct Consistent {};

struct JointlyInconsistent {
    // Accepted propositions whose intersection is empty. Irreducible under
    // single removals, but not necessarily of globally minimal size.
    std::vector<Proposition> witness;
};

using ConsistencyVerdict = std::variant<Consistent, JointlyInconsistent>;

// The accepted set is closed upward, so the intersection of all accepted
// propositions keeps exactly the atoms x whose co-singleton (everything
// but x) is not accepted. That reduces the check to one lower-probability
// query per atom and needs no enumeration, whatever the space size.
inline ConsistencyVerdict joint_consistency(const Corpus& c) {
    const std::size_t n = c.space()->size();
    const auto& generators = c.evidence().generators();

    std::vector<std::size_t> excluded; // atoms outside the total intersection
    bool intersection_empty = true;
    for (std::size_t x = 0; x < n; ++x) {
        Rational max_weight = 0;
        for (const Distribution& g : generators)
            if (g.weight(x) > max_weight) max_weight = g.weight(x);
        // Lower probability of the co-singleton is 1 - max_g weight(x).
        if (1 - max_weight > c.acceptance_level())
            excluded.push_back(x);
        else
            intersection_empty = false;
    }
    if (!intersection_empty) return Consistent{};

    // Every co-singleton is accepted and they jointly exclude everything.
    std::vector<AtomSet> members;
    members.reserve(excluded.size());
    for (std::size_t x : excluded) {
        AtomSet bits(n);
        bits.set();
        bits.reset(x);
        members.push_back(std::move(bits));
    }

    // Greedy reduction: drop any member whose removal keeps the
    // intersection empty.
    std::vector<bool> removed(members.size(), false);
    auto intersection_is_empty = [&](std::size_t skip) {
        AtomSet acc(n);
        acc.set();
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (removed[i] || i == skip) continue;
            acc &= members[i];
            if (acc.none()) return true;
        }
        return acc.none();
    };
    for (std::size_t i = 0; i < members.size(); ++i)
        if (intersection_is_empty(i)) removed[i] = true;

    JointlyInconsistent result;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (removed[i]) continue;
        result.witness.emplace_back(c.space(), members[i],
                                    "~" + c.space()->label(excluded[i]));
    }
    return result;
}

struct Lottery {
    Corpus corpus;
    std::map<std::string, Proposition> named;
};

// An n-ticket lottery: one atom per ticket, uniform evidence, and named
// propositions wins_i, loses_i, and some_ticket_wins.
inline Lottery build_lottery(std::size_t tickets, Rational acceptance_level) {
    if (tickets < 2) throw DomainError("a lottery needs at least two tickets");
    std::vector<std::string> labels;
    labels.reserve(tickets);
    for (std::size_t i = 1; i <= tickets; ++i) labels.push_back("ticket_" + std::to_string(i));
    SpacePtr space = make_space(std::move(labels));

    Lottery lottery{
        Corpus(CredalSet::singleton(Distribution::uniform(space)), std::move(acceptance_level)),
        {}};
    for (std::size_t i = 0; i < tickets; ++i) {
        std::string suffix = std::to_string(i + 1);
        Proposition wins = Proposition::atom(space, i).named("wins_" + suffix);
        lottery.named.emplace("loses_" + suffix, negation(wins).named("loses_" + suffix));
        lottery.named.emplace("wins_" + suffix, std::move(wins));
    }
    lottery.named.emplace("some_ticket_wins", Proposition::all(space).named("some_ticket_wins"));
    return lottery;
}

// Single-case probability from an accepted frequency statement: the
// frequency interval transfers unchanged to the next trial. The caller
// attests that the statement is in the corpus; reference-class selection
// is out of scope here.
inline ProbabilityInterval direct_inference(const Corpus&,
                                            const ProbabilityInterval& accepted_frequency) {
    return accepted_frequency;
}

enum class RefusalReason { BeyondSignificance, UnfavorableOdds };

struct TakeBet {};

struct RefuseBet {
    RefusalReason reason;
};

using BetAdvice = std::variant<TakeBet, RefuseBet>;

// Advice on a bet at offered_odds : 1 against the event. A bet needing
// confidence beyond the acceptance level is refused outright: such
// probabilities are not significant. Otherwise take it only when the
// lower probability beats the price 1/(odds + 1) for every member of the
// evidence set.
inline BetAdvice bet_advice(const Corpus& c, const ProbabilityInterval& event_interval,
                            const Rational& offered_odds) {
    if (offered_odds <= 0) throw DomainError("offered odds must be positive");
    Rational required_confidence = offered_odds / (offered_odds + 1);
    if (required_confidence > c.acceptance_level())
        return RefuseBet{RefusalReason::BeyondSignificance};
    if (event_interval.lower > 1 / (offered_odds + 1)) return TakeBet{};
    return RefuseBet{RefusalReason::UnfavorableOdds};
}

} // namespace credence
