#pragma once

// Dutch-book coherence of betting quotients. Quotients are coherent when
// some distribution assigns each proposition exactly its quotient; the
// check is a linear feasibility problem over atom weights. An infeasible
// system converts, through its Farkas certificate, into a stake vector
// that loses money in every atom: the Dutch book.

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "credence/credal.hpp"
#include "credence/errors.hpp"
#include "credence/rational.hpp"
#include "credence/simplex.hpp"

namespace credence {

struct CoherentVerdict {
    Distribution witness;
};

// stakes[i] is the number of unit bets bought on entry i at its quotient;
// negative stakes sell. The net payoff is at most -guaranteed_loss in
// every atom of the space.
struct DutchBookVerdict {
    std::vector<Rational> stakes;
    Rational guaranteed_loss;
};

using CoherenceVerdict = std::variant<CoherentVerdict, DutchBookVerdict>;

// Net payoff of the staked bets in the given atom: sum of
// stakes[i] * (1[atom in A_i] - q_i).
inline Rational bet_payoff(const BettingQuotients& q, const std::vector<Rational>& stakes,
                           std::size_t atom_index) {
    Rational total = 0;
    for (std::size_t i = 0; i < q.entries.size(); ++i) {
        Rational indicator = q.entries[i].proposition.contains(atom_index) ? 1 : 0;
        total += stakes[i] * (indicator - q.entries[i].quotient);
    }
    return total;
}

inline CoherenceVerdict coherence_check(const BettingQuotients& q) {
    const std::size_t atoms = q.space->size();
    const std::size_t m = q.entries.size();

    // Row 0: weights sum to 1. Row i+1: weights inside A_i sum to q_i.
    std::vector<std::vector<Rational>> a(m + 1, std::vector<Rational>(atoms, Rational(0)));
    std::vector<Rational> b(m + 1, Rational(0));
    for (std::size_t j = 0; j < atoms; ++j) a[0][j] = 1;
    b[0] = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const AtomSet& members = q.entries[i].proposition.members();
        for (auto j = members.find_first(); j != AtomSet::npos; j = members.find_next(j))
            a[i + 1][j] = 1;
        b[i + 1] = q.entries[i].quotient;
    }

    FeasibilityOutcome solved = solve_equality_feasibility(std::move(a), std::move(b));
    if (solved.feasible)
        return CoherentVerdict{Distribution(q.space, std::move(solved.point))};

    // The certificate rows beyond the normalization row are the stakes.
    // Farkas gives, for every atom x:
    //   y_0 + sum_{i : x in A_i} y_i <= 0   and   y_0 + sum_i y_i q_i > 0,
    // so staking s_i = y_i nets at most -(yᵀb) < 0 everywhere. Scale so the
    // largest stake has magnitude 1.
    std::vector<Rational> stakes(solved.farkas.begin() + 1, solved.farkas.end());
    Rational scale = 0;
    for (const Rational& s : stakes) {
        Rational mag = s < 0 ? -s : s;
        if (mag > scale) scale = mag;
    }
    if (scale > 0)
        for (Rational& s : stakes) s /= scale;

    Rational worst_payoff;
    for (std::size_t x = 0; x < atoms; ++x) {
        Rational p = bet_payoff(q, stakes, x);
        if (x == 0 || p > worst_payoff) worst_payoff = p;
    }
    return DutchBookVerdict{std::move(stakes), -worst_payoff};
}

} // namespace credence
