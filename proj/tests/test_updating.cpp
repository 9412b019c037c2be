#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "credence/updating.hpp"
#include "support/oracles.hpp"

using namespace credence;

TEST_CASE("conditioning a distribution") {
    SpacePtr s = make_space({"HH", "HT", "TH", "TT"});
    Distribution d = Distribution::uniform(s);
    Proposition first_heads = Proposition::of_indices(s, {0, 1});
    Proposition second_heads = Proposition::of_indices(s, {0, 2});

    SECTION("uniform two-toss space; second-heads becomes a half") {
        Distribution after = bayes_condition(d, first_heads);
        REQUIRE(after.weight(0) == Rational(1, 2));
        REQUIRE(after.weight(1) == Rational(1, 2));
        REQUIRE(after.weight(2) == 0);
        REQUIRE(after.weight(3) == 0);
        REQUIRE(probability(after, second_heads) == Rational(1, 2));
    }
    SECTION("conditioning on a tautology is the identity") {
        REQUIRE(bayes_condition(d, Proposition::all(s)) == d);
    }
    SECTION("renormalization example") {
        SpacePtr abc = make_space({"a", "b", "c"});
        Distribution d2(abc, {Rational(3, 10), Rational(3, 10), Rational(2, 5)});
        Distribution after = bayes_condition(d2, Proposition::of_indices(abc, {0, 1}));
        REQUIRE(after.weights() ==
                std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0)});
    }
    SECTION("zero-probability evidence is an error") {
        REQUIRE_THROWS_AS(bayes_condition(d, Proposition::none(s)), DomainError);
    }
}

TEST_CASE("Jeffrey shifts") {
    SpacePtr s = make_space({"a", "b", "c"});
    Distribution d(s, {Rational(3, 10), Rational(3, 10), Rational(2, 5)});
    Proposition e = Proposition::of_indices(s, {0, 1});

    SECTION("shifting to the current probability changes nothing") {
        REQUIRE(jeffrey_condition(d, e, probability(d, e)) == d);
    }
    SECTION("shifting to one reduces to conditioning") {
        REQUIRE(jeffrey_condition(d, e, Rational(1)) == bayes_condition(d, e));
    }
    SECTION("worked example: P'(a) = (1/2)(9/10)") {
        Distribution after = jeffrey_condition(d, e, Rational(9, 10));
        REQUIRE(probability(after, Proposition::of_indices(s, {0})) == Rational(9, 20));
        REQUIRE(probability(after, e) == Rational(9, 10));
    }
    SECTION("a zero-probability side cannot receive weight") {
        Distribution concentrated(s, {Rational(1, 2), Rational(1, 2), Rational(0)});
        Proposition ab = Proposition::of_indices(s, {0, 1}); // P = 1
        REQUIRE_THROWS_AS(jeffrey_condition(concentrated, ab, Rational(9, 10)), DomainError);
        // Shifting to the boundary value it already has is fine.
        REQUIRE(jeffrey_condition(concentrated, ab, Rational(1)) == concentrated);
    }
}

TEST_CASE("Jeffrey reductions hold exactly on random distributions") {
    SpacePtr s = make_space({"a", "b", "c", "d", "e"});
    std::mt19937_64 rng(41);
    int tested = 0;
    while (tested < 200) {
        Distribution d = oracles::random_distribution(s, rng);
        Proposition e = oracles::random_proposition(s, rng);
        Rational pe = probability(d, e);
        if (pe == 0 || pe == 1) continue;
        ++tested;
        REQUIRE(jeffrey_condition(d, e, pe) == d);
        REQUIRE(jeffrey_condition(d, e, Rational(1)) == bayes_condition(d, e));
    }
}

TEST_CASE("conditioning a credal set") {
    SpacePtr s = make_space({"a", "b", "c"});
    Distribution p1(s, {Rational(1, 2), Rational(3, 10), Rational(1, 5)});
    Distribution p2(s, {Rational(1, 5), Rational(3, 10), Rational(1, 2)});
    CredalSet k(std::vector<Distribution>{p1, p2});
    Proposition e = Proposition::of_indices(s, {0, 1});

    SECTION("memberwise renormalization") {
        CredalSet after = credal_condition(k, e);
        REQUIRE(after.size() == 2);
        REQUIRE(after.generators()[0].weights() ==
                std::vector<Rational>{Rational(5, 8), Rational(3, 8), Rational(0)});
        REQUIRE(after.generators()[1].weights() ==
                std::vector<Rational>{Rational(2, 5), Rational(3, 5), Rational(0)});
        ProbabilityInterval iv = prob_interval(after, Proposition::of_indices(s, {0}));
        REQUIRE(iv.lower == Rational(2, 5));
        REQUIRE(iv.upper == Rational(5, 8));
        REQUIRE(after.dropped_generators() == 0);
    }
    SECTION("singleton set matches plain conditioning") {
        CredalSet one = CredalSet::singleton(p1);
        CredalSet after = credal_condition(one, e);
        REQUIRE(after.generators()[0] == bayes_condition(p1, e));
    }
    SECTION("zero-probability generators are dropped and counted") {
        Distribution zero_on_e(s, {Rational(0), Rational(0), Rational(1)});
        CredalSet mixed(std::vector<Distribution>{p1, zero_on_e});
        CredalSet after = credal_condition(mixed, e);
        REQUIRE(after.size() == 1);
        REQUIRE(after.dropped_generators() == 1);
    }
    SECTION("evidence with zero probability on all members is an error") {
        Distribution z(s, {Rational(0), Rational(0), Rational(1)});
        CredalSet all_zero(std::vector<Distribution>{z, z});
        REQUIRE_THROWS_AS(credal_condition(all_zero, e), DomainError);
    }
}

TEST_CASE("Jeffrey shifts on credal sets") {
    SpacePtr s = make_space({"a", "b", "c"});
    Distribution p1(s, {Rational(1, 2), Rational(3, 10), Rational(1, 5)});
    Distribution p2(s, {Rational(1, 5), Rational(3, 10), Rational(1, 2)});
    CredalSet k(std::vector<Distribution>{p1, p2});
    Proposition e = Proposition::of_indices(s, {0, 1});

    SECTION("singleton set matches the pointwise shift") {
        CredalSet one = CredalSet::singleton(p1);
        CredalSet after = credal_jeffrey(one, e, Rational(9, 10));
        REQUIRE(after.generators()[0] == jeffrey_condition(p1, e, Rational(9, 10)));
    }
    SECTION("shift to one equals conditioning") {
        CredalSet via_jeffrey = credal_jeffrey(k, e, Rational(1));
        CredalSet via_condition = credal_condition(k, e);
        REQUIRE(via_jeffrey.size() == via_condition.size());
        for (std::size_t i = 0; i < via_jeffrey.size(); ++i)
            REQUIRE(via_jeffrey.generators()[i] == via_condition.generators()[i]);
    }
    SECTION("memberwise results, checked by hand") {
        CredalSet after = credal_jeffrey(k, e, Rational(9, 10));
        REQUIRE(after.generators()[0].weights() ==
                std::vector<Rational>{Rational(9, 16), Rational(27, 80), Rational(1, 10)});
        REQUIRE(after.generators()[1].weights() ==
                std::vector<Rational>{Rational(9, 25), Rational(27, 50), Rational(1, 10)});
    }
    SECTION("undefined on all members is an error") {
        Distribution all_on_e(s, {Rational(1, 2), Rational(1, 2), Rational(0)});
        CredalSet stuck = CredalSet::singleton(all_on_e);
        REQUIRE_THROWS_AS(credal_jeffrey(stuck, e, Rational(9, 10)), DomainError);
    }
}

TEST_CASE("conditioning chains compose") {
    SpacePtr s = make_space({"a", "b", "c", "d"});
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        Distribution d = oracles::random_distribution(s, rng);
        Proposition e1 = oracles::random_proposition(s, rng);
        Proposition e2 = oracles::random_proposition(s, rng);
        if (probability(d, conjunction(e1, e2)) == 0) continue;
        REQUIRE(bayes_condition(bayes_condition(d, e1), e2) ==
                bayes_condition(d, conjunction(e1, e2)));
    }
}

TEST_CASE("conditioned weight never escapes the evidence") {
    SpacePtr s = make_space({"a", "b", "c", "d", "e"});
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        Distribution d = oracles::random_distribution(s, rng);
        Proposition e1 = oracles::random_proposition(s, rng);
        if (probability(d, e1) == 0) continue;
        Distribution once = bayes_condition(d, e1);
        REQUIRE(probability(once, e1) == 1);
        Proposition e2 = oracles::random_proposition(s, rng);
        if (probability(once, e2) == 0) continue;
        Distribution twice = bayes_condition(once, e2);
        REQUIRE(probability(twice, e1) == 1); // excluded atoms stay excluded
    }
}

TEST_CASE("conditional probabilities of hull members stay inside conditioned intervals") {
    std::mt19937_64 rng(53);
    SpacePtr s = make_space({"a", "b", "c", "d"});
    for (int setup = 0; setup < 20; ++setup) {
        CredalSet k = oracles::random_credal(s, rng);
        Proposition e = oracles::random_proposition(s, rng);
        bool some_positive = false;
        for (const Distribution& g : k.generators())
            if (probability(g, e) > 0) some_positive = true;
        if (!some_positive || e.is_empty()) continue;
        CredalSet conditioned = credal_condition(k, e);
        for (int i = 0; i < 100; ++i) {
            Distribution member = oracles::random_hull_member(k, rng);
            if (probability(member, e) == 0) continue;
            Proposition h = oracles::random_proposition(s, rng);
            REQUIRE(prob_interval(conditioned, h).contains(conditional(member, h, e)));
        }
    }
}
