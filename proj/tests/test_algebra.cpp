#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "credence/algebra.hpp"

using namespace credence;

TEST_CASE("world space construction") {
    SECTION("two-toss space") {
        SpacePtr s = make_space({"HH", "HT", "TH", "TT"});
        REQUIRE(s->size() == 4);
        REQUIRE(s->label(2) == "TH");
        REQUIRE(s->index_of("HT") == 1);
        REQUIRE_FALSE(s->index_of("XX").has_value());
    }
    SECTION("minimal space") {
        REQUIRE(make_space({"a"})->size() == 1);
    }
    SECTION("duplicate labels rejected") {
        REQUIRE_THROWS_AS(make_space({"x", "x"}), DomainError);
    }
    SECTION("empty label list rejected") {
        REQUIRE_THROWS_AS(make_space(std::vector<std::string>{}), DomainError);
    }
    SECTION("empty label rejected") {
        REQUIRE_THROWS_AS(make_space({"a", ""}), DomainError);
    }
}

TEST_CASE("boolean structure") {
    SpacePtr s = make_space({"HH", "HT", "TH", "TT"});
    Proposition first_heads = Proposition::of_indices(s, {0, 1});
    Proposition second_heads = Proposition::of_indices(s, {0, 2});

    SECTION("conjunction is intersection") {
        REQUIRE(conjunction(first_heads, second_heads) == Proposition::of_indices(s, {0}));
    }
    SECTION("negation of the full set is empty") {
        REQUIRE(negation(Proposition::all(s)).is_empty());
    }
    SECTION("excluded middle") {
        REQUIRE(disjunction(first_heads, negation(first_heads)).is_full());
    }
    SECTION("implication is material") {
        REQUIRE(implication(first_heads, second_heads) ==
                disjunction(negation(first_heads), second_heads));
    }
    SECTION("combine checks arity") {
        REQUIRE_THROWS_AS(combine(Connective::Not, {first_heads, second_heads}), DomainError);
        REQUIRE_THROWS_AS(combine(Connective::And, {first_heads}), DomainError);
        REQUIRE(combine(Connective::And, {first_heads, second_heads}) ==
                (first_heads & second_heads));
    }
    SECTION("mismatched spaces rejected") {
        SpacePtr other = make_space({"a", "b"});
        REQUIRE_THROWS_AS(conjunction(first_heads, Proposition::all(other)), DomainError);
    }
    SECTION("structurally equal spaces combine") {
        SpacePtr clone = make_space({"HH", "HT", "TH", "TT"});
        REQUIRE(conjunction(first_heads, Proposition::all(clone)) == first_heads);
    }
}

TEST_CASE("entailment") {
    SpacePtr s = make_space({"HH", "HT", "TH", "TT"});
    Proposition hh = Proposition::of_indices(s, {0});
    Proposition heads_first = Proposition::of_indices(s, {0, 1});
    Proposition hh_tt = Proposition::of_indices(s, {0, 3});

    REQUIRE(entails(hh, heads_first));
    REQUIRE_FALSE(entails(hh_tt, heads_first));
    REQUIRE(entails(Proposition::none(s), hh)); // ex falso
    REQUIRE(entails(heads_first, Proposition::all(s)));
}

TEST_CASE("entails(A,B) iff A & B == A, exhaustively") {
    // Every pair of subsets of a 10-atom space.
    std::vector<std::string> labels;
    for (int i = 0; i < 10; ++i) labels.push_back("a" + std::to_string(i));
    SpacePtr s = make_space(std::move(labels));

    auto of_mask = [&](std::uint32_t mask) {
        AtomSet bits(10);
        for (std::size_t i = 0; i < 10; ++i)
            if ((mask >> i) & 1u) bits.set(i);
        return Proposition(s, std::move(bits));
    };

    for (std::uint32_t a = 0; a < 1024; ++a) {
        Proposition pa = of_mask(a);
        for (std::uint32_t b = 0; b < 1024; ++b) {
            Proposition pb = of_mask(b);
            bool subset = (a & b) == a; // independent mask arithmetic
            REQUIRE(entails(pa, pb) == subset);
            REQUIRE((conjunction(pa, pb) == pa) == subset);
        }
    }
}

TEST_CASE("De Morgan on all pairs of a small space") {
    SpacePtr s = make_space({"p", "q", "r", "t"});
    auto of_mask = [&](std::uint32_t mask) {
        AtomSet bits(4);
        for (std::size_t i = 0; i < 4; ++i)
            if ((mask >> i) & 1u) bits.set(i);
        return Proposition(s, std::move(bits));
    };
    for (std::uint32_t a = 0; a < 16; ++a) {
        for (std::uint32_t b = 0; b < 16; ++b) {
            Proposition pa = of_mask(a), pb = of_mask(b);
            REQUIRE(negation(conjunction(pa, pb)) == disjunction(negation(pa), negation(pb)));
            REQUIRE(negation(disjunction(pa, pb)) == conjunction(negation(pa), negation(pb)));
        }
    }
}

TEST_CASE("large spaces work") {
    std::vector<std::string> labels;
    for (int i = 0; i < 4096; ++i) labels.push_back("w" + std::to_string(i));
    SpacePtr s = make_space(std::move(labels));
    Proposition evens = [&] {
        AtomSet bits(4096);
        for (std::size_t i = 0; i < 4096; i += 2) bits.set(i);
        return Proposition(s, std::move(bits));
    }();
    REQUIRE(evens.count() == 2048);
    REQUIRE(negation(evens).count() == 2048);
    REQUIRE(conjunction(evens, negation(evens)).is_empty());
    REQUIRE(entails(Proposition::atom(s, 2), evens));
}
