#pragma once

// JSON wire formats. Rationals travel as "num/den" strings; a world space
// is {"atoms": [...]}; a distribution is {"atoms": [...], "weights": [...]};
// a credal set is {"atoms": [...], "points": [[...], ...]}; a corpus wraps
// a credal set with an "acceptance_level". Propositions serialize as
// ascending index arrays, or as {"hex": ...} bitmasks once they have more
// than 64 members.

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "credence/algebra.hpp"
#include "credence/corpus.hpp"
#include "credence/credal.hpp"
#include "credence/errors.hpp"
#include "credence/rational.hpp"

namespace credence {

using Json = nlohmann::json;

namespace detail {

inline const Json& expect_field(const Json& j, const char* field, const char* context) {
    if (!j.is_object() || !j.contains(field))
        throw DomainError(std::string(context) + ": missing field '" + field + "'");
    return j.at(field);
}

inline std::string expect_string(const Json& j, const char* context) {
    if (!j.is_string()) throw DomainError(std::string(context) + ": expected a string");
    return j.get<std::string>();
}

} // namespace detail

inline Json rational_to_json(const Rational& r) { return to_fraction(r); }

inline Rational rational_from_json(const Json& j, const char* context) {
    return parse_rational(detail::expect_string(j, context));
}

// --------------------------------------------------------------------------
// World spaces
// --------------------------------------------------------------------------

inline Json space_to_json(const WorldSpace& space) {
    return Json{{"atoms", space.atoms()}};
}

inline SpacePtr space_from_json(const Json& j) {
    const Json& atoms = detail::expect_field(j, "atoms", "world space");
    if (!atoms.is_array() || atoms.empty())
        throw DomainError("world space: 'atoms' must be a non-empty array");
    std::vector<std::string> labels;
    labels.reserve(atoms.size());
    for (const Json& a : atoms) labels.push_back(detail::expect_string(a, "atom label"));
    return make_space(std::move(labels));
}

inline void require_matching_atoms(const Json& j, const SpacePtr& space, const char* context) {
    SpacePtr loaded = space_from_json(j);
    if (!same_space(loaded, space))
        throw DomainError(std::string(context) + ": atom list does not match the current space");
}

// --------------------------------------------------------------------------
// Distributions and credal sets
// --------------------------------------------------------------------------

inline Json distribution_to_json(const Distribution& d) {
    Json weights = Json::array();
    for (const Rational& w : d.weights()) weights.push_back(to_fraction(w));
    return Json{{"atoms", d.space()->atoms()}, {"weights", std::move(weights)}};
}

inline std::vector<Rational> weights_from_json(const Json& arr, std::size_t expected,
                                               const char* context) {
    if (!arr.is_array())
        throw DomainError(std::string(context) + ": expected an array of rationals");
    std::vector<Rational> out;
    out.reserve(arr.size());
    for (const Json& w : arr) out.push_back(rational_from_json(w, context));
    if (out.size() != expected)
        throw DomainError(std::string(context) + ": expected " + std::to_string(expected) +
                          " weights, got " + std::to_string(out.size()));
    return out;
}

inline Distribution distribution_from_json(const Json& j) {
    SpacePtr space = space_from_json(j);
    std::vector<Rational> weights = weights_from_json(
        detail::expect_field(j, "weights", "distribution"), space->size(), "distribution");
    return Distribution(std::move(space), std::move(weights));
}

inline Json credal_to_json(const CredalSet& k) {
    Json points = Json::array();
    for (const Distribution& g : k.generators()) {
        Json row = Json::array();
        for (const Rational& w : g.weights()) row.push_back(to_fraction(w));
        points.push_back(std::move(row));
    }
    return Json{{"atoms", k.space()->atoms()}, {"points", std::move(points)}};
}

inline CredalSet credal_from_json(const Json& j) {
    SpacePtr space = space_from_json(j);
    const Json& points = detail::expect_field(j, "points", "credal set");
    if (!points.is_array() || points.empty())
        throw DomainError("credal set: 'points' must be a non-empty array");
    std::vector<Distribution> generators;
    generators.reserve(points.size());
    for (const Json& row : points)
        generators.emplace_back(space, weights_from_json(row, space->size(), "credal point"));
    return CredalSet(std::move(generators));
}

// --------------------------------------------------------------------------
// Propositions
// --------------------------------------------------------------------------

inline std::string bitset_to_hex(const AtomSet& bits) {
    std::size_t nibbles = (bits.size() + 3) / 4;
    std::string out(nibbles, '0');
    for (std::size_t n = 0; n < nibbles; ++n) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t idx = n * 4 + b;
            if (idx < bits.size() && bits.test(idx)) v |= 1u << b;
        }
        out[nibbles - 1 - n] = "0123456789abcdef"[v];
    }
    return out;
}

inline AtomSet bitset_from_hex(const std::string& hex, std::size_t size) {
    AtomSet bits(size);
    std::size_t nibbles = hex.size();
    for (std::size_t n = 0; n < nibbles; ++n) {
        char c = hex[nibbles - 1 - n];
        unsigned v = 0;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<unsigned>(c - 'A' + 10);
        else
            throw DomainError("proposition: invalid hex digit in bitmask");
        for (unsigned b = 0; b < 4; ++b) {
            if (!((v >> b) & 1u)) continue;
            std::size_t idx = n * 4 + b;
            if (idx >= size) throw DomainError("proposition: bitmask wider than the space");
            bits.set(idx);
        }
    }
    return bits;
}

inline Json proposition_to_json(const Proposition& p) {
    if (p.count() <= 64) {
        Json arr = Json::array();
        for (std::size_t i : p.member_indices()) arr.push_back(i);
        return arr;
    }
    return Json{{"hex", bitset_to_hex(p.members())}};
}

inline Proposition proposition_from_json(const Json& j, const SpacePtr& space,
                                         std::string name = {}) {
    if (j.is_array()) {
        std::vector<std::size_t> indices;
        indices.reserve(j.size());
        for (const Json& v : j) {
            if (!v.is_number_unsigned())
                throw DomainError("proposition: member indices must be nonnegative integers");
            indices.push_back(v.get<std::size_t>());
        }
        return Proposition::of_indices(space, indices, std::move(name));
    }
    if (j.is_object() && j.contains("hex")) {
        AtomSet bits =
            bitset_from_hex(detail::expect_string(j.at("hex"), "proposition"), space->size());
        return Proposition(space, std::move(bits), std::move(name));
    }
    throw DomainError("proposition: expected an index array or a {\"hex\": ...} object");
}

// --------------------------------------------------------------------------
// Intervals and corpora
// --------------------------------------------------------------------------

inline Json interval_to_json(const ProbabilityInterval& interval) {
    return Json{{"lower", to_fraction(interval.lower)}, {"upper", to_fraction(interval.upper)}};
}

inline ProbabilityInterval interval_from_json(const Json& j) {
    return ProbabilityInterval(
        rational_from_json(detail::expect_field(j, "lower", "interval"), "interval lower"),
        rational_from_json(detail::expect_field(j, "upper", "interval"), "interval upper"));
}

inline Json corpus_to_json(const Corpus& c) {
    return Json{{"atoms", c.space()->atoms()},
                {"credal", credal_to_json(c.evidence())},
                {"acceptance_level", to_fraction(c.acceptance_level())}};
}

inline Corpus corpus_from_json(const Json& j) {
    CredalSet evidence = credal_from_json(detail::expect_field(j, "credal", "corpus"));
    require_matching_atoms(j, evidence.space(), "corpus");
    Rational level = rational_from_json(
        detail::expect_field(j, "acceptance_level", "corpus"), "acceptance level");
    return Corpus(std::move(evidence), std::move(level));
}

// --------------------------------------------------------------------------
// Files
// --------------------------------------------------------------------------

inline Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        // e.what() carries the byte position of the failure.
        throw DomainError("malformed JSON in '" + path + "': " + e.what());
    }
}

inline void write_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace credence
