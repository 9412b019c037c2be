#pragma once

// CLI session state: one world space, a registry of named propositions,
// the current credal evidence set, an optional acceptance level, and the
// append-only history of state-changing commands. A session is a value;
// commands replace it rather than mutating in place.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credence/algebra.hpp"
#include "credence/corpus.hpp"
#include "credence/credal.hpp"
#include "credence/errors.hpp"
#include "credence/formula.hpp"
#include "credence/serialize.hpp"

namespace credence {

// Command-level misuse (wrong order, nothing loaded). Exit code 2, as
// opposed to DomainError's exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Session {
    SpacePtr space;
    std::map<std::string, Proposition> named;
    std::optional<CredalSet> credal;
    std::optional<Rational> acceptance_level;
    std::vector<std::vector<std::string>> history;

    const SpacePtr& require_space() const {
        if (!space) throw UsageError("no world space defined");
        return space;
    }

    const CredalSet& require_credal() const {
        if (!credal) throw UsageError("no credal set loaded");
        return *credal;
    }

    Corpus corpus() const {
        if (!credal || !acceptance_level) throw UsageError("no corpus loaded");
        return Corpus(*credal, *acceptance_level);
    }

    // Formula names resolve through the registry first, then fall back to
    // atom labels bound to their singletons.
    NameResolver resolver() const {
        const SpacePtr& sp = require_space();
        return [this, sp](std::string_view name) -> std::optional<Proposition> {
            auto it = named.find(std::string(name));
            if (it != named.end()) return it->second;
            if (auto idx = sp->index_of(name)) return Proposition::atom(sp, *idx);
            return std::nullopt;
        };
    }

    Proposition parse(std::string_view formula) const {
        return parse_formula(formula, require_space(), resolver());
    }
};

inline bool same_session(const Session& a, const Session& b) {
    if (static_cast<bool>(a.space) != static_cast<bool>(b.space)) return false;
    if (a.space && !(*a.space == *b.space)) return false;
    if (a.named.size() != b.named.size()) return false;
    for (const auto& [name, prop] : a.named) {
        auto it = b.named.find(name);
        if (it == b.named.end() || !(it->second == prop)) return false;
    }
    if (a.credal.has_value() != b.credal.has_value()) return false;
    if (a.credal) {
        if (a.credal->size() != b.credal->size()) return false;
        for (std::size_t i = 0; i < a.credal->size(); ++i)
            if (!(a.credal->generators()[i] == b.credal->generators()[i])) return false;
    }
    if (a.acceptance_level != b.acceptance_level) return false;
    return a.history == b.history;
}

inline constexpr int kSessionFormatVersion = 1;

inline Json session_to_json(const Session& s) {
    Json j{{"version", kSessionFormatVersion}};
    if (s.space) j["space"] = space_to_json(*s.space);
    if (!s.named.empty()) {
        Json named = Json::object();
        for (const auto& [name, prop] : s.named) named[name] = proposition_to_json(prop);
        j["named"] = std::move(named);
    }
    if (s.credal) j["credal"] = credal_to_json(*s.credal);
    if (s.acceptance_level) j["acceptance_level"] = to_fraction(*s.acceptance_level);
    j["history"] = s.history;
    return j;
}

inline Session session_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("session: expected a JSON object");
    const Json& version = detail::expect_field(j, "version", "session");
    if (!version.is_number_integer() || version.get<int>() != kSessionFormatVersion)
        throw DomainError("session: unsupported format version (expected " +
                          std::to_string(kSessionFormatVersion) + ")");
    Session s;
    if (j.contains("space")) s.space = space_from_json(j.at("space"));
    if (j.contains("credal")) {
        CredalSet k = credal_from_json(j.at("credal"));
        if (s.space) {
            if (!same_space(k.space(), s.space))
                throw DomainError("session: credal set atoms do not match the space");
        } else {
            s.space = k.space();
        }
        s.credal = std::move(k);
    }
    if (j.contains("named")) {
        if (!s.space) throw DomainError("session: named propositions need a space");
        const Json& named = j.at("named");
        if (!named.is_object()) throw DomainError("session: 'named' must be an object");
        for (auto it = named.begin(); it != named.end(); ++it)
            s.named.emplace(it.key(), proposition_from_json(it.value(), s.space, it.key()));
    }
    if (j.contains("acceptance_level")) {
        Rational level = rational_from_json(j.at("acceptance_level"), "acceptance level");
        if (level < Rational(1, 2) || level >= 1)
            throw DomainError("session: acceptance level must lie in [1/2, 1)");
        s.acceptance_level = std::move(level);
    }
    if (j.contains("history")) {
        const Json& history = j.at("history");
        if (!history.is_array()) throw DomainError("session: 'history' must be an array");
        for (const Json& entry : history) {
            if (!entry.is_array()) throw DomainError("session: history entries must be arrays");
            std::vector<std::string> tokens;
            for (const Json& t : entry) tokens.push_back(detail::expect_string(t, "history token"));
            s.history.push_back(std::move(tokens));
        }
    }
    return s;
}

inline void save_session(const Session& s, const std::string& path) {
    write_json_file(session_to_json(s), path);
}

inline Session load_session(const std::string& path) {
    return session_from_json(parse_json_file(path));
}

} // namespace credence
