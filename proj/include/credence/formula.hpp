#pragma once

// Recursive-descent parser for the propositional formula grammar:
//
//   formula := implies
//   implies := or ("->" implies)?        right associative
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | primary
//   primary := name | "(" formula ")"
//
// Names match [A-Za-z0-9_]+ and resolve through caller-supplied bindings.
// Reported positions are 0-based character offsets.

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "credence/algebra.hpp"
#include "credence/errors.hpp"

namespace credence {

using NameResolver = std::function<std::optional<Proposition>(std::string_view)>;

namespace detail {

class FormulaParser {
  public:
    FormulaParser(std::string_view text, SpacePtr space, const NameResolver& resolve)
        : text_(text), space_(std::move(space)), resolve_(resolve) {}

    Proposition parse() {
        Proposition result = parse_implies();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected input", pos_);
        return result;
    }

  private:
    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_arrow() {
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
            pos_ += 2;
            return true;
        }
        return false;
    }

    Proposition parse_implies() {
        Proposition left = parse_or();
        if (eat_arrow()) return implication(left, parse_implies());
        return left;
    }

    Proposition parse_or() {
        Proposition acc = parse_and();
        while (eat('|')) acc = disjunction(acc, parse_and());
        return acc;
    }

    Proposition parse_and() {
        Proposition acc = parse_unary();
        while (eat('&')) acc = conjunction(acc, parse_unary());
        return acc;
    }

    Proposition parse_unary() {
        if (eat('~')) return negation(parse_unary());
        return parse_primary();
    }

    Proposition parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("expected a proposition", pos_);
        if (text_[pos_] == '(') {
            ++pos_;
            Proposition inner = parse_implies();
            if (!eat(')')) {
                skip_ws();
                throw ParseError("expected ')'", pos_);
            }
            return inner;
        }
        if (!is_name_char(text_[pos_])) throw ParseError("expected a proposition", pos_);
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        std::optional<Proposition> bound = resolve_(name);
        if (!bound) throw ParseError("unbound name '" + std::string(name) + "'", start);
        require_same_space(bound->space(), space_);
        return *bound;
    }

    std::string_view text_;
    SpacePtr space_;
    const NameResolver& resolve_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Proposition parse_formula(std::string_view text, const SpacePtr& space,
                                 const NameResolver& resolve) {
    return detail::FormulaParser(text, space, resolve).parse();
}

inline Proposition parse_formula(std::string_view text, const SpacePtr& space,
                                 const std::unordered_map<std::string, Proposition>& bindings) {
    NameResolver resolve = [&](std::string_view name) -> std::optional<Proposition> {
        auto it = bindings.find(std::string(name));
        if (it == bindings.end()) return std::nullopt;
        return it->second;
    };
    return parse_formula(text, space, resolve);
}

// Renders a proposition as a formula over its atom labels. Reparsing the
// result with atom-singleton bindings yields the same member set. Labels
// must themselves be valid formula names.
inline std::string to_formula(const Proposition& p) {
    const auto& space = *p.space();
    if (p.is_empty()) return space.label(0) + " & ~" + space.label(0);
    if (p.is_full()) return space.label(0) + " | ~" + space.label(0);
    std::string out;
    for (auto i = p.members().find_first(); i != AtomSet::npos; i = p.members().find_next(i)) {
        if (!out.empty()) out += " | ";
        out += space.label(i);
    }
    return out;
}

} // namespace credence
