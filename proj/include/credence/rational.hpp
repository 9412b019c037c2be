#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "credence/errors.hpp"

namespace credence {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical wire format: always "numerator/denominator", denominator > 0.
inline std::string to_fraction(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Integer or decimal literal. Decimals convert exactly over a power-of-ten
// denominator: "0.25" -> 1/4.
inline Rational parse_unsigned_decimal(std::string_view s, std::string_view original) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        if (!all_digits(s))
            throw DomainError("not a rational number: '" + std::string(original) + "'");
        return Rational(BigInt(std::string(s)));
    }
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
        throw DomainError("not a rational number: '" + std::string(original) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        throw DomainError("not a rational number: '" + std::string(original) + "'");
    BigInt num = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    BigInt den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

} // namespace detail

// Accepts "num/den" (integer parts), plain integers, and decimal literals.
// A leading '-' or '+' applies to the whole value.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw DomainError("empty rational literal");

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den))
            throw DomainError("not a rational number: '" + std::string(text) + "'");
        std::string num_str(num), den_str(den);
        BigInt d{den_str};
        if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        value = Rational(BigInt{num_str}, d);
    } else {
        value = detail::parse_unsigned_decimal(s, text);
    }
    return negative ? -value : value;
}

inline bool in_unit_interval(const Rational& r) {
    return r >= 0 && r <= 1;
}

} // namespace credence
