#pragma once

// Interval estimation and testing procedures: Student-t intervals for a
// normal mean, exact (tail-inversion) binomial confidence intervals, the
// 3/sqrt(4n) proportion bound with an exact-enumeration coverage check,
// level-alpha binomial tests, and default-rule reliability intervals.
//
// This module works in floating point; the probability core stays exact.
// Only declared interval endpoints cross between the two.

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "credence/errors.hpp"

namespace credence {

struct RealInterval {
    double lower = 0;
    double upper = 0;
    double width() const { return upper - lower; }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

struct RealSample {
    std::vector<double> values;

    explicit RealSample(std::vector<double> v) : values(std::move(v)) {
        if (values.size() < 2)
            throw DomainError("sample needs at least two values");
        for (double x : values)
            if (!std::isfinite(x)) throw DomainError("sample values must be finite");
    }

    std::size_t count() const { return values.size(); }

    double mean() const {
        double s = 0;
        for (double x : values) s += x;
        return s / static_cast<double>(values.size());
    }

    // Sample standard deviation with N - 1 degrees of freedom.
    double sd() const {
        double m = mean();
        double s = 0;
        for (double x : values) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(values.size() - 1));
    }
};

struct BinomialData {
    std::int64_t n; // trials
    std::int64_t k; // successes

    BinomialData(std::int64_t trials, std::int64_t successes) : n(trials), k(successes) {
        if (n < 1) throw DomainError("trial count must be positive");
        if (k < 0 || k > n) throw DomainError("successes must lie in [0, n]");
    }
};

struct ConfidenceSpec {
    double level;

    explicit ConfidenceSpec(double lvl) : level(lvl) {
        if (!(lvl > 0.0 && lvl < 1.0))
            throw DomainError("confidence level must lie strictly between 0 and 1");
    }
};

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the incomplete beta function, evaluated with
// modified Lentz iteration.
inline double betacf(double a, double b, double x) {
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

inline double student_t_cdf(double t, double df) {
    double ib = reg_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0.0 ? 1.0 - ib / 2.0 : ib / 2.0;
}

// Two-sided critical value: the t with F(t) - F(-t) = level, found by
// bisection on the CDF to about 1e-12.
inline double student_t_critical(double level, double df) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie strictly in (0, 1)");
    if (!(df >= 1.0)) throw DomainError("degrees of freedom must be at least 1");
    double target = 1.0 - (1.0 - level) / 2.0;
    double hi = 1.0;
    while (student_t_cdf(hi, df) < target) {
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Binomial tail machinery
// ---------------------------------------------------------------------------

inline double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    double lchoose = std::lgamma(static_cast<double>(n + 1)) -
                     std::lgamma(static_cast<double>(k + 1)) -
                     std::lgamma(static_cast<double>(n - k + 1));
    return std::exp(lchoose + static_cast<double>(k) * std::log(p) +
                    static_cast<double>(n - k) * std::log1p(-p));
}

// P(K >= k) by direct summation.
inline double binomial_upper_tail(std::int64_t n, std::int64_t k, double p) {
    if (k <= 0) return 1.0;
    double s = 0.0;
    for (std::int64_t j = k; j <= n; ++j) s += binomial_pmf(n, j, p);
    return s < 1.0 ? s : 1.0;
}

// P(K <= k) by direct summation.
inline double binomial_lower_tail(std::int64_t n, std::int64_t k, double p) {
    if (k >= n) return 1.0;
    double s = 0.0;
    for (std::int64_t j = 0; j <= k; ++j) s += binomial_pmf(n, j, p);
    return s < 1.0 ? s : 1.0;
}

// ---------------------------------------------------------------------------
// Inference procedures
// ---------------------------------------------------------------------------

// Interval for the mean of a normal quantity with unknown variance:
// mean +- t * s / sqrt(N) at the two-sided critical value for N - 1
// degrees of freedom.
inline RealInterval t_interval(const RealSample& sample, const ConfidenceSpec& spec) {
    double s = sample.sd();
    if (s == 0.0) throw DomainError("degenerate sample: standard deviation is zero");
    double n = static_cast<double>(sample.count());
    double t = student_t_critical(spec.level, n - 1.0);
    double half = t * s / std::sqrt(n);
    double m = sample.mean();
    return RealInterval{m - half, m + half};
}

// Exact interval for a binomial proportion. The lower endpoint is the
// smallest p whose upper tail at k reaches (1 - level)/2; the upper
// endpoint mirrors it. Coverage is at least `level` for every true p.
inline RealInterval binomial_ci(const BinomialData& data, const ConfidenceSpec& spec) {
    double alpha2 = (1.0 - spec.level) / 2.0;
    double lower = 0.0;
    if (data.k > 0) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 100; ++i) {
            double mid = 0.5 * (lo + hi);
            if (binomial_upper_tail(data.n, data.k, mid) >= alpha2)
                hi = mid;
            else
                lo = mid;
        }
        lower = hi;
    }
    double upper = 1.0;
    if (data.k < data.n) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 100; ++i) {
            double mid = 0.5 * (lo + hi);
            if (binomial_lower_tail(data.n, data.k, mid) >= alpha2)
                lo = mid;
            else
                hi = mid;
        }
        upper = lo;
    }
    return RealInterval{lower, upper};
}

struct ProportionBound {
    double half_width = 0;
    bool vacuous = false; // half-width of 1 or more covers every frequency
};

// Half-width 3/sqrt(4n) of the frequency bound. The raw value is returned
// even when it exceeds 1; the flag marks that case.
inline ProportionBound proportion_bound(std::int64_t n) {
    if (n < 1) throw DomainError("sample size must be positive");
    double hw = 3.0 / std::sqrt(4.0 * static_cast<double>(n));
    return ProportionBound{hw, hw >= 1.0};
}

// Probability, under Binomial(n, p), that the sample frequency k/n lands
// within half_width of p. Direct enumeration over all n + 1 outcomes.
inline double exact_coverage(std::int64_t n, double p, double half_width) {
    if (n < 1) throw DomainError("sample size must be positive");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("true proportion must lie strictly in (0, 1)");
    if (!(half_width > 0.0)) throw DomainError("half-width must be positive");
    double s = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        double f = static_cast<double>(k) / static_cast<double>(n);
        if (std::fabs(f - p) <= half_width) s += binomial_pmf(n, k, p);
    }
    return s < 1.0 ? s : 1.0;
}

enum class TestTail { Upper, Lower, TwoSided };

struct TestOutcome {
    bool reject = false;
    double p_value = 1.0;
};

// Exact binomial test of H0: p = null_p. Two-sided p-values double the
// smaller tail and clamp at 1. Rejects when the p-value is at most alpha,
// which bounds the false-rejection rate by alpha under the null.
inline TestOutcome hypothesis_test(const BinomialData& data, double null_p,
                                   const ConfidenceSpec& alpha, TestTail tail) {
    if (!(null_p > 0.0 && null_p < 1.0))
        throw DomainError("null proportion must lie strictly in (0, 1)");
    double pv = 1.0;
    switch (tail) {
        case TestTail::Upper: pv = binomial_upper_tail(data.n, data.k, null_p); break;
        case TestTail::Lower: pv = binomial_lower_tail(data.n, data.k, null_p); break;
        case TestTail::TwoSided: {
            double up = binomial_upper_tail(data.n, data.k, null_p);
            double lo = binomial_lower_tail(data.n, data.k, null_p);
            pv = 2.0 * (up < lo ? up : lo);
            if (pv > 1.0) pv = 1.0;
            break;
        }
    }
    return TestOutcome{pv <= alpha.level, pv};
}

// Reliability interval for a default rule observed to succeed in
// `successes` of `applications` uses: the exact binomial interval at
// confidence 1 - gullibility.
inline RealInterval default_rule_reliability(std::int64_t successes, std::int64_t applications,
                                             double gullibility) {
    if (applications < 1) throw DomainError("rule must have at least one application");
    if (successes < 0 || successes > applications)
        throw DomainError("successes must lie in [0, applications]");
    if (!(gullibility > 0.0 && gullibility < 1.0))
        throw DomainError("gullibility must lie strictly between 0 and 1");
    return binomial_ci(BinomialData(applications, successes), ConfidenceSpec(1.0 - gullibility));
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

namespace detail {

inline double parse_double_field(const std::string& field, std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0;
    try {
        value = std::stod(field, &consumed);
    } catch (const std::exception&) {
        throw DomainError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
    }
    while (consumed < field.size() &&
           std::isspace(static_cast<unsigned char>(field[consumed])))
        ++consumed;
    if (consumed != field.size())
        throw DomainError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
    return value;
}

} // namespace detail

// One numeric value per line; blank lines are skipped.
inline RealSample read_real_sample(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        values.push_back(detail::parse_double_field(line, line_no));
    }
    return RealSample(std::move(values));
}

// A single header-less "n,k" line.
inline BinomialData read_binomial_data(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("expected an 'n,k' line");
        try {
            std::int64_t n = std::stoll(line.substr(0, comma));
            std::int64_t k = std::stoll(line.substr(comma + 1));
            return BinomialData(n, k);
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception&) {
            throw DomainError("expected an 'n,k' line, got '" + line + "'");
        }
    }
    throw DomainError("empty binomial data file");
}

} // namespace credence
