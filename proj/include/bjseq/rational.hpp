#pragma once

// Exact rationals are GMP's mpq_class. This header adds what the library
// needs on top: canonical "p/q" text form, exact roots and powers when the
// result is rational, and outward-rounded conversion to intervals.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"
#include "interval.hpp"

namespace bjseq {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", or a finite decimal like "-0.125". Result is in lowest terms.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    if (s.empty()) throw ValidationError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw ValidationError("bad rational literal: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t scale = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw ValidationError("bad rational literal: " + s);
        Integer num;
        if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
            throw ValidationError("bad rational literal: " + s);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (s[0] == '+') s.erase(s.begin());
    Rational q;
    if (q.set_str(s, 10) != 0) throw ValidationError("bad rational literal: " + std::string(text));
    if (q.get_den() == 0) throw ValidationError("zero denominator: " + std::string(text));
    q.canonicalize();
    return q;
}

/// Canonical text form "p/q", lowest terms, q > 0 (integers carry "/1").
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational ipow(Rational base, long e) {
    if (e < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        base = 1 / base;
        e = -e;
    }
    Rational out(1);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    out.canonicalize();
    return out;
}

/// n-th root of a nonnegative rational, if it is rational.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long n) {
    if (q < 0 || n == 0) return std::nullopt;
    if (n == 1 || q == 0) return q;
    Integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), n) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), n) == 0) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

inline std::optional<Rational> exact_sqrt(const Rational& q) { return exact_root(q, 2); }

/// base^exponent for base >= 0 and rational exponent, if the result is rational.
inline std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
    if (base < 0) return std::nullopt;
    if (exponent == 0) return Rational(1);
    if (base == 0) {
        if (exponent < 0) return std::nullopt;
        return Rational(0);
    }
    if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p()) return std::nullopt;
    auto root = exact_root(base, exponent.get_den().get_ui());
    if (!root) return std::nullopt;
    return ipow(*root, exponent.get_num().get_si());
}

/// Tight outward-rounded enclosure of q.
inline Interval to_interval(const Rational& q) {
    double d = q.get_d();  // truncates toward zero
    if (Rational(d) == q) return Interval(d);
    if (q > 0) return {d, detail::up(d)};
    return {detail::down(d), d};
}

}  // namespace bjseq
