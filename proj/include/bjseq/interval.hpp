#pragma once

// Outward-rounded interval arithmetic on doubles. Sums and products use
// error-free transforms (TwoSum, FMA) to round each bound in the right
// direction; transcendental functions are widened by two ulps per side.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace bjseq {

namespace detail {
inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// a + b rounded toward -inf / +inf.
inline double add_down(double a, double b) {
    double s = a + b, bb = s - a, e = (a - (s - bb)) + (b - bb);
    return e < 0.0 ? down(s) : s;
}
inline double add_up(double a, double b) {
    double s = a + b, bb = s - a, e = (a - (s - bb)) + (b - bb);
    return e > 0.0 ? up(s) : s;
}
inline double mul_down(double a, double b) {
    double p = a * b, e = std::fma(a, b, -p);
    return e < 0.0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
    double p = a * b, e = std::fma(a, b, -p);
    return e > 0.0 ? up(p) : p;
}
}  // namespace detail

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit point interval
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    double mig() const { return (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi)); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    bool is_point() const { return lo == hi; }
};

inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator+(Interval a, Interval b) {
    return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

inline Interval operator-(Interval a, Interval b) { return a + (-b); }

inline Interval operator*(Interval a, Interval b) {
    using detail::mul_down, detail::mul_up;
    double l = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
    double h = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
    return {l, h};
}

inline Interval operator/(Interval a, Interval b) {
    if (b.contains_zero()) {
        double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }
    double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return {detail::down(*std::min_element(p, p + 4)), detail::up(*std::max_element(p, p + 4))};
}

inline Interval& operator+=(Interval& a, Interval b) { return a = a + b; }
inline Interval& operator*=(Interval& a, Interval b) { return a = a * b; }

inline Interval abs(Interval a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

inline Interval sqr(Interval a) {
    Interval m = abs(a);
    return {detail::mul_down(m.lo, m.lo), detail::mul_up(m.hi, m.hi)};
}

// IEEE sqrt is correctly rounded, so one ulp each way suffices; exact squares stay exact.
inline Interval sqrt(Interval a) {
    auto lower = [](double v) {
        if (v <= 0.0) return 0.0;
        double r = std::sqrt(v);
        return std::fma(r, r, -v) > 0.0 ? detail::down(r) : r;
    };
    auto upper = [](double v) {
        if (v <= 0.0) return 0.0;
        double r = std::sqrt(v);
        return std::fma(r, r, -v) < 0.0 ? detail::up(r) : r;
    };
    return {std::max(0.0, lower(a.lo)), upper(a.hi)};
}

/// Power of a nonnegative interval, real exponent > 0.
inline Interval pow(Interval a, double e) {
    auto lo = std::max(0.0, a.lo), hi = std::max(0.0, a.hi);
    double l = lo == 0.0 ? 0.0 : detail::down(detail::down(std::pow(lo, e)));
    double h = hi == 0.0 ? 0.0 : detail::up(detail::up(std::pow(hi, e)));
    return {std::max(0.0, l), h};
}

inline Interval max(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// Convex hull of two intervals.
inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

inline std::ostream& operator<<(std::ostream& os, Interval a) { return os << '[' << a.lo << ", " << a.hi << ']'; }

/// Rectangular complex interval. Real-field values keep im == [0,0].
struct CInterval {
    Interval re;
    Interval im;

    constexpr CInterval() = default;
    constexpr CInterval(Interval r) : re(r), im(0.0) {}  // NOLINT
    constexpr CInterval(Interval r, Interval i) : re(r), im(i) {}

    bool is_real() const { return im.lo == 0.0 && im.hi == 0.0; }
};

inline CInterval operator+(CInterval a, CInterval b) { return {a.re + b.re, a.im + b.im}; }
inline CInterval operator-(CInterval a) { return {-a.re, -a.im}; }
inline CInterval operator-(CInterval a, CInterval b) { return a + (-b); }
inline CInterval operator*(CInterval a, CInterval b) {
    if (a.is_real() && b.is_real()) return {a.re * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval& operator+=(CInterval& a, CInterval b) { return a = a + b; }
inline CInterval conj(CInterval a) { return {a.re, -a.im}; }

inline Interval mod_sq(CInterval a) { return a.is_real() ? sqr(a.re) : sqr(a.re) + sqr(a.im); }
inline Interval abs(CInterval a) { return a.is_real() ? abs(a.re) : sqrt(mod_sq(a)); }

/// Interval enclosing z / |z|, for z bounded away from zero. Returns [-1,1]^2 otherwise.
inline CInterval unit(CInterval a) {
    Interval m = abs(a);
    if (m.lo <= 0.0) return {Interval(-1.0, 1.0), a.is_real() ? Interval(0.0) : Interval(-1.0, 1.0)};
    return {a.re / m, a.is_real() ? Interval(0.0) : a.im / m};
}

}  // namespace bjseq
