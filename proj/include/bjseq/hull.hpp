#pragma once

// Does 0 lie in the convex hull of finitely many scalars?
//
// Exact complex data uses an angular-gap test: 0 is outside the hull of the
// nonzero points iff their directions all fit in an open half-plane, i.e. iff
// some gap between angularly consecutive directions exceeds pi. That needs
// only exact cross/dot products and covers collinear sets without a separate
// one-dimensional branch.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace bjseq {

namespace detail {

struct RPoint {
    Rational x, y;
};

inline int half(const RPoint& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; }
inline Rational cross(const RPoint& a, const RPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const RPoint& a, const RPoint& b) { return a.x * b.x + a.y * b.y; }

inline bool angle_less(const RPoint& a, const RPoint& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

struct DPoint {
    double x, y;
};

inline double dcross(DPoint o, DPoint a, DPoint b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

inline double dist_to_segment(DPoint a, DPoint b) {
    double dx = b.x - a.x, dy = b.y - a.y, len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? std::clamp(-(a.x * dx + a.y * dy) / len2, 0.0, 1.0) : 0.0;
    return std::hypot(a.x + t * dx, a.y + t * dy);
}

// Signed distance of the origin to the hull: positive inside (distance to the
// boundary), negative outside, zero on the boundary or for flat hulls containing 0.
inline double signed_origin_distance(std::vector<DPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](DPoint a, DPoint b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end(), [](DPoint a, DPoint b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() == 1) return -std::hypot(pts[0].x, pts[0].y);
    // Andrew's monotone chain.
    std::vector<DPoint> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && dcross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && dcross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) d = std::min(d, dist_to_segment(h[i], h[(i + 1) % h.size()]));
    if (h.size() < 3) return -d;  // flat hull: no interior
    bool inside = true;
    for (std::size_t i = 0; i < h.size() && inside; ++i) inside = dcross(h[i], h[(i + 1) % h.size()], {0, 0}) >= 0;
    return inside ? d : -d;
}

}  // namespace detail

/// 0 in conv(points). Exact data gives an exact verdict whose margin is the
/// distance from 0 to the hull boundary (Holds) or to the hull (Fails).
/// Approximate data is judged against tol relative to the largest modulus.
inline Verdict contains_zero_conv(const std::vector<Scalar>& points, double tol = kDefaultTolerance) {
    if (points.empty()) throw ValidationError("contains_zero_conv: empty point set");
    bool exact = std::all_of(points.begin(), points.end(), [](const Scalar& s) { return s.is_exact(); });
    bool real = std::all_of(points.begin(), points.end(), [](const Scalar& s) { return s.is_real_valued(); });

    if (real) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, rad = 0, scale = 0;
        Rational qlo, qhi;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Scalar& s = points[i];
            double c = s.center().real();
            lo = std::min(lo, c);
            hi = std::max(hi, c);
            rad = std::max(rad, s.radius());
            scale = std::max(scale, std::fabs(c));
            if (exact) {
                if (i == 0 || s.re() < qlo) qlo = s.re();
                if (i == 0 || s.re() > qhi) qhi = s.re();
            }
        }
        if (exact) {
            bool holds = qlo <= 0 && qhi >= 0;
            double m = holds ? std::min(-lo, hi) : std::min(std::fabs(lo), std::fabs(hi));
            return Verdict::exact(holds, m + 0.0);
        }
        double d = (lo <= 0 && hi >= 0) ? std::min(-lo, hi) : -std::min(std::fabs(lo), std::fabs(hi));
        if (scale == 0) return {Outcome::Holds, 0.0, Mode::Approx};
        double m = (std::fabs(d) - rad) / scale;
        if (m < tol) return {Outcome::Indeterminate, std::max(0.0, m), Mode::Approx};
        return {d > 0 ? Outcome::Holds : Outcome::Fails, m, Mode::Approx};
    }

    std::vector<detail::DPoint> dp;
    double rad = 0, scale = 0;
    for (const auto& s : points) {
        auto c = s.center();
        dp.push_back({c.real(), c.imag()});
        rad = std::max(rad, s.radius());
        scale = std::max(scale, std::abs(c));
    }
    double d = detail::signed_origin_distance(dp);

    if (exact) {
        std::vector<detail::RPoint> dirs;
        for (const auto& s : points) {
            if (s.is_zero()) return Verdict::exact(true, 0.0);
            detail::RPoint p{s.re(), s.im()};
            bool dup = std::any_of(dirs.begin(), dirs.end(), [&](const detail::RPoint& q) {
                return detail::cross(p, q) == 0 && detail::dot(p, q) > 0;
            });
            if (!dup) dirs.push_back(std::move(p));
        }
        bool holds = dirs.size() > 1;
        if (holds) {
            std::sort(dirs.begin(), dirs.end(), detail::angle_less);
            for (std::size_t i = 0; i < dirs.size() && holds; ++i)
                holds = detail::cross(dirs[i], dirs[(i + 1) % dirs.size()]) >= 0;
        }
        return Verdict::exact(holds, std::fabs(d));
    }

    if (scale == 0) return {Outcome::Holds, 0.0, Mode::Approx};
    double m = (std::fabs(d) - rad) / scale;
    if (m < tol) return {Outcome::Indeterminate, std::max(0.0, m), Mode::Approx};
    return {d > 0 ? Outcome::Holds : Outcome::Fails, m, Mode::Approx};
}

}  // namespace bjseq
