#pragma once

// Definition-based check of x _|_ y: certify or refute ||x + lambda y|| >= ||x|| for all
// lambda by minimizing the convex function g(lambda) = ||x + lambda y|| with rigorous
// interval evaluations, independently of the characterization theorems.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "orth.hpp"
#include "sampling.hpp"

namespace bjseq {

inline constexpr double kDefaultDelta = 1e-9;

struct MinimizationResult {
    Scalar lambda_star;
    Interval value;          // contains min_lambda ||x + lambda y||
    std::size_t evaluations = 0;
    double bracket = 0.0;    // |Re lambda|, |Im lambda| <= bracket
};

namespace detail {

// x and y laid out on a common prefix, so that x + lambda y is formed termwise.
struct PairLayout {
    IntervalSeq x, y;
    std::size_t px = 0, py = 0;  // periods of the periodic parts (0 if none)
};

inline PairLayout layout(const SequenceRep& x, const SequenceRep& y) {
    std::size_t m = std::max(x.prefix_len(), y.prefix_len());
    PairLayout l{enclose(extend_prefix(x, m)), enclose(extend_prefix(y, m))};
    l.px = l.x.periodic.size();
    l.py = l.y.periodic.size();
    return l;
}

inline IntervalSeq combine(const PairLayout& l, const CInterval& lam) {
    IntervalSeq out;
    for (std::size_t i = 0; i < l.x.prefix.size(); ++i) out.prefix.push_back(l.x.prefix[i] + lam * l.y.prefix[i]);
    if (l.px || l.py) {
        std::size_t n = l.px && l.py ? checked_lcm(l.px, l.py) : std::max(l.px, l.py);
        for (std::size_t k = 0; k < n; ++k) {
            CInterval v(Interval(0.0));
            if (l.px) v += l.x.periodic[k % l.px];
            if (l.py) v += lam * l.y.periodic[k % l.py];
            out.periodic.push_back(v);
        }
    }
    out.geos = l.x.geos;
    for (const auto& g : l.y.geos) out.geos.push_back({lam * g.a, g.r});
    return out;
}

struct Sample {
    double t;
    Interval v;
};

// Lower bound for a convex function on [lo, hi] from enclosures at sorted points
// spanning the interval. On each cell the function lies above both neighbouring
// secant lines extended into it, and above the Lipschitz cone from its endpoints.
inline double sandwich_lower(const std::vector<Sample>& s, double lip, double slack) {
    double lower = std::numeric_limits<double>::infinity();
    auto secant = [&](std::size_t i) { return (s[i + 1].v - s[i].v) / Interval(s[i + 1].t - s[i].t); };
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        double w = s[i + 1].t - s[i].t;
        // Lipschitz: min over the cell of max(g_i - L(t - t_i), g_{i+1} - L(t_{i+1} - t)).
        double best = (s[i].v.lo + s[i + 1].v.lo - lip * w) / 2;
        // Secant lines: left one (t_{i-1}, t_i) valid for t >= t_i, right one for t <= t_{i+1}.
        bool has_l = i >= 1, has_r = i + 2 < s.size();
        double a1 = s[i].v.lo, s1 = has_l ? secant(i - 1).lo : -lip;
        double a2 = s[i + 1].v.lo, s2 = has_r ? secant(i + 1).hi : lip;
        auto l1 = [&](double t) { return a1 + s1 * (t - s[i].t); };
        auto l2 = [&](double t) { return a2 + s2 * (t - s[i + 1].t); };
        auto f = [&](double t) { return std::max(l1(t), l2(t)); };
        double m = std::min(f(s[i].t), f(s[i + 1].t));
        if (s1 != s2) {
            double tc = (a2 - a1 + s1 * s[i].t - s2 * s[i + 1].t) / (s1 - s2);
            if (tc > s[i].t && tc < s[i + 1].t) m = std::min(m, f(tc));
        }
        // Rounding in the line evaluations is covered by the caller's slack.
        best = std::max(best, m);
        lower = std::min(lower, best);
    }
    // Convexity guard: an interior enclosure far above the chord of its neighbours
    // means the norm evaluation is broken.
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        double a = (s[i].t - s[i - 1].t) / (s[i + 1].t - s[i - 1].t);
        double chord = (1 - a) * s[i - 1].v.hi + a * s[i + 1].v.hi;
        if (s[i].v.lo > chord + slack) throw InternalError("oracle: convexity violated by norm evaluation");
    }
    return lower - slack;
}

struct Min1D {
    double t = 0;
    Interval value;      // [certified lower bound on [lo, hi], enclosure at t]
    std::size_t evals = 0;
};

// Golden section on the midpoints, then a geometric grid around the best point for
// the certified lower bound. h is the finest grid spacing.
inline Min1D minimize_convex_1d(const std::function<Interval(double)>& g, double lo, double hi, double lip,
                                double h, double slack) {
    Min1D out;
    std::vector<Sample> seen;
    auto eval = [&](double t) {
        Interval v = g(t);
        ++out.evals;
        seen.push_back({t, v});
        return v;
    };
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    Interval gc = eval(c), gd = eval(d);
    eval(0.0 < lo || 0.0 > hi ? lo : 0.0);
    while (b - a > h && out.evals < 400) {
        if (gc.mid() <= gd.mid()) {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = eval(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = eval(d);
        }
    }
    auto best = std::min_element(seen.begin(), seen.end(), [](const Sample& p, const Sample& q) { return p.v.hi < q.v.hi; });
    double t0 = best->t;
    Interval v0 = best->v;

    std::vector<Sample> grid{{t0, v0}};
    for (int dir : {-1, 1}) {
        double step = h;
        for (;;) {
            double t = t0 + dir * step;
            bool last = dir > 0 ? t >= hi : t <= lo;
            if (last) t = dir > 0 ? hi : lo;
            if (t != t0) grid.push_back({t, g(t)});
            ++out.evals;
            if (last) break;
            step *= 2;
        }
    }
    std::sort(grid.begin(), grid.end(), [](const Sample& p, const Sample& q) { return p.t < q.t; });
    grid.erase(std::unique(grid.begin(), grid.end(), [](const Sample& p, const Sample& q) { return p.t == q.t; }),
               grid.end());
    out.t = t0;
    out.value = {std::min(sandwich_lower(grid, lip, slack), v0.lo), v0.hi};
    return out;
}

inline void require_pair(const SpaceId& s, const SequenceRep& x, const SequenceRep& y) {
    require_member(x, s, "x");
    require_member(y, s, "y");
    if (x.field != y.field) throw ValidationError("oracle: field mismatch");
}

}  // namespace detail

/// Minimizes g(lambda) = ||x + lambda y|| over the bracket |lambda| <= 2 hi(||x||) / lo(||y||).
/// Outside it g(lambda) >= |lambda| ||y|| - ||x|| >= ||x|| = g(0), so the minimum lies within.
inline MinimizationResult min_norm_over_lambda(const SequenceRep& x, const SequenceRep& y, const SpaceId& s,
                                               double delta = kDefaultDelta) {
    detail::require_pair(s, x, y);
    if (y.is_zero()) throw DomainError("min_norm_over_lambda: y = 0");
    Interval nx = norm_interval(x, s, 1e-15 * std::max(1.0, norm_interval(x, s, 1e-3).hi));
    Interval ny = norm_interval(y, s, 1e-15 * std::max(1.0, norm_interval(y, s, 1e-3).hi));
    if (!(nx.hi > 0.0) || !(ny.lo > 0.0)) throw DomainError("min_norm_over_lambda: degenerate bracket");
    double scale = nx.hi;
    double bracket = 2 * nx.hi / ny.lo;
    double lip = ny.hi;
    double eps = 1e-4 * delta * scale;        // width requested from each norm evaluation
    double h = delta * scale / (8 * lip);      // finest grid step: Lipschitz loss <= delta scale / 16
    h = std::max(h, 1e-15 * bracket);
    double slack = 1e-14 * scale;

    detail::PairLayout lay = detail::layout(x, y);
    std::size_t evals = 0;
    auto g = [&](double re, double im) {
        ++evals;
        return norm_interval(detail::combine(lay, CInterval(Interval(re), Interval(im))), s, eps);
    };

    MinimizationResult res;
    res.bracket = bracket;
    if (x.field == Field::Real) {
        auto m = detail::minimize_convex_1d([&](double t) { return g(t, 0.0); }, -bracket, bracket, lip, h, slack);
        res.lambda_star = Scalar::approx({m.t, 0.0}, 0.0, Field::Real);
        res.value = {std::min(m.value.lo, nx.hi), m.value.hi};
    } else {
        // h(a) = min_b g(a + ib) is convex and lip-Lipschitz; the inner minimization
        // supplies an enclosure [certified lower, attained upper] of h(a). The inner grid is
        // finer so that the width of these enclosures does not swamp the outer secant slopes.
        double inner_b = 0.0;
        double h_in = std::max(h / 16, 1e-15 * bracket);
        auto outer = [&](double a) {
            auto m = detail::minimize_convex_1d([&](double b) { return g(a, b); }, -bracket, bracket, lip, h_in, slack);
            inner_b = m.t;
            return m.value;
        };
        auto m = detail::minimize_convex_1d(outer, -bracket, bracket, lip, h, slack);
        outer(m.t);
        res.lambda_star = Scalar::approx({m.t, inner_b}, 0.0, Field::Complex);
        res.value = {std::min(m.value.lo, nx.hi), m.value.hi};
    }
    res.evaluations = evals;
    return res;
}

namespace detail {

/// Looks for a small lambda with ||x + lambda y|| certainly below ||x||. Descent confined
/// to tiny lambda (a fast-decaying x against a slowly decaying y) is invisible at
/// resolution delta but still refutes orthogonality by definition. Since g is convex,
/// the set of descent steps along a ray is an interval starting at 0, so with exact
/// norms one step of 2^-128 relative per direction decides that ray down to that scale.
/// Returns the relative drop.
inline std::optional<double> fine_descent(const SpaceId& s, const SequenceRep& x, const SequenceRep& y,
                                          const Interval& nx, double ratio) {
    std::vector<Scalar> dirs{Scalar(1), Scalar(-1)};
    if (x.field == Field::Complex) {
        for (auto [a, b] : {std::pair{0, 5}, {3, 4}, {4, 3}})
            for (int sa : {1, -1})
                for (int sb : {1, -1}) dirs.push_back(Scalar::complex(Rational(sa * a, 5), Rational(sb * b, 5)));
        dirs.push_back(Scalar::complex(0, 1));
        dirs.push_back(Scalar::complex(0, -1));
    }
    Rational base = ratio > 0 && std::isfinite(ratio) ? Rational(ratio) : Rational(1);
    double eps = 1e-16 * std::max(1.0, nx.hi);
    if (x.is_exact() && y.is_exact()) {
        NormValue nxe = norm(x, s);
        Rational tiny = base / ipow(Rational(2), 128);
        bool all_decided = true;
        for (const auto& d : dirs) {
            NormValue nz = norm(add_scaled(x, d * Scalar(tiny), y), s, eps);
            auto c = compare_exact(nz, nxe);
            if (!c) {
                all_decided = false;
                continue;
            }
            if (*c < 0) {
                if (nz.kind == NormValue::Kind::Exact && nxe.kind == NormValue::Kind::Exact)
                    return Rational((nxe.value - nz.value) / nxe.value).get_d();
                return std::max((nx.lo - nz.hi()) / nx.hi, std::numeric_limits<double>::denorm_min());
            }
        }
        if (all_decided) return std::nullopt;
    }
    PairLayout lay = layout(x, y);
    for (int k = 0; k <= 60; ++k) {
        Rational step = base / ipow(Rational(2), k);
        for (const auto& d : dirs) {
            Interval iz = norm_interval(combine(lay, (d * Scalar(step)).enclosure()), s, eps);
            if (iz.hi < nx.lo) return (nx.lo - iz.hi) / nx.hi;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Holds if the certified minimum reaches hi(||x||) - delta scale, Fails if it is
/// certainly below lo(||x||) - delta scale, Indeterminate in between. A Holds at
/// resolution delta is then checked for descent at finer steps of lambda.
inline Verdict oracle_orth(const SpaceId& s, const SequenceRep& x, const SequenceRep& y, double delta = kDefaultDelta) {
    detail::require_pair(s, x, y);
    if (y.is_zero()) throw DomainError("oracle_orth: y = 0");
    if (x.is_zero()) return Verdict::exact(true);
    Interval nx = norm_interval(x, s, 1e-15 * std::max(1.0, norm_interval(x, s, 1e-3).hi));
    double scale = nx.hi;
    MinimizationResult m = min_norm_over_lambda(x, y, s, delta);
    double up = (m.value.lo - (nx.hi - delta * scale)) / scale;
    double down = ((nx.lo - delta * scale) - m.value.hi) / scale;
    if (up >= 0) {
        if (auto drop = detail::fine_descent(s, x, y, nx, nx.hi / norm_interval(y, s, 1e-3).lo))
            return {Outcome::Fails, *drop, Mode::Approx};
        return {Outcome::Holds, up, Mode::Approx};
    }
    if (down > 0) return {Outcome::Fails, down, Mode::Approx};
    return {Outcome::Indeterminate, std::min(-up, -down), Mode::Approx};
}

// ---------------------------------------------------------------------------
// Agreement between the characterization and the oracle.

struct Disagreement {
    SequenceRep x, y;
    Verdict predicate, oracle;
};

struct AgreementStats {
    SpaceId space;
    std::size_t pairs = 0;
    std::size_t agree = 0;
    std::size_t hard_disagree = 0;
    std::size_t indeterminate = 0;  // either side undecided; excluded from agreement
    std::size_t predicate_holds = 0;
    std::vector<Disagreement> disagreements;
    std::vector<Disagreement> undecided;  // logged, capped

    double indeterminate_rate() const { return pairs ? static_cast<double>(indeterminate) / pairs : 0.0; }
};

/// Predicate used by agreement runs; swappable so the harness can be tested against a broken one.
using OrthPredicate = std::function<Verdict(const SpaceId&, const SequenceRep&, const SequenceRep&, double)>;

inline OrthPredicate characterization_predicate() {
    return [](const SpaceId& s, const SequenceRep& x, const SequenceRep& y, double tol) {
        return birkhoff_james(s, x, y, tol);
    };
}

/// Samples n pairs and compares the characterization with the oracle. A hard
/// disagreement is one decided Holds against one decided Fails.
inline AgreementStats agreement_report(const SpaceId& s, const SamplerConfig& cfg, std::size_t n, std::uint64_t seed,
                                       double tol = kDefaultTolerance, double delta = kDefaultDelta,
                                       const OrthPredicate& pred = characterization_predicate()) {
    Sampler smp(seed, cfg);
    AgreementStats st;
    st.space = s;
    for (std::size_t i = 0; i < n; ++i) {
        SequenceRep x = smp.sequence(s), y = smp.sequence(s);
        Verdict p = pred(s, x, y, tol), o = oracle_orth(s, x, y, delta);
        ++st.pairs;
        if (p.holds()) ++st.predicate_holds;
        if (p.indeterminate() || o.indeterminate()) {
            ++st.indeterminate;
            if (st.undecided.size() < 20) st.undecided.push_back({x, y, p, o});
        } else if (p.outcome == o.outcome) {
            ++st.agree;
        } else {
            ++st.hard_disagree;
            st.disagreements.push_back({x, y, p, o});
        }
    }
    return st;
}

}  // namespace bjseq
