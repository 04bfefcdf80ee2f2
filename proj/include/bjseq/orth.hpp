#pragma once

// Birkhoff-James orthogonality x _|_ y, one characterization per space.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hull.hpp"
#include "norm.hpp"
#include "seqrep.hpp"

namespace bjseq {

/// Enumeration cap for attaining tail indices when y carries geometric atoms.
inline constexpr std::size_t kMaxSupEnumeration = 1u << 16;

namespace detail {

inline Interval geometric_mass(const std::vector<const TailAtom*>& geos, std::size_t from_offset) {
    Interval mass(0.0);
    for (auto* g : geos)
        mass += abs(g->a.enclosure()) * pow(abs(g->r.enclosure()), static_cast<double>(from_offset));
    return mass;
}

inline void require_exact(const SequenceRep& x, const SequenceRep& y, const char* who) {
    if (!x.is_exact() || !y.is_exact()) throw DomainError(std::string(who) + ": sup-norm predicates need exact data");
}

// Decides 0 in conv({conj(x_n) y_n : |x_n| = ||x||} U limits). When x attains its
// norm along a periodic residue class, the attaining indices are infinite; if y has
// geometric atoms the products there only approach the limits, so they are enumerated
// until the hull contains 0 or provably stays away from everything not yet seen.
inline Verdict sup_hull_decide(const SequenceRep& x, const SequenceRep& y, const AttainingSet& att,
                               std::vector<Scalar> limit_products, double tol) {
    std::vector<Scalar> pts;
    for (std::size_t n : att.indices) pts.push_back(conj(x.at(n)) * y.at(n));
    if (!att.attained_asymptotically) {
        if (pts.empty()) throw InternalError("empty attaining product set");
        return contains_zero_conv(pts, tol);
    }
    for (auto& l : limit_products) pts.push_back(std::move(l));

    std::size_t nx = x.prefix_len(), ny = y.prefix_len();
    std::size_t px = x.periodic_part().size(), py = y.periodic_part().size();
    auto attaining = [&](std::size_t n) {
        std::size_t j = (n - nx - 1) % px;
        return std::find(att.residues.begin(), att.residues.end(), j) != att.residues.end();
    };
    auto add_range = [&](std::size_t from, std::size_t to) {
        for (std::size_t n = from + 1; n <= to; ++n)
            if (attaining(n)) pts.push_back(conj(x.at(n)) * y.at(n));
    };
    std::size_t k = std::max(nx, ny) + checked_lcm(px, py);
    add_range(nx + px, k);
    auto geos = y.geometrics();
    if (geos.empty()) return contains_zero_conv(pts, tol);

    Interval xn = att.norm.enclosure;
    for (;;) {
        Verdict v = contains_zero_conv(pts, tol);
        if (v.holds()) return v;
        // Past k, each attaining product lies within ||x|| |g_y(n)| of a limit product.
        double eps = (xn * geometric_mass(geos, k + 1 - ny)).hi;
        if (v.margin > eps * (1 + 1e-9)) return Verdict::exact(false, v.margin - eps);
        if (k > kMaxSupEnumeration) return {Outcome::Indeterminate, std::max(0.0, v.margin - eps), Mode::Approx};
        add_range(k, 2 * k);
        k *= 2;
    }
}

}  // namespace detail

/// l_inf: 0 in conv of attaining products and limits of products along attaining subsequences.
inline Verdict orth_linf(const SequenceRep& x, const SequenceRep& y, double tol = kDefaultTolerance) {
    require_member(x, SpaceId::linf(), "x");
    require_member(y, SpaceId::linf(), "y");
    if (x.field != y.field) throw ValidationError("orth_linf: field mismatch");
    if (x.is_zero() || y.is_zero()) return Verdict::exact(true);
    detail::require_exact(x, y, "orth_linf");
    AttainingSet att = sup_attaining_indices(x);
    std::vector<Scalar> lim;
    if (att.attained_asymptotically) {
        Rational m2 = att.norm.kind == NormValue::Kind::Exact ? att.norm.value * att.norm.value : att.norm.value;
        for (const auto& [u, v] : joint_limit_pairs(x, y))
            if (mod_sq(u).re() == m2) lim.push_back(conj(u) * v);
    }
    return detail::sup_hull_decide(x, y, att, std::move(lim), tol);
}

/// l_inf over the reals through the four enumerated sign conditions.
inline Verdict orth_linf_real_enum(const SequenceRep& x, const SequenceRep& y) {
    if (x.field != Field::Real || y.field != Field::Real) throw DomainError("orth_linf_real_enum: real field only");
    require_member(x, SpaceId::linf(), "x");
    require_member(y, SpaceId::linf(), "y");
    if (x.is_zero() || y.is_zero()) return Verdict::exact(true);
    detail::require_exact(x, y, "orth_linf_real_enum");
    AttainingSet att = sup_attaining_indices(x);
    Rational m2 = att.norm.kind == NormValue::Kind::Exact ? att.norm.value * att.norm.value : att.norm.value;

    std::vector<Rational> point;  // x_N y_N at attaining indices
    std::vector<Rational> limit;  // limits of x_n y_n along attaining subsequences
    for (std::size_t n : att.indices) point.push_back((x.at(n) * y.at(n)).re());
    if (att.attained_asymptotically) {
        for (const auto& [u, v] : joint_limit_pairs(x, y))
            if (u.re() * u.re() == m2) limit.push_back(u.re() * v.re());
        // Attaining tail indices beyond k carry the sign of their limit product once
        // ||x|| |g_y| drops below the smallest nonzero limit product.
        std::size_t nx = x.prefix_len(), ny = y.prefix_len(), px = x.periodic_part().size();
        std::size_t k = std::max(nx, ny) + detail::checked_lcm(px, y.periodic_part().size());
        auto geos = y.geometrics();
        Rational least(-1);
        for (const auto& l : limit)
            if (l != 0 && (least < 0 || abs(l) < least)) least = abs(l);
        if (!geos.empty() && least > 0) {
            Interval xn = att.norm.enclosure, lb = to_interval(least);
            while ((xn * detail::geometric_mass(geos, k + 1 - ny)).hi >= lb.lo) {
                if (k > kMaxSupEnumeration) throw DomainError("orth_linf_real_enum: enumeration cap reached");
                k *= 2;
            }
        }
        for (std::size_t n = nx + px + 1; n <= k; ++n) {
            std::size_t j = (n - nx - 1) % px;
            if (std::find(att.residues.begin(), att.residues.end(), j) != att.residues.end())
                point.push_back((x.at(n) * y.at(n)).re());
        }
    }
    auto any = [](const std::vector<Rational>& v, auto pred) { return std::any_of(v.begin(), v.end(), pred); };
    auto pos = [](const Rational& q) { return q > 0; };
    auto neg = [](const Rational& q) { return q < 0; };
    auto nonneg = [](const Rational& q) { return q >= 0; };
    auto nonpos = [](const Rational& q) { return q <= 0; };
    auto zero = [](const Rational& q) { return q == 0; };

    bool c1 = any(limit, zero);
    bool c2 = any(limit, pos) && any(limit, neg);
    bool c3 = (any(point, pos) && any(limit, neg)) || (any(point, neg) && any(limit, pos));
    bool c4 = any(point, nonneg) && any(point, nonpos);
    return Verdict::exact(c1 || c2 || c3 || c4);
}

/// c: limit products collapse to conj(lim x) lim y, present when lim|x| = ||x||.
inline Verdict orth_c(const SequenceRep& x, const SequenceRep& y, double tol = kDefaultTolerance) {
    require_member(x, SpaceId::c(), "x");
    require_member(y, SpaceId::c(), "y");
    if (x.field != y.field) throw ValidationError("orth_c: field mismatch");
    if (x.is_zero() || y.is_zero()) return Verdict::exact(true);
    detail::require_exact(x, y, "orth_c");
    AttainingSet att = sup_attaining_indices(x);
    std::vector<Scalar> lim;
    if (att.attained_asymptotically) lim.push_back(conj(x.periodic_part()[0]) * y.periodic_part()[0]);
    return detail::sup_hull_decide(x, y, att, std::move(lim), tol);
}

/// c0 and c00: finite attaining indices only.
inline Verdict orth_c0(const SequenceRep& x, const SequenceRep& y, double tol = kDefaultTolerance) {
    require_member(x, SpaceId::c0(), "x");
    require_member(y, SpaceId::c0(), "y");
    if (x.field != y.field) throw ValidationError("orth_c0: field mismatch");
    if (x.is_zero() || y.is_zero()) return Verdict::exact(true);
    detail::require_exact(x, y, "orth_c0");
    AttainingSet att = sup_attaining_indices(x);
    if (att.attained_asymptotically) throw InternalError("c0 point attaining its norm asymptotically");
    return detail::sup_hull_decide(x, y, att, {}, tol);
}

// ---------------------------------------------------------------------------
// l1 and lp.

namespace detail {

// Running sum that stays exact until an inexact term arrives.
struct Accumulator {
    bool exact = true;
    Scalar value;
    CInterval enc;

    void add(const Scalar& s) {
        if (exact && s.is_exact()) {
            value = value + s;
            return;
        }
        to_interval();
        enc += s.enclosure();
    }
    void add(const CInterval& c) {
        to_interval();
        enc += c;
    }
    void to_interval() {
        if (exact) {
            exact = false;
            enc = value.enclosure();
        }
    }
    CInterval enclosure() const { return exact ? value.enclosure() : enc; }
};

// conj(z)|z|^{p-2} (conj(sgn z) for p = 1), 0 at 0. Exact when the power of |z| is rational.
inline Scalar phi(const Scalar& z, const Rational& p) {
    if (z.is_zero()) return Scalar(0).with_field(z.field());
    if (z.is_exact()) {
        if (auto e = exact_pow(mod_sq(z).re(), (p - 2) / 2)) return conj(z) * Scalar(*e);
    }
    CInterval e = z.enclosure();
    Interval m = abs(e);
    if (m.lo <= 0.0) {
        if (p <= 1) throw DomainError("sign of a scalar not bounded away from zero");
        double r = pow(Interval(m.hi), p.get_d() - 1).hi;
        return Scalar::from_enclosure({Interval(-r, r), z.field() == Field::Real ? Interval(0.0) : Interval(-r, r)},
                                      z.field());
    }
    CInterval u = conj(unit(e));
    Interval w = p == 1 ? Interval(1.0) : pow(m, p.get_d() - 1);
    return Scalar::from_enclosure({u.re * w, u.im * w}, z.field());
}

inline CInterval phi(const CInterval& z, double p, Field f) {
    Interval m = abs(z);
    if (m.lo <= 0.0) {
        if (p <= 1.0) throw DomainError("sign of a term not bounded away from zero");
        double r = pow(Interval(m.hi), p - 1).hi;
        return {Interval(-r, r), f == Field::Real ? Interval(0.0) : Interval(-r, r)};
    }
    CInterval u = conj(unit(z));
    Interval w = p == 1.0 ? Interval(1.0) : pow(m, p - 1);
    return {u.re * w, u.im * w};
}

inline CInterval disk(double r, Field f) { return {Interval(-r, r), f == Field::Real ? Interval(0.0) : Interval(-r, r)}; }

struct Aligned {
    std::size_t m;  // common prefix length
    std::vector<TailAtom> xt, yt;
};

inline Aligned align(const SequenceRep& x, const SequenceRep& y) {
    std::size_t m = std::max(x.prefix_len(), y.prefix_len());
    return {m, shift_tail(x.tail, m - x.prefix_len()), shift_tail(y.tail, m - y.prefix_len())};
}

inline std::vector<const TailAtom*> geos_of(const std::vector<TailAtom>& t) {
    std::vector<const TailAtom*> out;
    for (const auto& a : t)
        if (a.kind == TailAtom::Kind::Geometric) out.push_back(&a);
    return out;
}

// sum_k w^k y(k) for y a sum of geometric atoms: sum_i beta_i w sigma_i / (1 - w sigma_i).
inline Scalar weighted_geometric_sum(const Scalar& w, const std::vector<const TailAtom*>& ys) {
    Scalar s = Scalar(0).with_field(w.field());
    for (auto* g : ys) {
        Scalar q = w * g->r;
        s = s + g->a * q / (Scalar(1) - q);
    }
    return s;
}

// Interval series for tails where x has several geometric atoms:
// returns (sum_k phi(x(k)) y(k), sum_k |x(k)|^{p-1} |y(k)|) with remainder bounds.
inline std::pair<CInterval, Interval> multi_atom_series(const std::vector<const TailAtom*>& xs,
                                                        const std::vector<const TailAtom*>& ys, double p, Field f,
                                                        double rel) {
    std::vector<CInterval> xa, xr, xp, ya, yr, yp;
    Interval A(0.0), B(0.0), mx(0.0), my(0.0);
    for (auto* g : xs) {
        xa.push_back(g->a.enclosure());
        xr.push_back(g->r.enclosure());
        A += abs(xa.back());
        mx = max(mx, abs(xr.back()));
    }
    for (auto* g : ys) {
        ya.push_back(g->a.enclosure());
        yr.push_back(g->r.enclosure());
        B += abs(ya.back());
        my = max(my, abs(yr.back()));
    }
    xp = xr;
    yp = yr;
    Interval q = (p == 1.0 ? mx : pow(mx, p - 1)) * my;  // per-step decay of the summand bound
    Interval coef = (p == 1.0 ? A : pow(A, p - 1)) * B / (Interval(1.0) - q);
    Interval qk = q;
    CInterval sum(Interval(0.0));
    Interval scale(0.0);
    for (std::size_t k = 1;; ++k) {
        CInterval xv(Interval(0.0)), yv(Interval(0.0));
        for (std::size_t i = 0; i < xa.size(); ++i) xv += xa[i] * xp[i];
        for (std::size_t i = 0; i < ya.size(); ++i) yv += ya[i] * yp[i];
        sum += phi(xv, p, f) * yv;
        scale += (p == 1.0 ? abs(xv) : pow(abs(xv), p - 1)) * abs(yv);
        qk *= q;
        double rem = (coef * qk).hi;  // bound on sum over j > k
        if (rem <= rel * std::max(scale.lo, 1e-300) || rem < 1e-300) {
            return {sum + disk(rem, f), scale + Interval(0.0, rem)};
        }
        if (k > kMaxScan) throw DomainError("tail series converges too slowly");
        for (std::size_t i = 0; i < xa.size(); ++i) xp[i] = xp[i] * xr[i];
        for (std::size_t i = 0; i < ya.size(); ++i) yp[i] = yp[i] * yr[i];
    }
}

}  // namespace detail

/// The two sides of the l1 criterion: (sum_{a_n != 0} conj(sgn a_n) b_n, sum_{a_n = 0} |b_n|).
/// The first is the action on b of the sign functional of a.
struct L1Forms {
    detail::Accumulator lhs, rhs;
};

inline L1Forms l1_forms(const SequenceRep& a, const SequenceRep& b, double rel = 1e-15) {
    if (a.field != b.field) throw ValidationError("l1_forms: field mismatch");
    Field f = a.field;
    const Rational one(1);
    L1Forms out;
    auto& lhs = out.lhs;
    auto& rhs = out.rhs;
    lhs.value = rhs.value = Scalar(0).with_field(f);
    auto al = detail::align(a, b);
    for (std::size_t n = 1; n <= al.m; ++n) {
        Scalar an = a.at(n), bn = b.at(n);
        if (an.is_zero())
            rhs.add(modulus(bn));
        else
            lhs.add(detail::phi(an, one) * bn);
    }
    auto xs = detail::geos_of(al.xt), ys = detail::geos_of(al.yt);
    if (xs.empty()) {
        // a vanishes on the whole tail: every tail term of b counts on the right.
        if (ys.size() == 1) {
            auto ma = exact_abs(ys[0]->a), mr = exact_abs(ys[0]->r);
            if (ma && mr) {
                rhs.add(Scalar(*ma * *mr / (1 - *mr)));
                return out;
            }
        }
        if (!ys.empty()) {
            IntervalSeq t;
            for (auto* g : ys) t.geos.push_back({g->a.enclosure(), g->r.enclosure()});
            rhs.add(CInterval(norm_interval(t, SpaceId::l1(), 1e-15)));
        }
    } else if (xs.size() == 1) {
        // conj(sgn(alpha rho^k)) = conj(sgn alpha) conj(sgn rho)^k
        if (!ys.empty())
            lhs.add(detail::phi(xs[0]->a, one) * detail::weighted_geometric_sum(detail::phi(xs[0]->r, one), ys));
    } else if (!ys.empty()) {
        lhs.add(detail::multi_atom_series(xs, ys, 1.0, f, rel).first);
    }
    return out;
}

/// l1: |sum_{a_n != 0} conj(sgn a_n) b_n| <= sum_{a_n = 0} |b_n|.
inline Verdict orth_l1(const SequenceRep& a, const SequenceRep& b, double tol = kDefaultTolerance) {
    require_member(a, SpaceId::l1(), "a");
    require_member(b, SpaceId::l1(), "b");
    if (a.field != b.field) throw ValidationError("orth_l1: field mismatch");
    if (a.is_zero() || b.is_zero()) return Verdict::exact(true);
    auto [lhs, rhs] = l1_forms(a, b, 1e-3 * tol);
    if (lhs.exact && rhs.exact) {
        const Rational& r = rhs.value.re();
        Rational l2 = mod_sq(lhs.value).re();
        bool holds = l2 <= r * r;
        double margin = std::fabs(r.get_d() - std::sqrt(l2.get_d()));
        return Verdict::exact(holds, margin);
    }
    double scale = norm(b, SpaceId::l1()).hi();
    Interval q = rhs.enclosure().re - abs(lhs.enclosure());
    Interval rel = q / Interval(scale);
    if (rel.lo >= tol) return {Outcome::Holds, rel.lo, Mode::Approx};
    if (rel.hi <= -tol) return {Outcome::Fails, -rel.hi, Mode::Approx};
    return {Outcome::Indeterminate, std::min(tol * 0.999, rel.mag()), Mode::Approx};
}

/// Real l1 through the sign partition: | sum_{N1}|b| - sum_{N2}|b| | <= sum_{N0}|b|.
inline Verdict orth_l1_real_partition(const SequenceRep& a, const SequenceRep& b) {
    if (a.field != Field::Real || b.field != Field::Real) throw DomainError("orth_l1_real_partition: real field only");
    require_member(a, SpaceId::l1(), "a");
    require_member(b, SpaceId::l1(), "b");
    if (!a.is_exact() || !b.is_exact()) throw DomainError("orth_l1_real_partition: needs exact data");
    if (!a.single_atom() || !b.single_atom()) throw DomainError("orth_l1_real_partition: single-atom tails only");
    if (a.is_zero() || b.is_zero()) return Verdict::exact(true);
    Rational s1(0), s2(0), s0(0);
    auto al = detail::align(a, b);
    for (std::size_t n = 1; n <= al.m; ++n) {
        Rational an = a.at(n).re(), bn = b.at(n).re();
        Rational prod = an * bn;
        if (an == 0)
            s0 += abs(bn);
        else if (prod > 0)
            s1 += abs(bn);
        else if (prod < 0)
            s2 += abs(bn);
    }
    const TailAtom &ta = al.xt[0], &tb = al.yt[0];
    if (tb.kind == TailAtom::Kind::Geometric) {
        Rational beta = abs(tb.a.re()), sigma = tb.r.re(), ms = abs(sigma);
        if (ta.kind == TailAtom::Kind::Zero) {
            s0 += beta * ms / (1 - ms);
        } else {
            // sign(a_k b_k) = sign(alpha beta) sign(rho sigma)^k
            int base = sign(ta.a.re()) * sign(tb.a.re());
            Rational& same = base > 0 ? s1 : s2;
            Rational& other = base > 0 ? s2 : s1;
            if (ta.r.re() * sigma > 0) {
                same += beta * ms / (1 - ms);
            } else {
                Rational d = 1 - sigma * sigma;
                other += beta * ms / d;          // odd k
                same += beta * sigma * sigma / d;  // even k
            }
        }
    }
    Rational lhs = abs(s1 - s2);
    return Verdict::exact(lhs <= s0, std::fabs(Rational(s0 - lhs).get_d()));
}

/// F = sum conj(sgn x_n) |x_n|^{p-1} y_n together with the scale sum |x_n|^{p-1} |y_n|.
/// F is linear in y; up to the factor ||x||^{p-1} it is the support functional of x.
struct LpForm {
    detail::Accumulator value;
    Interval scale;
};

inline LpForm lp_form(const SequenceRep& x, const SequenceRep& y, const Rational& p, double rel = 1e-15) {
    if (x.field != y.field) throw ValidationError("lp_form: field mismatch");
    Field f = x.field;
    double pd = p.get_d();
    LpForm out;
    auto& F = out.value;
    F.value = Scalar(0).with_field(f);
    Interval scale(0.0);
    auto al = detail::align(x, y);
    for (std::size_t n = 1; n <= al.m; ++n) {
        Scalar xn = x.at(n), yn = y.at(n);
        if (xn.is_zero() || yn.is_zero()) continue;
        F.add(detail::phi(xn, p) * yn);
        scale += pow(abs(xn.enclosure()), pd - 1) * abs(yn.enclosure());
    }
    auto xs = detail::geos_of(al.xt), ys = detail::geos_of(al.yt);
    if (xs.size() == 1 && !ys.empty()) {
        // phi(alpha rho^k) = phi(alpha) phi(rho)^k
        Scalar w = detail::phi(xs[0]->r, p);
        F.add(detail::phi(xs[0]->a, p) * detail::weighted_geometric_sum(w, ys));
        Interval u0 = pow(abs(xs[0]->r.enclosure()), pd - 1);
        Interval t(0.0);
        for (auto* g : ys) {
            Interval u = u0 * abs(g->r.enclosure());
            t += abs(g->a.enclosure()) * u / (Interval(1.0) - u);
        }
        scale += pow(abs(xs[0]->a.enclosure()), pd - 1) * t;
    } else if (xs.size() > 1 && !ys.empty()) {
        auto [sum, sc] = detail::multi_atom_series(xs, ys, pd, f, rel);
        F.add(sum);
        scale += sc;
    }
    out.scale = scale;
    return out;
}

/// lp: sum conj(sgn x_n) |x_n|^{p-1} y_n = 0, judged against tol times
/// sum |x_n|^{p-1} |y_n| unless the sum is available exactly.
inline Verdict orth_lp(const SequenceRep& x, const SequenceRep& y, const Rational& p, double tol = kDefaultTolerance) {
    if (p <= 1) throw DomainError("orth_lp: p must exceed 1");
    SpaceId s = SpaceId::lp(p);
    require_member(x, s, "x");
    require_member(y, s, "y");
    if (x.field != y.field) throw ValidationError("orth_lp: field mismatch");
    if (x.is_zero() || y.is_zero()) return Verdict::exact(true);
    auto [F, scale] = lp_form(x, y, p, 1e-3 * tol);
    if (F.exact) {
        bool holds = F.value.is_zero();
        double m = holds ? std::numeric_limits<double>::infinity() : abs(F.value.enclosure()).lo / scale.hi;
        return Verdict::exact(holds, m);
    }
    if (scale.hi <= 0.0) return {Outcome::Holds, tol, Mode::Approx};
    Interval q = abs(F.enclosure()) / Interval(scale.lo > 0 ? scale.lo : scale.hi);
    if (q.hi <= tol) return {Outcome::Holds, tol - q.hi, Mode::Approx};
    if (q.lo > tol) return {Outcome::Fails, q.lo - tol, Mode::Approx};
    return {Outcome::Indeterminate, std::min(tol - q.lo, q.hi - tol), Mode::Approx};
}

/// Dispatches to the characterization for space s. x = 0 or y = 0 always Holds.
inline Verdict birkhoff_james(const SpaceId& s, const SequenceRep& x, const SequenceRep& y,
                              double tol = kDefaultTolerance) {
    require_member(x, s, "x");
    require_member(y, s, "y");
    switch (s.kind) {
        case Space::LInf: return orth_linf(x, y, tol);
        case Space::C: return orth_c(x, y, tol);
        case Space::C0:
        case Space::C00: return orth_c0(x, y, tol);
        case Space::L1: return orth_l1(x, y, tol);
        case Space::Lp: return orth_lp(x, y, s.p, tol);
    }
    throw InternalError("unknown space");
}

}  // namespace bjseq
