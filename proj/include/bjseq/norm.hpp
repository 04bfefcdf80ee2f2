#pragma once

// Norms, norm-attaining data, and rigorous interval evaluation of norms.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "seqrep.hpp"

namespace bjseq {

struct NormValue {
    enum class Kind { Exact, ExactPower, Interval };

    Kind kind = Kind::Interval;
    Rational value{0};  // Exact: the norm; ExactPower: norm^power
    Rational power{1};
    bjseq::Interval enclosure;

    static NormValue exact(const Rational& v) { return {Kind::Exact, v, 1, to_interval(v)}; }
    static NormValue exact_power(const Rational& v, const Rational& power) {
        if (auto r = exact_pow(v, 1 / power)) return exact(*r);
        Interval e = power == 2 ? sqrt(to_interval(v)) : bjseq::pow(to_interval(v), 1.0 / power.get_d());
        return {Kind::ExactPower, v, power, e};
    }
    static NormValue interval(bjseq::Interval e) { return {Kind::Interval, 0, 1, e}; }

    bool is_exact() const { return kind != Kind::Interval; }
    double lo() const { return enclosure.lo; }
    double hi() const { return enclosure.hi; }
};

/// Exact comparison of two norm values when both are exact; nullopt otherwise.
inline std::optional<int> compare_exact(const NormValue& a, const NormValue& b) {
    if (!a.is_exact() || !b.is_exact()) return std::nullopt;
    // Compare a^P and b^P with P the common exponent when the exponents agree or one is 1.
    Rational pa = a.kind == NormValue::Kind::Exact ? Rational(1) : a.power;
    Rational pb = b.kind == NormValue::Kind::Exact ? Rational(1) : b.power;
    Rational P = pa == 1 ? pb : pa;
    if (pa != 1 && pb != 1 && pa != pb) return std::nullopt;
    auto raise = [&](const NormValue& v, const Rational& pv) -> std::optional<Rational> {
        if (pv == P) return v.value;
        return exact_pow(v.value, P);  // pv == 1 here
    };
    auto va = raise(a, pa), vb = raise(b, pb);
    if (!va || !vb) return std::nullopt;
    return *va < *vb ? -1 : (*va > *vb ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Interval layout of a sequence.

struct GeoInterval {
    CInterval a, r;
};

struct IntervalSeq {
    std::vector<CInterval> prefix;
    std::vector<CInterval> periodic;  // one period; empty means no periodic part
    std::vector<GeoInterval> geos;
};

inline IntervalSeq enclose(const SequenceRep& x) {
    IntervalSeq out;
    for (const auto& s : x.prefix) out.prefix.push_back(s.enclosure());
    for (const auto& t : x.tail) {
        if (t.is_periodic_like())
            for (const auto& v : t.values) out.periodic.push_back(v.enclosure());
        if (t.kind == TailAtom::Kind::Geometric) out.geos.push_back({t.a.enclosure(), t.r.enclosure()});
    }
    return out;
}

/// Hard cap on tail terms scanned by interval evaluation.
inline constexpr std::size_t kMaxScan = 20000000;

namespace detail {

inline Interval sup_of_abs(const std::vector<CInterval>& v) {
    Interval m(0.0);
    for (const auto& z : v) m = max(m, abs(z));
    return m;
}

inline Interval lp_term(const CInterval& z, double p) {
    if (p == 1.0) return abs(z);
    if (p == 2.0) return mod_sq(z);
    return pow(abs(z), p);
}

inline Interval lp_root(Interval s, double p) {
    if (p == 1.0) return s;
    if (p == 2.0) return sqrt(s);
    return pow(s, 1.0 / p);
}

}  // namespace detail

/// Interval of width <= eps (up to rounding) containing the norm of x in s.
/// The sequence must belong to s; for lp, p is taken as a double.
inline Interval norm_interval(const IntervalSeq& x, const SpaceId& s, double eps) {
    if (!(eps > 0.0)) throw ValidationError("norm_interval needs eps > 0");
    if (s.is_sup()) {
        Interval pre = detail::sup_of_abs(x.prefix);
        Interval per = detail::sup_of_abs(x.periodic);
        if (x.geos.empty()) return max(pre, per);
        if (x.geos.size() == 1 && x.periodic.empty()) {
            // |a||r|^k is strictly decreasing, so the tail peaks at k = 1.
            return max(pre, abs(x.geos[0].a * x.geos[0].r));
        }
        std::vector<CInterval> powk;
        std::vector<Interval> mag_a, mag_r;
        for (const auto& g : x.geos) {
            powk.push_back(g.r);
            mag_a.push_back(abs(g.a));
            mag_r.push_back(abs(g.r));
        }
        std::vector<Interval> mag_pow = mag_r;
        Interval scan(0.0);
        std::size_t np = x.periodic.size();
        for (std::size_t k = 1;; ++k) {
            CInterval v = np ? x.periodic[(k - 1) % np] : CInterval(Interval(0.0));
            for (std::size_t i = 0; i < x.geos.size(); ++i) v += x.geos[i].a * powk[i];
            scan = max(scan, abs(v));
            // Everything beyond k is bounded by per + mass.
            Interval mass(0.0);
            for (std::size_t i = 0; i < x.geos.size(); ++i) {
                mag_pow[i] *= mag_r[i];
                mass += mag_a[i] * mag_pow[i];
            }
            Interval found = max(pre, max(scan, per));
            double beyond = (per + mass).hi;
            if (beyond <= found.lo || mass.hi <= eps / 4) return {found.lo, std::max(found.hi, beyond)};
            if (k > kMaxScan) throw DomainError("norm_interval: tail decays too slowly");
            for (std::size_t i = 0; i < x.geos.size(); ++i) powk[i] = powk[i] * x.geos[i].r;
        }
    }

    if (!x.periodic.empty()) throw DomainError("norm_interval: periodic tail is not summable");
    double p = s.kind == Space::L1 ? 1.0 : s.p_double();
    Interval sum(0.0);
    for (const auto& z : x.prefix) sum += detail::lp_term(z, p);
    if (x.geos.empty()) return detail::lp_root(sum, p);
    if (x.geos.size() == 1) {
        // sum_k |a|^p |r|^{pk} = |a|^p |r|^p / (1 - |r|^p)
        Interval ap = detail::lp_term(x.geos[0].a, p), rp = detail::lp_term(x.geos[0].r, p);
        Interval tail = ap * rp / (Interval(1.0) - rp);
        return detail::lp_root(sum + tail, p);
    }
    std::vector<CInterval> powk;
    Interval mass_a(0.0), m(0.0);
    for (const auto& g : x.geos) {
        powk.push_back(g.r);
        mass_a += abs(g.a);
        m = max(m, abs(g.r));
    }
    Interval mp = detail::lp_term(CInterval(m), p);
    Interval denom = Interval(1.0) - mp;
    Interval mpk = mp;  // m^{p k}
    Interval coef = detail::lp_term(CInterval(mass_a), p) / denom;
    for (std::size_t k = 1;; ++k) {
        CInterval v(Interval(0.0));
        for (std::size_t i = 0; i < x.geos.size(); ++i) v += x.geos[i].a * powk[i];
        sum += detail::lp_term(v, p);
        mpk *= mp;
        // sum_{j>k} (sum_i |a_i||r_i|^j)^p <= (sum_i |a_i|)^p m^{p(k+1)} / (1 - m^p)
        Interval rem = coef * mpk;
        if (k % 8 == 0 || rem.hi < 1e-300) {
            Interval enc = detail::lp_root(Interval(sum.lo, (sum + rem).hi), p);
            // Once the remainder is below the rounding already accumulated, more terms cannot help.
            if (enc.width() <= eps / 2 || rem.hi <= sum.width()) return enc;
        }
        if (k > kMaxScan) throw DomainError("norm_interval: tail decays too slowly");
        for (std::size_t i = 0; i < x.geos.size(); ++i) powk[i] = powk[i] * x.geos[i].r;
    }
}

inline NormValue norm(const SequenceRep& x, const SpaceId& s, double width);

/// Single-atom exact inputs get the enclosure of the exact norm (a point when representable).
inline Interval norm_interval(const SequenceRep& x, const SpaceId& s, double eps) {
    require_member(x, s);
    if (!(eps > 0.0)) throw ValidationError("norm_interval needs eps > 0");
    if (x.is_exact() && x.single_atom()) return norm(x, s, eps).enclosure;
    return norm_interval(enclose(x), s, eps);
}

// ---------------------------------------------------------------------------
// Exact norms.

namespace detail {

// |z|^p as an exact rational when possible.
inline std::optional<Rational> exact_abs_pow(const Scalar& z, const Rational& p) {
    if (!z.is_exact()) return std::nullopt;
    if (z.is_zero()) return Rational(0);
    return exact_pow(mod_sq(z).re(), p / 2);
}

inline Rational max_mod_sq(const std::vector<Scalar>& v) {
    Rational m(0);
    for (const auto& s : v) m = std::max(m, mod_sq(s).re());
    return m;
}

}  // namespace detail

/// Maximum number of tail offsets scanned exactly when the tail has several atoms.
inline constexpr std::size_t kMaxExactScan = 4096;

namespace detail {

// l1 norm of a real exact sequence whose tail is a sum of geometric atoms. On each parity
// class of offsets the tail is a sum of positive-ratio geometrics; once the dominant one
// outweighs the rest its sign is fixed and the remaining mass is a closed form.
inline std::optional<Rational> exact_l1_geometric_tail(const SequenceRep& x) {
    if (x.field != Field::Real || !x.is_exact()) return std::nullopt;
    Rational sum(0);
    for (const auto& z : x.prefix) sum += abs(z.re());
    for (int c : {1, 2}) {
        std::map<Rational, Rational> by_ratio;  // r^2 -> sum of a r^c
        for (const auto& t : x.tail) {
            if (t.kind == TailAtom::Kind::Zero) continue;
            if (t.kind != TailAtom::Kind::Geometric) return std::nullopt;
            Rational r = t.r.re();
            by_ratio[r * r] += t.a.re() * ipow(r, c);
        }
        std::vector<std::pair<Rational, Rational>> terms;  // (rho, C), rho descending
        for (auto it = by_ratio.rbegin(); it != by_ratio.rend(); ++it)
            if (it->second != 0) terms.emplace_back(it->first, it->second);
        if (terms.empty()) continue;
        const Rational rho0 = terms[0].first, c0 = terms[0].second;
        std::vector<Rational> rest;  // |C_i| (rho_i / rho0)^m
        for (std::size_t i = 1; i < terms.size(); ++i) rest.push_back(abs(terms[i].second));
        double m_est = 0.0;  // skip scans that would run past the cap
        for (std::size_t i = 1; i < terms.size(); ++i) {
            double lr = std::log(rho0.get_d()) - std::log(terms[i].first.get_d());
            double lc = std::log(terms.size() * std::abs(terms[i].second.get_d())) - std::log(std::abs(c0.get_d()));
            if (lr > 0) m_est = std::max(m_est, lc / lr);
        }
        if (m_est > kMaxExactScan) return std::nullopt;
        std::vector<Rational> pw(terms.size(), Rational(1));  // rho_i^m
        std::size_t m = 0;
        for (;; ++m) {
            Rational r(0);
            for (const auto& v : rest) r += v;
            if (r < abs(c0)) break;
            if (m >= kMaxExactScan) return std::nullopt;
            Rational term(0);
            for (std::size_t i = 0; i < terms.size(); ++i) {
                term += terms[i].second * pw[i];
                pw[i] *= terms[i].first;
            }
            sum += abs(term);
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] *= terms[i + 1].first / rho0;
        }
        Rational tail(0);
        for (std::size_t i = 0; i < terms.size(); ++i) tail += terms[i].second * pw[i] / (1 - terms[i].first);
        sum += sgn(c0) * tail;
    }
    return sum;
}

}  // namespace detail

/// Norm of x in s. Exact when the data allows, else an interval of width <= width.
inline NormValue norm(const SequenceRep& x, const SpaceId& s, double width = 1e-12) {
    if (!(width > 0.0)) throw ValidationError("norm needs width > 0");
    require_member(x, s);
    if (x.is_exact() && x.single_atom()) {
        if (s.is_sup()) {
            Rational m = detail::max_mod_sq(x.prefix);
            const TailAtom& t = x.tail[0];
            if (t.is_periodic_like()) m = std::max(m, detail::max_mod_sq(t.values));
            if (t.kind == TailAtom::Kind::Geometric) m = std::max(m, mod_sq(t.a * t.r).re());
            return NormValue::exact_power(m, 2);
        }
        Rational p = s.kind == Space::L1 ? Rational(1) : s.p;
        bool ok = true;
        Rational sum(0);
        for (const auto& z : x.prefix) {
            if (auto v = detail::exact_abs_pow(z, p))
                sum += *v;
            else
                ok = false;
        }
        const TailAtom& t = x.tail[0];
        if (ok && t.kind == TailAtom::Kind::Geometric) {
            auto ap = detail::exact_abs_pow(t.a, p), rp = detail::exact_abs_pow(t.r, p);
            if (ap && rp)
                sum += *ap * *rp / (1 - *rp);
            else
                ok = false;
        }
        if (ok) return p == 1 ? NormValue::exact(sum) : NormValue::exact_power(sum, p);
    }
    if (s.kind == Space::L1 && !x.single_atom())
        if (auto v = detail::exact_l1_geometric_tail(x)) return NormValue::exact(*v);
    return NormValue::interval(norm_interval(enclose(x), s, width));
}

// ---------------------------------------------------------------------------
// Sup-norm attaining data.

namespace detail {

// Bound on |sum_i a_i r_i^k| for every k >= from.
inline Interval geometric_tail_mass(const std::vector<const TailAtom*>& geos, std::size_t from) {
    Interval mass(0.0);
    for (auto* g : geos) mass += abs(g->a.enclosure()) * pow(abs(g->r.enclosure()), static_cast<double>(from));
    return mass;
}

// Real tails p_k + g_k with p periodic and g = sum a_i r_i^k. On the class k = k0 + P t,
// P = lcm(period, 2), D(t) = |p + g|^2 - |p|^2 = sum_b c_b b^t with all bases b in (0, 1),
// so the largest base with a nonzero coefficient fixes the sign of D for large t.
// Returns K such that |x_k|^2 < limsup for every tail offset k > K when that holds
// eventually on every maximal class, nullopt when some class rises above the limsup
// infinitely often (the supremum is then attained at a finite index).
inline std::optional<std::size_t> tail_stays_below(const SequenceRep& x, const std::vector<Scalar>& per,
                                                   const Rational& tsup, const std::vector<const TailAtom*>& geos) {
    if (x.field != Field::Real || tsup == 0) return std::nullopt;
    std::size_t L = per.size(), P = std::lcm(L, std::size_t(2));
    std::vector<Rational> a, r, beta;
    for (auto* g : geos) {
        a.push_back(g->a.re());
        r.push_back(g->r.re());
        beta.push_back(ipow(g->r.re(), static_cast<long>(P)));
    }
    std::size_t K = 0;
    Interval gap(std::numeric_limits<double>::infinity());  // sqrt(tsup) - |p_j| over non-maximal residues
    Interval root = sqrt(to_interval(tsup));
    for (std::size_t j = 0; j < L; ++j) {
        Rational pj = per[j].re();
        if (pj * pj == tsup) continue;
        Interval d = root - abs(to_interval(pj));
        if (d.lo < gap.lo) gap = d;
    }
    for (std::size_t k0 = 1; k0 <= P; ++k0) {
        Rational p = per[(k0 - 1) % L].re();
        if (p * p != tsup) continue;
        std::map<Rational, Rational> coef;
        for (std::size_t i = 0; i < a.size(); ++i) {
            Rational ai = a[i] * ipow(r[i], static_cast<long>(k0));
            coef[beta[i]] += 2 * p * ai;
            for (std::size_t l = 0; l < a.size(); ++l)
                coef[beta[i] * beta[l]] += ai * a[l] * ipow(r[l], static_cast<long>(k0));
        }
        std::erase_if(coef, [](const auto& e) { return e.second == 0; });
        if (coef.empty()) throw DomainError("sup_attaining_indices: geometric atoms cancel on a residue class");
        auto top = std::prev(coef.end());
        if (top->second > 0) return std::nullopt;
        Rational rest(0), b2(0);
        for (auto it = coef.begin(); it != top; ++it) {
            rest += abs(it->second);
            b2 = std::max(b2, it->first);
        }
        std::size_t t = 0;
        if (rest > 0) {
            double guess = std::log(Rational(rest / abs(top->second)).get_d()) / std::log(Rational(top->first / b2).get_d());
            t = static_cast<std::size_t>(std::max(0.0, std::ceil(guess)));
            while (abs(top->second) * ipow(top->first, static_cast<long>(t)) <= rest * ipow(b2, static_cast<long>(t))) ++t;
        }
        K = std::max(K, k0 + P * t);
    }
    // Non-maximal residues stay below once the geometric mass is smaller than their gap.
    if (std::isfinite(gap.lo)) {
        while (geometric_tail_mass(geos, K + 1).hi >= gap.lo) {
            if (K > kMaxExactScan) throw DomainError("sup_attaining_indices: tail decays too slowly");
            K = std::max<std::size_t>(2 * K, 1);
        }
    }
    if (K > kMaxExactScan) throw DomainError("sup_attaining_indices: tail decays too slowly");
    return K;
}

}  // namespace detail

struct AttainingSet {
    NormValue norm;                      // the sup norm
    std::vector<std::size_t> indices;    // attaining indices; for periodic tails, those of the first tail period
    bool attained_asymptotically = false;
    std::vector<std::size_t> residues;   // 0-based offsets into the periodic part whose modulus equals the norm
};

/// Indices n with |x_n| = ||x||_inf, plus asymptotic attainment data. Exact data only.
inline AttainingSet sup_attaining_indices(const SequenceRep& x) {
    if (x.is_zero()) throw DomainError("sup_attaining_indices: zero sequence");
    if (!x.is_exact()) throw DomainError("sup_attaining_indices: needs exact data");
    AttainingSet out;
    std::size_t n0 = x.prefix_len();
    std::vector<Scalar> per = x.periodic_part();
    Rational tsup = detail::max_mod_sq(per);  // limsup |x_n|^2
    auto geos = x.geometrics();

    Rational m = detail::max_mod_sq(x.prefix);
    std::vector<std::pair<std::size_t, Rational>> cand;  // tail offsets with exact |x|^2
    if (geos.empty()) {
        m = std::max(m, tsup);
        if (tsup == m && tsup > 0) {
            out.attained_asymptotically = true;
            for (std::size_t j = 0; j < per.size(); ++j)
                if (mod_sq(per[j]).re() == m) out.residues.push_back(j);
        }
    } else if (geos.size() == 1 && !x.tail[0].is_periodic_like()) {
        Rational first = mod_sq(geos[0]->a * geos[0]->r).re();
        cand.emplace_back(1, first);
        m = std::max(m, first);
    } else if (auto below = detail::tail_stays_below(x, per, tsup, geos)) {
        // The tail never exceeds its limsup beyond *below: scan up to there, the rest only approaches it.
        for (std::size_t k = 1; k <= *below; ++k) cand.emplace_back(k, mod_sq(x.tail_at(k)).re());
        m = std::max(m, tsup);
        for (const auto& c : cand) m = std::max(m, c.second);
        out.attained_asymptotically = m == tsup;
    } else {
        // Several atoms: scan until the geometric mass cannot lift |x_n| to the best value seen.
        Interval tsup_abs = sqrt(to_interval(tsup));
        std::vector<Scalar> powk;
        for (auto* g : geos) powk.push_back(g->r);
        bool certified = false;
        for (std::size_t k = 1; k <= kMaxExactScan; ++k) {
            Scalar v = per[(k - 1) % per.size()];
            for (std::size_t i = 0; i < geos.size(); ++i) v = v + geos[i]->a * powk[i];
            Rational ms = mod_sq(v).re();
            cand.emplace_back(k, ms);
            Rational best = std::max(m, ms);
            for (const auto& c : cand) best = std::max(best, c.second);
            Interval mass(0.0);
            for (std::size_t i = 0; i < geos.size(); ++i) {
                powk[i] = powk[i] * geos[i]->r;
                mass += abs(geos[i]->a.enclosure()) * abs(powk[i].enclosure());
            }
            if (best > tsup && (tsup_abs + mass).hi < sqrt(to_interval(best)).lo) {
                m = best;
                certified = true;
                break;
            }
        }
        if (!certified)
            throw DomainError("sup_attaining_indices: cannot separate the supremum from the limsup of a multi-atom tail");
    }
    for (std::size_t i = 0; i < x.prefix.size(); ++i)
        if (mod_sq(x.prefix[i]).re() == m) out.indices.push_back(i + 1);
    for (const auto& c : cand)
        if (c.second == m) out.indices.push_back(n0 + c.first);
    for (std::size_t j : out.residues) out.indices.push_back(n0 + 1 + j);
    std::sort(out.indices.begin(), out.indices.end());
    out.indices.erase(std::unique(out.indices.begin(), out.indices.end()), out.indices.end());
    out.norm = NormValue::exact_power(m, 2);
    return out;
}

}  // namespace bjseq
