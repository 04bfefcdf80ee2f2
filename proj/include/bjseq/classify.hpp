#pragma once

// Smoothness and left/right symmetry. The classifiers read the characterized
// sets off canonical representations; witnesses follow the constructive proofs
// and fall back to a seeded random search, always verified by the predicates.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "dual.hpp"
#include "orth.hpp"
#include "sampling.hpp"

namespace bjseq {

struct WitnessOptions {
    std::uint64_t seed = 1;
    std::size_t budget = 2000;  // random trials before SearchExhausted
    double tol = kDefaultTolerance;
};

namespace detail {

inline void require_nonzero(const SequenceRep& x, const char* who) {
    if (x.is_zero()) throw DomainError(std::string(who) + ": x = 0");
}

inline void require_not_hilbert(const SpaceId& s) {
    if (s.kind == Space::Lp && s.p == 2) throw DomainError("symmetry classification undefined at p=2");
}

// Nonzero prefix entries of a finitely supported x, as 1-based indices.
inline std::vector<std::size_t> finite_support(const SequenceRep& x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.prefix_len(); ++i)
        if (!x.prefix[i].is_zero()) out.push_back(i + 1);
    return out;
}

// Indices worth trying in constructions: the prefix, one tail period and a little more.
inline std::size_t probe_length(const SequenceRep& x) {
    std::size_t per = 1;
    for (const auto& t : x.tail) per = std::max(per, t.period());
    return x.prefix_len() + per + 2;
}

// Does the tail of x (geometric atoms only) have a zero term? Decided exactly when one
// atom strictly dominates the others in modulus; ties between dominant ratios are refused.
inline bool tail_has_zero_term(const SequenceRep& x) {
    if (x.has_zero_tail()) return true;
    auto geos = x.geometrics();
    if (geos.size() == 1) return false;
    if (!x.is_exact()) throw DomainError("zero-term test on a multi-atom tail needs exact data");
    std::size_t top = 0;
    for (std::size_t i = 1; i < geos.size(); ++i)
        if (mod_sq(geos[i]->r).re() > mod_sq(geos[top]->r).re()) top = i;
    for (std::size_t i = 0; i < geos.size(); ++i)
        if (i != top && mod_sq(geos[i]->r).re() == mod_sq(geos[top]->r).re())
            throw DomainError("zero-term test: several dominant geometric ratios");
    Interval a = abs(geos[top]->a.enclosure()), r = abs(geos[top]->r.enclosure());
    for (std::size_t k = 1; k <= kMaxExactScan; ++k) {
        if (x.tail_at(k).is_zero()) return true;
        // Beyond k the dominant atom outweighs the rest.
        Interval rest(0.0);
        for (std::size_t i = 0; i < geos.size(); ++i)
            if (i != top) rest += abs(geos[i]->a.enclosure()) * pow(abs(geos[i]->r.enclosure()), static_cast<double>(k + 1));
        if ((a * pow(r, static_cast<double>(k + 1))).lo > rest.hi) return false;
    }
    throw DomainError("zero-term test: scan limit reached");
}

// a _|_ b and not b _|_ a. Candidates the predicates cannot judge (inexact data in a
// sup-norm space) are simply rejected.
inline bool verified_pair(const SpaceId& s, const SequenceRep& a, const SequenceRep& b, double tol) {
    try {
        return birkhoff_james(s, a, b, tol).holds() && birkhoff_james(s, b, a, tol).fails();
    } catch (const DomainError&) {
        return false;
    }
}

inline bool all_moduli_equal(const SequenceRep& x, const std::vector<std::size_t>& idx) {
    for (std::size_t n : idx)
        if (compare_mod(x.at(n), x.at(idx[0])) != Ordering::Equal) return false;
    return true;
}

inline Sampler search_sampler(const SpaceId& s, const SequenceRep& x, std::uint64_t seed) {
    SamplerConfig cfg = SamplerConfig::preset(s.kind == Space::C00 ? "finite" : "default");
    cfg.field = x.field;
    cfg.max_prefix = std::max<std::size_t>(probe_length(x), 4);
    cfg.max_num = 8;
    cfg.max_den = 4;
    return Sampler(seed, cfg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classifiers.

inline Verdict is_smooth(const SpaceId& s, const SequenceRep& x) {
    require_member(x, s);
    detail::require_nonzero(x, "is_smooth");
    switch (s.kind) {
        case Space::Lp: return Verdict::exact(true);
        case Space::L1: {
            for (const auto& z : x.prefix)
                if (z.is_zero()) return Verdict::exact(false);
            return Verdict::exact(!detail::tail_has_zero_term(x));
        }
        default: break;
    }
    AttainingSet att = sup_attaining_indices(x);
    if (s.kind == Space::C && att.indices.empty()) return Verdict::exact(true);
    return Verdict::exact(att.indices.size() == 1 && !att.attained_asymptotically);
}

/// x = 0 or x = c e_N with the tail zero.
inline bool is_unit_multiple(const SequenceRep& x) {
    return x.is_zero() || (x.has_zero_tail() && detail::finite_support(x).size() == 1);
}

inline Verdict is_left_symmetric(const SpaceId& s, const SequenceRep& x) {
    require_member(x, s);
    detail::require_not_hilbert(s);
    switch (s.kind) {
        case Space::L1: return Verdict::exact(x.is_zero());
        case Space::Lp: {
            if (x.is_zero()) return Verdict::exact(true);
            if (!x.has_zero_tail()) return Verdict::exact(false);
            auto sup = detail::finite_support(x);
            return Verdict::exact(sup.size() == 1 || (sup.size() == 2 && detail::all_moduli_equal(x, sup)));
        }
        default: return Verdict::exact(is_unit_multiple(x));
    }
}

inline Verdict is_right_symmetric(const SpaceId& s, const SequenceRep& x) {
    require_member(x, s);
    detail::require_not_hilbert(s);
    if (x.is_zero()) return Verdict::exact(true);
    switch (s.kind) {
        case Space::C0:
        case Space::C00: return Verdict::exact(false);
        case Space::L1: return Verdict::exact(is_unit_multiple(x));
        case Space::Lp: return is_left_symmetric(s, x);
        default: break;
    }
    // |x_n| = ||x|| for every n: one periodic-like atom, all moduli equal.
    if (!x.single_atom() || !x.tail[0].is_periodic_like()) return Verdict::exact(false);
    std::vector<Scalar> all = x.prefix;
    for (const auto& v : x.tail[0].values) all.push_back(v);
    for (const auto& z : all)
        if (compare_mod(z, all[0]) != Ordering::Equal) return Verdict::exact(false);
    return Verdict::exact(true);
}

// ---------------------------------------------------------------------------
// Witnesses.

namespace detail {

inline std::optional<SequenceRep> search_witness(const SpaceId& s, const SequenceRep& x, bool left,
                                                 const WitnessOptions& opt) {
    Sampler smp = search_sampler(s, x, opt.seed);
    for (std::size_t t = 0; t < opt.budget; ++t) {
        SequenceRep y = smp.sequence(s);
        bool ok = left ? verified_pair(s, x, y, opt.tol) : verified_pair(s, y, x, opt.tol);
        if (ok) return y;
    }
    return std::nullopt;
}

inline std::optional<SequenceRep> sup_left_witness(const SpaceId& s, const SequenceRep& x, double tol) {
    // y = e_M with x_M != 0: x _|_ e_M as soon as some other attaining index (or a
    // limit) gives a zero product, while e_M _|_ x fails since x_M != 0.
    for (std::size_t m = 1; m <= detail::probe_length(x); ++m) {
        if (x.at(m).is_zero()) continue;
        SequenceRep y = SequenceRep::unit(m, Scalar(1), x.field);
        if (verified_pair(s, x, y, tol)) return y;
    }
    return std::nullopt;
}

inline std::optional<SequenceRep> l1_left_witness(const SequenceRep& a, double tol) {
    if (!a.single_atom()) return std::nullopt;
    const SpaceId s = SpaceId::l1();
    const TailAtom& t = a.tail[0];
    std::size_t n0 = a.prefix_len();
    std::optional<std::size_t> zero_at;
    for (std::size_t i = 1; i <= n0 && !zero_at; ++i)
        if (a.at(i).is_zero()) zero_at = i;
    if (!zero_at && t.kind == TailAtom::Kind::Zero) zero_at = n0 + 1;

    if (zero_at) {
        // b_n = sgn(a_n)/2^n, c = b + 2||b||_1 e_N with a_N = 0.
        SequenceRep b(a.field, {}, {});
        Rational h(1);
        for (std::size_t i = 1; i <= n0; ++i) {
            h /= 2;
            b.prefix.push_back(sgn(a.at(i)) * Scalar(h));
        }
        if (t.kind == TailAtom::Kind::Geometric)
            b.tail.push_back(TailAtom::geometric(sgn(t.a) * Scalar(h), sgn(t.r) * Scalar(Rational(1, 2))));
        else
            b.tail.push_back(TailAtom::zero());
        b = canonicalize(std::move(b));
        NormValue nb = norm(b, s);
        Scalar w = nb.kind == NormValue::Kind::Exact ? Scalar(nb.value) : Scalar(Rational(nb.hi()));
        SequenceRep c = add_scaled(b, Scalar(2) * w, SequenceRep::unit(*zero_at, Scalar(1), a.field));
        if (verified_pair(s, a, c, tol)) return c;
        return std::nullopt;
    }
    // No zero term: a has a geometric tail. b_n = sgn(a_n) for n <= M and
    // b_n = -M sgn(a_n) / 2^{n-M} beyond, so sum conj(sgn a_n) b_n = M - M = 0;
    // b _|_ a then fails once sum_{n<=M} |a_n| != sum_{n>M} |a_n|.
    for (std::size_t m = std::max<std::size_t>(n0, 1); m <= n0 + 8; ++m) {
        SequenceRep b(a.field, {}, {});
        for (std::size_t i = 1; i <= m; ++i) b.prefix.push_back(sgn(a.at(i)));
        Scalar sr = sgn(t.r);
        b.tail.push_back(TailAtom::geometric(Scalar(-static_cast<long>(m)) * sgn(t.a) * pow(sr, m - n0),
                                             sr * Scalar(Rational(1, 2))));
        b = canonicalize(std::move(b));
        if (verified_pair(s, a, b, tol)) return b;
    }
    return std::nullopt;
}

inline Scalar abs_pow(const Scalar& z, const Rational& e) {
    if (z.is_exact())
        if (auto v = exact_pow(mod_sq(z).re(), e / 2)) return Scalar(*v);
    return Scalar::from_enclosure(CInterval(pow(abs(z.enclosure()), e.get_d())), Field::Real);
}

// Index pairs (N, M) of nonzero entries among the first `len`, exact-friendly ones first.
inline std::vector<std::pair<std::size_t, std::size_t>> nonzero_pairs(const SequenceRep& x, std::size_t len) {
    std::vector<std::size_t> nz;
    for (std::size_t n = 1; n <= len; ++n)
        if (!x.at(n).is_zero()) nz.push_back(n);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < nz.size(); ++i)
        for (std::size_t j = 0; j < nz.size(); ++j)
            if (i != j) out.emplace_back(nz[i], nz[j]);
    return out;
}

inline std::optional<SequenceRep> pick_verified(const SpaceId& s, const SequenceRep& x,
                                                const std::vector<SequenceRep>& cands, bool left, double tol) {
    std::optional<SequenceRep> approx;
    for (const auto& y : cands) {
        bool ok = left ? verified_pair(s, x, y, tol) : verified_pair(s, y, x, tol);
        if (!ok) continue;
        Verdict v = left ? birkhoff_james(s, x, y, tol) : birkhoff_james(s, y, x, tol);
        if (v.mode == Mode::Exact) return y;
        if (!approx) approx = y;
    }
    return approx;
}

inline std::optional<SequenceRep> lp_left_witness(const SpaceId& s, const SequenceRep& x, double tol) {
    const Rational& p = s.p;
    Field f = x.field;
    std::vector<SequenceRep> cands;
    std::size_t len = probe_length(x);
    for (auto [n, m] : nonzero_pairs(x, len)) {
        Scalar xn = x.at(n), xm = x.at(m);
        if (n > m || compare_mod(xn, xm) == Ordering::Equal) continue;
        // sgn(x_N)|x_M|^{p-1} e_N - sgn(x_M)|x_N|^{p-1} e_M
        SequenceRep y = add_scaled(SequenceRep::unit(n, sgn(xn) * abs_pow(xm, p - 1), f), Scalar(-1),
                                   SequenceRep::unit(m, sgn(xm) * abs_pow(xn, p - 1), f));
        cands.push_back(std::move(y));
    }
    auto nz = nonzero_pairs(x, len);
    std::vector<std::size_t> idx;
    for (auto [n, m] : nz)
        if (std::find(idx.begin(), idx.end(), n) == idx.end()) idx.push_back(n);
    if (idx.size() >= 3) {
        // Three equal moduli: sgn(x_N) e_N - (sgn(x_M) e_M + sgn(x_K) e_K)/2.
        for (std::size_t i = 0; i + 2 < idx.size() && cands.size() < 64; ++i) {
            std::size_t n = idx[i], m = idx[i + 1], k = idx[i + 2];
            SequenceRep y = SequenceRep::unit(n, sgn(x.at(n)), f);
            y = add_scaled(y, Scalar(Rational(-1, 2)), SequenceRep::unit(m, sgn(x.at(m)), f));
            y = add_scaled(y, Scalar(Rational(-1, 2)), SequenceRep::unit(k, sgn(x.at(k)), f));
            cands.push_back(std::move(y));
        }
    }
    return pick_verified(s, x, cands, true, tol);
}

inline std::optional<SequenceRep> sup_right_witness(const SpaceId& s, const SequenceRep& x, double tol) {
    // Sign flip: y_n = sgn(x_n), except y_N = -sgn(x_N) (or 1 if x_N = 0) at an index
    // with |x_N| < ||x||. Then y _|_ x through the products |x_n| and -|x_N|, while
    // every attaining product of x against y is |x_n| = ||x|| > 0.
    AttainingSet att = sup_attaining_indices(x);
    std::size_t len = probe_length(x);
    std::vector<SequenceRep> cands;
    for (std::size_t nn = 1; nn <= len && cands.size() < 8; ++nn) {
        if (std::find(att.indices.begin(), att.indices.end(), nn) != att.indices.end()) continue;
        if (att.attained_asymptotically && nn > x.prefix_len()) {
            std::size_t j = (nn - x.prefix_len() - 1) % x.periodic_part().size();
            if (std::find(att.residues.begin(), att.residues.end(), j) != att.residues.end()) continue;
        }
        std::size_t last = nn;
        for (std::size_t i : att.indices) last = std::max(last, i);
        last = std::max(last, x.prefix_len());
        SequenceRep y(x.field, {}, {});
        for (std::size_t i = 1; i <= last; ++i) y.prefix.push_back(sgn(x.at(i)));
        Scalar xn = x.at(nn);
        y.prefix[nn - 1] = xn.is_zero() ? Scalar(1).with_field(x.field) : -sgn(xn);
        if (att.attained_asymptotically) {
            std::vector<Scalar> per = SequenceRep(x.field, {}, shift_tail(x.tail, last - x.prefix_len())).periodic_part();
            for (auto& v : per) v = sgn(v);
            y.tail.push_back(TailAtom::periodic(std::move(per)));
        } else {
            y.tail.push_back(TailAtom::zero());
        }
        y = canonicalize(std::move(y));
        if (member_of(y, s)) cands.push_back(std::move(y));
    }
    return pick_verified(s, x, cands, false, tol);
}

inline std::optional<SequenceRep> l1_right_witness(const SequenceRep& x, double tol) {
    // e_r with |x_r| <= sum_{n != r} |x_n|: the smallest nonzero modulus first.
    std::vector<std::size_t> nz;
    for (std::size_t n = 1; n <= probe_length(x); ++n)
        if (!x.at(n).is_zero()) nz.push_back(n);
    std::stable_sort(nz.begin(), nz.end(),
                     [&](std::size_t a, std::size_t b) { return compare_mod(x.at(a), x.at(b)) == Ordering::Less; });
    std::vector<SequenceRep> cands;
    for (std::size_t r : nz) cands.push_back(SequenceRep::unit(r, Scalar(1), x.field));
    return pick_verified(SpaceId::l1(), x, cands, false, tol);
}

inline std::optional<SequenceRep> lp_right_witness(const SpaceId& s, const SequenceRep& x, double tol) {
    const Rational& p = s.p;
    Field f = x.field;
    std::vector<SequenceRep> cands;
    std::size_t len = probe_length(x);
    for (auto [n, m] : nonzero_pairs(x, len)) {
        Scalar xn = x.at(n), xm = x.at(m);
        if (compare_mod(xn, xm) == Ordering::Equal) continue;
        // y_N = sgn(x_N), y_M = -sgn(x_M) t with t^{p-1} = |x_N|/|x_M|.
        Scalar t;
        auto ratio_sq = (xn.is_exact() && xm.is_exact()) ? std::optional<Rational>(mod_sq(xn).re() / mod_sq(xm).re())
                                                         : std::nullopt;
        std::optional<Rational> te = ratio_sq ? exact_pow(*ratio_sq, 1 / (2 * (p - 1))) : std::nullopt;
        if (te)
            t = Scalar(*te);
        else
            t = Scalar::from_enclosure(CInterval(pow(abs(xn.enclosure()) / abs(xm.enclosure()), 1 / (p.get_d() - 1))),
                                       Field::Real);
        SequenceRep y = add_scaled(SequenceRep::unit(n, sgn(xn), f), Scalar(-1),
                                   SequenceRep::unit(m, sgn(xm) * t.with_field(f), f));
        cands.push_back(std::move(y));
    }
    std::vector<std::size_t> idx;
    for (std::size_t n = 1; n <= len; ++n)
        if (!x.at(n).is_zero()) idx.push_back(n);
    // Equal moduli: a sgn e_N - b sgn e_M - c sgn e_K with a^{p-1} = b^{p-1} + c^{p-1}.
    std::optional<std::array<long, 3>> abc;
    if (p == 3) abc = std::array<long, 3>{5, 3, 4};
    if (p == Rational(3, 2)) abc = std::array<long, 3>{4, 1, 1};
    if (abc && idx.size() >= 3) {
        for (std::size_t i = 0; i + 2 < idx.size() && i < 16; ++i) {
            std::size_t n = idx[i], m = idx[i + 1], k = idx[i + 2];
            SequenceRep y = SequenceRep::unit(n, Scalar((*abc)[0]) * sgn(x.at(n)), f);
            y = add_scaled(y, Scalar(-(*abc)[1]), SequenceRep::unit(m, sgn(x.at(m)), f));
            y = add_scaled(y, Scalar(-(*abc)[2]), SequenceRep::unit(k, sgn(x.at(k)), f));
            cands.push_back(std::move(y));
        }
    }
    return pick_verified(s, x, cands, false, tol);
}

}  // namespace detail

/// y with x _|_ y and not y _|_ x. Throws SearchExhausted rather than return an unverified y.
inline SequenceRep left_asymmetry_witness(const SpaceId& s, const SequenceRep& x, const WitnessOptions& opt = {}) {
    if (is_left_symmetric(s, x).holds()) throw DomainError("left_asymmetry_witness: x is left-symmetric");
    std::optional<SequenceRep> y;
    switch (s.kind) {
        case Space::L1: y = detail::l1_left_witness(x, opt.tol); break;
        case Space::Lp: y = detail::lp_left_witness(s, x, opt.tol); break;
        default: y = detail::sup_left_witness(s, x, opt.tol); break;
    }
    if (!y) y = detail::search_witness(s, x, true, opt);
    if (!y) throw SearchExhausted("left_asymmetry_witness: no witness within " + std::to_string(opt.budget) + " trials");
    return *y;
}

/// y with y _|_ x and not x _|_ y.
inline SequenceRep right_asymmetry_witness(const SpaceId& s, const SequenceRep& x, const WitnessOptions& opt = {}) {
    detail::require_nonzero(x, "right_asymmetry_witness");
    if (is_right_symmetric(s, x).holds()) throw DomainError("right_asymmetry_witness: x is right-symmetric");
    std::optional<SequenceRep> y;
    switch (s.kind) {
        case Space::L1: y = detail::l1_right_witness(x, opt.tol); break;
        case Space::Lp: y = detail::lp_right_witness(s, x, opt.tol); break;
        default: y = detail::sup_right_witness(s, x, opt.tol); break;
    }
    if (!y) y = detail::search_witness(s, x, false, opt);
    if (!y) throw SearchExhausted("right_asymmetry_witness: no witness within " + std::to_string(opt.budget) + " trials");
    return *y;
}

/// (y, z) with x _|_ y, x _|_ z and not x _|_ (y + z); exists exactly at non-smooth x.
inline std::pair<SequenceRep, SequenceRep> additivity_violation(const SpaceId& s, const SequenceRep& x,
                                                                const WitnessOptions& opt = {}) {
    if (is_smooth(s, x).holds()) throw DomainError("additivity_violation: x is smooth");
    auto ok = [&](const SequenceRep& y, const SequenceRep& z) {
        return birkhoff_james(s, x, y, opt.tol).holds() && birkhoff_james(s, x, z, opt.tol).holds() &&
               birkhoff_james(s, x, y + z, opt.tol).fails();
    };
    if (s.is_sup()) {
        // y = x_N e_N at an attaining index, z = x - y; y + z = x.
        AttainingSet att = sup_attaining_indices(x);
        for (std::size_t n : att.indices) {
            SequenceRep y = SequenceRep::unit(n, x.at(n), x.field), z = x - y;
            if (ok(y, z)) return {y, z};
        }
    } else if (s.kind == Space::L1) {
        // a_N = 0: y, z = a/2 +- w e_N with w >= ||a||_1 / 2; y + z = a.
        NormValue na = norm(x, s);
        Scalar w = na.kind == NormValue::Kind::Exact ? Scalar(na.value) : Scalar(Rational(na.hi()));
        SequenceRep half = scale(x, Scalar(Rational(1, 2)));
        for (std::size_t n = 1; n <= detail::probe_length(x); ++n) {
            if (!x.at(n).is_zero()) continue;
            SequenceRep e = SequenceRep::unit(n, Scalar(1), x.field);
            SequenceRep y = add_scaled(half, w, e), z = add_scaled(half, -w, e);
            if (ok(y, z)) return {y, z};
        }
    }
    Sampler smp = detail::search_sampler(s, x, opt.seed);
    for (std::size_t t = 0; t < opt.budget; ++t) {
        SequenceRep y = smp.sequence(s), z = smp.sequence(s);
        if (ok(y, z)) return {y, z};
    }
    throw SearchExhausted("additivity_violation: no pair within " + std::to_string(opt.budget) + " trials");
}

}  // namespace bjseq
