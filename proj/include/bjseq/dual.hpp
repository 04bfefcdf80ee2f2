#pragma once

// Support functionals. Sequence-space duals (l_q for l_p, l_inf for l_1) carry a
// SequenceRep; sup-norm spaces carry a coordinate or limit descriptor, since the
// dual of l_inf is not a sequence space.

#include <variant>

#include "norm.hpp"
#include "orth.hpp"

namespace bjseq {

/// y -> weight * y_index.
struct CoordinateFunctional {
    std::size_t index = 1;
    Scalar weight{1};
};

/// y -> weight * lim_k y_{start + k period}.
struct LimitFunctional {
    Scalar weight{1};
    std::size_t start = 1;
    std::size_t period = 1;
};

namespace detail {

inline Scalar to_scalar(const Accumulator& acc, Field f) {
    return acc.exact ? acc.value.with_field(f) : Scalar::from_enclosure(acc.enclosure(), f);
}

inline NormValue modulus_value(const Scalar& w) {
    if (auto a = exact_abs(w)) return NormValue::exact(*a);
    if (w.is_exact()) return NormValue::exact_power(mod_sq(w).re(), 2);
    return NormValue::interval(abs(w.enclosure()));
}

// sum_{k>=1} c_{(k-1) mod P} sigma^k = sum_j c_j sigma^{j+1} / (1 - sigma^P).
inline Scalar periodic_geometric_sum(const std::vector<Scalar>& c, const Scalar& sigma) {
    Scalar s = Scalar(0).with_field(sigma.field());
    Scalar q = sigma;
    for (const auto& cj : c) {
        s = s + cj * q;
        q = q * sigma;
    }
    return s / (Scalar(1) - pow(sigma, c.size()));
}

}  // namespace detail

/// sum_n u_n v_n (bilinear, no conjugation). Needs at most one of the tails to
/// have a nonzero periodic part; closed form otherwise.
inline Scalar pairing(const SequenceRep& u, const SequenceRep& v) {
    Field f = join(u.field, v.field);
    auto al = detail::align(u, v);
    Scalar s = Scalar(0).with_field(f);
    for (std::size_t n = 1; n <= al.m; ++n) s = s + u.at(n) * v.at(n);
    SequenceRep ut(f, {}, al.xt), vt(f, {}, al.yt);
    std::vector<Scalar> pu = ut.periodic_part(), pv = vt.periodic_part();
    bool per_u = !(pu.size() == 1 && pu[0].is_zero()), per_v = !(pv.size() == 1 && pv[0].is_zero());
    if (per_u && per_v) throw DomainError("pairing: both tails have a periodic part, the series diverges");
    auto gu = ut.geometrics(), gv = vt.geometrics();
    for (auto* g : gv)
        if (per_u) s = s + g->a * detail::periodic_geometric_sum(pu, g->r);
    for (auto* g : gu)
        if (per_v) s = s + g->a * detail::periodic_geometric_sum(pv, g->r);
    for (auto* g : gu)
        for (auto* h : gv) {
            Scalar q = g->r * h->r;
            s = s + g->a * h->a * q / (Scalar(1) - q);
        }
    return s;
}

struct SupportFunctional {
    SpaceId space;
    std::variant<CoordinateFunctional, LimitFunctional, SequenceRep> rep;

    Scalar apply(const SequenceRep& y) const {
        if (auto* c = std::get_if<CoordinateFunctional>(&rep)) return c->weight * y.at(c->index);
        if (auto* l = std::get_if<LimitFunctional>(&rep)) {
            std::vector<Scalar> per = y.periodic_part();
            if (l->period % per.size() != 0)
                throw DomainError("limit functional: subsequence does not fix a tail residue");
            std::size_t n = l->start;
            while (n <= y.prefix_len()) n += l->period;
            return l->weight * per[(n - y.prefix_len() - 1) % per.size()];
        }
        return pairing(std::get<SequenceRep>(rep), y);
    }

    /// The space the representation lives in: l_q for l_p, l_inf for l_1.
    SpaceId dual_space() const {
        if (space.kind == Space::Lp) return SpaceId::lp(space.p / (space.p - 1));
        return SpaceId::linf();
    }

    NormValue dual_norm() const {
        if (auto* c = std::get_if<CoordinateFunctional>(&rep)) return detail::modulus_value(c->weight);
        if (auto* l = std::get_if<LimitFunctional>(&rep)) return detail::modulus_value(l->weight);
        return norm(std::get<SequenceRep>(rep), dual_space());
    }
};

/// The unique support functional of x in l_p:
/// a_n = conj(sgn x_n) |x_n|^{p-1} / ||x||^{p-1}.
inline SupportFunctional lp_support_functional(const SequenceRep& x, const Rational& p) {
    SpaceId s = SpaceId::lp(p);
    require_member(x, s);
    if (x.is_zero()) throw DomainError("lp_support_functional: x = 0");
    if (x.geometrics().size() > 1) throw DomainError("lp_support_functional: multi-atom tails are not representable");
    NormValue nv = norm(x, s);
    Scalar inv;
    std::optional<Rational> np1;
    if (nv.kind == NormValue::Kind::Exact)
        np1 = exact_pow(nv.value, p - 1);
    else if (nv.kind == NormValue::Kind::ExactPower)
        np1 = exact_pow(nv.value, (p - 1) / nv.power);
    if (np1)
        inv = Scalar(1 / *np1);
    else
        inv = Scalar::from_enclosure(CInterval(Interval(1.0) / pow(nv.enclosure, p.get_d() - 1)), Field::Real);
    inv = inv.with_field(x.field);

    SequenceRep a(x.field, {}, {});
    for (const auto& z : x.prefix) a.prefix.push_back(detail::phi(z, p) * inv);
    for (const auto& t : x.tail) {
        if (t.kind == TailAtom::Kind::Geometric)
            a.tail.push_back(TailAtom::geometric(detail::phi(t.a, p) * inv, detail::phi(t.r, p)));
        else
            a.tail.push_back(t);
    }
    return {s, canonicalize(std::move(a))};
}

/// b in J(a) for l_1 iff b_n = conj(sgn a_n) where a_n != 0 and |b_n| <= 1 elsewhere.
/// Exact data; a must have a single-atom tail.
inline Verdict l1_is_support_functional(const SequenceRep& a, const SequenceRep& b) {
    require_member(a, SpaceId::l1(), "a");
    if (a.is_zero()) throw DomainError("l1_is_support_functional: a = 0");
    if (a.field != b.field) throw ValidationError("l1_is_support_functional: field mismatch");
    if (!a.is_exact() || !b.is_exact()) throw DomainError("l1_is_support_functional: needs exact data");
    if (!a.single_atom()) throw DomainError("l1_is_support_functional: multi-atom tails of a are not supported");

    auto entry_ok = [](const Scalar& an, const Scalar& bn) {
        if (an.is_zero()) return mod_sq(bn).re() <= 1;
        // b_n = conj(sgn a_n)  <=>  b_n a_n = |a_n| with |b_n| = 1
        Scalar pr = bn * an;
        return pr.im() == 0 && pr.re() > 0 && mod_sq(bn).re() == 1;
    };
    auto al = detail::align(a, b);
    for (std::size_t n = 1; n <= al.m; ++n)
        if (!entry_ok(a.at(n), b.at(n))) return Verdict::exact(false, 0.0);

    SequenceRep bt(b.field, {}, al.yt);
    const TailAtom& ta = al.xt[0];
    std::vector<Scalar> per = bt.periodic_part();
    auto bg = bt.geometrics();
    if (ta.kind == TailAtom::Kind::Zero) {
        // sup |b_n| <= 1 over the tail.
        Rational lim = detail::max_mod_sq(per);
        if (lim > 1) return Verdict::exact(false, 0.0);
        if (bg.empty()) return Verdict::exact(true, 0.0);
        Interval lim_abs = sqrt(to_interval(lim));
        for (std::size_t k = 1; k <= kMaxExactScan; ++k) {
            if (mod_sq(bt.tail_at(k)).re() > 1) return Verdict::exact(false, 0.0);
            if ((lim_abs + detail::geometric_mass(bg, k + 1)).hi <= 1.0) return Verdict::exact(true, 0.0);
        }
        return {Outcome::Indeterminate, 0.0, Mode::Approx};
    }
    // a_k = alpha rho^k never vanishes, so b must equal conj(sgn alpha) conj(sgn rho)^k,
    // which is eventually periodic only when sgn rho is a root of unity.
    if (!bg.empty()) return Verdict::exact(false, 0.0);
    Scalar w = conj(sgn(ta.r));
    if (!w.is_exact()) return Verdict::exact(false, 0.0);
    std::size_t d = 0;
    Scalar wk = w;
    for (std::size_t k = 1; k <= 4 && !d; ++k, wk = wk * w)
        if (wk == Scalar(1).with_field(w.field())) d = k;
    if (!d) return Verdict::exact(false, 0.0);
    std::size_t l = detail::checked_lcm(d, per.size());
    for (std::size_t k = 1; k <= l; ++k)
        if (!entry_ok(ta.at(k), per[(k - 1) % per.size()])) return Verdict::exact(false, 0.0);
    return Verdict::exact(true, 0.0);
}

/// The sign functional b_n = conj(sgn a_n) of a in l_1 (0 where a_n = 0).
/// It is the unique support functional exactly when a has no zero term.
inline SupportFunctional l1_sign_functional(const SequenceRep& a) {
    require_member(a, SpaceId::l1(), "a");
    if (a.is_zero()) throw DomainError("l1_sign_functional: a = 0");
    if (!a.single_atom()) throw DomainError("l1_sign_functional: multi-atom tails are not supported");
    SequenceRep b(a.field, {}, {});
    for (const auto& z : a.prefix) b.prefix.push_back(conj(sgn(z)));
    const TailAtom& t = a.tail[0];
    if (t.kind == TailAtom::Kind::Geometric) {
        Scalar u = conj(sgn(t.a)), w = conj(sgn(t.r));
        std::vector<Scalar> vals{u * w};
        Scalar wk = w;
        for (std::size_t k = 1; w.is_exact() && k < 4 && !(wk == Scalar(1).with_field(w.field())); ++k) {
            wk = wk * w;
            vals.push_back(vals.back() * w);
        }
        if (!w.is_exact() || !(wk == Scalar(1).with_field(w.field())))
            throw DomainError("l1_sign_functional: sign of the ratio is not a root of unity, not representable");
        b.tail.push_back(TailAtom::periodic(std::move(vals)));
    } else {
        b.tail.push_back(TailAtom::zero());
    }
    return {SpaceId::l1(), canonicalize(std::move(b))};
}

/// Coordinate functional conj(sgn x_N) (.)_N at the unique attaining index of a
/// smooth point of a sup-norm space.
inline SupportFunctional sup_smooth_support_functional(const SpaceId& s, const SequenceRep& x) {
    if (!s.is_sup()) throw DomainError("sup_smooth_support_functional: not a sup-norm space");
    require_member(x, s);
    if (x.is_zero()) throw DomainError("support functional of 0");
    AttainingSet att = sup_attaining_indices(x);
    if (att.indices.size() != 1 || att.attained_asymptotically) throw DomainError("x is not a smooth point of " + s.name());
    std::size_t n = att.indices[0];
    return {s, CoordinateFunctional{n, conj(sgn(x.at(n)))}};
}

inline SupportFunctional linf_smooth_support_functional(const SequenceRep& x) {
    return sup_smooth_support_functional(SpaceId::linf(), x);
}

/// One member of J(x): the unique one when x is smooth. Sup-norm spaces get the
/// coordinate functional at the first attaining index (or at the first attaining
/// residue, read as a limit functional, when the only attainment is asymptotic).
inline SupportFunctional support_functional(const SpaceId& s, const SequenceRep& x) {
    require_member(x, s);
    if (x.is_zero()) throw DomainError("support functional of 0");
    switch (s.kind) {
        case Space::Lp: return lp_support_functional(x, s.p);
        case Space::L1: return l1_sign_functional(x);
        default: break;
    }
    AttainingSet att = sup_attaining_indices(x);
    if (!att.indices.empty()) {
        std::size_t n = att.indices[0];
        return {s, CoordinateFunctional{n, conj(sgn(x.at(n)))}};
    }
    // The norm is only a limit: read it along a periodic residue of maximal modulus.
    std::vector<Scalar> per = x.periodic_part();
    std::size_t j = 0;
    for (std::size_t i = 1; i < per.size(); ++i)
        if (mod_sq(per[i]).re() > mod_sq(per[j]).re()) j = i;
    return {s, LimitFunctional{conj(sgn(per[j])), x.prefix_len() + 1 + j, per.size()}};
}

/// Coefficient c with x _|_ (y - c x) through the support functional used by
/// project_to_kernel. Computed from the unnormalized form so it stays exact
/// whenever the data allow.
inline Scalar kernel_coefficient(const SpaceId& s, const SequenceRep& x, const SequenceRep& y) {
    if (x.field != y.field) throw ValidationError("kernel_coefficient: field mismatch");
    switch (s.kind) {
        case Space::Lp: {
            auto fy = lp_form(x, y, s.p).value, fx = lp_form(x, x, s.p).value;
            return detail::to_scalar(fy, x.field) / detail::to_scalar(fx, x.field);
        }
        case Space::L1: {
            auto fy = l1_forms(x, y).lhs, fx = l1_forms(x, x).lhs;
            return detail::to_scalar(fy, x.field) / detail::to_scalar(fx, x.field);
        }
        default: {
            SupportFunctional f = support_functional(s, x);
            return f.apply(y) / f.apply(x);
        }
    }
}

/// y - (f(y)/f(x)) x: the component of y in the kernel of the support functional.
inline SequenceRep project_to_kernel(const SpaceId& s, const SequenceRep& x, const SequenceRep& y) {
    return add_scaled(y, -kernel_coefficient(s, x, y), x);
}

}  // namespace bjseq
