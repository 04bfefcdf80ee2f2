// Acceptance run: one PASS/FAIL line per criterion, details indented above it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "bjseq/bjseq.hpp"

using namespace bjseq;

namespace {

int g_failed = 0;

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)), t0_(std::chrono::steady_clock::now()) {
        std::printf("criterion %d: %s\n", id_, title_.c_str());
        std::fflush(stdout);
    }

    void detail(const std::string& s) {
        std::printf("  %s\n", s.c_str());
        std::fflush(stdout);
    }

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ok_ = false;
            detail("violated: " + what);
        }
    }

    ~Criterion() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        std::printf("%s %d %s (%.1fs)\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str(), secs);
        std::fflush(stdout);
        if (!ok_) ++g_failed;
    }

private:
    int id_;
    std::string title_;
    std::chrono::steady_clock::time_point t0_;
    bool ok_ = true;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const std::vector<SpaceId>& campaign_spaces() {
    static const std::vector<SpaceId> v{SpaceId::linf(), SpaceId::c(),  SpaceId::c0(),          SpaceId::c00(),
                                        SpaceId::l1(),   SpaceId::lp(3), SpaceId::lp(Rational(3, 2))};
    return v;
}

constexpr double kTol = kDefaultTolerance;

// ---------------------------------------------------------------------------

void oracle_agreement() {
    Criterion c(1, "oracle agreement, 1000 pairs per space, delta 1e-9, indeterminate < 2%");
    for (const auto& s : campaign_spaces()) {
        AgreementStats st = agreement_report(s, SamplerConfig::preset("default"), 1000, 42, kTol, 1e-9);
        c.detail(fmt("%-5s pairs %zu agree %zu hard %zu indeterminate %zu (%.2f%%)", s.name().c_str(), st.pairs,
                     st.agree, st.hard_disagree, st.indeterminate, 100 * st.indeterminate_rate()));
        c.require(st.pairs == 1000, s.name() + " pair count");
        c.require(st.hard_disagree == 0, s.name() + " hard disagreements");
        c.require(st.indeterminate_rate() < 0.02, s.name() + " indeterminate rate");
    }
}

void real_equivalence() {
    Criterion c(2, "real cross-check equivalence, 1000 pairs each, exact");
    Sampler smp(2024);
    std::size_t mism_inf = 0, mism_l1 = 0, exact = 0;
    for (int i = 0; i < 1000; ++i) {
        SequenceRep x = smp.sequence(SpaceId::linf()), y = smp.sequence(SpaceId::linf());
        Verdict a = orth_linf(x, y), b = orth_linf_real_enum(x, y);
        exact += a.mode == Mode::Exact && b.mode == Mode::Exact;
        mism_inf += a.outcome != b.outcome;
    }
    for (int i = 0; i < 1000; ++i) {
        SequenceRep x = smp.sequence(SpaceId::l1()), y = smp.sequence(SpaceId::l1());
        Verdict a = orth_l1(x, y), b = orth_l1_real_partition(x, y);
        exact += a.mode == Mode::Exact && b.mode == Mode::Exact;
        mism_l1 += a.outcome != b.outcome;
    }
    c.detail(fmt("linf hull vs enumeration mismatches %zu; l1 norm form vs partition mismatches %zu; exact pairs %zu/2000",
                 mism_inf, mism_l1, exact));
    c.require(mism_inf == 0 && mism_l1 == 0, "mismatches");
    c.require(exact == 2000, "every comparison in exact mode");
}

void symmetry_soundness() {
    Criterion c(3, "symmetry soundness on the curated corpus, 200 partners, witness margins > 10 tol");
    SoundnessOptions o{200, 200, 1000, 42, kTol, 10.0};
    for (const auto& s : campaign_spaces()) {
        SoundnessStats st;
        st.space = s;
        for (const auto& x : curated_corpus(s, 40, 42)) {
            check_symmetry_point(s, x, o, st);
            ++st.points;
        }
        c.detail(fmt("%-5s points %zu left-symmetric %zu right-symmetric %zu partner checks %zu witnesses %zu "
                     "undecided %zu failures %zu",
                     s.name().c_str(), st.points, st.left_symmetric, st.right_symmetric, st.partner_checks,
                     st.witnesses, st.undecided, st.failures.size()));
        for (const auto& f : st.failures)
            c.detail("  " + f.check + " at " + to_json(f.x).dump() + ": " + f.detail);
        c.require(st.failures.empty(), s.name() + " failures");
        c.require(st.undecided == 0, s.name() + " undecided consequents");
        c.require(st.witnesses + st.partner_checks > 0, s.name() + " nothing checked");
    }
}

void smoothness_additivity() {
    Criterion c(4, "smoothness <=> right-additivity, 100 smooth and 100 non-smooth points per space");
    SoundnessOptions o{200, 200, 1000, 4242, kTol, 10.0};
    for (const auto& s : campaign_spaces()) {
        auto smooth = corpus_by_smoothness(s, true, 100, 4);
        auto rough = corpus_by_smoothness(s, false, 100, 4);
        SoundnessStats st;
        st.space = s;
        std::size_t short_points = 0;
        for (const auto& x : smooth) {
            std::size_t before = st.partner_checks;
            check_smoothness_point(s, x, o, st);
            ++st.points;
            short_points += st.partner_checks - before < 200;
        }
        std::size_t smooth_checks = st.partner_checks;
        for (const auto& x : rough) {
            check_smoothness_point(s, x, o, st);
            ++st.points;
        }
        c.detail(fmt("%-5s smooth %zu (additive pairs %zu, points short of 200 pairs %zu) non-smooth %zu "
                     "(violations found %zu) undecided %zu failures %zu",
                     s.name().c_str(), smooth.size(), smooth_checks, short_points, rough.size(), st.witnesses,
                     st.undecided, st.failures.size()));
        for (const auto& f : st.failures)
            c.detail("  " + f.check + " at " + to_json(f.x).dump() + ": " + f.detail);
        c.require(smooth.size() == 100, s.name() + " smooth corpus size");
        // Every point of l_p (1 < p < inf) is smooth, so there is nothing non-smooth to draw.
        if (s.kind == Space::Lp)
            c.require(rough.empty(), s.name() + " found a non-smooth point");
        else
            c.require(rough.size() == 100, s.name() + " non-smooth corpus size");
        c.require(short_points == 0, s.name() + " smooth points with fewer than 200 pairs");
        c.require(st.witnesses == rough.size(), s.name() + " violations");
        c.require(st.failures.empty() && st.undecided == 0, s.name() + " failures");
    }
}

// ---------------------------------------------------------------------------

Scalar approx(double v) { return Scalar::approx({v, 0.0}, 4e-16 * std::max(1.0, std::fabs(v)), Field::Real); }
Scalar q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return Scalar(r);
}

struct Curated {
    std::string name;
    FiniteMatrixOperator m;
    bool orthogonal;  // a genuine l_2 isometry
};

std::vector<Curated> curated_matrices() {
    const double s2 = std::sqrt(0.5), c30 = std::sqrt(3.0) / 2;
    auto rot = [](Scalar c, Scalar s) { return FiniteMatrixOperator({{c, -s}, {s, c}}); };
    std::vector<Curated> v;
    v.push_back({"rotation 45", rot(approx(s2), approx(s2)), true});
    v.push_back({"rotation 30", rot(approx(c30), q(1, 2)), true});
    v.push_back({"rotation 3-4-5", rot(q(3, 5), q(4, 5)), true});
    v.push_back({"rotation 5-12-13", rot(q(5, 13), q(12, 13)), true});
    v.push_back({"rotation 8-15-17", rot(q(8, 17), q(15, 17)), true});
    v.push_back({"rotation 3-4-5 on (2,3)",
                 FiniteMatrixOperator({{q(1), q(0), q(0)}, {q(0), q(3, 5), q(-4, 5)}, {q(0), q(4, 5), q(3, 5)}}), true});
    v.push_back({"rotation 3d",
                 FiniteMatrixOperator({{q(3, 5), q(-4, 5), q(0)}, {q(16, 25), q(12, 25), q(-3, 5)},
                                       {q(12, 25), q(9, 25), q(4, 5)}}),
                 true});
    v.push_back({"hadamard 2", FiniteMatrixOperator({{approx(s2), approx(s2)}, {approx(s2), approx(-s2)}}), true});
    v.push_back({"hadamard 4",
                 FiniteMatrixOperator({{q(1, 2), q(1, 2), q(1, 2), q(1, 2)},
                                       {q(1, 2), q(-1, 2), q(1, 2), q(-1, 2)},
                                       {q(1, 2), q(1, 2), q(-1, 2), q(-1, 2)},
                                       {q(1, 2), q(-1, 2), q(-1, 2), q(1, 2)}}),
                 true});
    v.push_back({"hadamard 4 signed",
                 FiniteMatrixOperator({{q(-1, 2), q(1, 2), q(1, 2), q(1, 2)},
                                       {q(1, 2), q(-1, 2), q(1, 2), q(1, 2)},
                                       {q(1, 2), q(1, 2), q(-1, 2), q(1, 2)},
                                       {q(1, 2), q(1, 2), q(1, 2), q(-1, 2)}}),
                 true});
    v.push_back({"shear upper", FiniteMatrixOperator({{q(1), q(1)}, {q(0), q(1)}}), false});
    v.push_back({"shear lower half", FiniteMatrixOperator({{q(1), q(0)}, {q(1, 2), q(1)}}), false});
    v.push_back({"shear -2", FiniteMatrixOperator({{q(1), q(-2)}, {q(0), q(1)}}), false});
    v.push_back({"shear 3d", FiniteMatrixOperator({{q(1), q(0), q(1)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}}), false});
    v.push_back({"average 2", FiniteMatrixOperator({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}), false});
    v.push_back({"average 3",
                 FiniteMatrixOperator({{q(1, 3), q(1, 3), q(1, 3)}, {q(1, 3), q(1, 3), q(1, 3)}, {q(1, 3), q(1, 3), q(1, 3)}}),
                 false});
    v.push_back({"circulant average",
                 FiniteMatrixOperator({{q(1, 2), q(1, 2), q(0)}, {q(0), q(1, 2), q(1, 2)}, {q(1, 2), q(0), q(1, 2)}}),
                 false});
    v.push_back({"average with identity", FiniteMatrixOperator({{q(3, 4), q(1, 4)}, {q(1, 4), q(3, 4)}}), false});
    v.push_back({"diagonal scaling", FiniteMatrixOperator({{q(1), q(0)}, {q(0), q(1, 2)}}), false});
    v.push_back({"weighted swap", FiniteMatrixOperator({{q(0), q(2)}, {q(1, 2), q(0)}}), false});
    return v;
}

void banach_lamperti() {
    Criterion c(5, "signed permutations are isometries; curated matrices falsified iff p != 2 or not orthogonal");
    std::vector<SpaceId> spaces = campaign_spaces();
    spaces.push_back(SpaceId::lp(2));

    Sampler psmp(5);
    std::vector<SignedPermutation> perms;
    for (int i = 0; i < 50; ++i) perms.push_back(random_signed_permutation(psmp, 2 + static_cast<std::size_t>(i % 6)));
    SamplerConfig complex_cfg;
    complex_cfg.field = Field::Complex;
    for (const auto& s : spaces) {
        std::size_t samples = 0, exact = 0, viol = 0;
        for (std::size_t i = 0; i < perms.size(); ++i) {
            // Real sign changes are checked on real data, complex weights on complex data.
            IsometryReport r = verify_isometry(perms[i], s, 20, 100 + i, perms[i].field() == Field::Real ? SamplerConfig{} : complex_cfg);
            samples += r.samples;
            exact += r.exact_checks;
            viol += r.violations.size();
        }
        c.detail(fmt("%-5s permutations 50 samples %zu exact comparisons %zu violations %zu", s.name().c_str(), samples,
                     exact, viol));
        c.require(viol == 0, s.name() + " permutation violations");
        c.require(exact == samples, s.name() + " inexact permutation comparisons");
    }

    auto mats = curated_matrices();
    c.require(mats.size() == 20, "curated matrix count");
    for (const auto& s : spaces) {
        bool hilbert = s.kind == Space::Lp && s.p == 2;
        std::size_t witnessed = 0, inconclusive = 0, wrong = 0;
        for (std::size_t i = 0; i < mats.size(); ++i) {
            const auto& cm = mats[i];
            c.require(!matrix_is_signed_permutation(cm.m), cm.name + " is a signed permutation");
            FalsifyResult r = falsify_matrix_isometry(cm.m, s, 1000, 7 + i);
            witnessed += r.status == FalsifyStatus::Witness;
            inconclusive += r.status == FalsifyStatus::Inconclusive;
            bool expect_witness = !(hilbert && cm.orthogonal);
            bool ok = expect_witness ? r.status == FalsifyStatus::Witness : r.status == FalsifyStatus::Inconclusive;
            if (!ok) {
                ++wrong;
                c.detail(fmt("  %s in %s: %s", cm.name.c_str(), s.name().c_str(), to_string(r.status)));
            }
        }
        c.detail(fmt("%-5s matrices 20 witnessed %zu inconclusive %zu unexpected %zu", s.name().c_str(), witnessed,
                     inconclusive, wrong));
        c.require(wrong == 0, s.name() + " falsification pattern");
    }
}

void hilbert_sanity() {
    Criterion c(6, "p = 2 orthogonality is symmetric; p = 3 has a recorded asymmetric pair");
    Sampler smp(6);
    SpaceId l2 = SpaceId::lp(2);
    std::size_t asym = 0, undecided = 0;
    for (int i = 0; i < 1000; ++i) {
        SequenceRep x = smp.sequence(l2), y = smp.sequence(l2);
        Verdict a = orth_lp(x, y, 2), b = orth_lp(y, x, 2);
        undecided += a.indeterminate() || b.indeterminate();
        asym += a.outcome != b.outcome;
    }
    c.detail(fmt("l2 pairs 1000 asymmetric %zu undecided %zu", asym, undecided));
    c.require(asym == 0 && undecided == 0, "l2 symmetry");

    SequenceRep x = SequenceRep::finite({Scalar(2), Scalar(1)}), y = SequenceRep::finite({Scalar(1), Scalar(-4)});
    Verdict xy = orth_lp(x, y, 3), yx = orth_lp(y, x, 3);
    auto strong = [](const Verdict& v) { return v.mode == Mode::Exact || v.margin > 10 * kTol; };
    c.detail(fmt("l3 x=(2,1) y=(1,-4): x _|_ y %s (%s), y _|_ x %s (%s, margin %g)", to_string(xy.outcome),
                 to_string(xy.mode), to_string(yx.outcome), to_string(yx.mode), yx.margin));
    c.require(xy.holds() && strong(xy), "x _|_ y");
    c.require(yx.fails() && strong(yx), "y not _|_ x");
    Verdict oxy = oracle_orth(SpaceId::lp(3), x, y), oyx = oracle_orth(SpaceId::lp(3), y, x);
    c.detail(fmt("oracle agrees: %s / %s", to_string(oxy.outcome), to_string(oyx.outcome)));
    c.require(oxy.holds() && oyx.fails(), "oracle on the asymmetric pair");
}

void support_functionals() {
    Criterion c(7, "support functional contracts: lp dual norm and action within 1e-10, l1 action within 1e-12");
    double worst_norm = 0, worst_action = 0;
    std::size_t lp_points = 0;
    for (Rational p : {Rational(3), Rational(3, 2)}) {
        SpaceId s = SpaceId::lp(p);
        for (Field f : {Field::Real, Field::Complex}) {
            SamplerConfig cfg;
            cfg.field = f;
            Sampler smp(f == Field::Real ? 71 : 72, cfg);
            for (int i = 0; i < 125; ++i) {
                SequenceRep x = smp.sequence(s);
                SupportFunctional fn = lp_support_functional(x, p);
                NormValue dn = fn.dual_norm();
                Interval nx = norm_interval(x, s, 1e-14);
                CInterval act = fn.apply(x).enclosure();
                double dnorm = std::max(std::fabs(dn.lo() - 1), std::fabs(dn.hi() - 1));
                double dact = std::max({std::fabs(act.re.lo - nx.hi), std::fabs(act.re.hi - nx.lo), act.im.mag()}) / nx.hi;
                worst_norm = std::max(worst_norm, dnorm);
                worst_action = std::max(worst_action, dact);
                ++lp_points;
            }
        }
    }
    c.detail(fmt("lp points %zu worst |dual norm - 1| %.3g worst |f(x) - ||x|||/||x|| %.3g", lp_points, worst_norm,
                 worst_action));
    c.require(lp_points == 500, "lp point count");
    c.require(worst_norm <= 1e-10, "lp dual norm");
    c.require(worst_action <= 1e-10, "lp action");

    // l1: the sign functional, with free coordinates (where a vanishes) filled at random in [-1, 1].
    Sampler smp(73);
    std::size_t accepted = 0, rejected = 0, tried = 0;
    double worst = 0;
    while (accepted < 500 && tried < 5000) {
        ++tried;
        SequenceRep a = smp.sequence(SpaceId::l1());
        SequenceRep b = std::get<SequenceRep>(l1_sign_functional(a).rep);
        for (std::size_t n = 1; n <= a.prefix_len(); ++n)
            if (a.at(n).is_zero()) {
                Rational v = smp.rational(16, 16);
                if (abs(v) > 1) v = 1 / v;
                b = add_scaled(b, Scalar(v), SequenceRep::unit(n));
            }
        if (a.has_zero_tail() && smp.coin(0.5)) {
            std::vector<Scalar> vals;
            for (long k = smp.uniform(1, 3); k > 0; --k) vals.push_back(Scalar(Rational(smp.uniform(-4, 4), 4)));
            std::vector<Scalar> pad(a.prefix_len(), Scalar(0));
            b = b + SequenceRep::with_tail(pad, TailAtom::periodic(vals));
        }
        if (smp.coin(0.1)) b = scale(b, Scalar(Rational(3, 2)));  // should be rejected
        if (!l1_is_support_functional(a, b).holds()) {
            ++rejected;
            continue;
        }
        ++accepted;
        Scalar act = SupportFunctional{SpaceId::l1(), b}.apply(a);
        NormValue na = norm(a, SpaceId::l1());
        CInterval e = act.enclosure();
        double d = std::max({std::fabs(e.re.lo - na.hi()), std::fabs(e.re.hi - na.lo()), e.im.mag()});
        worst = std::max(worst, d);
    }
    c.detail(fmt("l1 pairs accepted %zu rejected %zu worst |b(a) - ||a||_1| %.3g", accepted, rejected, worst));
    c.require(accepted == 500, "l1 accepted pair count");
    c.require(worst <= 1e-12, "l1 action");
}

// Brute force: K = 200 tail terms in long double plus an analytic bound on the rest.
Interval brute_force_norm(const SequenceRep& x, const SpaceId& s, std::size_t K) {
    long double sum = 0, mx = 0;
    double p = s.kind == Space::Lp ? s.p_double() : 1.0;
    auto modulus = [](const Scalar& z) {
        long double re = z.re().get_d(), im = z.im().get_d();
        return std::sqrt(re * re + im * im);
    };
    for (std::size_t n = 1; n <= x.prefix_len() + K; ++n) {
        long double m = modulus(x.at(n));
        mx = std::max(mx, m);
        sum += s.kind == Space::Lp ? std::pow(m, static_cast<long double>(p)) : m;
    }
    // For k > K every tail term is within R of the periodic part.
    long double R = 0, per = 0;
    for (const auto& t : x.tail) {
        if (t.kind == TailAtom::Kind::Geometric) {
            long double a = modulus(t.a), r = modulus(t.r);
            R += a * std::pow(r, static_cast<long double>(K + 1)) / (1 - r);
        }
        for (const auto& v : t.values) per = std::max(per, modulus(v));
    }
    const long double slop = 1e-15L;
    if (s.is_sup()) {
        return {static_cast<double>(mx * (1 - slop)), static_cast<double>(std::max(mx, per + R) * (1 + slop))};
    }
    if (s.kind == Space::L1) return {static_cast<double>(sum * (1 - slop)), static_cast<double>((sum + R) * (1 + slop))};
    long double hi = sum + std::pow(R, static_cast<long double>(p));
    return {static_cast<double>(std::pow(sum, 1 / static_cast<long double>(p)) * (1 - slop)),
            static_cast<double>(std::pow(hi, 1 / static_cast<long double>(p)) * (1 + slop))};
}

SequenceRep multi_atom(Sampler& smp, const SpaceId& s, Field f) {
    auto entry = [&]() {
        if (f == Field::Real) return Scalar(smp.nonzero_rational(24, 16));
        return Scalar::complex(smp.rational(24, 16), smp.rational(24, 16));
    };
    for (;;) {
        std::vector<Scalar> pre;
        for (long n = smp.uniform(0, 5); n > 0; --n) pre.push_back(smp.coin(0.2) ? Scalar(0).with_field(f) : entry());
        std::vector<TailAtom> tail;
        for (long k = smp.uniform(2, 3); k > 0; --k) {
            long d = smp.uniform(2, 16), m = (3 * d) / 4;
            long num = 0;
            while (num == 0) num = smp.uniform(-m, m);
            Rational r(num, d);
            r.canonicalize();
            Scalar rr(r);
            if (f == Field::Complex && smp.coin(0.5)) rr = rr * Scalar::complex(Rational(3, 5), Rational(4, 5));
            tail.push_back(TailAtom::geometric(entry(), rr.with_field(f)));
        }
        if (s.kind == Space::LInf && smp.coin(0.5)) tail.push_back(TailAtom::periodic({entry(), entry()}));
        if (s.kind == Space::C && smp.coin(0.5)) tail.push_back(TailAtom::constant(entry()));
        for (auto& z : pre) z = z.with_field(f);
        SequenceRep x = canonicalize(SequenceRep(f, std::move(pre), std::move(tail)));
        if (x.tail.size() >= 2 && member_of(x, s)) return x;
    }
}

void interval_honesty() {
    Criterion c(8, "norm_interval at eps 1e-10 contains the K = 200 brute force, width <= eps");
    const std::vector<SpaceId> spaces{SpaceId::linf(), SpaceId::c(), SpaceId::c0(), SpaceId::l1(), SpaceId::lp(3),
                                      SpaceId::lp(Rational(3, 2))};
    const double eps = 1e-10;
    Sampler smp(8);
    std::size_t count = 0, misses = 0, wide = 0;
    double worst_width = 0;
    for (int i = 0; i < 1000; ++i) {
        const SpaceId& s = spaces[i % spaces.size()];
        Field f = i % 4 == 3 ? Field::Complex : Field::Real;
        SequenceRep x = multi_atom(smp, s, f);
        Interval got = norm_interval(x, s, eps);
        Interval ref = brute_force_norm(x, s, 200);
        ++count;
        worst_width = std::max(worst_width, got.width());
        if (got.width() > eps) ++wide;
        if (got.lo > ref.hi || got.hi < ref.lo) {
            ++misses;
            if (misses <= 5)
                c.detail(fmt("  miss in %s: [%.17g, %.17g] vs [%.17g, %.17g] %s", s.name().c_str(), got.lo, got.hi,
                             ref.lo, ref.hi, to_json(x).dump().c_str()));
        }
    }
    c.detail(fmt("sequences %zu misses %zu wider than eps %zu worst width %.3g", count, misses, wide, worst_width));
    c.require(misses == 0, "containment");
    c.require(wide == 0, "width");
}

}  // namespace

int main() {
    try {
        oracle_agreement();
        real_equivalence();
        symmetry_soundness();
        smoothness_additivity();
        banach_lamperti();
        hilbert_sanity();
        support_functionals();
        interval_honesty();
    } catch (const std::exception& e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%d of 8 criteria failed\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
