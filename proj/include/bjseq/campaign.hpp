#pragma once

// Property campaigns: oracle agreement plus soundness of the symmetry and
// smoothness classifiers, each checked against the orthogonality predicate.

#include <cstdint>
#include <string>
#include <vector>

#include "classify.hpp"
#include "dual.hpp"
#include "oracle.hpp"

namespace bjseq {

// ---------------------------------------------------------------------------
// Point corpora.

/// Replaces every modulus m by m^2 (signs and phases kept), so that |z|^s is rational
/// for half-integer s. Geometric ratios stay inside the unit disk.
inline SequenceRep square_moduli(const SequenceRep& x) {
    auto sq = [](const Scalar& z) {
        if (z.is_zero()) return z;
        auto m = exact_abs(z);
        if (!m) throw DomainError("square_moduli: modulus is not rational");
        return z * Scalar(*m);
    };
    SequenceRep out(x.field, {}, {});
    for (const auto& z : x.prefix) out.prefix.push_back(sq(z));
    for (const auto& t : x.tail) {
        TailAtom u = t;
        for (auto& v : u.values) v = sq(v);
        if (t.kind == TailAtom::Kind::Geometric) {
            u.a = sq(t.a);
            u.r = sq(t.r);
        }
        out.tail.push_back(u);
    }
    return canonicalize(std::move(out));
}

namespace detail {

inline SequenceRep fin(std::initializer_list<Rational> v) {
    std::vector<Scalar> s;
    for (const auto& q : v) s.push_back(Scalar(q));
    return SequenceRep::finite(std::move(s));
}

// Hand-picked points covering the characterized classes of each space.
inline std::vector<SequenceRep> structured_points(const SpaceId& s) {
    using TA = TailAtom;
    std::vector<SequenceRep> v{
        fin({1}), fin({0, 0, -5}), fin({4, 1}), fin({1, -1}), fin({4, 0, -4}), fin({1, 1, 1}), fin({9, 4, 1}),
        fin({1, 0, 1, 0, -1}), fin({-1, 4, 4}), fin({Rational(1, 4), -1})};
    Scalar i = Scalar::complex(0, 1), w = Scalar::complex(Rational(3, 5), Rational(4, 5));
    v.push_back(SequenceRep::finite({i, Scalar(1).with_field(Field::Complex)}, Field::Complex));
    v.push_back(SequenceRep::finite({Scalar(0).with_field(Field::Complex), w * Scalar(4)}, Field::Complex));
    if (s.kind != Space::C00) {
        v.push_back(SequenceRep::with_tail({}, TA::geometric(Scalar(1), Scalar(Rational(1, 4)))));
        v.push_back(SequenceRep::with_tail({Scalar(-9)}, TA::geometric(Scalar(4), Scalar(Rational(-1, 4)))));
        v.push_back(SequenceRep::with_tail({Scalar(0), Scalar(1)}, TA::geometric(Scalar(1), Scalar(Rational(1, 9)))));
    }
    if (s.kind == Space::C || s.kind == Space::LInf) {
        v.push_back(SequenceRep::with_tail({}, TA::constant(Scalar(1))));
        v.push_back(SequenceRep::with_tail({Scalar(-1), Scalar(1)}, TA::constant(Scalar(-1))));
        v.push_back(SequenceRep::with_tail({Scalar(4)}, TA::constant(Scalar(1))));
        v.push_back(SequenceRep::with_tail({Scalar(0)}, TA::constant(Scalar(2))));
        v.push_back(SequenceRep::with_tail({w}, TA::constant(i), Field::Complex));
    }
    if (s.kind == Space::LInf) {
        v.push_back(SequenceRep::with_tail({}, TA::periodic({Scalar(1), Scalar(-1)})));
        v.push_back(SequenceRep::with_tail({Scalar(-4)}, TA::periodic({Scalar(4), Scalar(-4), Scalar(4)})));
        v.push_back(SequenceRep::with_tail({}, TA::periodic({Scalar(1), Scalar(0)})));
        v.push_back(SequenceRep::with_tail({Scalar(9)}, TA::periodic({Scalar(1), Scalar(4)})));
        v.push_back(SequenceRep::with_tail({}, TA::periodic({Scalar(1).with_field(Field::Complex), i, w}), Field::Complex));
    }
    return v;
}

}  // namespace detail

/// Deterministic corpus for s: the structured points, then sampled points with
/// square moduli until `count` points are collected.
inline std::vector<SequenceRep> curated_corpus(const SpaceId& s, std::size_t count, std::uint64_t seed = 1) {
    std::vector<SequenceRep> out;
    for (auto& x : detail::structured_points(s))
        if (member_of(x, s) && out.size() < count) out.push_back(x);
    SamplerConfig cfg;
    cfg.max_num = 4;
    cfg.max_den = 4;
    Sampler smp(seed, cfg);
    while (out.size() < count) {
        SequenceRep x = square_moduli(smp.sequence(s));
        if (!x.is_zero()) out.push_back(x);
    }
    return out;
}

/// Corpus points for s filtered by smoothness. Unreachable counts (every point of
/// l_p is smooth) return what was found within the draw budget.
inline std::vector<SequenceRep> corpus_by_smoothness(const SpaceId& s, bool smooth, std::size_t count,
                                                     std::uint64_t seed = 1) {
    std::vector<SequenceRep> out;
    auto take = [&](const SequenceRep& x) {
        if (out.size() < count && !x.is_zero() && is_smooth(s, x).holds() == smooth) out.push_back(x);
    };
    for (auto& x : detail::structured_points(s))
        if (member_of(x, s)) take(x);
    SamplerConfig cfg;
    cfg.max_num = 4;
    cfg.max_den = 4;
    cfg.tie_prob = smooth ? 0.1 : 0.6;
    cfg.zero_prob = smooth ? 0.05 : 0.4;
    Sampler smp(seed, cfg);
    for (std::size_t draws = 0; out.size() < count && draws < 200 * count; ++draws) take(square_moduli(smp.sequence(s)));
    return out;
}

// ---------------------------------------------------------------------------
// Partners.

namespace detail {

inline bool decided_holds(const Verdict& v, double tol) { return v.holds() && (v.mode == Mode::Exact || v.margin > tol); }
inline bool decided_fails(const Verdict& v, double tol) { return v.fails() && (v.mode == Mode::Exact || v.margin > tol); }

// Sets the entries of u at the given 1-based indices to the given values.
inline SequenceRep overwrite(const SequenceRep& u, const std::vector<std::pair<std::size_t, Scalar>>& entries) {
    SequenceRep y = u;
    for (const auto& [n, v] : entries) {
        SequenceRep e = SequenceRep::unit(n, Scalar(1), u.field);
        y = add_scaled(y, v - y.at(n), e);
    }
    return y;
}

}  // namespace detail

/// Up to `count` y with x _|_ y: kernel projections of random points, confirmed by the predicate.
inline std::vector<SequenceRep> left_partners(const SpaceId& s, const SequenceRep& x, std::size_t count,
                                              std::uint64_t seed, double tol = kDefaultTolerance) {
    SamplerConfig cfg;
    cfg.field = x.field;
    Sampler smp(seed, cfg);
    std::vector<SequenceRep> out;
    for (std::size_t t = 0; out.size() < count && t < 20 * count; ++t) {
        SequenceRep u = smp.sequence(s);
        SequenceRep y = u;
        if (t % 4 != 3) {  // every fourth candidate is the raw sample
            try {
                y = project_to_kernel(s, x, u);
            } catch (const DomainError&) {
                continue;
            }
        }
        if (y.is_zero() || !member_of(y, s)) continue;
        if (detail::decided_holds(birkhoff_james(s, x, y, tol), tol)) out.push_back(y);
    }
    return out;
}

/// Up to `count` y with y _|_ x. Candidates vanish on the finite support of x, or put
/// opposite products of equal modulus at two entries of x, or are raw samples.
inline std::vector<SequenceRep> right_partners(const SpaceId& s, const SequenceRep& x, std::size_t count,
                                               std::uint64_t seed, double tol = kDefaultTolerance) {
    SamplerConfig cfg;
    cfg.field = x.field;
    Sampler smp(seed, cfg);
    std::size_t len = x.prefix_len() + 2;
    for (const auto& t : x.tail) len = std::max(len, x.prefix_len() + t.period() + 1);
    std::vector<std::size_t> nz;
    for (std::size_t n = 1; n <= len; ++n)
        if (!x.at(n).is_zero() && x.at(n).is_exact() && exact_abs(x.at(n))) nz.push_back(n);
    std::vector<SequenceRep> out;
    for (std::size_t t = 0; out.size() < count && t < 20 * count; ++t) {
        SequenceRep u = smp.sequence(s);
        SequenceRep y = u;
        int kind = static_cast<int>(t % 3);
        if (kind == 0 && x.has_zero_tail()) {
            std::vector<std::pair<std::size_t, Scalar>> z;
            for (std::size_t n = 1; n <= x.prefix_len(); ++n)
                if (!x.at(n).is_zero()) z.push_back({n, Scalar(0).with_field(x.field)});
            y = detail::overwrite(u, z);
        } else if (kind == 1 && nz.size() >= 2) {
            std::size_t i = nz[smp.uniform(0, static_cast<long>(nz.size()) - 1)];
            std::size_t j = nz[smp.uniform(0, static_cast<long>(nz.size()) - 1)];
            if (i == j) continue;
            Scalar ui = x.at(i) / Scalar(*exact_abs(x.at(i))), uj = x.at(j) / Scalar(*exact_abs(x.at(j)));
            // Same modulus M at i and j with conj(y_i) x_i > 0 > conj(y_j) x_j; M dominates u in
            // sup norms, and in l_p the phase choice makes phi(y_i) x_i + phi(y_j) x_j vanish when
            // |x_i| = |x_j|.
            std::vector<std::pair<std::size_t, Scalar>> z;
            Rational m;
            if (s.is_sup()) {
                m = Rational(static_cast<long>(std::ceil(norm_interval(u, s, 1e-6).hi)) + 1);
            } else {
                if (!x.has_zero_tail()) continue;
                m = abs(smp.nonzero_rational(cfg.max_num, cfg.max_den));
                for (std::size_t n : nz)
                    if (n != i && n != j) z.push_back({n, Scalar(0).with_field(x.field)});
            }
            z.push_back({i, ui * Scalar(m)});
            z.push_back({j, uj * Scalar(-m)});
            y = detail::overwrite(u, z);
        }
        if (y.is_zero() || !member_of(y, s)) continue;
        if (detail::decided_holds(birkhoff_james(s, y, x, tol), tol)) out.push_back(y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Soundness campaigns.

struct SoundnessFailure {
    std::string check;  // "left-symmetry", "right-symmetry", "left-witness", ...
    SequenceRep x;
    std::vector<SequenceRep> others;
    std::string detail;
};

struct SoundnessStats {
    SpaceId space;
    std::size_t points = 0;
    std::size_t left_symmetric = 0, right_symmetric = 0, smooth = 0;
    std::size_t partner_checks = 0;   // implications tested on orthogonal partners
    std::size_t witnesses = 0;        // verified asymmetry or additivity witnesses
    std::size_t undecided = 0;        // consequents the predicate could not decide
    std::vector<SoundnessFailure> failures;
};

struct SoundnessOptions {
    std::size_t partners = 200;      // orthogonal partners per symmetric point
    std::size_t additivity_pairs = 200;
    std::size_t witness_budget = 1000;
    std::uint64_t seed = 1;
    double tol = kDefaultTolerance;
    double witness_margin = 10.0;    // inexact witness verdicts need margin > this * tol
};

namespace detail {

inline bool strong(const Verdict& v, bool holds, const SoundnessOptions& o) {
    if (v.holds() != holds || v.indeterminate()) return false;
    return v.mode == Mode::Exact || v.margin > o.witness_margin * o.tol;
}

}  // namespace detail

/// Symmetry soundness at x: symmetric points are tested on orthogonal partners, and
/// non-symmetric points must yield a verified witness.
inline void check_symmetry_point(const SpaceId& s, const SequenceRep& x, const SoundnessOptions& o, SoundnessStats& st) {
    std::uint64_t seed = o.seed + 7919 * st.points;
    for (bool left : {true, false}) {
        bool sym = (left ? is_left_symmetric(s, x) : is_right_symmetric(s, x)).holds();
        std::string name = left ? "left" : "right";
        if (sym) {
            ++(left ? st.left_symmetric : st.right_symmetric);
            auto ys = left ? left_partners(s, x, o.partners, seed, o.tol) : right_partners(s, x, o.partners, seed, o.tol);
            for (const auto& y : ys) {
                ++st.partner_checks;
                Verdict v = left ? birkhoff_james(s, y, x, o.tol) : birkhoff_james(s, x, y, o.tol);
                if (v.indeterminate()) ++st.undecided;
                else if (v.fails()) st.failures.push_back({name + "-symmetry", x, {y}, "consequent fails"});
            }
            continue;
        }
        try {
            WitnessOptions w{seed, o.witness_budget, o.tol};
            SequenceRep y = left ? left_asymmetry_witness(s, x, w) : right_asymmetry_witness(s, x, w);
            Verdict a = left ? birkhoff_james(s, x, y, o.tol) : birkhoff_james(s, y, x, o.tol);
            Verdict b = left ? birkhoff_james(s, y, x, o.tol) : birkhoff_james(s, x, y, o.tol);
            if (detail::strong(a, true, o) && detail::strong(b, false, o))
                ++st.witnesses;
            else
                st.failures.push_back({name + "-witness", x, {y}, "witness margins too small"});
        } catch (const SearchExhausted& e) {
            st.failures.push_back({name + "-witness", x, {}, e.what()});
        }
    }
}

/// Smoothness soundness at x: additivity on orthogonal pairs at smooth x, a verified
/// violating pair at non-smooth x.
inline void check_smoothness_point(const SpaceId& s, const SequenceRep& x, const SoundnessOptions& o, SoundnessStats& st) {
    std::uint64_t seed = o.seed + 104729 * st.points;
    if (is_smooth(s, x).holds()) {
        ++st.smooth;
        auto ys = left_partners(s, x, 2 * o.additivity_pairs, seed, o.tol);
        for (std::size_t i = 0; i + 1 < ys.size(); i += 2) {
            ++st.partner_checks;
            Verdict v = birkhoff_james(s, x, ys[i] + ys[i + 1], o.tol);
            if (v.indeterminate()) ++st.undecided;
            else if (v.fails()) st.failures.push_back({"additivity", x, {ys[i], ys[i + 1]}, "x not orthogonal to y + z"});
        }
        return;
    }
    try {
        auto [y, z] = additivity_violation(s, x, {seed, o.witness_budget, o.tol});
        if (detail::strong(birkhoff_james(s, x, y, o.tol), true, o) && detail::strong(birkhoff_james(s, x, z, o.tol), true, o) &&
            detail::strong(birkhoff_james(s, x, y + z, o.tol), false, o))
            ++st.witnesses;
        else
            st.failures.push_back({"additivity-witness", x, {y, z}, "witness margins too small"});
    } catch (const SearchExhausted& e) {
        st.failures.push_back({"additivity-witness", x, {}, e.what()});
    }
}

inline SoundnessStats soundness_report(const SpaceId& s, const std::vector<SequenceRep>& points, const SoundnessOptions& o) {
    SoundnessStats st;
    st.space = s;
    for (const auto& x : points) {
        if (s.kind != Space::Lp || s.p != 2) check_symmetry_point(s, x, o, st);
        check_smoothness_point(s, x, o, st);
        ++st.points;
    }
    return st;
}

// ---------------------------------------------------------------------------
// Full campaign.

struct CampaignConfig {
    std::vector<SpaceId> spaces;
    std::size_t n = 1000;              // agreement pairs per space
    std::size_t points = 40;           // corpus points per space for the soundness checks
    std::uint64_t seed = 42;
    double tol = kDefaultTolerance;
    double delta = kDefaultDelta;
    SamplerConfig sampler;
    SoundnessOptions soundness{50, 50, 1000, 42, kDefaultTolerance, 10.0};
    bool inject_bug = false;
};

struct CampaignReport {
    std::vector<AgreementStats> agreement;
    std::vector<SoundnessStats> soundness;

    std::size_t hard_failures() const {
        std::size_t n = 0;
        for (const auto& a : agreement) n += a.hard_disagree;
        for (const auto& s : soundness) n += s.failures.size();
        return n;
    }
};

/// A deliberately wrong predicate for harness self-tests: it reports Holds whenever
/// the true verdict is a failure by a margin below 1.
inline OrthPredicate injected_bug_predicate() {
    return [](const SpaceId& s, const SequenceRep& x, const SequenceRep& y, double tol) {
        Verdict v = birkhoff_james(s, x, y, tol);
        if (v.fails() && v.margin < 1.0) return Verdict{Outcome::Holds, 0.0, v.mode};
        return v;
    };
}

inline CampaignReport run_campaign(const CampaignConfig& c) {
    CampaignReport r;
    OrthPredicate pred = c.inject_bug ? injected_bug_predicate() : characterization_predicate();
    for (const auto& s : c.spaces) {
        r.agreement.push_back(agreement_report(s, c.sampler, c.n, c.seed, c.tol, c.delta, pred));
        if (c.points > 0) {
            SoundnessOptions o = c.soundness;
            o.seed = c.seed;
            o.tol = c.tol;
            r.soundness.push_back(soundness_report(s, curated_corpus(s, c.points, c.seed), o));
        }
    }
    return r;
}

}  // namespace bjseq
