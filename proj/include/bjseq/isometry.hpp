#pragma once

// Signed permutation operators (Tx)_n = c_n x_{sigma(n)} with finitely many moved
// indices, and a desk-scale falsifier for finite matrices posing as isometries.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "classify.hpp"
#include "norm.hpp"
#include "sampling.hpp"

namespace bjseq {

class SignedPermutation {
public:
    SignedPermutation() = default;

    /// perm maps n to sigma(n); unlisted indices are fixed. weights default to 1.
    SignedPermutation(std::map<std::size_t, std::size_t> perm, std::map<std::size_t, Scalar> weights)
        : perm_(std::move(perm)), weights_(std::move(weights)) {
        normalize();
    }

    static SignedPermutation identity() { return {}; }
    static SignedPermutation swap(std::size_t i, std::size_t j) { return {{{i, j}, {j, i}}, {}}; }
    static SignedPermutation weight(std::size_t i, Scalar c) { return {{}, {{i, std::move(c)}}}; }

    std::size_t sigma(std::size_t n) const {
        auto it = perm_.find(n);
        return it == perm_.end() ? n : it->second;
    }
    Scalar weight_at(std::size_t n) const {
        auto it = weights_.find(n);
        return it == weights_.end() ? Scalar(1) : it->second;
    }
    const std::map<std::size_t, std::size_t>& perm() const { return perm_; }
    const std::map<std::size_t, Scalar>& weights() const { return weights_; }

    /// Largest index touched; 0 for the identity.
    std::size_t support_end() const {
        std::size_t m = 0;
        if (!perm_.empty()) m = perm_.rbegin()->first;
        if (!weights_.empty()) m = std::max(m, weights_.rbegin()->first);
        return m;
    }

    Field field() const {
        Field f = Field::Real;
        for (const auto& [n, c] : weights_) f = join(f, c.field());
        return f;
    }

    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
        return a.perm_ == b.perm_ && a.weights_ == b.weights_;
    }

private:
    void normalize() {
        std::set<std::size_t> from, to;
        for (auto it = perm_.begin(); it != perm_.end();) {
            if (it->first == 0 || it->second == 0) throw ValidationError("signed permutation indices start at 1");
            if (it->first == it->second) {
                it = perm_.erase(it);
                continue;
            }
            from.insert(it->first);
            to.insert(it->second);
            ++it;
        }
        if (from != to) throw ValidationError("signed permutation: perm is not a bijection of its support");
        for (auto it = weights_.begin(); it != weights_.end();) {
            const Scalar& c = it->second;
            if (it->first == 0) throw ValidationError("signed permutation indices start at 1");
            if (c.is_exact() ? mod_sq(c).re() != 1 : std::fabs(mod_sq(c).center().real() - 1) > kDefaultTolerance)
                throw ValidationError("signed permutation weight " + c.to_string() + " is not unimodular");
            if (c.is_exact() && c == Scalar(1).with_field(c.field()))
                it = weights_.erase(it);
            else
                ++it;
        }
    }

    std::map<std::size_t, std::size_t> perm_;
    std::map<std::size_t, Scalar> weights_;
};

inline SequenceRep sp_apply(const SignedPermutation& t, const SequenceRep& x) {
    std::size_t m = t.support_end();
    if (m == 0) return x;
    Field f = join(x.field, t.field());
    SequenceRep xe = extend_prefix(x, m);
    SequenceRep out(f, {}, xe.tail);
    for (std::size_t n = 1; n <= xe.prefix_len(); ++n)
        out.prefix.push_back((t.weight_at(n) * xe.at(t.sigma(n))).with_field(f));
    return canonicalize(std::move(out));
}

/// sp_apply(compose(a, b), x) = sp_apply(a, sp_apply(b, x)).
inline SignedPermutation sp_compose(const SignedPermutation& a, const SignedPermutation& b) {
    // (a(bx))_n = c^a_n (bx)_{sa(n)} = c^a_n c^b_{sa(n)} x_{sb(sa(n))}
    std::set<std::size_t> idx;
    for (const auto& [n, _] : a.perm()) idx.insert(n);
    for (const auto& [n, _] : b.perm()) idx.insert(n);
    for (const auto& [n, _] : a.weights()) idx.insert(n);
    for (const auto& [n, _] : b.weights()) idx.insert(n);
    std::map<std::size_t, std::size_t> perm;
    std::map<std::size_t, Scalar> w;
    for (std::size_t n : idx) {
        perm[n] = b.sigma(a.sigma(n));
        w.emplace(n, a.weight_at(n) * b.weight_at(a.sigma(n)));
    }
    return {std::move(perm), std::move(w)};
}

inline SignedPermutation sp_invert(const SignedPermutation& t) {
    // x_m = conj(c_n) y_n with m = sigma(n)
    std::map<std::size_t, std::size_t> perm;
    std::map<std::size_t, Scalar> w;
    std::set<std::size_t> idx;
    for (const auto& [n, _] : t.perm()) idx.insert(n);
    for (const auto& [n, _] : t.weights()) idx.insert(n);
    for (std::size_t n : idx) {
        perm[t.sigma(n)] = n;
        w.emplace(t.sigma(n), conj(t.weight_at(n)));
    }
    return {std::move(perm), std::move(w)};
}

/// Random signed permutation moving indices within 1..n; weights are exact unimodular scalars.
inline SignedPermutation random_signed_permutation(Sampler& smp, std::size_t n) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), smp.rng());
    std::map<std::size_t, std::size_t> perm;
    std::map<std::size_t, Scalar> w;
    for (std::size_t i = 0; i < n; ++i) {
        perm[i + 1] = img[i];
        if (smp.coin(0.5)) w.emplace(i + 1, smp.unimodular());
    }
    return {std::move(perm), std::move(w)};
}

struct IsometryViolation {
    SequenceRep x;
    NormValue before, after;
};

struct IsometryReport {
    std::size_t samples = 0;
    std::size_t exact_checks = 0;  // comparisons decided in exact arithmetic
    std::vector<IsometryViolation> violations;
};

namespace detail {

// True when x and y differ only on 1..m and carry the same moduli there, in some order.
// Then every sum of |.|^p agrees, so the norms are equal in every space.
inline bool same_moduli(const SequenceRep& x, const SequenceRep& y) {
    if (!x.is_exact() || !y.is_exact()) return false;
    SequenceRep d = add_scaled(y, Scalar(-1), x);
    if (!d.has_zero_tail()) return false;
    std::vector<Rational> a, b;
    for (std::size_t n = 1; n <= d.prefix.size(); ++n) {
        a.push_back(mod_sq(x.at(n)).re());
        b.push_back(mod_sq(y.at(n)).re());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace detail

/// ||T x|| = ||x|| on `samples` random members of s. Exact comparison whenever both
/// norms are exact or the moduli of x and Tx match; otherwise the enclosures must overlap.
inline IsometryReport verify_isometry(const SignedPermutation& t, const SpaceId& s, std::size_t samples,
                                      std::uint64_t seed, SamplerConfig cfg = {}) {
    cfg.field = join(cfg.field, t.field());
    cfg.max_prefix = std::max(cfg.max_prefix, t.support_end());
    Sampler smp(seed, cfg);
    IsometryReport rep;
    for (std::size_t i = 0; i < samples; ++i) {
        SequenceRep x = smp.sequence(s);
        SequenceRep tx = sp_apply(t, x);
        NormValue a = norm(x, s), b = norm(tx, s);
        ++rep.samples;
        bool ok;
        if (auto c = compare_exact(a, b)) {
            ++rep.exact_checks;
            ok = *c == 0;
        } else if (detail::same_moduli(x, tx)) {
            ++rep.exact_checks;
            ok = true;
        } else {
            ok = a.lo() <= b.hi() && b.lo() <= a.hi();
        }
        if (!ok) rep.violations.push_back({x, a, b});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Finite matrices acting on coordinates 1..n, identity beyond.

struct FiniteMatrixOperator {
    std::size_t n = 0;
    std::vector<std::vector<Scalar>> entries;

    FiniteMatrixOperator() = default;
    explicit FiniteMatrixOperator(std::vector<std::vector<Scalar>> rows) : n(rows.size()), entries(std::move(rows)) {
        if (n == 0) throw ValidationError("matrix operator needs n >= 1");
        for (const auto& r : entries)
            if (r.size() != n) throw ValidationError("matrix operator must be square");
    }

    Field field() const {
        Field f = Field::Real;
        for (const auto& r : entries)
            for (const auto& e : r) f = join(f, e.field());
        return f;
    }
};

inline SequenceRep apply(const FiniteMatrixOperator& m, const SequenceRep& x) {
    Field f = join(x.field, m.field());
    SequenceRep xe = extend_prefix(x, m.n);
    SequenceRep out(f, xe.prefix, xe.tail);
    for (auto& s : out.prefix) s = s.with_field(f);
    for (std::size_t i = 0; i < m.n; ++i) {
        Scalar acc = Scalar(0).with_field(f);
        for (std::size_t j = 0; j < m.n; ++j)
            if (!m.entries[i][j].is_zero()) acc = acc + m.entries[i][j] * xe.prefix[j];
        out.prefix[i] = acc.with_field(f);
    }
    return canonicalize(std::move(out));
}

/// Every column has exactly one nonzero entry, of modulus 1, in a permutation pattern.
inline bool matrix_is_signed_permutation(const FiniteMatrixOperator& m, double tol = kDefaultTolerance) {
    std::vector<int> row_hits(m.n, 0);
    for (std::size_t j = 0; j < m.n; ++j) {
        int hits = 0;
        for (std::size_t i = 0; i < m.n; ++i) {
            const Scalar& e = m.entries[i][j];
            if (e.is_zero()) continue;
            ++hits;
            ++row_hits[i];
            bool unimodular = e.is_exact() ? mod_sq(e).re() == 1 : std::fabs(mod_sq(e).center().real() - 1) <= tol;
            if (!unimodular) return false;
        }
        if (hits != 1) return false;
    }
    return std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h == 1; });
}

enum class FalsifyStatus { Witness, Pass, Inconclusive };

inline const char* to_string(FalsifyStatus s) {
    switch (s) {
        case FalsifyStatus::Witness: return "witness";
        case FalsifyStatus::Pass: return "pass";
        default: return "inconclusive";
    }
}

struct FalsifyResult {
    FalsifyStatus status = FalsifyStatus::Inconclusive;
    std::optional<SequenceRep> witness;
    Interval norm_x, norm_mx;
    std::size_t trials = 0;
};

namespace detail {

// Structured probes first: basis vectors, e_i +- e_j, and sign patterns.
inline std::vector<SequenceRep> structured_probes(std::size_t n, Field f) {
    std::vector<SequenceRep> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(SequenceRep::unit(i, Scalar(1), f));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            for (int sg : {1, -1})
                out.push_back(add_scaled(SequenceRep::unit(i, Scalar(1), f), Scalar(sg), SequenceRep::unit(j, Scalar(1), f)));
    if (n <= 10) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            std::vector<Scalar> v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar((mask >> i) & 1 ? -1 : 1));
            out.push_back(SequenceRep::finite(std::move(v), f));
        }
    }
    return out;
}

}  // namespace detail

/// Searches x with | ||Mx|| - ||x|| | > tol ||x||. Pass only for signed permutations;
/// a fruitless search on anything else is Inconclusive.
inline FalsifyResult falsify_matrix_isometry(const FiniteMatrixOperator& m, const SpaceId& s, std::size_t trials,
                                             std::uint64_t seed, double tol = kDefaultTolerance) {
    FalsifyResult res;
    if (matrix_is_signed_permutation(m)) {
        res.status = FalsifyStatus::Pass;
        return res;
    }
    Field f = m.field();
    auto probe = [&](const SequenceRep& x) {
        ++res.trials;
        if (x.is_zero()) return false;
        double eps = 1e-3 * tol;
        Interval a = norm_interval(x, s, eps * std::max(1.0, norm_interval(x, s, 1e-3).hi));
        Interval b = norm_interval(apply(m, x), s, eps * std::max(1.0, a.hi));
        Interval d = b - a;
        double bound = tol * a.hi;
        if (d.lo > bound || d.hi < -bound) {
            res.status = FalsifyStatus::Witness;
            res.witness = x;
            res.norm_x = a;
            res.norm_mx = b;
            return true;
        }
        return false;
    };
    for (const auto& x : detail::structured_probes(m.n, f)) {
        if (res.trials >= trials) break;
        if (probe(x)) return res;
    }
    SamplerConfig cfg = SamplerConfig::preset("finite");
    cfg.field = f;
    cfg.min_prefix = 1;
    cfg.max_prefix = m.n;
    Sampler smp(seed, cfg);
    while (res.trials < trials)
        if (probe(smp.sequence(s.kind == Space::C00 ? s : SpaceId::c00()))) return res;
    res.status = FalsifyStatus::Inconclusive;
    return res;
}

/// Left and right symmetry are both preserved by T at x.
inline Verdict symmetry_transport_check(const SignedPermutation& t, const SpaceId& s, const SequenceRep& x) {
    require_member(x, s);
    SequenceRep tx = sp_apply(t, x);
    bool same = is_left_symmetric(s, x).outcome == is_left_symmetric(s, tx).outcome &&
                is_right_symmetric(s, x).outcome == is_right_symmetric(s, tx).outcome;
    return Verdict::exact(same);
}

}  // namespace bjseq
