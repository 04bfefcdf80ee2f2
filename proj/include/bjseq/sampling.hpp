#pragma once

// Seeded random sequences for property campaigns and witness search.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "seqrep.hpp"

namespace bjseq {

struct SamplerConfig {
    std::size_t min_prefix = 0;
    std::size_t max_prefix = 5;
    long max_den = 16;
    long max_num = 24;
    std::size_t max_period = 3;
    // Relative weights of tail atom kinds; kinds the target space forbids are skipped.
    double w_zero = 1.0, w_constant = 1.0, w_periodic = 1.0, w_geometric = 1.0;
    double zero_prob = 0.2;  // probability an entry is exactly 0
    double tie_prob = 0.35;  // probability an entry reuses the shared modulus level
    Field field = Field::Real;

    /// "default", "periodic-heavy", "geometric-heavy", "finite".
    static SamplerConfig preset(const std::string& name) {
        SamplerConfig c;
        if (name == "default") return c;
        if (name == "periodic-heavy") {
            c.w_zero = 0.2;
            c.w_constant = 1.0;
            c.w_periodic = 4.0;
            c.w_geometric = 0.5;
            c.max_period = 4;
            return c;
        }
        if (name == "geometric-heavy") {
            c.w_zero = 0.3;
            c.w_constant = 0.3;
            c.w_periodic = 0.3;
            c.w_geometric = 4.0;
            return c;
        }
        if (name == "finite") {
            c.w_constant = c.w_periodic = c.w_geometric = 0.0;
            c.min_prefix = 1;
            return c;
        }
        throw ValidationError("unknown sampler preset '" + name + "'");
    }
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed, SamplerConfig cfg = {}) : rng_(seed), cfg_(cfg) {}

    std::mt19937_64& rng() { return rng_; }
    const SamplerConfig& config() const { return cfg_; }

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    bool coin(double p) { return unit() < p; }

    Rational rational(long max_num, long max_den) {
        Rational q(uniform(-max_num, max_num), uniform(1, max_den));
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational(long max_num, long max_den) {
        for (;;) {
            Rational q = rational(max_num, max_den);
            if (q != 0) return q;
        }
    }

    /// Unimodular scalar with exact rational coordinates.
    Scalar unimodular() {
        static const int triples[][2] = {{1, 0}, {0, 1}, {3, 4}, {4, 3}, {5, 12}, {12, 5}, {8, 15}};
        if (cfg_.field == Field::Real) return Scalar(coin(0.5) ? 1 : -1);
        const auto& t = triples[uniform(0, 6)];
        long h = t[0] == 0 || t[1] == 0 ? 1 : (t[0] == 3 || t[0] == 4 ? 5 : (t[0] == 8 ? 17 : 13));
        Rational re(t[0], h), im(t[1], h);
        re.canonicalize();
        im.canonicalize();
        int quadrant = static_cast<int>(uniform(0, 3));
        Scalar z = Scalar::complex(re, im);
        for (int i = 0; i < quadrant; ++i) z = z * Scalar::complex(0, 1);
        return z;
    }

    /// Scalar entry; with the tie probability it has modulus `level`.
    Scalar scalar(const Rational& level) {
        if (coin(cfg_.zero_prob)) return Scalar(0).with_field(cfg_.field);
        if (level != 0 && coin(cfg_.tie_prob)) return unimodular() * Scalar(level);
        if (cfg_.field == Field::Real) return Scalar(nonzero_rational(cfg_.max_num, cfg_.max_den));
        return Scalar::complex(rational(cfg_.max_num, cfg_.max_den), rational(cfg_.max_num, cfg_.max_den));
    }

    /// Nonzero ratio with |r| < 1.
    Scalar ratio() {
        long d = uniform(2, cfg_.max_den);
        long n = 0;
        while (n == 0) n = uniform(-(d - 1), d - 1);
        Rational r(n, d);
        r.canonicalize();
        if (cfg_.field == Field::Complex && coin(0.5)) return unimodular() * Scalar(abs(r));
        return Scalar(r);
    }

    /// Random member of s with a single-atom tail.
    SequenceRep sequence(const SpaceId& s) {
        using K = TailAtom::Kind;
        std::vector<std::pair<K, double>> kinds{{K::Zero, cfg_.w_zero}};
        if (s.kind != Space::C00) kinds.push_back({K::Geometric, cfg_.w_geometric});
        if (s.kind == Space::LInf || s.kind == Space::C) kinds.push_back({K::Constant, cfg_.w_constant});
        if (s.kind == Space::LInf) kinds.push_back({K::Periodic, cfg_.w_periodic});
        double total = 0;
        for (auto& k : kinds) total += k.second;
        if (total <= 0) kinds = {{K::Zero, 1.0}}, total = 1.0;

        Rational level = nonzero_rational(cfg_.max_num, cfg_.max_den);
        level = abs(level);
        for (;;) {
            std::size_t n = static_cast<std::size_t>(uniform(static_cast<long>(cfg_.min_prefix), static_cast<long>(cfg_.max_prefix)));
            std::vector<Scalar> pre;
            for (std::size_t i = 0; i < n; ++i) pre.push_back(scalar(level));
            double u = unit() * total;
            K kind = kinds.back().first;
            for (auto& k : kinds) {
                if (u < k.second) {
                    kind = k.first;
                    break;
                }
                u -= k.second;
            }
            TailAtom t;
            switch (kind) {
                case K::Zero: t = TailAtom::zero(); break;
                case K::Constant: t = TailAtom::constant(scalar(level)); break;
                case K::Periodic: {
                    std::size_t per = static_cast<std::size_t>(uniform(2, static_cast<long>(std::max<std::size_t>(2, cfg_.max_period))));
                    std::vector<Scalar> v;
                    for (std::size_t i = 0; i < per; ++i) v.push_back(scalar(level));
                    t = TailAtom::periodic(std::move(v));
                    break;
                }
                case K::Geometric: {
                    Scalar a = scalar(level);
                    if (a.is_zero()) a = Scalar(level).with_field(cfg_.field);
                    t = TailAtom::geometric(a, ratio());
                    break;
                }
            }
            SequenceRep x = canonicalize(SequenceRep(cfg_.field, std::move(pre), {std::move(t)}));
            if (!x.is_zero() && member_of(x, s)) return x;
        }
    }

private:
    std::mt19937_64 rng_;
    SamplerConfig cfg_;
};

}  // namespace bjseq
