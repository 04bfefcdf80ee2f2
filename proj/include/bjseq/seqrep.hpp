#pragma once

// Infinite sequences as a finite prefix plus a sum of tail atoms.
// For n > N (N = prefix length) the value is sum of atom(n - N), with
//   Constant(c)(k) = c, Periodic(v)(k) = v[(k-1) mod |v|], Geometric(a,r)(k) = a r^k.
//
// Canonical form: the tail is either the single atom Zero, or at most one
// Constant/Periodic atom (minimal period) followed by Geometric atoms with
// pairwise distinct ratios sorted structurally. The prefix is the shortest
// one consistent with the tail.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace bjseq {

/// Cap on the combined period used when merging periodic tails or aligning two sequences.
inline constexpr std::size_t kMaxCombinedPeriod = 1000000;

enum class Space { LInf, C, C0, C00, L1, Lp };

struct SpaceId {
    Space kind = Space::LInf;
    Rational p{0};  // exponent, meaningful for Lp only

    static SpaceId linf() { return {Space::LInf, 0}; }
    static SpaceId c() { return {Space::C, 0}; }
    static SpaceId c0() { return {Space::C0, 0}; }
    static SpaceId c00() { return {Space::C00, 0}; }
    static SpaceId l1() { return {Space::L1, 0}; }
    static SpaceId lp(const Rational& p) {
        if (p <= 1) throw DomainError("lp requires p > 1, got " + to_string(p));
        return {Space::Lp, p};
    }

    bool is_sup() const { return kind == Space::LInf || kind == Space::C || kind == Space::C0 || kind == Space::C00; }
    double p_double() const { return p.get_d(); }

    std::string name() const {
        switch (kind) {
            case Space::LInf: return "linf";
            case Space::C: return "c";
            case Space::C0: return "c0";
            case Space::C00: return "c00";
            case Space::L1: return "l1";
            case Space::Lp: return "l" + p.get_str();  // l3, l3/2; parse() reads it back
        }
        return "?";
    }

    /// Accepts linf, c, c0, c00, l1, lp (with p), and the shorthands l3, l3/2, ...
    static SpaceId parse(const std::string& name, std::optional<Rational> p = std::nullopt) {
        if (name == "linf" || name == "l_inf" || name == "inf") return linf();
        if (name == "c") return c();
        if (name == "c0") return c0();
        if (name == "c00") return c00();
        if (name == "l1") return l1();
        if (name == "lp") {
            if (!p) throw ValidationError("space lp needs an exponent");
            return *p == 1 ? l1() : lp(*p);
        }
        if (name.size() > 1 && name[0] == 'l') {
            Rational q = parse_rational(name.substr(1));
            return q == 1 ? l1() : lp(q);
        }
        throw ValidationError("unknown space '" + name + "'");
    }

    friend bool operator==(const SpaceId& a, const SpaceId& b) { return a.kind == b.kind && a.p == b.p; }
};

struct TailAtom {
    enum class Kind { Zero, Constant, Periodic, Geometric };

    Kind kind = Kind::Zero;
    std::vector<Scalar> values;  // Constant: one value; Periodic: one period
    Scalar a, r;                 // Geometric

    static TailAtom zero() { return {}; }
    static TailAtom constant(Scalar c) { return {Kind::Constant, {std::move(c)}, {}, {}}; }
    static TailAtom periodic(std::vector<Scalar> v) {
        if (v.empty()) throw ValidationError("periodic tail needs at least one value");
        return {Kind::Periodic, std::move(v), {}, {}};
    }
    static TailAtom geometric(Scalar a, Scalar r) { return {Kind::Geometric, {}, std::move(a), std::move(r)}; }

    bool is_periodic_like() const { return kind == Kind::Constant || kind == Kind::Periodic; }
    std::size_t period() const { return is_periodic_like() ? values.size() : 1; }

    /// Value at tail offset k >= 1.
    Scalar at(std::size_t k) const {
        switch (kind) {
            case Kind::Zero: return Scalar(0);
            case Kind::Constant: return values[0];
            case Kind::Periodic: return values[(k - 1) % values.size()];
            case Kind::Geometric: return a * pow(r, k);
        }
        return Scalar(0);
    }

    friend bool operator==(const TailAtom& x, const TailAtom& y) {
        if (x.kind != y.kind) return false;
        if (x.kind == Kind::Geometric) return x.a == y.a && x.r == y.r;
        return x.values == y.values;
    }
};

inline const char* to_string(TailAtom::Kind k) {
    switch (k) {
        case TailAtom::Kind::Zero: return "zero";
        case TailAtom::Kind::Constant: return "constant";
        case TailAtom::Kind::Periodic: return "periodic";
        default: return "geometric";
    }
}

class SequenceRep;
SequenceRep canonicalize(SequenceRep raw);

class SequenceRep {
public:
    Field field = Field::Real;
    std::vector<Scalar> prefix;
    std::vector<TailAtom> tail{TailAtom::zero()};

    SequenceRep() = default;
    SequenceRep(Field f, std::vector<Scalar> pre, std::vector<TailAtom> t)
        : field(f), prefix(std::move(pre)), tail(std::move(t)) {}

    /// Canonical finitely supported sequence with the given entries.
    static SequenceRep finite(std::vector<Scalar> entries, Field f = Field::Real) {
        return canonicalize(SequenceRep(f, std::move(entries), {TailAtom::zero()}));
    }
    static SequenceRep with_tail(std::vector<Scalar> pre, TailAtom atom, Field f = Field::Real) {
        return canonicalize(SequenceRep(f, std::move(pre), {std::move(atom)}));
    }
    /// c * e_n.
    static SequenceRep unit(std::size_t n, Scalar c = Scalar(1), Field f = Field::Real) {
        std::vector<Scalar> v(n, Scalar(0));
        v[n - 1] = std::move(c);
        return finite(std::move(v), f);
    }

    std::size_t prefix_len() const { return prefix.size(); }
    bool has_zero_tail() const { return tail.size() == 1 && tail[0].kind == TailAtom::Kind::Zero; }
    bool single_atom() const { return tail.size() == 1; }
    bool is_zero() const { return prefix.empty() && has_zero_tail(); }

    bool is_exact() const {
        for (const auto& s : prefix)
            if (!s.is_exact()) return false;
        for (const auto& t : tail) {
            for (const auto& s : t.values)
                if (!s.is_exact()) return false;
            if (t.kind == TailAtom::Kind::Geometric && (!t.a.is_exact() || !t.r.is_exact())) return false;
        }
        return true;
    }

    /// The Constant/Periodic part of the tail as one period (Zero tail gives {0}).
    std::vector<Scalar> periodic_part() const {
        for (const auto& t : tail)
            if (t.is_periodic_like()) return t.values;
        return {Scalar(0).with_field(field)};
    }

    std::vector<const TailAtom*> geometrics() const {
        std::vector<const TailAtom*> out;
        for (const auto& t : tail)
            if (t.kind == TailAtom::Kind::Geometric) out.push_back(&t);
        return out;
    }

    /// Value at tail offset k >= 1.
    Scalar tail_at(std::size_t k) const {
        Scalar s = Scalar(0).with_field(field);
        for (const auto& t : tail)
            if (t.kind != TailAtom::Kind::Zero) s = s + t.at(k);
        return s;
    }

    /// x_n, 1-based.
    Scalar at(std::size_t n) const {
        if (n == 0) throw ValidationError("sequence indices start at 1");
        if (n <= prefix.size()) return prefix[n - 1];
        return tail_at(n - prefix.size());
    }

    friend bool operator==(const SequenceRep& x, const SequenceRep& y) {
        return x.field == y.field && x.prefix == y.prefix && x.tail == y.tail;
    }
    friend bool operator!=(const SequenceRep& x, const SequenceRep& y) { return !(x == y); }
};

namespace detail {

inline std::size_t checked_lcm(std::size_t a, std::size_t b) {
    std::size_t l = std::lcm(a, b);
    if (l > kMaxCombinedPeriod) throw DomainError("combined period exceeds " + std::to_string(kMaxCombinedPeriod));
    return l;
}

inline std::vector<Scalar> minimal_period(std::vector<Scalar> v) {
    std::size_t n = v.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
        if (ok) {
            v.resize(d);
            break;
        }
    }
    return v;
}

inline void validate_geometric(const TailAtom& t) {
    if (t.a.is_zero()) throw ValidationError("geometric tail with a = 0");
    if (t.r.is_zero()) throw ValidationError("geometric tail with r = 0");
    Scalar m = mod_sq(t.r);
    bool below_one = m.is_exact() ? m.re() < 1 : m.enclosure().re.hi < 1.0;
    if (!below_one) throw ValidationError("geometric tail needs |r| < 1, got r = " + t.r.to_string());
}

}  // namespace detail

/// Brings a raw representation into canonical form (see the header comment).
inline SequenceRep canonicalize(SequenceRep raw) {
    Field f = raw.field;
    for (auto& s : raw.prefix) s = s.with_field(f);

    std::vector<Scalar> per;  // merged Constant/Periodic part, empty if none
    std::vector<TailAtom> geos;
    for (auto& t : raw.tail) {
        switch (t.kind) {
            case TailAtom::Kind::Zero: break;
            case TailAtom::Kind::Constant:
            case TailAtom::Kind::Periodic: {
                if (t.values.empty()) throw ValidationError("periodic tail needs at least one value");
                std::vector<Scalar> v;
                for (auto& s : t.values) v.push_back(s.with_field(f));
                if (per.empty()) {
                    per = std::move(v);
                } else {
                    std::size_t l = detail::checked_lcm(per.size(), v.size());
                    std::vector<Scalar> sum(l);
                    for (std::size_t i = 0; i < l; ++i) sum[i] = per[i % per.size()] + v[i % v.size()];
                    per = std::move(sum);
                }
                break;
            }
            case TailAtom::Kind::Geometric: {
                detail::validate_geometric(t);
                TailAtom g = TailAtom::geometric(t.a.with_field(f), t.r.with_field(f));
                auto it = std::find_if(geos.begin(), geos.end(), [&](const TailAtom& h) { return h.r == g.r; });
                if (it == geos.end())
                    geos.push_back(std::move(g));
                else
                    it->a = it->a + g.a;
                break;
            }
        }
    }
    std::erase_if(geos, [](const TailAtom& g) { return g.a.is_zero(); });
    std::sort(geos.begin(), geos.end(), [](const TailAtom& x, const TailAtom& y) { return structural_less(x.r, y.r); });

    std::vector<TailAtom> tail;
    if (!per.empty()) {
        per = detail::minimal_period(std::move(per));
        if (per.size() == 1) {
            if (!per[0].is_zero()) tail.push_back(TailAtom::constant(per[0]));
        } else {
            tail.push_back(TailAtom::periodic(std::move(per)));
        }
    }
    for (auto& g : geos) tail.push_back(std::move(g));
    if (tail.empty()) tail.push_back(TailAtom::zero());

    SequenceRep out(f, std::move(raw.prefix), std::move(tail));

    // Shortest prefix: absorb the last prefix entry while it equals the tail shifted back by one.
    // Approximate data is left alone since back-shifting would inflate its error radius.
    if (!out.is_exact()) return out;
    while (!out.prefix.empty()) {
        Scalar before = Scalar(0).with_field(f);
        std::vector<TailAtom> shifted;
        for (const auto& t : out.tail) {
            switch (t.kind) {
                case TailAtom::Kind::Zero: shifted.push_back(t); break;
                case TailAtom::Kind::Constant:
                    before = before + t.values[0];
                    shifted.push_back(t);
                    break;
                case TailAtom::Kind::Periodic: {
                    std::vector<Scalar> v = t.values;
                    std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
                    before = before + v[0];
                    shifted.push_back(TailAtom::periodic(std::move(v)));
                    break;
                }
                case TailAtom::Kind::Geometric:
                    before = before + t.a;
                    shifted.push_back(TailAtom::geometric(t.a / t.r, t.r));
                    break;
            }
        }
        if (!(out.prefix.back() == before)) break;
        out.prefix.pop_back();
        out.tail = std::move(shifted);
    }
    return out;
}

inline bool is_canonical(const SequenceRep& x) { return canonicalize(x) == x; }

/// Membership by tail shape.
inline bool member_of(const SequenceRep& x, const SpaceId& s) {
    auto all_in = [&](std::initializer_list<TailAtom::Kind> ok) {
        return std::all_of(x.tail.begin(), x.tail.end(), [&](const TailAtom& t) {
            return std::find(ok.begin(), ok.end(), t.kind) != ok.end();
        });
    };
    using K = TailAtom::Kind;
    switch (s.kind) {
        case Space::LInf: return true;
        case Space::C: return all_in({K::Zero, K::Constant, K::Geometric});
        case Space::C0:
        case Space::L1:
        case Space::Lp: return all_in({K::Zero, K::Geometric});
        case Space::C00: return x.has_zero_tail();
    }
    return false;
}

inline void require_member(const SequenceRep& x, const SpaceId& s, const char* what = "x") {
    if (!member_of(x, s)) throw DomainError(std::string(what) + " is not a member of " + s.name());
}

/// Tail of x seen from `shift` indices further on: T'(k) = T(k + shift).
inline std::vector<TailAtom> shift_tail(const std::vector<TailAtom>& tail, std::size_t shift) {
    std::vector<TailAtom> out;
    for (const auto& t : tail) {
        switch (t.kind) {
            case TailAtom::Kind::Periodic: {
                std::vector<Scalar> v = t.values;
                std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(shift % v.size()), v.end());
                out.push_back(TailAtom::periodic(std::move(v)));
                break;
            }
            case TailAtom::Kind::Geometric: out.push_back(TailAtom::geometric(t.a * pow(t.r, shift), t.r)); break;
            default: out.push_back(t);
        }
    }
    return out;
}

/// Same sequence with prefix extended (by tail evaluation) to length n; not canonical.
inline SequenceRep extend_prefix(const SequenceRep& x, std::size_t n) {
    if (n <= x.prefix_len()) return x;
    SequenceRep out = x;
    for (std::size_t i = x.prefix_len() + 1; i <= n; ++i) out.prefix.push_back(x.at(i));
    out.tail = shift_tail(x.tail, n - x.prefix_len());
    return out;
}

inline SequenceRep scale(const SequenceRep& x, const Scalar& alpha) {
    if (alpha.is_zero()) return SequenceRep(x.field, {}, {TailAtom::zero()});
    Scalar al = alpha.with_field(x.field);
    SequenceRep out = x;
    for (auto& s : out.prefix) s = al * s;
    for (auto& t : out.tail) {
        for (auto& v : t.values) v = al * v;
        if (t.kind == TailAtom::Kind::Geometric) t.a = al * t.a;
    }
    return canonicalize(std::move(out));
}

/// x + lambda y, exact.
inline SequenceRep add_scaled(const SequenceRep& x, const Scalar& lambda, const SequenceRep& y) {
    if (x.field != y.field) throw ValidationError("add_scaled: field mismatch");
    if (lambda.is_zero()) return canonicalize(x);
    Scalar lam = lambda.with_field(x.field);
    std::size_t n = std::max(x.prefix_len(), y.prefix_len());
    SequenceRep xe = extend_prefix(x, n), ye = extend_prefix(y, n);
    SequenceRep out(x.field, {}, {});
    for (std::size_t i = 0; i < n; ++i) out.prefix.push_back(xe.prefix[i] + lam * ye.prefix[i]);
    out.tail = xe.tail;
    for (auto t : ye.tail) {
        for (auto& v : t.values) v = lam * v;
        if (t.kind == TailAtom::Kind::Geometric) t.a = lam * t.a;
        out.tail.push_back(std::move(t));
    }
    return canonicalize(std::move(out));
}

inline SequenceRep operator+(const SequenceRep& x, const SequenceRep& y) { return add_scaled(x, Scalar(1), y); }
inline SequenceRep operator-(const SequenceRep& x, const SequenceRep& y) { return add_scaled(x, Scalar(-1), y); }

inline std::vector<Scalar> truncate(const SequenceRep& x, std::size_t n) {
    if (n == 0) throw ValidationError("truncate needs n >= 1");
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) out.push_back(x.at(i));
    return out;
}

namespace detail {
inline void push_unique(std::vector<Scalar>& v, const Scalar& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}
}  // namespace detail

/// All subsequential limits of x. Geometric atoms vanish in the limit.
inline std::vector<Scalar> limit_set(const SequenceRep& x) {
    std::vector<Scalar> out;
    for (const auto& v : x.periodic_part()) detail::push_unique(out, v);
    return out;
}

/// All (u, v) such that some common subsequence has x_{n_k} -> u and y_{n_k} -> v.
inline std::vector<std::pair<Scalar, Scalar>> joint_limit_pairs(const SequenceRep& x, const SequenceRep& y) {
    if (x.field != y.field) throw ValidationError("joint_limit_pairs: field mismatch");
    std::vector<Scalar> px = x.periodic_part(), py = y.periodic_part();
    std::size_t l = detail::checked_lcm(px.size(), py.size());
    std::size_t start = std::max(x.prefix_len(), y.prefix_len()) + 1;
    std::size_t ox = start - x.prefix_len() - 1, oy = start - y.prefix_len() - 1;
    std::vector<std::pair<Scalar, Scalar>> out;
    for (std::size_t j = 0; j < l; ++j) {
        std::pair<Scalar, Scalar> pr{px[(ox + j) % px.size()], py[(oy + j) % py.size()]};
        if (std::find(out.begin(), out.end(), pr) == out.end()) out.push_back(std::move(pr));
    }
    return out;
}

}  // namespace bjseq
