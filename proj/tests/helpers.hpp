#pragma once

#include <initializer_list>

#include <ostream>

#include "bjseq/bjseq.hpp"

namespace bjseq {

inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const SequenceRep& x, std::ostream* os) { *os << to_json(x).dump(); }

}  // namespace bjseq

namespace bjseq::test {

inline Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline SequenceRep fin(std::initializer_list<Rational> v) {
    std::vector<Scalar> s;
    for (const auto& x : v) s.push_back(Scalar(x));
    return SequenceRep::finite(std::move(s));
}

inline SequenceRep e(std::size_t n, Rational c = 1) { return SequenceRep::unit(n, Scalar(c)); }

inline SequenceRep geo(Rational a, Rational r, std::initializer_list<Rational> pre = {}) {
    std::vector<Scalar> s;
    for (const auto& x : pre) s.push_back(Scalar(x));
    return SequenceRep::with_tail(std::move(s), TailAtom::geometric(Scalar(a), Scalar(r)));
}

inline SequenceRep constant(Rational c, std::initializer_list<Rational> pre = {}) {
    std::vector<Scalar> s;
    for (const auto& x : pre) s.push_back(Scalar(x));
    return SequenceRep::with_tail(std::move(s), TailAtom::constant(Scalar(c)));
}

inline SequenceRep periodic(std::initializer_list<Rational> vals, std::initializer_list<Rational> pre = {}) {
    std::vector<Scalar> s, v;
    for (const auto& x : pre) s.push_back(Scalar(x));
    for (const auto& x : vals) v.push_back(Scalar(x));
    return SequenceRep::with_tail(std::move(s), TailAtom::periodic(std::move(v)));
}

inline Scalar cx(long re, long im, long d = 1) { return Scalar::complex(q(re, d), q(im, d)); }

}  // namespace bjseq::test
