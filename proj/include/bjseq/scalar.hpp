#pragma once

// Field-generic scalars. A Scalar is either exact (a rational, or a Gaussian
// rational re + i*im) or approximate (a double-precision center with a
// rigorous error radius). Exact op exact stays exact; anything touching an
// approximate operand degrades to approximate.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>

#include "error.hpp"
#include "interval.hpp"
#include "rational.hpp"

namespace bjseq {

enum class Field { Real, Complex };
enum class Mode { Exact, Approx };

inline Field join(Field a, Field b) { return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real; }
inline Mode join(Mode a, Mode b) { return (a == Mode::Approx || b == Mode::Approx) ? Mode::Approx : Mode::Exact; }

inline const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }
inline const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "approx"; }

/// Default absolute/relative decision tolerance for approximate evaluation.
inline constexpr double kDefaultTolerance = 1e-12;

class Scalar {
public:
    Scalar() = default;
    Scalar(const Rational& q) : re_(q) {}  // NOLINT: rationals are real scalars
    Scalar(long v) : re_(v) {}             // NOLINT
    Scalar(int v) : re_(v) {}              // NOLINT

    static Scalar real(const Rational& q) { return Scalar(q); }

    static Scalar complex(const Rational& re, const Rational& im) {
        Scalar s(re);
        s.im_ = im;
        s.field_ = Field::Complex;
        return s;
    }

    /// Exact value of a finite double (every double is a dyadic rational).
    static Scalar from_double(double v) {
        if (!std::isfinite(v)) throw ValidationError("non-finite scalar");
        return Scalar(Rational(v));
    }

    static Scalar approx(std::complex<double> center, double radius, Field f) {
        if (!std::isfinite(center.real()) || !std::isfinite(center.imag()) || !(radius >= 0.0))
            throw ValidationError("bad approximate scalar");
        Scalar s;
        s.field_ = f;
        s.mode_ = Mode::Approx;
        s.center_ = f == Field::Real ? std::complex<double>(center.real(), 0.0) : center;
        s.radius_ = radius;
        return s;
    }

    /// Smallest approximate scalar enclosing the interval box.
    static Scalar from_enclosure(const CInterval& box, Field f) {
        double cr = box.re.mid(), ci = f == Field::Real ? 0.0 : box.im.mid();
        double rr = std::max(detail::add_up(box.re.hi, -cr), detail::add_up(cr, -box.re.lo));
        double ri = f == Field::Real ? 0.0 : std::max(detail::add_up(box.im.hi, -ci), detail::add_up(ci, -box.im.lo));
        double rad = detail::up(std::sqrt(detail::add_up(detail::mul_up(rr, rr), detail::mul_up(ri, ri))));
        return approx({cr, ci}, rad, f);
    }

    Field field() const { return field_; }
    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }
    bool is_real_valued() const { return is_exact() ? im_ == 0 : center_.imag() == 0.0; }

    /// Certainly zero (exact zero, or approximate with zero center and radius).
    bool is_zero() const {
        if (is_exact()) return re_ == 0 && im_ == 0;
        return center_ == std::complex<double>(0.0, 0.0) && radius_ == 0.0;
    }

    const Rational& re() const { return require_exact(), re_; }
    const Rational& im() const { return require_exact(), im_; }
    std::complex<double> center() const { return is_exact() ? std::complex<double>(re_.get_d(), im_.get_d()) : center_; }
    double radius() const { return is_exact() ? 0.0 : radius_; }

    CInterval enclosure() const {
        if (is_exact()) {
            if (im_ == 0) return CInterval(to_interval(re_));
            return {to_interval(re_), to_interval(im_)};
        }
        Interval r{detail::add_down(center_.real(), -radius_), detail::add_up(center_.real(), radius_)};
        if (field_ == Field::Real) return CInterval(r);
        Interval i{detail::add_down(center_.imag(), -radius_), detail::add_up(center_.imag(), radius_)};
        return {r, i};
    }

    Scalar with_field(Field f) const {
        if (f == Field::Real && !is_real_valued()) throw ValidationError("complex value in a real-field context");
        Scalar s = *this;
        s.field_ = f;
        if (f == Field::Real) s.center_ = {s.center_.real(), 0.0};
        return s;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Field f = join(a.field_, b.field_);
        if (a.is_exact() && b.is_exact()) return make_exact(a.re_ + b.re_, a.im_ + b.im_, f);
        return from_enclosure(a.enclosure() + b.enclosure(), f);
    }
    friend Scalar operator-(const Scalar& a) {
        Scalar s = a;
        s.re_ = -s.re_;
        s.im_ = -s.im_;
        s.center_ = -s.center_;
        return s;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Field f = join(a.field_, b.field_);
        if (a.is_exact() && b.is_exact())
            return make_exact(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, f);
        return from_enclosure(a.enclosure() * b.enclosure(), f);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw DomainError("division by zero scalar");
        Field f = join(a.field_, b.field_);
        if (a.is_exact() && b.is_exact()) {
            Rational d = b.re_ * b.re_ + b.im_ * b.im_;
            return make_exact((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d, f);
        }
        CInterval bb = b.enclosure();
        Interval d = mod_sq(bb);
        if (d.lo <= 0.0) throw DomainError("division by a scalar not bounded away from zero");
        CInterval num = a.enclosure() * conj(bb);
        return from_enclosure({num.re / d, num.im / d}, f);
    }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend Scalar conj(const Scalar& a) {
        Scalar s = a;
        s.im_ = -s.im_;
        s.center_ = std::conj(s.center_);
        return s;
    }

    /// Structural equality: exact values compare exactly; approximate ones by center and radius.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.mode_ != b.mode_) return false;
        if (a.is_exact()) return a.re_ == b.re_ && a.im_ == b.im_;
        return a.center_ == b.center_ && a.radius_ == b.radius_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Total order used for canonical sorting (not a numeric order on C).
    friend bool structural_less(const Scalar& a, const Scalar& b) {
        if (a.mode_ != b.mode_) return a.mode_ < b.mode_;
        if (a.is_exact()) return a.re_ != b.re_ ? a.re_ < b.re_ : a.im_ < b.im_;
        if (a.center_.real() != b.center_.real()) return a.center_.real() < b.center_.real();
        if (a.center_.imag() != b.center_.imag()) return a.center_.imag() < b.center_.imag();
        return a.radius_ < b.radius_;
    }

    std::string to_string() const {
        if (is_exact()) {
            if (field_ == Field::Real) return bjseq::to_string(re_);
            return bjseq::to_string(re_) + (im_ < 0 ? " - " : " + ") + bjseq::to_string(abs(im_)) + "i";
        }
        std::string s = std::to_string(center_.real());
        if (field_ == Field::Complex) s += " + " + std::to_string(center_.imag()) + "i";
        return s + " (+/-" + std::to_string(radius_) + ")";
    }

private:
    static Scalar make_exact(Rational re, Rational im, Field f) {
        Scalar s(re);
        s.im_ = std::move(im);
        s.field_ = f;
        return s;
    }
    void require_exact() const {
        if (!is_exact()) throw DomainError("exact value requested from an approximate scalar");
    }

    Rational re_{0};
    Rational im_{0};
    std::complex<double> center_{0.0, 0.0};
    double radius_ = 0.0;
    Field field_ = Field::Real;
    Mode mode_ = Mode::Exact;
};

/// |z|^2. Exact for exact z.
inline Scalar mod_sq(const Scalar& z) {
    if (z.is_exact()) return Scalar(z.re() * z.re() + z.im() * z.im());
    return Scalar::from_enclosure(CInterval(mod_sq(z.enclosure())), Field::Real);
}

/// |z| when it is rational.
inline std::optional<Rational> exact_abs(const Scalar& z) {
    if (!z.is_exact()) return std::nullopt;
    if (z.im() == 0) return abs(z.re());
    return exact_sqrt(z.re() * z.re() + z.im() * z.im());
}

/// |z| as a scalar: exact when rational, approximate otherwise.
inline Scalar modulus(const Scalar& z) {
    if (auto a = exact_abs(z)) return Scalar(*a);
    return Scalar::from_enclosure(CInterval(abs(z.enclosure())), Field::Real);
}

/// sgn(z) = z/|z| for z != 0, and 0 at 0. Exact when |z| is rational.
inline Scalar sgn(const Scalar& z) {
    if (z.is_exact()) {
        if (z.is_zero()) return Scalar(0).with_field(z.field());
        if (auto a = exact_abs(z)) return Scalar::complex(z.re() / *a, z.im() / *a).with_field(z.field());
    }
    CInterval e = z.enclosure();
    if (abs(e).lo <= 0.0) {
        if (z.center() == std::complex<double>(0.0, 0.0)) return Scalar::approx({0.0, 0.0}, 0.0, z.field());
        throw DomainError("sgn of an approximate scalar not bounded away from zero");
    }
    return Scalar::from_enclosure(unit(e), z.field());
}

/// z^k by repeated squaring.
inline Scalar pow(Scalar z, unsigned long k) {
    Scalar out = Scalar(1).with_field(z.field());
    while (k) {
        if (k & 1) out = out * z;
        k >>= 1;
        if (k) z = z * z;
    }
    return out;
}

enum class Ordering { Less, Equal, Greater, Indeterminate };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "less";
        case Ordering::Equal: return "equal";
        case Ordering::Greater: return "greater";
        default: return "indeterminate";
    }
}

/// Compares |z| with |w| through |z|^2 - |w|^2.
inline Ordering compare_mod(const Scalar& z, const Scalar& w, double tol = kDefaultTolerance) {
    if (z.is_exact() && w.is_exact()) {
        Rational d = mod_sq(z).re() - mod_sq(w).re();
        return d < 0 ? Ordering::Less : (d > 0 ? Ordering::Greater : Ordering::Equal);
    }
    Interval d = mod_sq(z.enclosure()) - mod_sq(w.enclosure());
    if (d.hi < -tol) return Ordering::Less;
    if (d.lo > tol) return Ordering::Greater;
    return Ordering::Indeterminate;
}

// ---------------------------------------------------------------------------

enum class Outcome { Holds, Fails, Indeterminate };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        default: return "indeterminate";
    }
}

/// Three-valued predicate result. `margin` is the distance of the tested
/// quantity from the decision boundary; exact verdicts are never Indeterminate.
struct Verdict {
    Outcome outcome = Outcome::Indeterminate;
    double margin = 0.0;
    Mode mode = Mode::Exact;

    static Verdict exact(bool holds, double margin = std::numeric_limits<double>::infinity()) {
        return {holds ? Outcome::Holds : Outcome::Fails, margin, Mode::Exact};
    }

    bool holds() const { return outcome == Outcome::Holds; }
    bool fails() const { return outcome == Outcome::Fails; }
    bool indeterminate() const { return outcome == Outcome::Indeterminate; }

    friend bool operator==(const Verdict& a, const Verdict& b) = default;
};

/// Band decision for a quantity q (enclosed by `value`) against the boundary q = 0:
/// Holds when q >= 0 certainly, Fails when q < 0 certainly, Indeterminate
/// when the enclosure reaches within `tol` of the boundary.
inline Verdict band_verdict(Interval value, double tol) {
    if (value.lo >= tol) return {Outcome::Holds, value.lo, Mode::Approx};
    if (value.hi <= -tol) return {Outcome::Fails, -value.hi, Mode::Approx};
    return {Outcome::Indeterminate, std::min(std::fabs(value.lo), std::fabs(value.hi)), Mode::Approx};
}

}  // namespace bjseq
