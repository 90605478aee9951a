#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

namespace otlab {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBits = 256;

inline unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the default working precision of newly created Real values for the
/// lifetime of the scope.
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

/// Equality tolerance eps = 2^(-bits/2) and the refusal band (eps, sqrt(eps)).
struct Tolerance {
    unsigned bits = kDefaultPrecisionBits;

    Real eps() const { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 2)); }
    Real sqrt_eps() const { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 4)); }
    double eps_double() const { return std::ldexp(1.0, -static_cast<int>(bits / 2)); }
    double sqrt_eps_double() const { return std::ldexp(1.0, -static_cast<int>(bits / 4)); }
};

enum class Closeness { Equal, Distinct, Ambiguous };

inline Closeness classify_distance(const Real& distance, const Tolerance& tol) {
    if (distance <= tol.eps())
        return Closeness::Equal;
    if (distance >= tol.sqrt_eps())
        return Closeness::Distinct;
    return Closeness::Ambiguous;
}

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const Integer& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

inline Real pi_real() { return boost::multiprecision::acos(Real(-1)); }

/// Fixed-format scientific rendering with `digits` significant digits.
inline std::string format_real(const Real& x, int digits = 40) {
    if (x == 0)
        return "0";
    return x.str(std::max(digits - 1, 0), std::ios_base::scientific);
}

template <class R>
struct Complex {
    R re{};
    R im{};

    Complex() = default;
    Complex(R r) : re(std::move(r)), im(0) {}
    Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R den = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using Cplx = Complex<Real>;

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return {z.re, -z.im};
}

template <class R>
R norm_sq(const Complex<R>& z) {
    return z.re * z.re + z.im * z.im;
}

inline Real abs(const Cplx& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline Real arg(const Cplx& z) { return boost::multiprecision::atan2(z.im, z.re); }

inline Cplx exp(const Cplx& z) {
    Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

inline Cplx imag_unit() { return {Real(0), Real(1)}; }

inline std::complex<double> to_double(const Cplx& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline std::ostream& operator<<(std::ostream& os, const Cplx& z) {
    return os << format_real(z.re, 20) << (z.im < 0 ? " - " : " + ") << format_real(boost::multiprecision::abs(z.im), 20)
              << "i";
}

/// Exact element of Q(i).
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational den = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = r;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

inline Cplx to_complex(const GaussianRational& z) { return {to_real(z.re), to_real(z.im)}; }

/// Canonical text form: "a", "bi", "a+bi", "a-bi" with a, b in lowest terms.
inline std::string to_string(const GaussianRational& z) {
    if (sgn(z.im) == 0)
        return z.re.get_str();
    std::string im = (abs(z.im) == 1 ? std::string() : Rational(abs(z.im)).get_str()) + "i";
    if (sgn(z.re) == 0)
        return (sgn(z.im) < 0 ? "-" : "") + im;
    return z.re.get_str() + (sgn(z.im) < 0 ? "-" : "+") + im;
}

/// Best rational approximation with denominator at most `max_den`, or false
/// if none lies within `tol` of x.
inline bool recognize_rational(const Real& x, long max_den, const Real& tol, Rational& out) {
    // continued fraction expansion
    Real y = x;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        Real fl = boost::multiprecision::floor(y);
        Integer a;
        mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
        Integer h2 = a * h1 + h0;
        Integer k2 = a * k1 + k0;
        if (k2 > max_den)
            break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Rational cand(h1, k1);
        cand.canonicalize();
        if (boost::multiprecision::abs(to_real(cand) - x) <= tol) {
            out = cand;
            return true;
        }
        Real frac = y - fl;
        if (frac == 0)
            break;
        y = 1 / frac;
    }
    return false;
}

inline bool recognize_gaussian(const Cplx& z, long max_den, const Real& tol, GaussianRational& out) {
    return recognize_rational(z.re, max_den, tol, out.re) && recognize_rational(z.im, max_den, tol, out.im);
}

} // namespace otlab
