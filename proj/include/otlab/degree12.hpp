#pragma once

#include "otlab/errors.hpp"
#include "otlab/modp.hpp"
#include "otlab/numeric.hpp"
#include "otlab/polynomial.hpp"
#include "otlab/roots.hpp"

#include <string>
#include <vector>

namespace otlab {

/// Element a + b sqrt(2) of Q(sqrt 2).
struct QSqrt2 {
    Rational a{0};
    Rational b{0};

    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
    QSqrt2 galois() const { return {a, -b}; }
    Real value() const { return to_real(a) + to_real(b) * boost::multiprecision::sqrt(Real(2)); }
};

/// The reciprocal degree-12 polynomial with signature (2, 5), ascending.
inline std::vector<long> degree12_coefficients() {
    return {1, -24, 72, -448, -191, -440, -432, -440, -191, -448, 72, -24, 1};
}

struct Deg12Assertion {
    std::string id;   // "a" .. "g"
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Deg12Report {
    std::vector<Deg12Assertion> assertions;
    unsigned precision_bits = kDefaultPrecisionBits;
    Real largest_root = 0;
    Real unimodular_deviation = 0;
    std::vector<Real> y_roots;
    std::string irreducibility;

    bool all_passed() const {
        for (auto& a : assertions)
            if (!a.passed)
                return false;
        return true;
    }
};

namespace detail {

inline bool within(const Real& x, double target, double tol) {
    return boost::multiprecision::abs(x - Real(target)) < Real(tol);
}

inline std::string fixed6(const Real& x) { return x.str(12, std::ios_base::fixed); }

/// Real roots (ascending) and the number of non-real roots of a monic cubic
/// with real coefficients.
inline std::vector<Cplx> cubic_roots(const QSqrt2& c2, const QSqrt2& c1, const QSqrt2& c0, unsigned bits) {
    return aberth_roots({Cplx(c0.value()), Cplx(c1.value()), Cplx(c2.value()), Cplx(Real(1))}, bits);
}

} // namespace detail

/// Re-derives the explicit degree-12 example: the sqrt(2)-factorization, the
/// unimodular roots, the multiplicative relations among the conjugates and
/// irreducibility. `target` is the polynomial the factorization must
/// reproduce; callers pass a perturbed copy to exercise the check.
inline Deg12Report verify_degree12_example(unsigned precision_bits = kDefaultPrecisionBits,
                                           std::vector<long> target = degree12_coefficients()) {
    PrecisionScope scope(precision_bits);
    Tolerance tol{precision_bits};
    Deg12Report rep;
    rep.precision_bits = precision_bits;

    const QSqrt2 S{-12, 9}, P{33, -22};
    const QSqrt2 one{1, 0}, two{2, 0}, three{3, 0};

    // (a) S and P, and the pair R, T with R + T = S, RT = P, Im R > 0.
    {
        Deg12Assertion a{"a", "S and P", false, ""};
        Real sv = S.value(), pv = P.value();
        Real disc = sv * sv - 4 * pv;
        bool ok = detail::within(sv, 0.727922, 1e-6) && detail::within(pv, 1.887301, 1e-6) && disc < 0;
        a.passed = ok;
        a.detail = "S = " + detail::fixed6(sv) + ", P = " + detail::fixed6(pv) + ", S^2 - 4P = " + detail::fixed6(disc);
        rep.assertions.push_back(a);
    }

    // G = x^6 + S x^5 + (P-S) x^4 + (2P - S^2 - 2) x^3 + (P-S) x^2 + S x + 1 = A + sqrt2 B.
    std::vector<QSqrt2> G = {one, S, P - S, two * P - S * S - two, P - S, S, one};
    // (b) G * conj(G) equals the integer target exactly.
    {
        Deg12Assertion a{"b", "G times its conjugate equals the degree-12 polynomial", false, ""};
        std::vector<QSqrt2> prod(13);
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; j <= 6; ++j)
                prod[i + j] = prod[i + j] + G[i] * G[j].galois();
        std::vector<long> expected_a = {1, -12, 45, -242, 45, -12, 1}, expected_b = {0, 9, -31, 172, -31, 9, 0};
        bool split_ok = true;
        for (int i = 0; i <= 6; ++i)
            split_ok = split_ok && G[i] == QSqrt2{expected_a[i], expected_b[i]};
        Integer worst = 0;
        bool ok = split_ok && target.size() == 13;
        for (std::size_t i = 0; i < 13 && i < target.size(); ++i) {
            Rational diff = prod[i].a - Rational(target[i]);
            if (prod[i].b != 0 || diff.get_den() != 1)
                ok = false;
            Integer d = abs(diff.get_num());
            if (d > worst)
                worst = d;
        }
        ok = ok && worst == 0;
        // Numerically, G is also the product of x^3 + R x^2 - T x - 1 and its reciprocal.
        Real sv = S.value(), pv = P.value();
        Real im = boost::multiprecision::sqrt(4 * pv - sv * sv) / 2;
        Cplx R(sv / 2, im), T(sv / 2, -im);
        std::vector<Cplx> c1 = {Cplx(Real(-1)), -T, R, Cplx(Real(1))}, c2 = {Cplx(Real(-1)), -R, T, Cplx(Real(1))};
        Real numeric = 0;
        for (int k = 0; k <= 6; ++k) {
            Cplx acc;
            for (int i = 0; i <= 3; ++i)
                if (k - i >= 0 && k - i <= 3)
                    acc += c1[i] * c2[k - i];
            numeric = std::max(numeric, abs(acc - Cplx(G[k].value())));
        }
        ok = ok && numeric <= tol.eps();
        a.passed = ok;
        a.detail = "max integer residual " + worst.get_str() + "; cubic product residual " + format_real(numeric, 6);
        rep.assertions.push_back(a);
    }

    // (c) y = x + 1/x reduction of G: three real roots in (-2, 2).
    {
        Deg12Assertion a{"c", "G has six unimodular roots via its y-cubic", false, ""};
        QSqrt2 c2 = S, c1 = P - S - three, c0 = two * P - S * S - two * S - two;
        bool exact = c2 == QSqrt2{-12, 9} && c1 == QSqrt2{42, -31} && c0 == QSqrt2{-218, 154};
        auto ys = detail::cubic_roots(c2, c1, c0, precision_bits);
        std::vector<Real> real;
        for (auto& y : ys)
            if (boost::multiprecision::abs(y.im) < tol.eps())
                real.push_back(y.re);
        std::sort(real.begin(), real.end());
        rep.y_roots = real;
        bool ok = exact && real.size() == 3;
        if (ok) {
            ok = detail::within(real[0], -1.724350, 1e-6) && detail::within(real[1], -0.110593, 1e-6) &&
                 detail::within(real[2], 1.107021, 1e-6);
            for (auto& y : real)
                ok = ok && y > -2 && y < 2;
        }
        a.passed = ok;
        a.detail = "y roots:";
        for (auto& y : real)
            a.detail += " " + detail::fixed6(y);
        rep.assertions.push_back(a);
    }

    // (d) the conjugate cubic has exactly one real root, 21.697332...; R', T' real negative.
    {
        Deg12Assertion a{"d", "conjugate y-cubic has one real root", false, ""};
        QSqrt2 Sc = S.galois(), Pc = P.galois();
        QSqrt2 c2 = Sc, c1 = Pc - Sc - three, c0 = two * Pc - Sc * Sc - two * Sc - two;
        auto ys = detail::cubic_roots(c2, c1, c0, precision_bits);
        std::vector<Real> real;
        for (auto& y : ys)
            if (boost::multiprecision::abs(y.im) < tol.eps())
                real.push_back(y.re);
        Real sv = Sc.value(), pv = Pc.value();
        Real root = boost::multiprecision::sqrt(sv * sv - 4 * pv);
        Real Rp = (sv - root) / 2, Tp = (sv + root) / 2;
        bool ok = real.size() == 1 && detail::within(real[0], 21.697332, 1e-6) && detail::within(Rp, -21.784939, 1e-6) &&
                  detail::within(Tp, -2.942982, 1e-6);
        a.passed = ok;
        a.detail = "real root " + (real.empty() ? std::string("none") : detail::fixed6(real[0])) + ", R' = " +
                   detail::fixed6(Rp) + ", T' = " + detail::fixed6(Tp);
        rep.assertions.push_back(a);
    }

    // Roots of the target polynomial (propagates RootResidualTooLarge at low precision).
    Polynomial f = parse_polynomial(target);
    RootSet roots = find_roots(f, precision_bits);

    // (e) multiplicative relations and unimodularity.
    {
        Deg12Assertion a{"e", "u1 u3 u4 = 1, u2 u5 u6 = 1, |u7| = ... = |u12| = 1", false, ""};
        bool ok = roots.real_roots.size() == 2 && roots.complex_roots.size() == 5;
        Real rel = 0, unimod = 0;
        if (ok) {
            Real u1 = roots.real_roots[1], u2 = roots.real_roots[0];
            std::vector<Cplx> off, on;
            for (auto& z : roots.complex_roots) {
                Real dev = boost::multiprecision::abs(abs(z) - 1);
                if (dev < tol.eps())
                    on.push_back(z);
                else
                    off.push_back(z);
                if (dev < tol.eps())
                    unimod = std::max(unimod, dev);
            }
            ok = on.size() == 3 && off.size() == 2;
            if (ok) {
                // u3, u4 = conj(u3) pairs with u1; u5, u6 with u2.
                Real r0 = boost::multiprecision::abs(u1 * norm_sq(off[0]) - 1);
                Real r1 = boost::multiprecision::abs(u1 * norm_sq(off[1]) - 1);
                const Cplx& u3 = r0 < r1 ? off[0] : off[1];
                const Cplx& u5 = r0 < r1 ? off[1] : off[0];
                rel = std::max(boost::multiprecision::abs(u1 * norm_sq(u3) - 1),
                               boost::multiprecision::abs(u2 * norm_sq(u5) - 1));
                ok = rel < tol.eps() && unimod < Real("1e-60");
            }
        }
        rep.unimodular_deviation = unimod;
        a.passed = ok;
        a.detail = "relation residual " + format_real(rel, 6) + ", max ||z| - 1| " + format_real(unimod, 6);
        rep.assertions.push_back(a);
    }

    // (f) irreducibility certificate.
    {
        Deg12Assertion a{"f", "irreducible over Q", false, ""};
        auto v = irreducibility_certificate(f, first_primes(40));
        rep.irreducibility = to_string(v.kind);
        a.passed = v.kind == IrreducibilityVerdict::Kind::Irreducible;
        a.detail = rep.irreducibility;
        if (!v.evidence.empty()) {
            a.detail += " (primes";
            for (auto& [p, ds] : v.evidence) {
                a.detail += " " + std::to_string(p) + ":{";
                bool first = true;
                for (int d : ds) {
                    a.detail += (first ? "" : ",") + std::to_string(d);
                    first = false;
                }
                a.detail += "}";
            }
            a.detail += ")";
        }
        rep.assertions.push_back(a);
    }

    // (g) largest real root.
    {
        Deg12Assertion a{"g", "largest real root is 21.651145...", false, ""};
        rep.largest_root = roots.real_roots.empty() ? Real(0) : roots.real_roots.back();
        a.passed = detail::within(rep.largest_root, 21.651145, 5e-7);
        a.detail = "u = " + detail::fixed6(rep.largest_root);
        rep.assertions.push_back(a);
    }
    return rep;
}

} // namespace otlab
