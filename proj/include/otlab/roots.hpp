#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"
#include "otlab/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace otlab {

/// Roots of a real polynomial. Only the upper-half-plane member of each
/// conjugate pair is stored; embedding s+t+j is the conjugate of s+j.
struct RootSet {
    std::vector<Real> real_roots;
    std::vector<Cplx> complex_roots;
    unsigned precision_bits = kDefaultPrecisionBits;
    Real residual_bound = 0;

    int s() const { return static_cast<int>(real_roots.size()); }
    int t() const { return static_cast<int>(complex_roots.size()); }
};

namespace detail {

inline Cplx eval_poly(const std::vector<Cplx>& coeffs, const Cplx& z) {
    Cplx acc;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + coeffs[i];
    return acc;
}

} // namespace detail

/// All roots of a monic polynomial with complex coefficients (ascending),
/// seeded from the companion matrix in double precision and refined by
/// simultaneous Aberth iteration at the current working precision.
inline std::vector<Cplx> aberth_roots(const std::vector<Cplx>& f, unsigned precision_bits) {
    const int n = static_cast<int>(f.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -to_double(f[i]) / to_double(f[n]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<Cplx> z;
    for (int i = 0; i < n; ++i) {
        // Aberth iteration stalls when two seeds coincide exactly.
        std::complex<double> seed = solver.eigenvalues()(i) + std::complex<double>(1e-9 * (i + 1), 1e-9 * (i + 2));
        z.emplace_back(Real(seed.real()), Real(seed.imag()));
    }
    std::vector<Cplx> df;
    for (int i = 1; i <= n; ++i)
        df.push_back(f[i] * Cplx(Real(i)));

    Real step_goal = boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits) + 8);
    for (int iter = 0; iter < 500; ++iter) {
        Real biggest = 0;
        for (int k = 0; k < n; ++k) {
            Cplx fz = detail::eval_poly(f, z[k]);
            if (fz.re == 0 && fz.im == 0)
                continue;
            Cplx ratio = fz / detail::eval_poly(df, z[k]);
            Cplx sum;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += Cplx(Real(1)) / (z[k] - z[j]);
            Cplx w = ratio / (Cplx(Real(1)) - ratio * sum);
            z[k] -= w;
            Real size = abs(w) / (1 + abs(z[k]));
            if (size > biggest)
                biggest = size;
        }
        if (biggest < step_goal)
            break;
    }
    return z;
}

/// High-precision roots of an integer polynomial, classified and ordered.
inline RootSet find_roots(const Polynomial& p, unsigned precision_bits = kDefaultPrecisionBits) {
    if (p.coeffs.empty())
        fail(ErrorKind::EmptyInput, "polynomial has no coefficients");
    if (!p.is_monic())
        fail(ErrorKind::NonMonic, "leading coefficient " + p.leading().get_str());
    if (!is_squarefree(p))
        fail(ErrorKind::NotSquarefree, p.to_string());

    PrecisionScope scope(precision_bits);
    Tolerance tol{precision_bits};
    std::vector<Cplx> f;
    for (auto& c : p.coeffs)
        f.emplace_back(to_real(c));
    std::vector<Cplx> z = aberth_roots(f, precision_bits);

    RootSet out;
    out.precision_bits = precision_bits;
    std::vector<Cplx> lower;
    for (auto& r : z) {
        Real tiny = tol.eps() * (1 + abs(r));
        if (boost::multiprecision::abs(r.im) < tiny)
            out.real_roots.push_back(r.re);
        else if (r.im > 0)
            out.complex_roots.push_back(r);
        else
            lower.push_back(r);
    }
    if (lower.size() != out.complex_roots.size())
        fail(ErrorKind::RootResidualTooLarge, "conjugate pairing failed; raise precision");

    std::sort(out.real_roots.begin(), out.real_roots.end());
    std::sort(out.complex_roots.begin(), out.complex_roots.end(), [](const Cplx& a, const Cplx& b) {
        if (a.re != b.re)
            return a.re < b.re;
        return a.im < b.im;
    });

    Real worst = 0;
    for (auto& r : out.real_roots) {
        Real v = abs(detail::eval_poly(f, Cplx(r)));
        worst = std::max(worst, v);
    }
    for (auto& r : out.complex_roots)
        worst = std::max(worst, abs(detail::eval_poly(f, r)));
    out.residual_bound = worst;
    if (worst > tol.eps())
        fail(ErrorKind::RootResidualTooLarge,
             "max |f(root)| = " + format_real(worst, 6) + " exceeds " + format_real(tol.eps(), 6));
    return out;
}

/// (s, t); both must be positive for the construction.
inline std::pair<int, int> signature(const RootSet& r) {
    if (r.s() == 0)
        fail(ErrorKind::SZero, "no real roots");
    if (r.t() == 0)
        fail(ErrorKind::TZero, "no complex roots");
    return {r.s(), r.t()};
}

/// Number field Q[x]/(f) with its ordered embeddings.
struct FieldDatum {
    Polynomial poly;
    RootSet roots;
    int s = 0;
    int t = 0;

    int degree() const { return poly.degree(); }
    int embeddings() const { return s + 2 * t; }
    unsigned precision_bits() const { return roots.precision_bits; }

    /// Image of the primitive element under embedding i (1-based).
    Cplx root(int i) const {
        if (i < 1 || i > s + 2 * t)
            fail(ErrorKind::IndexOutOfRange, "embedding " + std::to_string(i));
        if (i <= s)
            return Cplx(roots.real_roots[i - 1]);
        if (i <= s + t)
            return roots.complex_roots[i - s - 1];
        return conj(roots.complex_roots[i - s - t - 1]);
    }
};

inline FieldDatum make_field(const Polynomial& p, unsigned precision_bits = kDefaultPrecisionBits) {
    FieldDatum f;
    f.poly = p;
    f.roots = find_roots(p, precision_bits);
    auto [s, t] = signature(f.roots);
    f.s = s;
    f.t = t;
    return f;
}

/// sigma_i(elem) for an element given in the power basis.
inline Cplx eval_embedding(const FieldDatum& f, const std::vector<Rational>& elem, int i) {
    if (static_cast<int>(elem.size()) != f.degree())
        fail(ErrorKind::IndexOutOfRange, "element has " + std::to_string(elem.size()) + " coordinates, expected " +
                                             std::to_string(f.degree()));
    Cplx a = f.root(i);
    PrecisionScope scope(f.precision_bits());
    Cplx acc;
    for (std::size_t k = elem.size(); k-- > 0;)
        acc = acc * a + Cplx(to_real(elem[k]));
    if (i <= f.s)
        acc.im = 0;
    return acc;
}

} // namespace otlab
