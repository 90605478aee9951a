#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace otlab {

/// Integer polynomial, coefficients in ascending degree with nonzero leading entry.
struct Polynomial {
    std::vector<Integer> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Integer& leading() const { return coeffs.back(); }
    bool is_monic() const { return coeffs.back() == 1; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs == b.coeffs; }

    template <class T>
    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = acc * x + T(to_real(coeffs[i]));
        return acc;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] == 0)
                continue;
            Integer c = coeffs[i];
            bool neg = c < 0;
            if (neg)
                c = -c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            if (c != 1 || i == 0)
                out += c.get_str();
            if (i >= 1)
                out += "x";
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }
};

/// Validates a field-defining polynomial (ascending coefficients).
inline Polynomial parse_polynomial(const std::vector<Integer>& coeffs, bool require_monic = true) {
    if (coeffs.empty())
        fail(ErrorKind::EmptyInput, "polynomial has no coefficients");
    std::vector<Integer> c = coeffs;
    while (c.size() > 1 && c.back() == 0)
        c.pop_back();
    if (c.back() == 0)
        fail(ErrorKind::EmptyInput, "zero polynomial");
    Polynomial p{c};
    if (require_monic && !p.is_monic())
        fail(ErrorKind::NonMonic, "leading coefficient " + p.leading().get_str());
    if (p.degree() < 3)
        fail(ErrorKind::DegreeTooSmall, "degree " + std::to_string(p.degree()) + " < 3");
    return p;
}

inline Polynomial parse_polynomial(const std::vector<long>& coeffs, bool require_monic = true) {
    std::vector<Integer> c(coeffs.begin(), coeffs.end());
    return parse_polynomial(c, require_monic);
}

// ---------------------------------------------------------------------------
// Rational polynomials (ascending, trimmed), used for gcds and reductions.

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline QPoly to_qpoly(const Polynomial& p) { return QPoly(p.coeffs.begin(), p.coeffs.end()); }

inline QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

inline QPoly poly_mod(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty())
        return {};
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lc = a.back();
        for (auto& c : a)
            c /= lc;
    }
    return a;
}

inline bool is_squarefree(const Polynomial& p) {
    QPoly f = to_qpoly(p);
    return poly_gcd(f, derivative(f)).size() == 1;
}

// ---------------------------------------------------------------------------
// Resultants.

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0)
                ++piv;
            if (piv == n)
                return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Integer pow_integer(const Integer& base, int e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

/// Res(f, g) for integer polynomials via the Sylvester matrix.
inline Integer resultant(const Polynomial& f, const Polynomial& g) {
    const int m = f.degree(), n = g.degree();
    if (n == 0)
        return pow_integer(g.coeffs[0], m);
    const int size = m + n;
    std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            syl[r][r + i] = f.coeffs[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            syl[n + r][r + i] = g.coeffs[n - i];
    return bareiss_determinant(std::move(syl));
}

/// Res(f, g) for monic integer f and a rational polynomial g, i.e. the norm of
/// g(alpha). Exact.
inline Rational resultant(const Polynomial& f, const std::vector<Rational>& g) {
    QPoly h = g;
    trim(h);
    if (h.empty())
        return 0;
    Integer den = 1;
    for (auto& c : h)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    Polynomial gi;
    for (auto& c : h) {
        Rational scaled = c * den;
        gi.coeffs.push_back(scaled.get_num());
    }
    // Res(f, den*g) = den^deg(f) Res(f, g)
    Rational out(resultant(f, gi));
    out /= Rational(pow_integer(den, f.degree()));
    return out;
}

/// Characteristic polynomial of multiplication by g(alpha) on Q[x]/(f),
/// ascending and monic. Faddeev-LeVerrier over Q.
inline QPoly characteristic_polynomial(const Polynomial& f, const std::vector<Rational>& g) {
    const int n = f.degree();
    QPoly fq = to_qpoly(f);
    // Column j of the multiplication matrix = g * x^j mod f.
    std::vector<std::vector<Rational>> mult(n, std::vector<Rational>(n, Rational(0)));
    QPoly gx = g;
    trim(gx);
    for (int j = 0; j < n; ++j) {
        QPoly col = poly_mod(gx, fq);
        for (std::size_t i = 0; i < col.size(); ++i)
            mult[i][j] = col[i];
        gx.insert(gx.begin(), Rational(0));
    }
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    for (int k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational acc = 0;
                for (int l = 0; l < n; ++l)
                    acc += mult[i][l] * m[l][j];
                if (i == j)
                    acc += c[n - k + 1];
                next[i][j] = acc;
            }
        m = std::move(next);
        Rational tr = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                tr += mult[i][l] * m[l][i];
        c[n - k] = -tr / k;
    }
    return c;
}

} // namespace otlab
