#pragma once

#include "otlab/errors.hpp"
#include "otlab/linalg.hpp"
#include "otlab/numeric.hpp"
#include "otlab/polynomial.hpp"
#include "otlab/roots.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace otlab {

using Element = std::vector<Rational>; // power-basis coordinates, length deg f

// ---------------------------------------------------------------------------
// Arithmetic in Q[x]/(f).

inline Element reduce_element(const QPoly& g, const Polynomial& f) {
    QPoly r = poly_mod(g, to_qpoly(f));
    Element out(f.degree(), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = r[i];
    return out;
}

inline Element field_multiply(const Polynomial& f, const Element& a, const Element& b) {
    return reduce_element(poly_mul(a, b), f);
}

/// Inverse via the extended Euclidean algorithm over Q.
inline Element field_inverse(const Polynomial& f, const Element& a) {
    QPoly r0 = to_qpoly(f), r1 = a;
    trim(r1);
    if (r1.empty())
        fail(ErrorKind::NotAUnit, "zero element has no inverse");
    QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        // r0 = q r1 + r2
        QPoly q, rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational c = rem.back() / r1.back();
            std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1)
                q.resize(shift + 1, Rational(0));
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] -= c * r1[i];
            trim(rem);
        }
        QPoly qs = poly_mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < qs.size())
            s2.resize(qs.size(), Rational(0));
        for (std::size_t i = 0; i < qs.size(); ++i)
            s2[i] -= qs[i];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty())
            fail(ErrorKind::NotAUnit, "element shares a factor with the defining polynomial");
    }
    for (auto& c : s1)
        c /= r1[0];
    return reduce_element(s1, f);
}

inline Element field_one(const Polynomial& f) {
    Element e(f.degree(), Rational(0));
    e[0] = 1;
    return e;
}

inline Element field_power(const Polynomial& f, const Element& a, long e) {
    Element base = e < 0 ? field_inverse(f, a) : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Element out = field_one(f);
    while (k > 0) {
        if (k & 1)
            out = field_multiply(f, out, base);
        base = field_multiply(f, base, base);
        k >>= 1;
    }
    return out;
}

/// Exact unit test: norm +-1 and integral characteristic polynomial.
inline bool is_algebraic_unit(const Polynomial& f, const Element& g) {
    Rational n = resultant(f, g);
    if (abs(n) != 1)
        return false;
    for (auto& c : characteristic_polynomial(f, g))
        if (c.get_den() != 1)
            return false;
    return true;
}

// ---------------------------------------------------------------------------

struct UnitSystem {
    FieldDatum field;
    std::vector<Element> generators;
    std::vector<std::vector<Cplx>> embed_values; // [i][j] = sigma_{i+1}(u_j), i < s+2t
    Mat<Real> log_matrix;                        // (k, j) = log sigma_k(u_j)
    Mat<Real> b;                                 // s x t
    Mat<Real> c;                                 // s x t
    Tolerance tol;

    int s() const { return field.s; }
    int t() const { return field.t; }
    int rank() const { return static_cast<int>(generators.size()); }
    const Cplx& sigma(int i, int j) const { return embed_values[i - 1][j]; } // 1-based embedding
};

/// Validates the generators and solves for the structure constants b, c.
inline UnitSystem build_unit_system(const FieldDatum& field, const std::vector<Element>& gens) {
    const int s = field.s, t = field.t;
    if (static_cast<int>(gens.size()) != s)
        fail(ErrorKind::ShapeMismatch,
             "expected " + std::to_string(s) + " generators, got " + std::to_string(gens.size()));
    PrecisionScope scope(field.precision_bits());
    UnitSystem u;
    u.field = field;
    u.tol = Tolerance{field.precision_bits()};
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (static_cast<int>(gens[j].size()) != field.degree())
            fail(ErrorKind::ShapeMismatch, "generator " + std::to_string(j + 1) + " has " +
                                               std::to_string(gens[j].size()) + " coordinates");
        if (!is_algebraic_unit(field.poly, gens[j]))
            fail(ErrorKind::NotAUnit, "generator " + std::to_string(j + 1) + " (norm " +
                                          resultant(field.poly, gens[j]).get_str() + ")");
    }
    u.generators = gens;

    const int n = field.embeddings();
    u.embed_values.assign(n, std::vector<Cplx>(s));
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < s; ++j)
            u.embed_values[i - 1][j] = eval_embedding(field, gens[j], i);

    u.log_matrix = Mat<Real>(s, s);
    for (int k = 1; k <= s; ++k)
        for (int j = 0; j < s; ++j) {
            const Real& v = u.sigma(k, j).re;
            if (v <= 0)
                fail(ErrorKind::NotTotallyPositive,
                     "generator " + std::to_string(j + 1) + " at real embedding " + std::to_string(k));
            u.log_matrix(k - 1, j) = boost::multiprecision::log(v);
        }
    Real det = determinant(u.log_matrix);
    if (boost::multiprecision::abs(det) <= u.tol.eps())
        fail(ErrorKind::LogMatrixSingular, "|det| = " + format_real(boost::multiprecision::abs(det), 6));

    // L^T b_i = (2 log|sigma_{s+i}(u_j)|)_j and L^T c_i = (arg sigma_{s+i}(u_j))_j
    Mat<Real> lt = u.log_matrix.transpose();
    Mat<Real> rb(s, t), rc(s, t);
    for (int j = 0; j < s; ++j)
        for (int i = 1; i <= t; ++i) {
            const Cplx& z = u.sigma(s + i, j);
            rb(j, i - 1) = 2 * boost::multiprecision::log(abs(z));
            rc(j, i - 1) = arg(z);
        }
    u.b = solve(lt, rb);
    u.c = solve(lt, rc);

    Real worst = 0;
    Mat<Real> chk_b = lt * u.b, chk_c = lt * u.c;
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < t; ++i) {
            worst = std::max(worst, boost::multiprecision::abs(chk_b(j, i) - rb(j, i)));
            worst = std::max(worst, boost::multiprecision::abs(chk_c(j, i) - rc(j, i)));
        }
    // Reconstruct sigma_{s+i}(u_j) from b, c.
    for (int j = 0; j < s; ++j)
        for (int i = 1; i <= t; ++i) {
            Real modulus_log = 0, phase = 0;
            for (int k = 0; k < s; ++k) {
                modulus_log += u.b(k, i - 1) / 2 * u.log_matrix(k, j);
                phase += u.c(k, i - 1) * u.log_matrix(k, j);
            }
            Cplx rebuilt = exp(Cplx(modulus_log, phase));
            worst = std::max(worst, abs(rebuilt - u.sigma(s + i, j)) / (1 + abs(u.sigma(s + i, j))));
        }
    if (worst > u.tol.eps())
        fail(ErrorKind::ResidualTooLarge, "structure-constant residual " + format_real(worst, 6));
    return u;
}

// ---------------------------------------------------------------------------
// Metric criteria.

enum class Verdict { Always, Never, Holds, Fails, Undecided };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Always: return "Always";
    case Verdict::Never: return "Never";
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Undecided: return "Undecided";
    }
    return "Undecided";
}

struct MetricVerdict {
    std::string property;
    Verdict verdict = Verdict::Undecided;
    std::string witness;
    std::vector<int> matching; // pluriclosed: matching[k-1] = i (1-based complex index)
};

/// Classifies |x - 1| against the tolerance; throws inside the refusal band.
inline bool equals_one(const Real& x, const Tolerance& tol, const std::string& what) {
    switch (classify_distance(boost::multiprecision::abs(x - 1), tol)) {
    case Closeness::Equal: return true;
    case Closeness::Distinct: return false;
    case Closeness::Ambiguous: break;
    }
    fail(ErrorKind::AmbiguousNumeric, what + " is neither clearly 1 nor clearly distinct from 1");
}

/// s = t and sigma_k(u) |sigma_{s+pi(k)}(u)|^2 = 1 on every generator for some bijection pi.
inline MetricVerdict check_pluriclosed_condition(const UnitSystem& u) {
    MetricVerdict out;
    out.property = "pluriclosed";
    const int s = u.s(), t = u.t();
    if (s != t) {
        out.verdict = Verdict::Fails;
        out.witness = "s = " + std::to_string(s) + " differs from t = " + std::to_string(t);
        return out;
    }
    PrecisionScope scope(u.tol.bits);
    std::vector<std::vector<bool>> compat(s, std::vector<bool>(t, true));
    for (int k = 1; k <= s; ++k)
        for (int i = 1; i <= t; ++i)
            for (int j = 0; j < u.rank() && compat[k - 1][i - 1]; ++j) {
                Real prod = u.sigma(k, j).re * norm_sq(u.sigma(s + i, j));
                compat[k - 1][i - 1] =
                    equals_one(prod, u.tol,
                               "sigma_" + std::to_string(k) + " |sigma_" + std::to_string(s + i) + "|^2 on generator " +
                                   std::to_string(j + 1));
            }

    std::vector<int> match(s, -1);
    std::vector<bool> used(t, false);
    std::function<bool(int)> assign = [&](int k) {
        if (k == s)
            return true;
        for (int i = 0; i < t; ++i)
            if (!used[i] && compat[k][i]) {
                used[i] = true;
                match[k] = i;
                if (assign(k + 1))
                    return true;
                used[i] = false;
            }
        return false;
    };
    if (assign(0)) {
        out.verdict = Verdict::Holds;
        for (int k = 0; k < s; ++k)
            out.matching.push_back(match[k] + 1);
        std::string w;
        for (int k = 0; k < s; ++k)
            w += (k ? ", " : "") + std::to_string(k + 1) + "->" + std::to_string(s + match[k] + 1);
        out.witness = "matching " + w;
    } else {
        out.verdict = Verdict::Fails;
        for (int k = 0; k < s; ++k)
            if (std::none_of(compat[k].begin(), compat[k].end(), [](bool b) { return b; })) {
                out.witness = "real embedding " + std::to_string(k + 1) + " has no compatible complex embedding";
                return out;
            }
        out.witness = "no perfect matching between real and complex embeddings";
    }
    return out;
}

/// All complex moduli agree on every generator.
inline MetricVerdict check_lck_condition(const UnitSystem& u) {
    MetricVerdict out;
    out.property = "LCK";
    const int s = u.s(), t = u.t();
    PrecisionScope scope(u.tol.bits);
    for (int j = 0; j < u.rank(); ++j) {
        Real first = abs(u.sigma(s + 1, j));
        for (int i = 2; i <= t; ++i) {
            Real ratio = abs(u.sigma(s + i, j)) / first;
            if (!equals_one(ratio, u.tol, "modulus ratio on generator " + std::to_string(j + 1))) {
                out.verdict = Verdict::Fails;
                out.witness = "generator " + std::to_string(j + 1) + ": |sigma_" + std::to_string(s + 1) +
                              "| != |sigma_" + std::to_string(s + i) + "|";
                return out;
            }
        }
    }
    out.verdict = Verdict::Holds;
    out.witness = t == 1 ? "t = 1" : "all complex moduli agree on every generator";
    return out;
}

/// Table of metric properties; the k-Gauduchon and astheno-Kaehler rows only
/// exist when the complex dimension s + t is at least 4.
inline std::vector<MetricVerdict> metric_report(const UnitSystem& u) {
    const int dim = u.s() + u.t();
    auto row = [](std::string name, Verdict v) {
        MetricVerdict m;
        m.property = std::move(name);
        m.verdict = v;
        return m;
    };
    std::vector<MetricVerdict> out;
    out.push_back(row("Kahler", Verdict::Never));
    out.push_back(row("taming symplectic", Verdict::Never));
    out.push_back(row("balanced", Verdict::Never));
    out.push_back(check_pluriclosed_condition(u));
    if (dim >= 4) {
        out.push_back(row("special k-Gauduchon", Verdict::Never));
        out.push_back(row("astheno-Kahler", Verdict::Never));
    }
    out.push_back(row("Gauduchon", Verdict::Always));
    out.push_back(row("strongly Gauduchon", Verdict::Never));
    out.push_back(check_lck_condition(u));
    out.push_back(row("LCB", Verdict::Always));
    return out;
}

} // namespace otlab
