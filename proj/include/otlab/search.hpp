#pragma once

#include "otlab/errors.hpp"
#include "otlab/modp.hpp"
#include "otlab/polynomial.hpp"
#include "otlab/roots.hpp"
#include "otlab/units.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

namespace otlab {

// Screening for fields carrying units with
//   sigma_k(u) |sigma_{s+pi(k)}(u)|^2 = 1   (k = 1..s, pi injective)
//   |sigma_{s+i}(u)| = 1                    (i outside the image of pi).
// For s = t this is the pluriclosed condition; a rank-s family of such units
// sharing one pi gives a pluriclosed datum.

struct UnitEvidence {
    Element unit;               // power-basis coordinates
    std::string description;    // e.g. "(x+1)^2"
    std::vector<int> matching;  // matching[k] = 1-based complex index of real index k+1
};

struct SearchCandidate {
    std::vector<long> poly;     // ascending
    int s = 0;
    int t = 0;
    std::vector<UnitEvidence> units;
    std::vector<Element> system; // rank-s generators, when found and certified
    bool pluriclosed = false;
};

struct SearchResult {
    int degree_bound = 0;
    int height_bound = 0;
    long screened = 0;         // polynomials with s, t >= 1 that were examined
    std::vector<SearchCandidate> candidates;
};

inline constexpr int kMaxSearchDegree = 9;
inline constexpr long kMaxSearchPolynomials = 250000;

namespace detail {

using cd = std::complex<double>;

/// Ordered embeddings in double precision (same convention as find_roots).
inline bool double_embeddings(const std::vector<long>& f, std::vector<cd>& roots, int& s, int& t) {
    const int n = static_cast<int>(f.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -static_cast<double>(f[i]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<double> re;
    std::vector<cd> upper;
    int lower = 0;
    for (int i = 0; i < n; ++i) {
        cd z = solver.eigenvalues()(i);
        if (std::abs(z.imag()) < 1e-7 * (1 + std::abs(z)))
            re.push_back(z.real());
        else if (z.imag() > 0)
            upper.push_back(z);
        else
            ++lower;
    }
    if (lower != static_cast<int>(upper.size()))
        return false;
    std::sort(re.begin(), re.end());
    std::sort(upper.begin(), upper.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    s = static_cast<int>(re.size());
    t = static_cast<int>(upper.size());
    roots.clear();
    for (double r : re)
        roots.emplace_back(r, 0.0);
    for (auto z : upper)
        roots.push_back(z);
    return true;
}

inline cd eval_double(const Element& e, cd z) {
    cd acc = 0;
    for (std::size_t i = e.size(); i-- > 0;)
        acc = acc * z + e[i].get_d();
    return acc;
}

/// Matchings pi under which the unit satisfies both conditions (double check).
inline std::vector<std::vector<int>> passing_matchings(const std::vector<cd>& values, int s, int t, double tol) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(t);
    std::iota(idx.begin(), idx.end(), 0);
    // enumerate injections as prefixes of permutations, skipping repeats
    std::vector<std::vector<int>> seen;
    do {
        std::vector<int> pi(idx.begin(), idx.begin() + s);
        if (std::find(seen.begin(), seen.end(), pi) != seen.end())
            continue;
        seen.push_back(pi);
        bool ok = true;
        std::vector<bool> used(t, false);
        for (int k = 0; k < s && ok; ++k) {
            used[pi[k]] = true;
            double prod = values[k].real() * std::norm(values[s + pi[k]]);
            ok = values[k].real() > 0 && std::abs(prod - 1) < tol;
        }
        for (int i = 0; i < t && ok; ++i)
            if (!used[i])
                ok = std::abs(std::abs(values[s + i]) - 1) < tol;
        if (ok) {
            std::vector<int> one;
            for (int k : pi)
                one.push_back(k + 1);
            out.push_back(one);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

inline long count_polynomials(int degree_bound, int height) {
    long total = 0, width = 2L * height + 1;
    for (int n = 3; n <= degree_bound; ++n) {
        long c = 2;
        for (int i = 1; i < n; ++i) {
            c *= width;
            if (c > kMaxSearchPolynomials)
                return kMaxSearchPolynomials + 1;
        }
        total += c;
    }
    return total;
}

inline std::string poly_text(const std::string& var, long k) {
    if (k == 0)
        return var;
    return var + (k > 0 ? "+" : "-") + std::to_string(std::labs(k));
}

/// Rank of the real-log vectors in double precision.
inline int log_rank(std::vector<std::vector<double>> rows) {
    if (rows.empty())
        return 0;
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-8);
    return static_cast<int>(lu.rank());
}

} // namespace detail

/// Screens monic integer polynomials of degree 3..degree_bound with
/// coefficients in [-height, height] and constant term +-1.
inline SearchResult search_pluriclosed(int degree_bound, int height, unsigned precision_bits = kDefaultPrecisionBits) {
    if (degree_bound > kMaxSearchDegree)
        fail(ErrorKind::BoundTooLarge, "degree bound " + std::to_string(degree_bound) + " exceeds " +
                                           std::to_string(kMaxSearchDegree));
    if (height < 0)
        fail(ErrorKind::BoundTooLarge, "height bound must be non-negative");
    if (detail::count_polynomials(degree_bound, height) > kMaxSearchPolynomials)
        fail(ErrorKind::BoundTooLarge, "more than " + std::to_string(kMaxSearchPolynomials) + " polynomials to screen");

    SearchResult out;
    out.degree_bound = degree_bound;
    out.height_bound = height;
    const double tol = 1e-8;

    for (int n = 3; n <= degree_bound; ++n) {
        std::vector<long> f(n + 1, 0);
        f[n] = 1;
        const long width = 2L * height + 1;
        long combos = 1;
        for (int i = 1; i < n; ++i)
            combos *= width;
        for (long c0 : {-1L, 1L})
            for (long code = 0; code < combos; ++code) {
                f[0] = c0;
                long rest = code;
                for (int i = 1; i < n; ++i) {
                    f[i] = rest % width - height;
                    rest /= width;
                }
                std::vector<detail::cd> roots;
                int s = 0, t = 0;
                if (!detail::double_embeddings(f, roots, s, t) || s < 1 || t < 1 || s > t)
                    continue;
                Polynomial poly = parse_polynomial(f);
                if (!is_squarefree(poly))
                    continue;
                ++out.screened;

                // basic units: alpha, alpha + k, alpha^2 + k alpha +- 1 (norm +-1 checked exactly)
                std::vector<std::pair<Element, std::string>> basic;
                auto consider = [&](Element e, std::string name) {
                    if (abs(resultant(poly, e)) == 1)
                        basic.emplace_back(std::move(e), std::move(name));
                };
                {
                    Element a(n, Rational(0));
                    a[1] = 1;
                    consider(a, "x");
                    for (long k = -height; k <= height; ++k) {
                        if (k != 0) {
                            Element e(n, Rational(0));
                            e[0] = k;
                            e[1] = 1;
                            consider(e, detail::poly_text("x", k));
                        }
                        for (long c : {-1L, 1L}) {
                            Element e(n, Rational(0));
                            e[0] = c;
                            e[1] = k;
                            e[2] = 1;
                            std::string name = "x^2";
                            if (k != 0)
                                name += (k > 0 ? "+" : "-") + std::to_string(std::labs(k)) + "x";
                            name += c > 0 ? "+1" : "-1";
                            consider(e, name);
                        }
                    }
                }
                // squares and pairwise products/quotients, all squared for total positivity
                std::vector<std::pair<Element, std::string>> pool;
                for (auto& [e, name] : basic)
                    pool.emplace_back(field_power(poly, e, 2), "(" + name + ")^2");
                for (std::size_t a = 0; a < basic.size(); ++a)
                    for (std::size_t b = a + 1; b < basic.size(); ++b) {
                        Element prod = field_multiply(poly, basic[a].first, basic[b].first);
                        Element quot = field_multiply(poly, basic[a].first, field_inverse(poly, basic[b].first));
                        pool.emplace_back(field_power(poly, prod, 2),
                                          "(" + basic[a].second + ")^2 (" + basic[b].second + ")^2");
                        pool.emplace_back(field_power(poly, quot, 2),
                                          "(" + basic[a].second + ")^2 (" + basic[b].second + ")^-2");
                    }

                SearchCandidate cand;
                cand.poly = f;
                cand.s = s;
                cand.t = t;
                std::vector<std::vector<double>> logs;
                for (auto& [e, name] : pool) {
                    std::vector<detail::cd> vals;
                    for (auto& z : roots)
                        vals.push_back(detail::eval_double(e, z));
                    std::vector<double> lg;
                    double size = 0;
                    for (int k = 0; k < s; ++k) {
                        lg.push_back(std::log(std::abs(vals[k])));
                        size += std::abs(lg.back());
                    }
                    if (size < 1e-6)
                        continue; // torsion
                    auto ms = detail::passing_matchings(vals, s, t, tol);
                    if (ms.empty())
                        continue;
                    cand.units.push_back({e, name, ms.front()});
                    logs.push_back(lg);
                }
                if (cand.units.empty())
                    continue;
                auto cert = irreducibility_certificate(poly, first_primes(20));
                if (cert.kind != IrreducibilityVerdict::Kind::Irreducible)
                    continue;

                if (s == t) {
                    // greedy independent family sharing the first unit's matching
                    std::vector<Element> gens;
                    std::vector<std::vector<double>> chosen;
                    for (std::size_t x = 0; x < cand.units.size() && static_cast<int>(gens.size()) < s; ++x) {
                        if (cand.units[x].matching != cand.units[0].matching)
                            continue;
                        chosen.push_back(logs[x]);
                        if (detail::log_rank(chosen) == static_cast<int>(chosen.size()))
                            gens.push_back(cand.units[x].unit);
                        else
                            chosen.pop_back();
                    }
                    if (static_cast<int>(gens.size()) == s) {
                        try {
                            FieldDatum field = make_field(poly, precision_bits);
                            UnitSystem u = build_unit_system(field, gens);
                            if (check_pluriclosed_condition(u).verdict == Verdict::Holds) {
                                cand.system = gens;
                                cand.pluriclosed = true;
                            }
                        } catch (const Error&) {
                            // double screening was too optimistic; keep as evidence only
                        }
                    }
                }
                out.candidates.push_back(std::move(cand));
            }
    }
    return out;
}

} // namespace otlab
