#pragma once

#include "otlab/errors.hpp"
#include "otlab/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>
#include <string>
#include <vector>

namespace otlab {

namespace detail {

using Fp = std::vector<std::int64_t>; // ascending, trimmed

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, b = mod(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline void trim(Fp& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Fp fp_mod(Fp a, const Fp& b, std::int64_t p) {
    trim(a);
    std::int64_t inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t f = a.back() * inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod(a[shift + i] - f * b[i], p);
        trim(a);
    }
    return a;
}

inline Fp fp_div(Fp a, const Fp& b, std::int64_t p) {
    trim(a);
    if (a.size() < b.size())
        return {};
    Fp q(a.size() - b.size() + 1, 0);
    std::int64_t inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t f = a.back() * inv % p;
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod(a[shift + i] - f * b[i], p);
        trim(a);
    }
    trim(q);
    return q;
}

inline Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, std::int64_t p) {
    if (a.empty() || b.empty())
        return {};
    Fp out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return fp_mod(out, m, p);
}

inline Fp fp_powmod(Fp base, std::int64_t e, const Fp& m, std::int64_t p) {
    Fp r{1};
    base = fp_mod(base, m, p);
    while (e > 0) {
        if (e & 1)
            r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline Fp fp_gcd(Fp a, Fp b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Fp r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::int64_t inv = inv_mod(a.back(), p);
        for (auto& c : a)
            c = c * inv % p;
    }
    return a;
}

inline Fp reduce(const Polynomial& f, std::int64_t p) {
    Fp out;
    for (auto& c : f.coeffs) {
        Integer r = c % p;
        out.push_back(mod(r.get_si(), p));
    }
    trim(out);
    return out;
}

} // namespace detail

inline bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<std::int64_t> first_primes(std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; out.size() < count; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

/// Degrees of the irreducible factors of f mod p (distinct-degree factorization).
inline std::multiset<int> factor_degrees_mod_p(const Polynomial& f, std::int64_t p) {
    using namespace detail;
    if (!is_prime(p))
        fail(ErrorKind::SkipPrime, std::to_string(p) + " is not prime");
    Fp g = reduce(f, p);
    if (static_cast<int>(g.size()) - 1 != f.degree())
        fail(ErrorKind::SkipPrime, "p = " + std::to_string(p) + " divides the leading coefficient");
    Fp dg;
    for (std::size_t i = 1; i < g.size(); ++i)
        dg.push_back(mod(g[i] * static_cast<std::int64_t>(i), p));
    trim(dg);
    if (fp_gcd(g, dg, p).size() != 1)
        fail(ErrorKind::SkipPrime, "f is not squarefree mod " + std::to_string(p));

    // make monic
    std::int64_t inv = inv_mod(g.back(), p);
    for (auto& c : g)
        c = c * inv % p;

    std::multiset<int> degrees;
    Fp rest = g;
    Fp h{0, 1};
    for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
        h = fp_powmod(h, p, rest, p);
        Fp diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = mod(diff[1] - 1, p);
        trim(diff);
        Fp common = fp_gcd(rest, diff, p);
        int cd = static_cast<int>(common.size()) - 1;
        if (cd > 0) {
            for (int k = 0; k < cd / d; ++k)
                degrees.insert(d);
            rest = fp_div(rest, common, p);
            h = fp_mod(h, rest, p);
        }
    }
    if (rest.size() > 1)
        degrees.insert(static_cast<int>(rest.size()) - 1);
    return degrees;
}

inline std::set<int> subset_sums(const std::multiset<int>& degrees) {
    std::set<int> sums{0};
    for (int d : degrees) {
        std::set<int> next = sums;
        for (int s : sums)
            next.insert(s + d);
        sums = std::move(next);
    }
    return sums;
}

struct IrreducibilityVerdict {
    enum class Kind { Irreducible, Inconclusive, Reducible };
    Kind kind = Kind::Inconclusive;
    std::string witness;                                        // factor, when Reducible
    std::vector<std::pair<std::int64_t, std::multiset<int>>> evidence; // usable primes used
    std::set<int> common_sums;
};

inline std::string to_string(IrreducibilityVerdict::Kind k) {
    switch (k) {
    case IrreducibilityVerdict::Kind::Irreducible: return "Irreducible";
    case IrreducibilityVerdict::Kind::Inconclusive: return "Inconclusive";
    case IrreducibilityVerdict::Kind::Reducible: return "Reducible";
    }
    return "Inconclusive";
}

/// Degree-analysis certificate: Irreducible when the factor-degree subset sums
/// common to all usable primes are only {0, deg f}.
inline IrreducibilityVerdict irreducibility_certificate(const Polynomial& f, const std::vector<std::int64_t>& primes) {
    IrreducibilityVerdict out;
    const int n = f.degree();

    QPoly fq = to_qpoly(f);
    QPoly g = poly_gcd(fq, derivative(fq));
    if (g.size() > 1) {
        Polynomial w;
        Integer den = 1;
        for (auto& c : g)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        for (auto& c : g)
            w.coeffs.push_back(Rational(c * den).get_num());
        out.kind = IrreducibilityVerdict::Kind::Reducible;
        out.witness = w.to_string();
        return out;
    }

    // Rational roots of a monic integer polynomial are integer divisors of f(0).
    Integer c0 = abs(f.coeffs[0]);
    if (c0 == 0) {
        out.kind = IrreducibilityVerdict::Kind::Reducible;
        out.witness = "x";
        return out;
    }
    if (f.is_monic() && c0 < 1000000) {
        long bound = c0.get_si();
        for (long d = 1; d <= bound; ++d) {
            if (bound % d != 0)
                continue;
            for (long r : {d, -d}) {
                Integer acc = 0;
                for (std::size_t i = f.coeffs.size(); i-- > 0;)
                    acc = acc * r + f.coeffs[i];
                if (acc == 0) {
                    out.kind = IrreducibilityVerdict::Kind::Reducible;
                    out.witness = r > 0 ? "x - " + std::to_string(r) : "x + " + std::to_string(-r);
                    return out;
                }
            }
        }
    }

    std::set<int> common;
    bool first = true;
    for (auto p : primes) {
        std::multiset<int> degrees;
        try {
            degrees = factor_degrees_mod_p(f, p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SkipPrime)
                continue;
            throw;
        }
        out.evidence.emplace_back(p, degrees);
        std::set<int> sums = subset_sums(degrees);
        if (first) {
            common = sums;
            first = false;
        } else {
            std::set<int> inter;
            std::set_intersection(common.begin(), common.end(), sums.begin(), sums.end(),
                                  std::inserter(inter, inter.begin()));
            common = std::move(inter);
        }
        if (common == std::set<int>{0, n}) {
            out.kind = IrreducibilityVerdict::Kind::Irreducible;
            out.common_sums = common;
            return out;
        }
    }
    if (first)
        fail(ErrorKind::NoUsablePrimes, "every supplied prime was skipped");
    out.common_sums = common;
    return out;
}

} // namespace otlab
