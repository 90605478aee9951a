#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

using namespace otlab;

namespace {

Polynomial poly(std::vector<long> c) { return Polynomial{std::vector<Integer>(c.begin(), c.end())}; }

Real residual(const Polynomial& p, const Cplx& z) { return abs(p.eval(z)); }

} // namespace

TEST(Polynomial, ParsesCubic) {
    Polynomial p = parse_polynomial(std::vector<long>{-1, -1, 0, 1});
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.to_string(), "x^3 - x - 1");
}

TEST(Polynomial, ParsesDegreeTwelve) {
    Polynomial p = parse_polynomial(degree12_coefficients());
    EXPECT_EQ(p.degree(), 12);
    EXPECT_TRUE(p.is_monic());
    // palindromic
    for (int i = 0; i <= 12; ++i)
        EXPECT_EQ(p.coeffs[i], p.coeffs[12 - i]);
}

TEST(Polynomial, RejectsBadInput) {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    EXPECT_EQ(kind_of([] { parse_polynomial(std::vector<long>{1, 0}); }), ErrorKind::DegreeTooSmall);
    EXPECT_EQ(kind_of([] { parse_polynomial(std::vector<long>{}); }), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of([] { parse_polynomial(std::vector<long>{1, 0, 0, 2}); }), ErrorKind::NonMonic);
}

TEST(Roots, PlasticNumber) {
    Polynomial p = parse_polynomial(std::vector<long>{-1, -1, 0, 1});
    PrecisionScope scope(256);
    RootSet r = find_roots(p, 256);
    ASSERT_EQ(r.s(), 1);
    ASSERT_EQ(r.t(), 1);
    // the plastic number, to 30 digits
    EXPECT_LT(boost::multiprecision::abs(r.real_roots[0] - Real("1.324717957244746025960908854478")), Real("1e-29"));
    EXPECT_LT(residual(p, Cplx(r.real_roots[0])), Real("1e-60"));
    EXPECT_LT(residual(p, r.complex_roots[0]), Real("1e-60"));
    EXPECT_GT(r.complex_roots[0].im, 0);
    EXPECT_EQ(signature(r), std::make_pair(1, 1));
}

TEST(Roots, VietaRelations) {
    for (auto c : std::vector<std::vector<long>>{{-1, -1, 0, 1}, {-1, -1, 0, 0, 0, 1}, {1, -2, -1, 2, 0, 0, 1}}) {
        Polynomial p = parse_polynomial(c);
        PrecisionScope scope(256);
        RootSet r = find_roots(p, 256);
        Cplx sum, prod(Real(1));
        for (auto& x : r.real_roots) {
            sum += Cplx(x);
            prod *= Cplx(x);
        }
        for (auto& z : r.complex_roots) {
            sum += z + conj(z);
            prod *= z * conj(z);
        }
        Tolerance tol{256};
        Real want_sum = -to_real(p.coeffs[p.degree() - 1]);
        Real want_prod = to_real(p.coeffs[0]) * (p.degree() % 2 ? -1 : 1);
        EXPECT_LT(abs(sum - Cplx(want_sum)), tol.eps());
        EXPECT_LT(abs(prod - Cplx(want_prod)), tol.eps());
    }
}

TEST(Roots, DegreeTwelveClassification) {
    Polynomial p = parse_polynomial(degree12_coefficients());
    PrecisionScope scope(256);
    RootSet r = find_roots(p, 256);
    ASSERT_EQ(signature(r), std::make_pair(2, 5));
    EXPECT_LT(boost::multiprecision::abs(r.real_roots[1] - Real("21.651145")), Real("1e-6"));
    EXPECT_LT(boost::multiprecision::abs(r.real_roots[0] * r.real_roots[1] - 1), Real("1e-70"));
    int unimodular = 0, other = 0;
    for (auto& z : r.complex_roots) {
        if (boost::multiprecision::abs(abs(z) - 1) < Real("1e-60"))
            ++unimodular;
        else
            ++other;
    }
    // counted with conjugates: 6 unimodular, 4 others
    EXPECT_EQ(2 * unimodular, 6);
    EXPECT_EQ(2 * other, 4);
}

TEST(Roots, SignatureErrors) {
    PrecisionScope scope(256);
    RootSet totally_real = find_roots(parse_polynomial(std::vector<long>{-1, -2, 1, 1}), 256);
    EXPECT_EQ(totally_real.s(), 3);
    try {
        signature(totally_real);
        FAIL() << "expected TZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TZero);
    }
    RootSet none = find_roots(parse_polynomial(std::vector<long>{1, 0, 0, 0, 1}), 256);
    try {
        signature(none);
        FAIL() << "expected SZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SZero);
    }
}

TEST(Roots, NotSquarefree) {
    // (x - 1)^2 (x + 2)
    try {
        find_roots(parse_polynomial(std::vector<long>{2, -3, 0, 1}), 128);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSquarefree);
    }
}

TEST(Embeddings, PrimitiveElementAndConstants) {
    PrecisionScope scope(256);
    FieldDatum f = make_field(parse_polynomial(std::vector<long>{-1, -1, 0, 1}), 256);
    std::vector<Rational> alpha{0, 1, 0}, one{1, 0, 0};
    for (int i = 1; i <= 3; ++i) {
        EXPECT_LT(abs(eval_embedding(f, alpha, i) - f.root(i)), Real("1e-70"));
        EXPECT_LT(abs(eval_embedding(f, one, i) - Cplx(Real(1))), Real("1e-70"));
    }
    Cplx s1 = eval_embedding(f, alpha, 1), s2 = eval_embedding(f, alpha, 2), s3 = eval_embedding(f, alpha, 3);
    EXPECT_EQ(s1.im, 0);
    EXPECT_LT(abs(s3 - conj(s2)), Real("1e-70"));
    EXPECT_LT(boost::multiprecision::abs(s1.re * norm_sq(s2) - 1), Real("1e-70"));
    try {
        eval_embedding(f, alpha, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
}

TEST(Resultant, Examples) {
    Polynomial f = parse_polynomial(std::vector<long>{-1, -1, 0, 1});
    EXPECT_EQ(resultant(f, poly({0, 1})), 1);
    EXPECT_EQ(resultant(f, poly({1})), 1);
    EXPECT_EQ(resultant(poly({-2, 0, 1}), poly({-1, 1})), -1);
}

TEST(Resultant, AgreesWithRootProduct) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-4, 4);
    PrecisionScope scope(256);
    int done = 0;
    while (done < 20) {
        std::vector<long> fc{coef(rng), coef(rng), coef(rng), coef(rng), 1};
        Polynomial f = Polynomial{std::vector<Integer>(fc.begin(), fc.end())};
        if (!is_squarefree(f))
            continue;
        Polynomial g = poly({coef(rng), coef(rng), 1 + std::abs(coef(rng))});
        std::vector<Cplx> fcx;
        for (auto& c : f.coeffs)
            fcx.emplace_back(to_real(c));
        Cplx prod(Real(1));
        for (auto& z : aberth_roots(fcx, 256))
            prod *= g.eval(z);
        Integer exact = resultant(f, g);
        EXPECT_LT(abs(prod - Cplx(to_real(exact))), Real("1e-50") * (1 + abs(prod))) << f.to_string();
        ++done;
    }
}

TEST(ModP, FactorDegrees) {
    EXPECT_EQ(factor_degrees_mod_p(parse_polynomial(std::vector<long>{-1, -1, 0, 1}), 2), (std::multiset<int>{3}));
    EXPECT_EQ(factor_degrees_mod_p(poly({-1, 0, 1}), 5), (std::multiset<int>{1, 1}));
}

TEST(ModP, DegreesSumToDegreeAndLinearFactorsMatchRoots) {
    Polynomial f = parse_polynomial(degree12_coefficients());
    int used = 0;
    for (auto p : first_primes(20)) {
        std::multiset<int> deg;
        try {
            deg = factor_degrees_mod_p(f, p);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::SkipPrime);
            continue;
        }
        ++used;
        EXPECT_EQ(std::accumulate(deg.begin(), deg.end(), 0), 12) << "p = " << p;
        // oracle: linear factors are the roots in F_p
        long roots = 0;
        for (long x = 0; x < p; ++x) {
            long acc = 0;
            for (std::size_t i = f.coeffs.size(); i-- > 0;)
                acc = ((acc * x + f.coeffs[i].get_si()) % p + p) % p;
            roots += acc == 0;
        }
        EXPECT_EQ(static_cast<long>(deg.count(1)), roots) << "p = " << p;
    }
    EXPECT_GT(used, 5);
}

TEST(ModP, IrreducibilityCertificates) {
    auto primes = first_primes(20);
    EXPECT_EQ(irreducibility_certificate(parse_polynomial(degree12_coefficients()), primes).kind,
              IrreducibilityVerdict::Kind::Irreducible);
    EXPECT_EQ(irreducibility_certificate(parse_polynomial(std::vector<long>{-1, -1, 0, 1}), primes).kind,
              IrreducibilityVerdict::Kind::Irreducible);
    auto red = irreducibility_certificate(parse_polynomial(std::vector<long>{-1, 0, 0, 0, 1}), primes);
    EXPECT_EQ(red.kind, IrreducibilityVerdict::Kind::Reducible);
    EXPECT_EQ(red.witness, "x - 1");
}
