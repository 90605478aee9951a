#include "support.hpp"

#include <gtest/gtest.h>

using namespace otlab;
using testing_support::corpus;
using testing_support::corpus_labels;

namespace {

Mask bits(std::initializer_list<int> one_based) {
    Mask m = 0;
    for (int i : one_based)
        m |= Mask(1) << (i - 1);
    return m;
}

long de_rham_from_shapes(const ZigzagReport& z, int k) {
    long total = 0;
    for (auto& [shape, mult] : z.odd)
        if (shape.d == k)
            total += mult;
    return total;
}

} // namespace

TEST(Invariants, Binomial) {
    EXPECT_EQ(binomial(5, 2), 10);
    EXPECT_EQ(binomial(4, 0), 1);
    EXPECT_EQ(binomial(3, 4), 0);
    EXPECT_EQ(binomial(3, -1), 0);
}

TEST(Invariants, InoueNumbers) {
    const RelationSet& r = corpus("inoue").relations;
    EXPECT_EQ(betti_numbers(r, 1), (std::vector<long>{1, 1, 0, 1, 1}));
    Table h = hodge_numbers(r, 1);
    EXPECT_EQ(h, (Table{{1, 1, 0}, {0, 0, 0}, {0, 1, 1}}));
}

TEST(Invariants, LowBettiAndHodge) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s();
        auto b = betti_numbers(l.relations, s);
        EXPECT_EQ(b[1], s) << label;
        EXPECT_EQ(b[2], binomial(s, 2)) << label;
        EXPECT_EQ(table_at(hodge_numbers(l.relations, s), 0, 1), s) << label;
        EXPECT_EQ(table_at(hodge_numbers(l.relations, s), 1, 0), 0) << label;
    }
}

TEST(Invariants, DualitiesAndEuler) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        auto b = betti_numbers(l.relations, s);
        long euler = 0;
        for (int k = 0; k <= 2 * n; ++k) {
            EXPECT_EQ(b[k], b[2 * n - k]) << label << " k=" << k;
            euler += (k % 2 ? -1 : 1) * b[k];
        }
        EXPECT_EQ(euler, 0) << label;
        Table h = hodge_numbers(l.relations, s);
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                EXPECT_EQ(h[p][q], h[n - p][n - q]) << label << " (" << p << "," << q << ")";
        // degenerate Froelicher sequence: Hodge numbers add up to Betti numbers
        for (int k = 0; k <= 2 * n; ++k) {
            long sum = 0;
            for (int p = 0; p <= std::min(k, n); ++p)
                sum += table_at(h, p, k - p);
            EXPECT_EQ(sum, b[k]) << label << " k=" << k;
        }
    }
}

TEST(Invariants, GradedPiecesAddUpToHodge) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        Table sum = zero_table(n);
        for (int r = 0; r <= n; ++r) {
            Table v = vrb_dolbeault(l.relations, s, r);
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    if (p != r)
                        EXPECT_EQ(v[p][q], 0);
                    sum[p][q] += v[p][q];
                }
        }
        EXPECT_EQ(sum, hodge_numbers(l.relations, s)) << label;
    }
}

TEST(Invariants, ClosedFormsForPluriclosedData) {
    auto f1 = pluriclosed_closed_forms(1);
    EXPECT_EQ(f1.betti, (std::vector<long>{1, 1, 0, 1, 1}));
    auto f2 = pluriclosed_closed_forms(2);
    EXPECT_EQ(f2.betti, (std::vector<long>{1, 2, 1, 2, 4, 2, 1, 2, 1}));
    EXPECT_EQ(betti_numbers(corpus("inoue").relations, 1), f1.betti);
    EXPECT_EQ(hodge_numbers(corpus("inoue").relations, 1), f1.hodge);
    EXPECT_EQ(betti_numbers(corpus("pluriclosed_2_2").relations, 2), f2.betti);
    EXPECT_EQ(hodge_numbers(corpus("pluriclosed_2_2").relations, 2), f2.hodge);
}

TEST(Invariants, ZigzagsAccountForDeRham) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        auto b = betti_numbers(l.relations, s);
        auto z = zigzag_multiplicities(l.relations, s);
        auto zb = zigzag_multiplicities_bigraded(l.relations, s);
        EXPECT_TRUE(z.even.empty());
        for (int k = 0; k <= 2 * n; ++k) {
            EXPECT_EQ(de_rham_from_shapes(z, k), b[k]) << label << " k=" << k;
            EXPECT_EQ(de_rham_from_shapes(zb, k), b[k]) << label << " k=" << k;
        }
    }
}

TEST(Invariants, BottChernAndAeppliDuality) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        for (auto z : {zigzag_multiplicities(l.relations, s), zigzag_multiplicities_bigraded(l.relations, s)}) {
            Table bc = bott_chern_from_zigzags(z, n), ae = aeppli_numbers(z, n);
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    EXPECT_EQ(bc[p][q], ae[n - p][n - q]) << label;
                    EXPECT_EQ(bc[p][q], bc[q][p]) << label;
                }
        }
    }
}

TEST(Invariants, BigradedFormulaAgreesWhenRelationsAreBalanced) {
    for (std::string label : {"inoue", "otm_1_2", "pluriclosed_2_2"}) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        auto z = zigzag_multiplicities(l.relations, s);
        auto zb = zigzag_multiplicities_bigraded(l.relations, s);
        EXPECT_EQ(z.odd, zb.odd) << label;
        EXPECT_EQ(bott_chern_numbers(l.relations, s), bott_chern_from_zigzags(z, n)) << label;
    }
}

TEST(Invariants, BigradedFormulaDiffersOnDegreeTwelve) {
    const auto& l = corpus("deg12");
    const int s = l.units.s(), n = l.relations.dim();
    auto z = zigzag_multiplicities(l.relations, s);
    auto zb = zigzag_multiplicities_bigraded(l.relations, s);
    EXPECT_NE(z.odd, zb.odd);
    // unbalanced relations produce shapes with p != q
    EXPECT_TRUE(std::any_of(zb.odd.begin(), zb.odd.end(), [](auto& e) { return e.first.p != e.first.q; }));
    EXPECT_EQ(bott_chern_numbers(l.relations, s)[4][4], 15);
    EXPECT_EQ(bott_chern_from_zigzags(zb, n)[4][4], 9);
    // both still reproduce the Hodge numbers column by column
    EXPECT_EQ(betti_numbers(l.relations, s)[6], de_rham_from_shapes(zb, 6));
}

TEST(Invariants, HandExampleOfUnbalancedRelation) {
    // s = 1, t = 2: {2,3,5} is I = {2,3}, J = {3}, no real index, so p = 2, q = 1
    auto r = RelationSet::from_derham(1, 2, {bits({2, 3, 5})});
    auto z = zigzag_multiplicities_bigraded(r, 1);
    EXPECT_EQ(z.odd.count(Shape{3, 2, 1}), 1u);
    EXPECT_EQ(z.odd.at(Shape{3, 2, 1}), 1);
    EXPECT_EQ(z.odd.at(Shape{4, 2, 1}), 1);
}

TEST(Invariants, CohomologicalPluriclosedTest) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        auto v = cohomological_pluriclosed_test(l.relations, l.units.s(), l.units.t());
        EXPECT_EQ(v.verdict, check_pluriclosed_condition(l.units).verdict) << label;
    }
    auto pc = cohomological_pluriclosed_test(corpus("pluriclosed_2_2").relations, 2, 2);
    EXPECT_EQ(pc.h21, 2);
    EXPECT_EQ(pc.h42, 1);
    EXPECT_EQ(pc.h12, 0);
    EXPECT_EQ(pc.wedge_image_dim, 1);

    // Hodge numbers look right but the triples overlap
    auto overlap = RelationSet::from_derham(2, 2, {bits({1, 3, 5}), bits({1, 4, 6}), bits({1, 2, 3, 4, 5, 6})});
    auto v = cohomological_pluriclosed_test(overlap, 2, 2);
    EXPECT_EQ(v.h21, 2);
    EXPECT_EQ(v.h42, 1);
    EXPECT_EQ(v.verdict, Verdict::Fails);
    EXPECT_NE(v.witness.find("wedge"), std::string::npos);

    auto unequal = RelationSet::from_derham(1, 2, {bits({1, 2, 3, 4, 5})});
    EXPECT_EQ(cohomological_pluriclosed_test(unequal, 1, 2).verdict, Verdict::Fails);
}
