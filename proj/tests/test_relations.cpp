#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace otlab;
using testing_support::corpus;
using testing_support::corpus_labels;

namespace {

// Direct products over every subset, no incremental updates.
std::set<Mask> brute_force(const UnitSystem& u, bool dolbeault) {
    PrecisionScope scope(u.tol.bits);
    const int s = u.s(), t = u.t(), n = s + 2 * t;
    std::set<Mask> out;
    for (Mask m = 0; m < (Mask(1) << n); ++m) {
        bool trivial = true;
        for (int j = 0; j < u.rank() && trivial; ++j) {
            Cplx prod(Real(1));
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) {
                    if (!dolbeault || i < s + t)
                        prod *= u.sigma(i + 1, j);
                    else
                        prod *= conj(u.sigma(s + (i - s - t) + 1, j));
                }
            trivial = abs(prod - Cplx(Real(1))) < Real("1e-60");
        }
        if (trivial)
            out.insert(m);
    }
    return out;
}

Mask bits(std::initializer_list<int> one_based) {
    Mask m = 0;
    for (int i : one_based)
        m |= Mask(1) << (i - 1);
    return m;
}

} // namespace

TEST(Relations, MatchBruteForce) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        auto derham = brute_force(l.units, false);
        EXPECT_EQ(std::set<Mask>(l.relations.derham.begin(), l.relations.derham.end()), derham) << label;
        std::set<Mask> dol;
        for (auto& [i, j] : l.relations.dolbeault)
            dol.insert(i | (j << (l.units.s() + l.units.t())));
        EXPECT_EQ(dol, brute_force(l.units, true)) << label;
        EXPECT_TRUE(l.relations.certified()) << label;
    }
}

TEST(Relations, Inoue) {
    const RelationSet& r = corpus("inoue").relations;
    EXPECT_EQ(r.derham, (std::vector<Mask>{0, bits({1, 2, 3})}));
    EXPECT_EQ(r.rho, (std::vector<int>{1, 0, 0, 1}));
    ASSERT_EQ(r.dolbeault.size(), 2u);
    EXPECT_EQ(r.dolbeault[1], std::make_pair(bits({1, 2}), Mask(1)));
    EXPECT_EQ(r.rho_pm_at(2, 1), 1);
    EXPECT_EQ(r.rho_pm_at(0, 0), 1);
    EXPECT_EQ(r.rho_pm_at(5, 5), 0);
}

TEST(Relations, LowDegreesAreTrivial) {
    for (auto& label : corpus_labels()) {
        const RelationSet& r = corpus(label).relations;
        EXPECT_EQ(r.rho_at(0), 1) << label;
        EXPECT_EQ(r.rho_at(1), 0) << label;
        EXPECT_EQ(r.rho_at(2), 0) << label;
        // the full set is always a relation (norm 1)
        EXPECT_EQ(r.derham.back(), (Mask(1) << (r.s + 2 * r.t)) - 1) << label;
    }
}

TEST(Relations, ClosedUnderConjugationAndComplement) {
    for (auto& label : corpus_labels()) {
        const RelationSet& r = corpus(label).relations;
        std::set<Mask> all(r.derham.begin(), r.derham.end());
        const Mask full = (Mask(1) << (r.s + 2 * r.t)) - 1;
        for (Mask m : r.derham) {
            EXPECT_TRUE(all.count(r.conjugate(m))) << label << " " << mask_to_string(m);
            EXPECT_TRUE(all.count(full & ~m)) << label << " " << mask_to_string(m);
        }
    }
}

TEST(Relations, DolbeaultIsReindexedDeRham) {
    for (auto& label : corpus_labels()) {
        const RelationSet& r = corpus(label).relations;
        std::set<Mask> from_dol;
        for (auto& [i, j] : r.dolbeault) {
            from_dol.insert(r.to_derham(i, j));
            EXPECT_EQ(r.to_dolbeault(r.to_derham(i, j)), std::make_pair(i, j));
        }
        EXPECT_EQ(from_dol, std::set<Mask>(r.derham.begin(), r.derham.end())) << label;
        RelationSet rebuilt = RelationSet::from_derham(r.s, r.t, r.derham);
        EXPECT_EQ(rebuilt.dolbeault, r.dolbeault) << label;
        EXPECT_EQ(rebuilt.rho_pm, r.rho_pm) << label;
    }
}

TEST(Relations, DegreeTwelve) {
    const RelationSet& r = corpus("deg12").relations;
    EXPECT_EQ(r.derham.size(), 24u);
    EXPECT_TRUE(r.certified());
    // a relation with |K| != |L|: sigma_2 sigma_4 sigma_5 sigma_6 sigma_8 sigma_10 = 1
    EXPECT_TRUE(std::binary_search(r.derham.begin(), r.derham.end(), bits({2, 4, 5, 6, 8, 10})));
}

TEST(Relations, StructureAgreesWithUnitCriterion) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        auto structure = pluriclosed_relation_structure(l.relations, l.units.s(), l.units.t());
        EXPECT_EQ(structure.verdict, check_pluriclosed_condition(l.units).verdict) << label;
    }
    auto pc = pluriclosed_relation_structure(corpus("pluriclosed_2_2").relations, 2, 2);
    EXPECT_EQ(pc.verdict, Verdict::Holds);
    EXPECT_EQ(pc.triples.size(), 2u);
}

TEST(Relations, StructureRejectsSyntheticSets) {
    // s = t = 2; indices 1,2 real, 3,4 complex, 5,6 conjugates
    auto overlap = RelationSet::from_derham(2, 2, {bits({1, 3, 5}), bits({1, 4, 6}), bits({1, 2, 3, 4, 5, 6})});
    auto v = pluriclosed_relation_structure(overlap, 2, 2);
    EXPECT_EQ(v.verdict, Verdict::Fails);
    EXPECT_NE(v.witness.find("overlap"), std::string::npos);

    auto shape = RelationSet::from_derham(2, 2, {bits({1, 3, 6}), bits({2, 4, 5})});
    EXPECT_EQ(pluriclosed_relation_structure(shape, 2, 2).verdict, Verdict::Fails);

    auto good = RelationSet::from_derham(2, 2, {bits({1, 3, 5}), bits({2, 4, 6}), bits({1, 2, 3, 4, 5, 6})});
    EXPECT_EQ(pluriclosed_relation_structure(good, 2, 2).verdict, Verdict::Holds);
}

TEST(Relations, MaskHelpers) {
    EXPECT_EQ(mask_to_string(bits({1, 3})), "{1,3}");
    EXPECT_EQ(mask_to_string(0), "{}");
    EXPECT_EQ(mask_to_indices(bits({2, 5}), 0), (std::vector<int>{1, 4}));
}
