#include "support.hpp"

#include <gtest/gtest.h>

using namespace otlab;
using testing_support::corpus;
using testing_support::corpus_labels;
namespace oracle = testing_support::oracle;

namespace {

const CrossCheck& check(const CrossCheckReport& rep, const std::string& id) {
    for (auto& c : rep.checks)
        if (c.id == id)
            return c;
    throw std::runtime_error("missing check " + id);
}

std::map<int, long> betti_map(const std::vector<long>& b) {
    std::map<int, long> out;
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k])
            out[static_cast<int>(k)] = b[k];
    return out;
}

std::optional<FloatComplex> invariant_if_pluriclosed(const UnitSystem& u) {
    if (check_pluriclosed_condition(u).verdict != Verdict::Holds)
        return std::nullopt;
    return build_invariant_complex(u);
}

} // namespace

TEST(CoframeAlgebra, InoueDifferentials) {
    const UnitSystem& u = corpus("inoue").units;
    PrecisionScope scope(u.tol.bits);
    CoframeAlgebra alg = coframe_algebra(u);
    EXPECT_LT(alg.d_squared_residual(), Real("1e-60"));
    // d gamma = (i/4 b - c/2) w ^ g - (i/4 b - c/2) g ^ W  (up to ordering signs)
    Form dg = alg.d(Mask(1) << alg.gamma(0));
    Mask wg = Mask(1) << alg.omega(0) | Mask(1) << alg.gamma(0);
    ASSERT_TRUE(dg.count(wg));
    Cplx want(-u.c(0, 0) / 2, u.b(0, 0) / 4);
    EXPECT_LT(abs(dg.at(wg) - want), Real("1e-70"));
    // d omega = (i/2) w ^ W
    Form dw = alg.d(Mask(1) << alg.omega(0));
    Mask ww = Mask(1) << alg.omega(0) | Mask(1) << alg.omegabar(0);
    EXPECT_LT(abs(dw.at(ww) - Cplx(Real(0), Real(1) / 2)), Real("1e-70"));
    // conjugation: d bar gamma is the conjugate of d gamma
    Form dgb = alg.d(Mask(1) << alg.gammabar(0));
    Mask wgb = Mask(1) << alg.omegabar(0) | Mask(1) << alg.gammabar(0);
    EXPECT_LT(abs(dgb.at(wgb) - conj(want)), Real("1e-70"));
}

TEST(CoframeAlgebra, InvariantComplexIsAComplex) {
    for (std::string label : {"inoue", "pluriclosed_2_2"}) {
        const UnitSystem& u = corpus(label).units;
        PrecisionScope scope(u.tol.bits);
        FloatComplex c = build_invariant_complex(u);
        EXPECT_EQ(c.size(), std::size_t(1) << (2 * (u.s() + u.t()))) << label;
        validate_complex(FloatEngine(u.tol), c);
        EXPECT_LT(coframe_algebra(u).d_squared_residual(), Real("1e-60"));
    }
}

TEST(StructureIdentities, HoldOnCorpus) {
    for (auto& label : corpus_labels()) {
        auto rep = structure_identity_report(corpus(label).units);
        ASSERT_EQ(rep.results.size(), 3u);
        for (auto& r : rep.results)
            EXPECT_TRUE(r.passed) << label << " (" << r.id << ") residual " << format_real(r.residual, 6);
        EXPECT_NO_THROW(verify_structure_identities(corpus(label).units));
    }
}

TEST(StructureIdentities, PerturbedStructureConstantsFail) {
    const UnitSystem& u = corpus("pluriclosed_2_2").units;
    PrecisionScope scope(u.tol.bits);
    Mat<Real> b = u.b;
    b(0, 1) += Real("1e-20");
    auto rep = structure_identity_report(u, b);
    EXPECT_TRUE(rep.results[0].passed);
    EXPECT_TRUE(rep.results[1].passed);
    EXPECT_FALSE(rep.results[2].passed);
    EXPECT_GT(rep.results[2].residual, Real("1e-30"));
    try {
        verify_structure_identities(u, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IdentityFailed);
    }
}

TEST(VBModel, SizesAndGrades) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        VBModel vb = build_vb_complex(l.units, l.relations);
        const std::size_t per = std::size_t(1) << (2 * l.units.s());
        EXPECT_EQ(vb.exact.size(), vb.relations.size() * per) << label;
        EXPECT_EQ(vb.complex.size(), vb.exact.size());
        EXPECT_LT(vb.weight_residual, Real("1e-60"));
        EXPECT_LT(vb.rational_residual, Real("1e-60"));
        // d keeps the grade
        for (std::size_t x = 0; x < vb.exact.size(); ++x)
            for (int which : {1, 2})
                for (auto& [tgt, v] : which == 1 ? vb.exact.d1_of(x) : vb.exact.d2_of(x))
                    EXPECT_EQ(vb.elements[x].grade, vb.elements[tgt].grade) << label;
        std::size_t covered = 0;
        for (int g : vb.grades)
            covered += vb.grade_indices(g).size();
        EXPECT_EQ(covered, vb.exact.size());
    }
    EXPECT_EQ(build_vb_complex(corpus("inoue").units, corpus("inoue").relations).exact.size(), 8u);
}

TEST(VBModel, SingleGrade) {
    const auto& l = corpus("pluriclosed_2_2");
    VBModel all = build_vb_complex(l.units, l.relations);
    for (int g : all.grades) {
        VBModel one = build_vb_complex(l.units, l.relations, g);
        EXPECT_EQ(one.exact.size(), all.grade_indices(g).size());
        EXPECT_EQ(one.grades, std::set<int>{g});
    }
}

TEST(VBModel, OracleMatchesFormulas) {
    for (auto& label : corpus_labels()) {
        const auto& l = corpus(label);
        const int s = l.units.s(), n = l.relations.dim();
        VBModel vb = build_vb_complex(l.units, l.relations);
        auto o = oracle::compute(vb.exact);
        BiTable hodge = to_bitable(hodge_numbers(l.relations, s));
        EXPECT_EQ(o.column, hodge) << label;
        EXPECT_EQ(o.row, transposed(hodge)) << label;
        EXPECT_EQ(o.de_rham, betti_map(betti_numbers(l.relations, s))) << label;
        auto bi = zigzag_multiplicities_bigraded(l.relations, s);
        EXPECT_EQ(o.bott_chern, to_bitable(bott_chern_from_zigzags(bi, n))) << label;
        EXPECT_EQ(o.aeppli, to_bitable(aeppli_numbers(bi, n))) << label;
        if (label != "deg12") {
            EXPECT_EQ(o.bott_chern, to_bitable(bott_chern_numbers(l.relations, s))) << label;
            EXPECT_EQ(o.aeppli, to_bitable(aeppli_numbers(zigzag_multiplicities(l.relations, s), n))) << label;
        }
    }
}

TEST(CrossCheck, ExactEnginePassesOnBalancedData) {
    for (std::string label : {"inoue", "otm_1_2", "pluriclosed_2_2"}) {
        const auto& l = corpus(label);
        VBModel vb = build_vb_complex(l.units, l.relations);
        auto rep = oracle_cross_check(ExactEngine{}, l.units, l.relations, vb, invariant_if_pluriclosed(l.units));
        EXPECT_TRUE(rep.all_passed()) << label << ": " << rep.first_failure();
        EXPECT_EQ(rep.checks.size(), 10u);
        EXPECT_EQ(rep.max_frolicher_rank, 0);
        EXPECT_EQ(rep.vb_row, transposed(rep.vb_column));
        EXPECT_NO_THROW(require_cross_check(rep));
        EXPECT_EQ(check(rep, "e").skipped, label == "otm_1_2") << label;
    }
}

TEST(CrossCheck, FloatEngineAgrees) {
    for (std::string label : {"inoue", "otm_1_2", "pluriclosed_2_2"}) {
        const auto& l = corpus(label);
        PrecisionScope scope(l.units.tol.bits);
        VBModel vb = build_vb_complex(l.units, l.relations);
        auto fr = oracle_cross_check(FloatEngine(l.units.tol), l.units, l.relations, vb);
        auto ex = oracle_cross_check(ExactEngine{}, l.units, l.relations, vb);
        EXPECT_TRUE(fr.all_passed()) << label << ": " << fr.first_failure();
        EXPECT_EQ(fr.vb_column, ex.vb_column);
        EXPECT_EQ(fr.vb_bott_chern, ex.vb_bott_chern);
        EXPECT_EQ(fr.vb_aeppli, ex.vb_aeppli);
        EXPECT_EQ(fr.vb_de_rham, ex.vb_de_rham);
        EXPECT_EQ(fr.zigzags.odd, ex.zigzags.odd);
    }
}

TEST(CrossCheck, DegreeTwelveSeparatesTheFormulas) {
    const auto& l = corpus("deg12");
    VBModel vb = build_vb_complex(l.units, l.relations);
    EXPECT_EQ(vb.exact.size(), 384u);
    auto rep = oracle_cross_check(ExactEngine{}, l.units, l.relations, vb);
    for (std::string id : {"a", "c", "f", "g", "i", "j"})
        EXPECT_TRUE(check(rep, id).passed) << id << ": " << check(rep, id).detail;
    for (std::string id : {"b", "d", "h"})
        EXPECT_FALSE(check(rep, id).passed) << id;
    EXPECT_TRUE(check(rep, "e").skipped);
    EXPECT_NE(check(rep, "b").detail.find("(4,4) formula 15 vs computed 9"), std::string::npos);
    try {
        require_cross_check(rep);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MismatchReport);
    }
}
