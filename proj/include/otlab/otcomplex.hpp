#pragma once

#include "otlab/dcomplex.hpp"
#include "otlab/errors.hpp"
#include "otlab/invariants.hpp"
#include "otlab/numeric.hpp"
#include "otlab/relations.hpp"
#include "otlab/units.hpp"
#include "otlab/zigzag.hpp"

#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace otlab {

// ---------------------------------------------------------------------------
// Exterior algebra on the invariant coframe. Generator bits, for n = s + t:
//   omega^k -> k,  gamma^i -> s + i,  bar omega^k -> n + k,  bar gamma^i -> n + s + i
// (all 0-based). A monomial is the wedge of its generators in increasing bit order.

using Form = std::map<Mask, Cplx>;

/// Sign of a ^ b relative to the sorted monomial a | b, or 0 if they overlap.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b)
        return 0;
    int swaps = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
        int bit = std::countr_zero(rest);
        swaps += std::popcount(a >> (bit + 1));
    }
    return swaps % 2 ? -1 : 1;
}

inline void add_term(Form& f, Mask m, const Cplx& v) {
    auto it = f.find(m);
    if (it == f.end())
        f.emplace(m, v);
    else
        it->second += v;
}

inline Form wedge(const Form& a, const Form& b) {
    Form out;
    for (auto& [ma, va] : a)
        for (auto& [mb, vb] : b) {
            int sg = wedge_sign(ma, mb);
            if (sg != 0)
                add_term(out, ma | mb, sg > 0 ? va * vb : -(va * vb));
        }
    return out;
}

inline Form operator+(Form a, const Form& b) {
    for (auto& [m, v] : b)
        add_term(a, m, v);
    return a;
}

inline Form scale(Form a, const Cplx& k) {
    for (auto& [m, v] : a)
        v *= k;
    return a;
}

inline Real max_coefficient(const Form& f) {
    Real best = 0;
    for (auto& [m, v] : f)
        best = std::max(best, abs(v));
    return best;
}

class CoframeAlgebra {
  public:
    CoframeAlgebra(int s, int t, Mat<Real> b, Mat<Real> c) : s_(s), t_(t), b_(std::move(b)), c_(std::move(c)) {
        const Cplx half_i(Real(0), Real(1) / 2);
        for (int g = 0; g < 2 * n(); ++g)
            dgen_.push_back(Form{});
        for (int k = 0; k < s_; ++k) {
            // d omega^k = d bar omega^k = (i/2) omega^k ^ bar omega^k
            Form f;
            add_term(f, Mask(1) << omega(k) | Mask(1) << omegabar(k), half_i);
            dgen_[omega(k)] = f;
            dgen_[omegabar(k)] = f;
        }
        for (int i = 0; i < t_; ++i) {
            Form f, g;
            for (int h = 0; h < s_; ++h) {
                Cplx a(-c_(h, i) / 2, b_(h, i) / 4); // i/4 b - c/2
                // omega^h ^ gamma^i and bar omega^h ^ gamma^i
                add_term(f, Mask(1) << omega(h) | Mask(1) << gamma(i), a * Cplx(Real(wedge_sign(Mask(1) << omega(h), Mask(1) << gamma(i)))));
                add_term(f, Mask(1) << gamma(i) | Mask(1) << omegabar(h),
                         -a * Cplx(Real(wedge_sign(Mask(1) << omegabar(h), Mask(1) << gamma(i)))));
                // conjugate: d bar gamma^i = conj(a) bar omega^h ^ bar gamma^i - conj(a) omega^h ^ bar gamma^i
                Cplx ac = conj(a);
                add_term(g, Mask(1) << omegabar(h) | Mask(1) << gammabar(i),
                         ac * Cplx(Real(wedge_sign(Mask(1) << omegabar(h), Mask(1) << gammabar(i)))));
                add_term(g, Mask(1) << omega(h) | Mask(1) << gammabar(i),
                         -ac * Cplx(Real(wedge_sign(Mask(1) << omega(h), Mask(1) << gammabar(i)))));
            }
            dgen_[gamma(i)] = f;
            dgen_[gammabar(i)] = g;
        }
    }

    int s() const { return s_; }
    int t() const { return t_; }
    int n() const { return s_ + t_; }
    int omega(int k) const { return k; }
    int gamma(int i) const { return s_ + i; }
    int omegabar(int k) const { return n() + k; }
    int gammabar(int i) const { return n() + s_ + i; }
    const Mat<Real>& b() const { return b_; }
    const Mat<Real>& c() const { return c_; }

    Bideg bidegree(Mask m) const {
        Mask low = m & ((Mask(1) << n()) - 1);
        return {std::popcount(low), std::popcount(m >> n())};
    }

    Form d_generator(int g) const { return dgen_[g]; }

    /// Exterior derivative by the Leibniz rule.
    Form d(Mask m) const {
        Form out;
        int pos = 0;
        for (Mask rest = m; rest; rest &= rest - 1, ++pos) {
            int bit = std::countr_zero(rest);
            Mask before = m & ((Mask(1) << bit) - 1);
            Mask after = m & ~((Mask(2) << bit) - 1);
            for (auto& [dm, v] : dgen_[bit]) {
                int s1 = wedge_sign(before, dm);
                if (s1 == 0)
                    continue;
                int s2 = wedge_sign(before | dm, after);
                if (s2 == 0)
                    continue;
                int sg = s1 * s2 * (pos % 2 ? -1 : 1);
                add_term(out, before | dm | after, sg > 0 ? v : -v);
            }
        }
        return out;
    }

    Form d(const Form& f) const {
        Form out;
        for (auto& [m, v] : f)
            for (auto& [dm, dv] : d(m))
                add_term(out, dm, v * dv);
        return out;
    }

    /// (1,0) part of d.
    Form del(const Form& f) const { return part(f, 1); }
    /// (0,1) part of d.
    Form delbar(const Form& f) const { return part(f, 2); }

    Form monomial(Mask m, Cplx v = Cplx(Real(1))) const { return Form{{m, v}}; }
    Form generator(int bit) const { return monomial(Mask(1) << bit); }

    std::string label(Mask m) const {
        std::string out;
        auto add = [&](const std::string& x) { out += (out.empty() ? "" : "^") + x; };
        for (int k = 0; k < s_; ++k)
            if (m >> omega(k) & 1)
                add("w" + std::to_string(k + 1));
        for (int i = 0; i < t_; ++i)
            if (m >> gamma(i) & 1)
                add("g" + std::to_string(i + 1));
        for (int k = 0; k < s_; ++k)
            if (m >> omegabar(k) & 1)
                add("W" + std::to_string(k + 1));
        for (int i = 0; i < t_; ++i)
            if (m >> gammabar(i) & 1)
                add("G" + std::to_string(i + 1));
        return out.empty() ? "1" : out;
    }

    /// max |d(d g)| over the generators.
    Real d_squared_residual() const {
        Real worst = 0;
        for (int g = 0; g < 2 * n(); ++g)
            worst = std::max(worst, max_coefficient(d(d_generator(g))));
        return worst;
    }

  private:
    Form part(const Form& f, int which) const {
        Form out;
        for (auto& [m, v] : f) {
            Bideg src = bidegree(m);
            for (auto& [dm, dv] : d(m)) {
                Bideg tgt = bidegree(dm);
                bool keep = which == 1 ? tgt.first == src.first + 1 : tgt.second == src.second + 1;
                if (keep)
                    add_term(out, dm, v * dv);
            }
        }
        return out;
    }

    int s_, t_;
    Mat<Real> b_, c_;
    std::vector<Form> dgen_;
};

inline CoframeAlgebra coframe_algebra(const UnitSystem& u) { return CoframeAlgebra(u.s(), u.t(), u.b, u.c); }

namespace detail {

/// Splits d of `m` into (1,0) and (0,1) entries of the complex; entries below
/// `floor` in absolute value are dropped.
template <class Lookup>
void add_split_entries(FloatComplex& c, const CoframeAlgebra& alg, std::size_t src, Mask m, const Form& dm,
                       Lookup lookup, const Real& floor) {
    Bideg from = alg.bidegree(m);
    for (auto& [tm, v] : dm) {
        if (abs(v) <= floor)
            continue;
        Bideg to = alg.bidegree(tm);
        int which = to.first == from.first + 1 ? 1 : 2;
        c.add_entry(which, src, lookup(tm), v);
    }
}

} // namespace detail

/// The bigraded exterior algebra on the coframe with d split by bidegree;
/// dimension 2^(2(s+t)). Coefficients below epsilon are treated as zero.
inline FloatComplex build_invariant_complex(const UnitSystem& u) {
    PrecisionScope scope(u.tol.bits);
    CoframeAlgebra alg = coframe_algebra(u);
    const int gens = 2 * alg.n();
    if (gens > 20)
        fail(ErrorKind::EnumerationTooLarge, "invariant algebra of dimension 2^" + std::to_string(gens));
    FloatComplex c;
    const Mask total = Mask(1) << gens;
    for (Mask m = 0; m < total; ++m) {
        Bideg b = alg.bidegree(m);
        c.add_generator(alg.label(m), b.first, b.second);
    }
    for (Mask m = 0; m < total; ++m)
        detail::add_split_entries(c, alg, m, m, alg.d(m), [](Mask x) { return static_cast<std::size_t>(x); },
                                  u.tol.eps());
    FloatEngine fe(u.tol);
    validate_complex(fe, c);
    return c;
}

// ---------------------------------------------------------------------------
// The VB model.

struct VBElement {
    Mask relation = 0; // de Rham index set (J, K, L)
    Mask j = 0, k = 0, l = 0;
    Mask h = 0, i = 0; // omega_H, bar omega_I
    Mask monomial = 0;
    int grade = 0;
};

struct VBModel {
    int s = 0, t = 0;
    std::vector<Mask> relations;
    std::vector<VBElement> elements;
    FloatComplex complex;
    ExactComplex exact;
    std::set<int> grades;
    std::vector<std::string> notes;
    Real weight_residual = 0; // max |lambda_h| over the witnesses
    Real rational_residual = 0; // max distance of a coefficient to its recognized value

    std::vector<std::size_t> grade_indices(int r) const {
        std::vector<std::size_t> out;
        for (std::size_t x = 0; x < elements.size(); ++x)
            if (elements[x].grade == r)
                out.push_back(x);
        return out;
    }
};

/// lambda_h(J, K, L) = [h in J] + 1/2 sum_{k in K} b_{h,k} + 1/2 sum_{l in L} b_{h,l}.
inline std::vector<Real> vb_weight(const UnitSystem& u, Mask j, Mask k, Mask l) {
    std::vector<Real> w(u.s(), Real(0));
    for (int h = 0; h < u.s(); ++h) {
        if (j >> h & 1)
            w[h] += 1;
        for (int i = 0; i < u.t(); ++i) {
            if (k >> i & 1)
                w[h] += u.b(h, i) / 2;
            if (l >> i & 1)
                w[h] += u.b(h, i) / 2;
        }
    }
    return w;
}

/// Coefficient of log Im w^h in Psi_{JKL}, with both b and c terms kept.
inline std::vector<Cplx> psi_coefficients(const UnitSystem& u, Mask j, Mask k, Mask l) {
    std::vector<Cplx> out(u.s());
    for (int h = 0; h < u.s(); ++h) {
        Cplx v(Real((j >> h & 1) ? -1 : 0));
        for (int i = 0; i < u.t(); ++i) {
            if (k >> i & 1)
                v += Cplx(-u.b(h, i) / 2, u.c(h, i));
            if (l >> i & 1)
                v += Cplx(-u.b(h, i) / 2, -u.c(h, i));
        }
        out[h] = v;
    }
    return out;
}

inline std::string vb_label(const VBElement& e, const CoframeAlgebra& alg) {
    auto idx = [](Mask m) {
        std::string s;
        for (int x : mask_to_indices(m))
            s += (s.empty() ? "" : ",") + std::to_string(x);
        return s;
    };
    return "e[" + idx(e.j) + "|" + idx(e.k) + "|" + idx(e.l) + "]" + (e.monomial ? ":" + alg.label(e.monomial) : "");
}

/// VB = V ^ B on the witnessed relations of `r`, graded by |J| + |K|;
/// restricted to one grade when `rdeg` is given.
inline VBModel build_vb_complex(const UnitSystem& u, const RelationSet& r, std::optional<int> rdeg = std::nullopt) {
    PrecisionScope scope(u.tol.bits);
    const int s = u.s(), t = u.t(), n = s + t;
    CoframeAlgebra alg = coframe_algebra(u);
    VBModel vb;
    vb.s = s;
    vb.t = t;
    const Mask real_mask = (Mask(1) << s) - 1, cpx_mask = (Mask(1) << t) - 1;

    std::map<std::pair<Mask, Mask>, Mask> witness; // (K, L) -> relation
    for (Mask rel : r.derham) {
        Mask j = rel & real_mask, k = (rel >> s) & cpx_mask, l = (rel >> n) & cpx_mask;
        auto w = vb_weight(u, j, k, l);
        for (auto& x : w) {
            vb.weight_residual = std::max(vb.weight_residual, boost::multiprecision::abs(x));
            if (classify_distance(boost::multiprecision::abs(x), u.tol) != Closeness::Equal)
                fail(ErrorKind::NoWitness, "relation " + mask_to_string(rel) + " has nonzero weight " + format_real(x, 6));
        }
        auto [it, fresh] = witness.emplace(std::make_pair(k, l), rel);
        if (!fresh)
            vb.notes.push_back("relations " + mask_to_string(it->second) + " and " + mask_to_string(rel) +
                               " witness the same (K, L); identified");
        else
            vb.relations.push_back(rel);
    }
    // Every Dolbeault pair must come with a de Rham witness.
    for (auto& [ip, jp] : r.dolbeault) {
        Mask rel = r.to_derham(ip, jp);
        if (!std::binary_search(r.derham.begin(), r.derham.end(), rel))
            fail(ErrorKind::NoWitness, "Dolbeault relation " + mask_to_string(rel) + " has no de Rham witness");
    }

    std::map<Mask, std::size_t> index; // monomial -> element (gamma content fixes the relation)
    for (Mask rel : vb.relations) {
        Mask j = rel & real_mask, k = (rel >> s) & cpx_mask, l = (rel >> n) & cpx_mask;
        int grade = std::popcount(j) + std::popcount(k);
        if (rdeg && grade != *rdeg)
            continue;
        for (Mask h = 0; h <= real_mask; ++h)
            for (Mask i = 0; i <= real_mask; ++i) {
                VBElement e{rel, j, k, l, h, i, 0, grade};
                e.monomial = h | (k << s) | (i << n) | (l << (n + s));
                index[e.monomial] = vb.elements.size();
                vb.elements.push_back(e);
                vb.grades.insert(grade);
                Bideg b = alg.bidegree(e.monomial);
                vb.complex.add_generator(vb_label(e, alg), b.first, b.second);
            }
    }

    const Cplx two_i(Real(0), Real(2));
    for (std::size_t x = 0; x < vb.elements.size(); ++x) {
        const VBElement& e = vb.elements[x];
        // d(exp(Psi) m) = exp(Psi) (dPsi ^ m + dm), d log Im w^h = (omega^h - bar omega^h) / (2i)
        auto psi = psi_coefficients(u, e.j, e.k, e.l);
        Form dpsi;
        for (int h = 0; h < s; ++h) {
            Cplx v = psi[h] / two_i;
            add_term(dpsi, Mask(1) << alg.omega(h), v);
            add_term(dpsi, Mask(1) << alg.omegabar(h), -v);
        }
        Form dm = wedge(dpsi, alg.monomial(e.monomial)) + alg.d(e.monomial);
        auto lookup = [&](Mask tm) -> std::size_t {
            auto it = index.find(tm);
            if (it == index.end())
                fail(ErrorKind::NotAComplex, "d leaves the VB span at " + alg.label(tm));
            return it->second;
        };
        detail::add_split_entries(vb.complex, alg, x, e.monomial, dm, lookup, u.tol.eps());
    }
    FloatEngine fe(u.tol);
    validate_complex(fe, vb.complex);

    // Coefficients are Gaussian rationals with small denominators; recover them.
    for (auto& g : vb.complex.generators())
        vb.exact.add_generator(g.label, g.p, g.q);
    for (std::size_t x = 0; x < vb.complex.size(); ++x)
        for (int which : {1, 2})
            for (auto& [tgt, v] : which == 1 ? vb.complex.d1_of(x) : vb.complex.d2_of(x)) {
                GaussianRational q;
                if (!recognize_gaussian(v, 64, u.tol.sqrt_eps(), q))
                    fail(ErrorKind::AmbiguousNumeric, "VB coefficient " + format_real(v.re, 12) + " + " + format_real(v.im, 12) + "i is not rational");
                vb.rational_residual = std::max(vb.rational_residual, abs(v - to_complex(q)));
                vb.exact.add_entry(which, x, tgt, q);
            }
    validate_complex(ExactEngine{}, vb.exact);
    return vb;
}

// ---------------------------------------------------------------------------
// Structure identities.

struct IdentityResult {
    std::string id;
    std::string name;
    bool passed = false;
    Real residual = 0;
    std::string detail;
};

struct IdentityReport {
    std::vector<IdentityResult> results;
    Real tolerance = 0;
    bool all_passed() const {
        for (auto& r : results)
            if (!r.passed)
                return false;
        return true;
    }
};

inline Real form_distance(const Form& a, const Form& b) { return max_coefficient(a + scale(b, Cplx(Real(-1)))); }

/// (a) del delbar eta = (i/2) sum_{k<l} w^k W^k w^l W^l for eta = -i sum_{k,l} w^k ^ W^l;
/// (b) tau = 1/2 sum W^k has delbar tau = 0, del tau = (i/4) sum w^k ^ W^k;
/// (c) for every nonempty I, the coefficient of w^l ^ W^h ^ g^I ^ G^I (l != h) in
///     del delbar (g^I ^ G^I) is 1/4 B_l B_h with B_h = sum_{k in I} b_{h,k}.
/// `expected_b` replaces b in the predicted values of (c).
inline IdentityReport structure_identity_report(const UnitSystem& u, const std::optional<Mat<Real>>& expected_b = {},
                                                const Real& tolerance = Real("1e-60")) {
    PrecisionScope scope(u.tol.bits);
    CoframeAlgebra alg = coframe_algebra(u);
    const int s = u.s(), t = u.t();
    IdentityReport rep;
    rep.tolerance = tolerance;
    const Cplx i1(Real(0), Real(1));

    {
        Form eta;
        for (int k = 0; k < s; ++k)
            for (int l = 0; l < s; ++l)
                eta = eta + wedge(alg.generator(alg.omega(k)), alg.generator(alg.omegabar(l)));
        eta = scale(eta, -i1);
        Form lhs = alg.del(alg.delbar(eta));
        Form rhs;
        for (int k = 0; k < s; ++k)
            for (int l = k + 1; l < s; ++l) {
                Form wk = wedge(alg.generator(alg.omega(k)), alg.generator(alg.omegabar(k)));
                Form wl = wedge(alg.generator(alg.omega(l)), alg.generator(alg.omegabar(l)));
                rhs = rhs + wedge(wk, wl);
            }
        rhs = scale(rhs, Cplx(Real(0), Real(1) / 2));
        IdentityResult r{"a", "ddbar eta is (i/2) sum of w^k W^k w^l W^l", false, form_distance(lhs, rhs), ""};
        r.passed = r.residual <= tolerance && (s < 2 || max_coefficient(lhs) > Real(0));
        r.detail = std::to_string(lhs.size()) + " terms";
        rep.results.push_back(r);
    }
    {
        Form tau;
        for (int k = 0; k < s; ++k)
            tau = tau + alg.generator(alg.omegabar(k));
        tau = scale(tau, Cplx(Real(1) / 2));
        Form rhs;
        for (int k = 0; k < s; ++k)
            rhs = rhs + wedge(alg.generator(alg.omega(k)), alg.generator(alg.omegabar(k)));
        rhs = scale(rhs, Cplx(Real(0), Real(1) / 4));
        Real res = std::max(max_coefficient(alg.delbar(tau)), form_distance(alg.del(tau), rhs));
        IdentityResult r{"b", "delbar tau = 0 and del tau = (i/4) sum w^k W^k", res <= tolerance, res, ""};
        rep.results.push_back(r);
    }
    {
        const Mat<Real>& bb = expected_b ? *expected_b : u.b;
        Real worst = 0;
        long checked = 0;
        for (Mask set = 1; set < (Mask(1) << t); ++set) {
            Mask g = 0;
            for (int i = 0; i < t; ++i)
                if (set >> i & 1)
                    g |= Mask(1) << alg.gamma(i);
            Mask gb = 0;
            for (int i = 0; i < t; ++i)
                if (set >> i & 1)
                    gb |= Mask(1) << alg.gammabar(i);
            Form base = wedge(alg.monomial(g), alg.monomial(gb));
            Form lhs = alg.del(alg.delbar(base));
            std::vector<Real> big_b(s, Real(0));
            for (int h = 0; h < s; ++h)
                for (int i = 0; i < t; ++i)
                    if (set >> i & 1)
                        big_b[h] += bb(h, i);
            for (int l = 0; l < s; ++l)
                for (int h = 0; h < s; ++h) {
                    if (l == h)
                        continue;
                    Form probe = wedge(wedge(alg.generator(alg.omega(l)), alg.generator(alg.omegabar(h))), base);
                    auto [mask, sign] = *probe.begin();
                    auto it = lhs.find(mask);
                    Cplx got = it == lhs.end() ? Cplx() : it->second / sign;
                    Cplx want(big_b[l] * big_b[h] / 4);
                    worst = std::max(worst, abs(got - want));
                    ++checked;
                }
        }
        IdentityResult r{"c", "ddbar(g^I G^I) coefficients are B_l B_h / 4", worst <= tolerance, worst,
                         std::to_string(checked) + " coefficients"};
        rep.results.push_back(r);
    }
    return rep;
}

inline IdentityReport verify_structure_identities(const UnitSystem& u, const std::optional<Mat<Real>>& expected_b = {}) {
    IdentityReport rep = structure_identity_report(u, expected_b);
    for (auto& r : rep.results)
        if (!r.passed)
            fail(ErrorKind::IdentityFailed, "(" + r.id + ") " + r.name + ": residual " + format_real(r.residual, 6));
    return rep;
}

// ---------------------------------------------------------------------------
// Formula tables against dimensions computed on the VB model.

struct CrossCheck {
    std::string id;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct CrossCheckReport {
    std::vector<CrossCheck> checks;
    ZigzagDecomposition zigzags;
    BiTable vb_column, vb_row, vb_bott_chern, vb_aeppli;
    std::map<int, long> vb_de_rham;
    long max_frolicher_rank = 0;

    bool all_passed() const {
        for (auto& c : checks)
            if (!c.passed && !c.skipped)
                return false;
        return true;
    }
    std::string first_failure() const {
        for (auto& c : checks)
            if (!c.passed && !c.skipped)
                return "(" + c.id + ") " + c.name + ": " + c.detail;
        return "";
    }
};

inline BiTable to_bitable(const Table& t) {
    BiTable out;
    for (std::size_t p = 0; p < t.size(); ++p)
        for (std::size_t q = 0; q < t[p].size(); ++q)
            bump(out, {static_cast<int>(p), static_cast<int>(q)}, t[p][q]);
    return out;
}

inline BiTable transposed(const BiTable& t) {
    BiTable out;
    for (auto& [b, v] : t)
        out[{b.second, b.first}] = v;
    return out;
}

inline std::string table_difference(const BiTable& want, const BiTable& got) {
    std::set<Bideg> keys;
    for (auto& [k, v] : want)
        keys.insert(k);
    for (auto& [k, v] : got)
        keys.insert(k);
    std::string out;
    for (auto& k : keys) {
        long a = want.count(k) ? want.at(k) : 0, b = got.count(k) ? got.at(k) : 0;
        if (a != b)
            out += (out.empty() ? "" : ", ") + bideg_to_string(k) + " formula " + std::to_string(a) + " vs computed " +
                   std::to_string(b);
    }
    return out.empty() ? "equal" : out;
}

/// Runs the cross-checks on the VB model (exact or float copy, per engine).
template <class Engine>
CrossCheckReport oracle_cross_check(const Engine& e, const UnitSystem& u, const RelationSet& r, const VBModel& vb,
                                    const std::optional<FloatComplex>& invariant = std::nullopt) {
    using S = typename Engine::Scalar;
    const DoubleComplex<S>* cx;
    if constexpr (Engine::exact)
        cx = &vb.exact;
    else
        cx = &vb.complex;
    PrecisionScope scope(u.tol.bits);
    const int s = u.s(), t = u.t();
    CrossCheckReport rep;
    auto add = [&](std::string id, std::string name, const BiTable& want, const BiTable& got) {
        CrossCheck c{std::move(id), std::move(name), want == got, false, table_difference(want, got)};
        rep.checks.push_back(c);
    };

    // (a) per grade
    {
        CrossCheck c{"a", "Dolbeault cohomology of each V^rB", true, false, ""};
        for (int rdeg = 0; rdeg <= s + t; ++rdeg) {
            auto idx = vb.grade_indices(rdeg);
            BiTable got = idx.empty() ? BiTable{} : column_cohomology(e, cx->restricted(idx));
            BiTable want = to_bitable(vrb_dolbeault(r, s, rdeg));
            if (want != got) {
                c.passed = false;
                c.detail += "grade " + std::to_string(rdeg) + ": " + table_difference(want, got) + "; ";
            }
        }
        if (c.passed)
            c.detail = "equal for grades 0.." + std::to_string(s + t);
        rep.checks.push_back(c);
    }
    rep.vb_column = column_cohomology(e, *cx);
    rep.vb_row = row_cohomology(e, *cx);
    rep.vb_bott_chern = bott_chern_dims(e, *cx);
    rep.vb_aeppli = aeppli_dims(e, *cx);
    rep.vb_de_rham = de_rham_dims(e, *cx);
    add("b", "Bott-Chern numbers", to_bitable(bott_chern_numbers(r, s)), rep.vb_bott_chern);
    {
        auto betti = betti_numbers(r, s);
        std::map<int, long> want;
        for (std::size_t k = 0; k < betti.size(); ++k)
            if (betti[k])
                want[static_cast<int>(k)] = betti[k];
        CrossCheck c{"c", "Betti numbers", want == rep.vb_de_rham, false, ""};
        c.detail = c.passed ? "equal" : "de Rham dimensions differ";
        rep.checks.push_back(c);
    }
    {
        rep.zigzags = zigzag_decompose(e, *cx);
        ZigzagReport want = zigzag_multiplicities(r, s);
        bool ok = want.odd == rep.zigzags.odd && rep.zigzags.even.empty();
        std::string detail = ok ? "equal" : "";
        if (!ok) {
            for (auto& [shape, m] : want.odd) {
                long got = rep.zigzags.odd.count(shape) ? rep.zigzags.odd.at(shape) : 0;
                if (got != m)
                    detail += to_string(shape) + " formula " + std::to_string(m) + " vs computed " + std::to_string(got) + "; ";
            }
            for (auto& [shape, m] : rep.zigzags.odd)
                if (!want.odd.count(shape))
                    detail += to_string(shape) + " formula 0 vs computed " + std::to_string(m) + "; ";
            for (auto& [shape, m] : rep.zigzags.even)
                detail += "unexpected even zigzag " + to_string(shape) + "; ";
        }
        rep.checks.push_back({"d", "zigzag multiplicities", ok, false, detail});
    }
    {
        CrossCheck c{"e", "Dolbeault cohomology of the invariant algebra", false, true, "skipped: not pluriclosed"};
        if (invariant) {
            FloatEngine fe(u.tol);
            BiTable got = column_cohomology(fe, *invariant);
            BiTable want = to_bitable(hodge_numbers(r, s));
            c.skipped = false;
            c.passed = got == want;
            c.detail = table_difference(want, got);
        }
        rep.checks.push_back(c);
    }
    BiTable hodge = to_bitable(hodge_numbers(r, s));
    add("f", "Hodge numbers of VB", hodge, rep.vb_column);
    add("g", "conjugate Hodge numbers of VB", transposed(hodge), rep.vb_row);
    add("h", "Aeppli numbers", to_bitable(aeppli_numbers(zigzag_multiplicities(r, s), s + t)), rep.vb_aeppli);
    {
        FrolicherPages pages = frolicher_pages(e, *cx, stable_page(*cx));
        long worst = 0;
        for (auto* ranks : {&pages.column_ranks, &pages.row_ranks})
            for (auto& [rr, table] : *ranks)
                for (auto& [b, m] : table)
                    worst = std::max(worst, m);
        rep.max_frolicher_rank = worst;
        rep.checks.push_back({"i", "Froelicher degeneration at E1", worst == 0, false,
                              worst == 0 ? "all d_r vanish" : "nonzero d_r of rank " + std::to_string(worst)});
    }
    {
        ZigzagReport bi = zigzag_multiplicities_bigraded(r, s);
        BiTable bc = to_bitable(bott_chern_from_zigzags(bi, s + t));
        BiTable ae = to_bitable(aeppli_numbers(bi, s + t));
        bool ok = bi.odd == rep.zigzags.odd && rep.zigzags.even.empty() && bc == rep.vb_bott_chern &&
                  ae == rep.vb_aeppli;
        std::string detail = "equal";
        if (!ok)
            detail = "zigzags " + std::string(bi.odd == rep.zigzags.odd ? "equal" : "differ") + "; Bott-Chern " +
                     table_difference(bc, rep.vb_bott_chern) + "; Aeppli " + table_difference(ae, rep.vb_aeppli);
        rep.checks.push_back({"j", "bigraded zigzag multiplicities", ok, false, detail});
    }
    return rep;
}

inline void require_cross_check(const CrossCheckReport& rep) {
    if (!rep.all_passed())
        fail(ErrorKind::MismatchReport, rep.first_failure());
}

} // namespace otlab
