#pragma once

#include "otlab/relations.hpp"
#include "otlab/units.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace otlab {

using Table = std::vector<std::vector<long>>; // [p][q]

inline Table zero_table(int dim) { return Table(dim + 1, std::vector<long>(dim + 1, 0)); }

inline long table_at(const Table& t, int p, int q) {
    if (p < 0 || q < 0 || p >= static_cast<int>(t.size()) || q >= static_cast<int>(t[p].size()))
        return 0;
    return t[p][q];
}

inline long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    long out = 1;
    for (int i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

// ---------------------------------------------------------------------------
// Odd zigzag shapes S_d^{p,q}: endpoints (p, d-p) and (d-q, q).

struct Shape {
    int d = 0;
    int p = 0;
    int q = 0;
    friend bool operator<(const Shape& a, const Shape& b) {
        return std::tie(a.d, a.p, a.q) < std::tie(b.d, b.p, b.q);
    }
    friend bool operator==(const Shape& a, const Shape& b) { return a.d == b.d && a.p == b.p && a.q == b.q; }
};

/// Bott-Chern contribution of one copy of S_d^{p,q} at (a, b): top-right corners.
inline long bc_on_shape(const Shape& z, int a, int b) {
    if (z.p + z.q >= z.d)
        return (a + b == z.d && a <= z.p && b <= z.q) ? 1 : 0;
    return (a + b == z.d + 1 && a > z.p && b > z.q) ? 1 : 0;
}

/// Aeppli contribution of one copy of S_d^{p,q} at (a, b): bottom-left corners.
inline long aeppli_on_shape(const Shape& z, int a, int b) {
    if (z.p + z.q > z.d)
        return (a + b == z.d - 1 && a < z.p && b < z.q) ? 1 : 0;
    if (z.p + z.q == z.d)
        return (a == z.p && b == z.q) ? 1 : 0;
    return (a + b == z.d && a >= z.p && b >= z.q) ? 1 : 0;
}

struct CohomologyReport {
    int dim = 0;
    std::vector<long> betti;  // b_0 .. b_{2 dim}
    Table hodge;              // h^{p,q}
    std::vector<Table> vrb;   // vrb[r] = h^{p,q}(V^r B)
    Table bott_chern;
    Table aeppli;
    bool frolicher_degenerate = true;
};

struct ZigzagReport {
    int dim = 0;
    std::map<Shape, long> odd;           // nonzero multiplicities only
    std::map<std::string, long> even;    // always empty for these complexes
    std::string convention = "S_d^{p,q} has endpoints (p, d-p) and (d-q, q); odd shapes only";
};

/// b_k = sum_{l+m=k} C(s,l) rho_m.
inline std::vector<long> betti_numbers(const RelationSet& r, int s) {
    const int dim = r.dim();
    std::vector<long> b(2 * dim + 1, 0);
    for (int k = 0; k <= 2 * dim; ++k)
        for (int l = 0; l <= k; ++l)
            b[k] += binomial(s, l) * r.rho_at(k - l);
    return b;
}

/// h^{p,q} = sum_{l+m=q} C(s,l) rho_{p,m}.
inline Table hodge_numbers(const RelationSet& r, int s) {
    const int dim = r.dim();
    Table h = zero_table(dim);
    for (int p = 0; p <= dim; ++p)
        for (int q = 0; q <= dim; ++q)
            for (int l = 0; l <= q; ++l)
                h[p][q] += binomial(s, l) * r.rho_pm_at(p, q - l);
    return h;
}

/// Dolbeault numbers of the grade-r summand; only column p = r is nonzero.
inline Table vrb_dolbeault(const RelationSet& r, int s, int rdeg) {
    const int dim = r.dim();
    Table h = zero_table(dim);
    if (rdeg < 0 || rdeg > dim)
        return h;
    for (int q = 0; q <= dim; ++q)
        for (int q1 = 0; q1 <= q; ++q1)
            h[rdeg][q] += binomial(s, q1) * r.rho_pm_at(rdeg, q - q1);
    return h;
}

inline Table bott_chern_numbers(const RelationSet& r, int s) {
    const int dim = r.dim();
    Table bc = zero_table(dim);
    for (int rdeg = 0; rdeg <= dim; ++rdeg) {
        Table h = vrb_dolbeault(r, s, rdeg);
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; q <= dim; ++q) {
                if (rdeg >= p && rdeg >= q)
                    bc[p][q] += table_at(h, rdeg, p + q - rdeg);
                else if (rdeg < p && rdeg < q)
                    bc[p][q] += table_at(h, rdeg, p + q - rdeg - 1);
            }
    }
    return bc;
}

/// mult S_d^{r,r} = h^{r, d-r}(V^r B); even shapes never occur.
inline ZigzagReport zigzag_multiplicities(const RelationSet& r, int s) {
    ZigzagReport z;
    z.dim = r.dim();
    for (int rdeg = 0; rdeg <= z.dim; ++rdeg) {
        Table h = vrb_dolbeault(r, s, rdeg);
        for (int d = 0; d <= 2 * z.dim; ++d) {
            long m = table_at(h, rdeg, d - rdeg);
            if (m != 0)
                z.odd[Shape{d, rdeg, rdeg}] = m;
        }
    }
    return z;
}

/// Zigzag multiplicities split by both gradings of a relation. A Dolbeault
/// pair (I, J) with |I| = p, |J| = m and j real indices in I spans odd shapes
/// S_d^{p, j+m} with multiplicity C(s, d-p-m). Agrees with
/// zigzag_multiplicities whenever every relation has as many unbarred as
/// barred complex indices.
inline ZigzagReport zigzag_multiplicities_bigraded(const RelationSet& r, int s) {
    ZigzagReport z;
    z.dim = r.dim();
    z.convention = "S_d^{p,q} has endpoints (p, d-p) and (d-q, q); p = |J|+|K|, q = |J|+|L|";
    const Mask real = (Mask(1) << s) - 1;
    for (auto& [i, jd] : r.dolbeault) {
        int p = popcount(i), m = popcount(jd), q = popcount(i & real) + m;
        for (int d = p + m; d <= p + m + s; ++d)
            if (long c = binomial(s, d - p - m))
                z.odd[Shape{d, p, q}] += c;
    }
    return z;
}

/// Bottom-left corner count over the odd shapes.
inline Table aeppli_numbers(const ZigzagReport& z, int dim) {
    Table a = zero_table(dim);
    for (auto& [shape, mult] : z.odd)
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; q <= dim; ++q)
                a[p][q] += mult * aeppli_on_shape(shape, p, q);
    return a;
}

/// Top-right corner count over the odd shapes.
inline Table bott_chern_from_zigzags(const ZigzagReport& z, int dim) {
    Table a = zero_table(dim);
    for (auto& [shape, mult] : z.odd)
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; q <= dim; ++q)
                a[p][q] += mult * bc_on_shape(shape, p, q);
    return a;
}

inline CohomologyReport cohomology_report(const RelationSet& r, int s) {
    CohomologyReport c;
    c.dim = r.dim();
    c.betti = betti_numbers(r, s);
    c.hodge = hodge_numbers(r, s);
    for (int rdeg = 0; rdeg <= c.dim; ++rdeg)
        c.vrb.push_back(vrb_dolbeault(r, s, rdeg));
    c.bott_chern = bott_chern_numbers(r, s);
    c.aeppli = aeppli_numbers(zigzag_multiplicities(r, s), c.dim);
    return c;
}

struct PluriclosedForms {
    std::vector<long> betti;
    Table hodge;
};

/// Closed forms for s = t data with the pluriclosed relations.
inline PluriclosedForms pluriclosed_closed_forms(int s) {
    const int dim = 2 * s;
    PluriclosedForms f;
    f.betti.assign(2 * dim + 1, 0);
    for (int l = 0; l <= 2 * dim; ++l)
        for (int k = 0; k <= s; ++k)
            f.betti[l] += binomial(s, l - 3 * k) * binomial(s, k);
    f.hodge = zero_table(dim);
    for (int p = 0; p <= dim; p += 2)
        for (int q = 0; q <= dim; ++q)
            f.hodge[p][q] = binomial(s, q - p / 2) * binomial(s, p / 2);
    return f;
}

struct PluriclosedTest {
    Verdict verdict = Verdict::Fails;
    std::string witness;
    long h21 = 0;
    long h42 = 0;
    long h12 = 0;
    long wedge_image_dim = 0; // pairs of disjoint length-3 relations whose union is a relation
};

/// s = t, h^{2,1} = s, h^{4,2} = C(s,2), h^{1,2} = 0 and surjectivity of the
/// wedge map, the latter decided by the disjoint-triple structure.
inline PluriclosedTest cohomological_pluriclosed_test(const RelationSet& r, int s, int t) {
    PluriclosedTest out;
    Table h = hodge_numbers(r, s);
    out.h21 = table_at(h, 2, 1);
    out.h42 = table_at(h, 4, 2);
    out.h12 = table_at(h, 1, 2);
    std::vector<Mask> triples;
    for (Mask m : r.derham)
        if (popcount(m) == 3)
            triples.push_back(m);
    for (std::size_t a = 0; a < triples.size(); ++a)
        for (std::size_t b = a + 1; b < triples.size(); ++b)
            if (!(triples[a] & triples[b]) &&
                std::binary_search(r.derham.begin(), r.derham.end(), triples[a] | triples[b]))
                ++out.wedge_image_dim;
    if (s != t) {
        out.witness = "s != t";
        return out;
    }
    if (out.h21 != s || out.h42 != binomial(s, 2) || out.h12 != 0) {
        out.witness = "Hodge numbers h^{2,1}=" + std::to_string(out.h21) + ", h^{4,2}=" + std::to_string(out.h42) +
                      ", h^{1,2}=" + std::to_string(out.h12);
        return out;
    }
    RelationStructure st = pluriclosed_relation_structure(r, s, t);
    if (st.verdict != Verdict::Holds) {
        out.witness = "wedge map not surjective: " + st.witness;
        return out;
    }
    out.verdict = Verdict::Holds;
    out.witness = st.witness;
    return out;
}

} // namespace otlab
