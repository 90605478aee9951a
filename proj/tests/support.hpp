#pragma once

#include "otlab.hpp"

#include <map>
#include <string>
#include <vector>

#ifndef OTLAB_SOURCE_DIR
#error "OTLAB_SOURCE_DIR must be defined"
#endif

namespace testing_support {

using namespace otlab;

inline std::string source_path(const std::string& rel) { return std::string(OTLAB_SOURCE_DIR) + "/" + rel; }

struct Loaded {
    DatumFile datum;
    UnitSystem units;
    RelationSet relations;
};

/// Corpus data are parsed once per process.
inline const Loaded& corpus(const std::string& label) {
    static std::map<std::string, Loaded> cache;
    auto it = cache.find(label);
    if (it != cache.end())
        return it->second;
    Loaded l;
    l.datum = load_datum(source_path("corpus/" + label + ".toml"));
    PrecisionScope scope(l.datum.precision_bits);
    FieldDatum f = make_field(parse_polynomial(l.datum.poly), l.datum.precision_bits);
    l.units = build_unit_system(f, l.datum.units);
    l.relations = enumerate_relations(l.units);
    return cache.emplace(label, std::move(l)).first->second;
}

inline const std::vector<std::string>& corpus_labels() {
    static const std::vector<std::string> labels = {"inoue", "otm_1_2", "pluriclosed_2_2", "deg12"};
    return labels;
}

// ---------------------------------------------------------------------------
// Dense Gaussian elimination over Q(i), written separately from the library
// engines so that cohomology dimensions can be recomputed from scratch.

namespace oracle {

using Q = GaussianRational;
using Dense = std::vector<std::vector<Q>>;

inline long rank(Dense m) {
    long r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < static_cast<long>(rows); ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c].is_zero())
                continue;
            Q f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Matrix of a differential restricted to source/target generator lists.
inline Dense matrix(const ExactComplex& c, int which, const std::vector<std::size_t>& src,
                    const std::vector<std::size_t>& tgt) {
    Dense m(tgt.size(), std::vector<Q>(src.size()));
    std::map<std::size_t, std::size_t> row;
    for (std::size_t i = 0; i < tgt.size(); ++i)
        row[tgt[i]] = i;
    for (std::size_t j = 0; j < src.size(); ++j)
        for (auto& [t, v] : (which == 1 ? c.d1_of(src[j]) : c.d2_of(src[j])))
            if (row.count(t))
                m[row[t]][j] += v;
    return m;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
    Dense out(a.size(), std::vector<Q>(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (!a[i][k].is_zero())
                for (std::size_t j = 0; j < cols; ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Dense vstack(const Dense& a, const Dense& b) {
    Dense out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Dense hstack(const Dense& a, const Dense& b, std::size_t rows) {
    Dense out(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < a.size())
            out[i] = a[i];
        if (i < b.size())
            out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    }
    return out;
}

struct Tables {
    BiTable column, row, bott_chern, aeppli;
    std::map<int, long> de_rham;
};

inline Tables compute(const ExactComplex& c) {
    std::map<Bideg, std::vector<std::size_t>> cell;
    for (std::size_t i = 0; i < c.size(); ++i)
        cell[{c.generators()[i].p, c.generators()[i].q}].push_back(i);
    auto at = [&](int p, int q) {
        auto it = cell.find({p, q});
        return it == cell.end() ? std::vector<std::size_t>{} : it->second;
    };
    auto put = [](BiTable& t, const Bideg& b, long v) {
        if (v)
            t[b] = v;
    };
    Tables out;
    for (auto& [b, here] : cell) {
        auto [p, q] = b;
        const long n = static_cast<long>(here.size());
        auto d1_out = matrix(c, 1, here, at(p + 1, q)), d2_out = matrix(c, 2, here, at(p, q + 1));
        auto d1_in = matrix(c, 1, at(p - 1, q), here), d2_in = matrix(c, 2, at(p, q - 1), here);
        put(out.column, b, n - rank(d2_out) - rank(d2_in));
        put(out.row, b, n - rank(d1_out) - rank(d1_in));

        long both = n - rank(vstack(d1_out, d2_out));
        auto src = at(p - 1, q - 1), mid = at(p - 1, q);
        auto ddbar_in = multiply(matrix(c, 1, mid, here), matrix(c, 2, src, mid), mid.size(), src.size());
        put(out.bott_chern, b, both - rank(ddbar_in));

        auto mid_out = at(p, q + 1), far = at(p + 1, q + 1);
        auto ddbar_out = multiply(matrix(c, 1, mid_out, far), matrix(c, 2, here, mid_out), mid_out.size(), here.size());
        long sum_in = rank(hstack(d1_in, d2_in, here.size()));
        put(out.aeppli, b, (n - rank(ddbar_out)) - sum_in);
    }
    // total complex
    std::map<int, std::vector<std::size_t>> deg;
    for (std::size_t i = 0; i < c.size(); ++i)
        deg[c.generators()[i].p + c.generators()[i].q].push_back(i);
    auto total = [&](int k) {
        auto src = deg.count(k) ? deg[k] : std::vector<std::size_t>{};
        auto tgt = deg.count(k + 1) ? deg[k + 1] : std::vector<std::size_t>{};
        Dense m = matrix(c, 1, src, tgt);
        Dense m2 = matrix(c, 2, src, tgt);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j)
                m[i][j] += m2[i][j];
        return rank(m);
    };
    for (auto& [k, idx] : deg) {
        long v = static_cast<long>(idx.size()) - total(k) - total(k - 1);
        if (v)
            out.de_rham[k] = v;
    }
    return out;
}

} // namespace oracle

} // namespace testing_support
