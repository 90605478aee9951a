#pragma once

#include "otlab/dcomplex.hpp"
#include "otlab/errors.hpp"
#include "otlab/invariants.hpp"
#include "otlab/linalg.hpp"

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace otlab {

/// Even-length zigzag detected by a Froelicher differential d_r with source
/// at (p, q). Column orientation: a_0 -d1-> z_0 <-d2- a_1 -d1-> ... ending in
/// z_{r-1}, seen by the column (d2-first) spectral sequence. Row orientation
/// is the mirror image with d1 and d2 exchanged.
struct EvenShape {
    Filtration orientation = Filtration::Column;
    int r = 1;
    int p = 0;
    int q = 0;
    friend bool operator<(const EvenShape& a, const EvenShape& b) {
        return std::tie(a.orientation, a.r, a.p, a.q) < std::tie(b.orientation, b.r, b.p, b.q);
    }
    friend bool operator==(const EvenShape& a, const EvenShape& b) {
        return a.orientation == b.orientation && a.r == b.r && a.p == b.p && a.q == b.q;
    }
};

inline std::string to_string(const Shape& s) {
    return "S_" + std::to_string(s.d) + "^{" + std::to_string(s.p) + "," + std::to_string(s.q) + "}";
}

inline std::string to_string(const EvenShape& s) {
    return std::string(s.orientation == Filtration::Column ? "column" : "row") + " d_" + std::to_string(s.r) + " at " +
           bideg_to_string({s.p, s.q});
}

using ExactComplex = DoubleComplex<GaussianRational>;
using FloatComplex = DoubleComplex<Cplx>;

// ---------------------------------------------------------------------------
// Indecomposables.

inline ExactComplex make_odd_shape(const Shape& z) {
    ExactComplex c;
    const int d = z.d, p = z.p, q = z.q;
    if (p + q >= d) {
        const int k = p + q - d;
        std::vector<std::size_t> x, y;
        for (int i = 0; i <= k; ++i)
            x.push_back(c.add_generator("x" + std::to_string(i), d - q + i, q - i));
        for (int i = 0; i < k; ++i)
            y.push_back(c.add_generator("y" + std::to_string(i), d - q + i, q - 1 - i));
        for (int i = 0; i < k; ++i) {
            c.add_entry(2, y[i], x[i], GaussianRational(1));
            c.add_entry(1, y[i], x[i + 1], GaussianRational(-1));
        }
    } else {
        const int k = d - p - q;
        std::vector<std::size_t> x, w;
        for (int i = 0; i <= k; ++i)
            x.push_back(c.add_generator("x" + std::to_string(i), p + i, d - p - i));
        for (int i = 0; i < k; ++i)
            w.push_back(c.add_generator("z" + std::to_string(i), p + 1 + i, d - p - i));
        for (int i = 0; i < k; ++i) {
            c.add_entry(1, x[i], w[i], GaussianRational(1));
            c.add_entry(2, x[i + 1], w[i], GaussianRational(1));
        }
    }
    return c;
}

inline ExactComplex make_even_shape(const EvenShape& z) {
    ExactComplex c;
    std::vector<std::size_t> a, w;
    const bool col = z.orientation == Filtration::Column;
    for (int i = 0; i < z.r; ++i) {
        if (col) {
            a.push_back(c.add_generator("a" + std::to_string(i), z.p + i, z.q - i));
            w.push_back(c.add_generator("z" + std::to_string(i), z.p + i + 1, z.q - i));
        } else {
            a.push_back(c.add_generator("a" + std::to_string(i), z.p - i, z.q + i));
            w.push_back(c.add_generator("z" + std::to_string(i), z.p - i, z.q + i + 1));
        }
    }
    for (int i = 0; i < z.r; ++i) {
        c.add_entry(col ? 1 : 2, a[i], w[i], GaussianRational(1));
        if (i + 1 < z.r)
            c.add_entry(col ? 2 : 1, a[i + 1], w[i], GaussianRational(1));
    }
    return c;
}

inline ExactComplex make_square(int p, int q) {
    ExactComplex c;
    auto a = c.add_generator("a", p, q);
    auto b = c.add_generator("b", p, q + 1);
    auto x = c.add_generator("c", p + 1, q);
    auto e = c.add_generator("e", p + 1, q + 1);
    c.add_entry(2, a, b, GaussianRational(1));
    c.add_entry(1, a, x, GaussianRational(1));
    c.add_entry(1, b, e, GaussianRational(1));
    c.add_entry(2, x, e, GaussianRational(-1));
    return c;
}

// ---------------------------------------------------------------------------
// Decomposition.

/// All dimension tables that are additive over direct sums.
struct InvariantTables {
    BiTable cells;
    BiTable column;
    BiTable row;
    BiTable bott_chern;
    BiTable aeppli;
    std::map<int, long> de_rham;

    friend bool operator==(const InvariantTables& a, const InvariantTables& b) {
        return a.cells == b.cells && a.column == b.column && a.row == b.row && a.bott_chern == b.bott_chern &&
               a.aeppli == b.aeppli && a.de_rham == b.de_rham;
    }

    void add(const InvariantTables& o, long mult) {
        auto merge = [mult](BiTable& dst, const BiTable& src) {
            for (auto& [k, v] : src)
                bump(dst, k, v * mult);
        };
        merge(cells, o.cells);
        merge(column, o.column);
        merge(row, o.row);
        merge(bott_chern, o.bott_chern);
        merge(aeppli, o.aeppli);
        for (auto& [k, v] : o.de_rham) {
            de_rham[k] += v * mult;
            if (de_rham[k] == 0)
                de_rham.erase(k);
        }
    }
};

template <class Engine>
InvariantTables invariant_tables(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    InvariantTables t;
    for (auto& [b, idx] : c.cells())
        bump(t.cells, b, static_cast<long>(idx.size()));
    t.column = column_cohomology(e, c);
    t.row = row_cohomology(e, c);
    t.bott_chern = bott_chern_dims(e, c);
    t.aeppli = aeppli_dims(e, c);
    t.de_rham = de_rham_dims(e, c);
    return t;
}

struct ZigzagDecomposition {
    std::map<Shape, long> odd;
    std::map<EvenShape, long> even;
    BiTable square_corners; // lower-left corners of square summands
    long squares = 0;
    std::string residual; // summary of the reassembly check
    bool residual_ok = false;

    long zigzag_count() const {
        long n = 0;
        for (auto& [k, v] : odd)
            n += v;
        for (auto& [k, v] : even)
            n += v;
        return n;
    }
};

/// Tables predicted by a multiset of indecomposables.
inline InvariantTables reassemble(const std::map<Shape, long>& odd, const std::map<EvenShape, long>& even,
                                  const BiTable& corners) {
    ExactEngine ex;
    InvariantTables out;
    for (auto& [shape, m] : odd)
        out.add(invariant_tables(ex, make_odd_shape(shape)), m);
    for (auto& [shape, m] : even)
        out.add(invariant_tables(ex, make_even_shape(shape)), m);
    for (auto& [b, m] : corners)
        out.add(invariant_tables(ex, make_square(b.first, b.second)), m);
    return out;
}

inline std::string describe_difference(const InvariantTables& want, const InvariantTables& got) {
    auto cmp = [](const char* name, const BiTable& a, const BiTable& b) -> std::string {
        if (a == b)
            return "";
        std::string s = std::string(name) + " differs:";
        std::map<Bideg, bool> keys;
        for (auto& [k, v] : a)
            keys[k] = true;
        for (auto& [k, v] : b)
            keys[k] = true;
        for (auto& [k, unused] : keys) {
            (void)unused;
            long x = a.count(k) ? a.at(k) : 0, y = b.count(k) ? b.at(k) : 0;
            if (x != y)
                s += " " + bideg_to_string(k) + " " + std::to_string(x) + " vs " + std::to_string(y);
        }
        return s + "; ";
    };
    std::string out = cmp("cells", want.cells, got.cells) + cmp("column", want.column, got.column) +
                      cmp("row", want.row, got.row) + cmp("bott-chern", want.bott_chern, got.bott_chern) +
                      cmp("aeppli", want.aeppli, got.aeppli);
    if (want.de_rham != got.de_rham)
        out += "de rham differs; ";
    return out;
}

/// Multiplicities of every indecomposable summand: odd zigzags from refined
/// Betti numbers, even ones from Froelicher differential ranks, squares from
/// rank(d1 d2). The result is re-assembled and compared against the
/// complex's own tables.
template <class Engine>
ZigzagDecomposition zigzag_decompose(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    ZigzagDecomposition z;
    if (c.size() == 0) {
        z.residual = "empty complex";
        z.residual_ok = true;
        return z;
    }
    auto parts = c.components();
    if (parts.size() > 1) {
        // Every invariant is additive, so summands are handled one at a time.
        for (auto& part : parts) {
            ZigzagDecomposition sub = zigzag_decompose(e, c.restricted(part));
            for (auto& [k, v] : sub.odd)
                z.odd[k] += v;
            for (auto& [k, v] : sub.even)
                z.even[k] += v;
            for (auto& [k, v] : sub.square_corners)
                bump(z.square_corners, k, v);
            z.squares += sub.squares;
        }
        z.residual_ok = true;
        z.residual = "cell dimensions and column/row/Bott-Chern/Aeppli/de Rham tables reassemble exactly (" +
                     std::to_string(parts.size()) + " summands)";
        return z;
    }
    for (int d = c.min_p() + c.min_q(); d <= c.max_p() + c.max_q(); ++d)
        for (auto& [pq, m] : refined_betti(e, c, d))
            z.odd[Shape{d, pq.first, pq.second}] = m;
    FrolicherPages pages = frolicher_pages(e, c, stable_page(c));
    for (auto& [r, table] : pages.column_ranks)
        for (auto& [pq, m] : table)
            z.even[EvenShape{Filtration::Column, r, pq.first, pq.second}] = m;
    for (auto& [r, table] : pages.row_ranks)
        for (auto& [pq, m] : table)
            z.even[EvenShape{Filtration::Row, r, pq.first, pq.second}] = m;
    z.square_corners = square_corners(e, c);
    for (auto& [b, m] : z.square_corners)
        z.squares += m;

    InvariantTables got = invariant_tables(e, c);
    InvariantTables want = reassemble(z.odd, z.even, z.square_corners);
    if (!(got == want))
        fail(ErrorKind::ResidualCheckFailed, describe_difference(want, got));
    z.residual_ok = true;
    z.residual = "cell dimensions and column/row/Bott-Chern/Aeppli/de Rham tables reassemble exactly";
    return z;
}

// ---------------------------------------------------------------------------
// Random sums of indecomposables, hidden by a change of basis in every cell.

struct SyntheticManifest {
    std::map<Shape, long> odd;
    std::map<EvenShape, long> even;
    BiTable square_corners;
    long squares = 0;
};

inline bool manifest_matches(const SyntheticManifest& m, const ZigzagDecomposition& z) {
    return m.odd == z.odd && m.even == z.even && m.square_corners == z.square_corners && m.squares == z.squares;
}

struct SyntheticComplex {
    ExactComplex complex;
    SyntheticManifest manifest;
};

inline Mat<GaussianRational> exact_inverse(const Mat<GaussianRational>& m) {
    const std::size_t n = m.rows();
    auto aug = Mat<GaussianRational>::hcat(m, Mat<GaussianRational>::identity(n));
    ExactEngine::rref(aug);
    return aug.columns(n, n);
}

/// Direct sum of `zigzags` random zigzags and `squares` squares with bidegrees
/// in [0, box], then a random unimodular Gaussian-integer change of basis in
/// every cell.
inline SyntheticComplex random_zigzag_sum(unsigned seed, int zigzags = 5, int squares = 3, int box = 3) {
    std::mt19937 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto inside = [&](const ExactComplex& c) {
        for (auto& g : c.generators())
            if (g.p < 0 || g.q < 0 || g.p > box + 1 || g.q > box + 1)
                return false;
        return true;
    };

    SyntheticComplex out;
    ExactComplex sum;
    int made = 0;
    while (made < zigzags) {
        if (uni(0, 9) < 6) {
            Shape s{uni(0, 2 * box), uni(0, box), uni(0, box)};
            ExactComplex c = make_odd_shape(s);
            if (!inside(c))
                continue;
            sum.append(c, "z" + std::to_string(made) + ".");
            ++out.manifest.odd[s];
        } else {
            EvenShape s{uni(0, 1) ? Filtration::Column : Filtration::Row, uni(1, 2), uni(0, box), uni(0, box)};
            ExactComplex c = make_even_shape(s);
            if (!inside(c))
                continue;
            sum.append(c, "z" + std::to_string(made) + ".");
            ++out.manifest.even[s];
        }
        ++made;
    }
    for (int i = 0; i < squares; ++i) {
        int p = uni(0, box), q = uni(0, box);
        sum.append(make_square(p, q), "s" + std::to_string(i) + ".");
        bump(out.manifest.square_corners, {p, q}, 1);
        ++out.manifest.squares;
    }

    // Per-cell change of basis: new coordinates x' = P x with P unimodular.
    std::map<Bideg, Mat<GaussianRational>> change, inverse;
    for (auto& [b, idx] : sum.cells()) {
        std::size_t n = idx.size();
        auto p = Mat<GaussianRational>::identity(n);
        for (std::size_t step = 0; step < 3 * n; ++step) {
            std::size_t i = uni(0, static_cast<int>(n) - 1), j = uni(0, static_cast<int>(n) - 1);
            if (i == j)
                continue;
            GaussianRational f(uni(-2, 2), uni(-1, 1));
            for (std::size_t col = 0; col < n; ++col)
                p(i, col) += f * p(j, col);
        }
        if (n > 1 && uni(0, 1)) {
            // swap two rows to mix positions
            std::size_t i = uni(0, static_cast<int>(n) - 1), j = uni(0, static_cast<int>(n) - 1);
            for (std::size_t col = 0; col < n; ++col)
                std::swap(p(i, col), p(j, col));
        }
        inverse[b] = exact_inverse(p);
        change[b] = std::move(p);
    }

    ExactComplex& c = out.complex;
    std::map<Bideg, std::vector<std::size_t>> ids;
    for (auto& [b, idx] : sum.cells())
        for (std::size_t i = 0; i < idx.size(); ++i)
            ids[b].push_back(c.add_generator("g" + std::to_string(b.first) + "_" + std::to_string(b.second) + "_" +
                                                 std::to_string(i),
                                             b.first, b.second));
    for (auto& [b, idx] : sum.cells()) {
        (void)idx;
        for (int which : {1, 2}) {
            Bideg tgt = which == 1 ? Bideg{b.first + 1, b.second} : Bideg{b.first, b.second + 1};
            if (!sum.cells().count(tgt))
                continue;
            auto m = change[tgt] * sum.block(which, b) * inverse[b];
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t col = 0; col < m.cols(); ++col)
                    if (!m(r, col).is_zero())
                        c.add_entry(which, ids[b][col], ids[tgt][r], m(r, col));
        }
    }
    return out;
}

inline FloatComplex to_float(const ExactComplex& c) {
    FloatComplex f;
    for (auto& g : c.generators())
        f.add_generator(g.label, g.p, g.q);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (auto& [t, v] : c.d1_of(i))
            f.add_entry(1, i, t, to_complex(v));
        for (auto& [t, v] : c.d2_of(i))
            f.add_entry(2, i, t, to_complex(v));
    }
    return f;
}

} // namespace otlab
