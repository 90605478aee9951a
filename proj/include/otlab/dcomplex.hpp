#pragma once

#include "otlab/errors.hpp"
#include "otlab/linalg.hpp"
#include "otlab/numeric.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace otlab {

using Bideg = std::pair<int, int>;
using BiTable = std::map<Bideg, long>; // zero entries omitted

inline std::string bideg_to_string(const Bideg& b) {
    return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
}

inline void bump(BiTable& t, const Bideg& b, long v) {
    if (v == 0)
        return;
    long& x = t[b];
    x += v;
    if (x == 0)
        t.erase(b);
}

/// Finite bigraded vector space with d1 of bidegree (1,0) and d2 of bidegree
/// (0,1). Scalars are GaussianRational (exact) or Cplx (float).
template <class S>
class DoubleComplex {
  public:
    struct Generator {
        std::string label;
        int p = 0;
        int q = 0;
    };
    struct Entry {
        std::size_t src = 0;
        std::size_t tgt = 0;
        S coef{};
    };

    std::size_t add_generator(std::string label, int p, int q) {
        gens_.push_back({std::move(label), p, q});
        d1_.emplace_back();
        d2_.emplace_back();
        cells_[{p, q}].push_back(gens_.size() - 1);
        local_.push_back(cells_[{p, q}].size() - 1);
        return gens_.size() - 1;
    }

    /// Adds coef * tgt to d(src); which = 1 for d1, 2 for d2.
    void add_entry(int which, std::size_t src, std::size_t tgt, const S& coef) {
        if (src >= gens_.size() || tgt >= gens_.size())
            fail(ErrorKind::ShapeMismatch, "differential entry refers to an unknown generator");
        const Generator& a = gens_[src];
        const Generator& b = gens_[tgt];
        Bideg want = which == 1 ? Bideg{a.p + 1, a.q} : Bideg{a.p, a.q + 1};
        if (Bideg{b.p, b.q} != want)
            fail(ErrorKind::ShapeMismatch, "d" + std::to_string(which) + " from " + a.label + " " +
                                               bideg_to_string({a.p, a.q}) + " cannot reach " + b.label + " " +
                                               bideg_to_string({b.p, b.q}));
        auto& row = which == 1 ? d1_[src] : d2_[src];
        for (auto& e : row)
            if (e.first == tgt) {
                e.second += coef;
                return;
            }
        row.emplace_back(tgt, coef);
    }

    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::map<Bideg, std::vector<std::size_t>>& cells() const { return cells_; }
    const std::vector<std::pair<std::size_t, S>>& d1_of(std::size_t i) const { return d1_[i]; }
    const std::vector<std::pair<std::size_t, S>>& d2_of(std::size_t i) const { return d2_[i]; }

    std::size_t cell_dim(const Bideg& b) const {
        auto it = cells_.find(b);
        return it == cells_.end() ? 0 : it->second.size();
    }

    /// Matrix of d_which restricted to the cell b.
    Mat<S> block(int which, const Bideg& b) const {
        Bideg tgt = which == 1 ? Bideg{b.first + 1, b.second} : Bideg{b.first, b.second + 1};
        Mat<S> m(cell_dim(tgt), cell_dim(b));
        auto it = cells_.find(b);
        if (it == cells_.end())
            return m;
        for (std::size_t c = 0; c < it->second.size(); ++c) {
            std::size_t g = it->second[c];
            for (auto& [t, coef] : which == 1 ? d1_[g] : d2_[g])
                m(local_[t], c) = coef;
        }
        return m;
    }

    int min_p() const { return extreme([](const Generator& g) { return g.p; }, true); }
    int max_p() const { return extreme([](const Generator& g) { return g.p; }, false); }
    int min_q() const { return extreme([](const Generator& g) { return g.q; }, true); }
    int max_q() const { return extreme([](const Generator& g) { return g.q; }, false); }

    /// Generators of total degree k, in insertion order.
    std::vector<std::size_t> total_basis(int k) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].p + gens_[i].q == k)
                out.push_back(i);
        return out;
    }

    /// Total differential d1 + d2 from degree k to degree k + 1.
    Mat<S> total(int k) const {
        auto src = total_basis(k), tgt = total_basis(k + 1);
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t i = 0; i < tgt.size(); ++i)
            pos[tgt[i]] = i;
        Mat<S> m(tgt.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (auto& [t, coef] : d1_[src[c]])
                m(pos[t], c) += coef;
            for (auto& [t, coef] : d2_[src[c]])
                m(pos[t], c) += coef;
        }
        return m;
    }

    /// Generator sets of the connected summands (linked by nonzero entries).
    std::vector<std::vector<std::size_t>> components() const {
        std::vector<std::size_t> parent(gens_.size());
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (auto* row : {&d1_[i], &d2_[i]})
                for (auto& [t, coef] : *row)
                    if (!Mat<S>::is_zero_entry(coef))
                        parent[find(i)] = find(t);
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            groups[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [root, members] : groups)
            out.push_back(std::move(members));
        return out;
    }

    /// Subcomplex on the given generators; entries leaving the set are dropped.
    DoubleComplex restricted(const std::vector<std::size_t>& keep) const {
        DoubleComplex out;
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t g : keep)
            pos[g] = out.add_generator(gens_[g].label, gens_[g].p, gens_[g].q);
        for (std::size_t g : keep) {
            for (auto& [t, coef] : d1_[g])
                if (pos.count(t))
                    out.add_entry(1, pos[g], pos[t], coef);
            for (auto& [t, coef] : d2_[g])
                if (pos.count(t))
                    out.add_entry(2, pos[g], pos[t], coef);
        }
        return out;
    }

    /// Same complex with the roles of p, q (and of d1, d2) exchanged.
    DoubleComplex transposed() const {
        DoubleComplex out;
        for (auto& g : gens_)
            out.add_generator(g.label, g.q, g.p);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            for (auto& [t, c] : d1_[i])
                out.add_entry(2, i, t, c);
            for (auto& [t, c] : d2_[i])
                out.add_entry(1, i, t, c);
        }
        return out;
    }

    /// Direct sum; generator labels of the second summand are prefixed.
    void append(const DoubleComplex& other, const std::string& prefix = "") {
        std::size_t base = gens_.size();
        for (auto& g : other.gens_)
            add_generator(prefix + g.label, g.p, g.q);
        for (std::size_t i = 0; i < other.gens_.size(); ++i) {
            for (auto& [t, c] : other.d1_[i])
                add_entry(1, base + i, base + t, c);
            for (auto& [t, c] : other.d2_[i])
                add_entry(2, base + i, base + t, c);
        }
    }

  private:
    template <class F>
    int extreme(F f, bool lowest) const {
        if (gens_.empty())
            return 0;
        int v = f(gens_[0]);
        for (auto& g : gens_)
            v = lowest ? std::min(v, f(g)) : std::max(v, f(g));
        return v;
    }

    std::vector<Generator> gens_;
    std::vector<std::vector<std::pair<std::size_t, S>>> d1_, d2_;
    std::map<Bideg, std::vector<std::size_t>> cells_;
    std::vector<std::size_t> local_;
};

/// Checks d1^2 = 0, d2^2 = 0 and d1 d2 + d2 d1 = 0 on every cell.
template <class Engine>
void validate_complex(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    for (auto& [b, idx] : c.cells()) {
        (void)idx;
        auto d1 = c.block(1, b), d2 = c.block(2, b);
        auto d1n = c.block(1, {b.first + 1, b.second});
        auto d2n = c.block(2, {b.first, b.second + 1});
        auto d1up = c.block(1, {b.first, b.second + 1});
        auto d2right = c.block(2, {b.first + 1, b.second});
        if (!e.is_zero(d1n * d1))
            fail(ErrorKind::NotAComplex, "d1^2 != 0 at " + bideg_to_string(b) + ", residual " + e.residual(d1n * d1));
        if (!e.is_zero(d2n * d2))
            fail(ErrorKind::NotAComplex, "d2^2 != 0 at " + bideg_to_string(b) + ", residual " + e.residual(d2n * d2));
        auto anti = d1up * d2 + d2right * d1;
        if (!e.is_zero(anti))
            fail(ErrorKind::NotAComplex,
                 "d1 d2 + d2 d1 != 0 at " + bideg_to_string(b) + ", residual " + e.residual(anti));
    }
}

template <class S>
struct ComplexSpec {
    std::vector<typename DoubleComplex<S>::Generator> basis;
    std::vector<typename DoubleComplex<S>::Entry> d1;
    std::vector<typename DoubleComplex<S>::Entry> d2;
};

/// Assembles and validates a complex from a basis and differential entries.
template <class Engine>
DoubleComplex<typename Engine::Scalar> build_double_complex(const Engine& e,
                                                            const ComplexSpec<typename Engine::Scalar>& spec) {
    DoubleComplex<typename Engine::Scalar> c;
    for (auto& g : spec.basis)
        c.add_generator(g.label, g.p, g.q);
    for (auto& x : spec.d1)
        c.add_entry(1, x.src, x.tgt, x.coef);
    for (auto& x : spec.d2)
        c.add_entry(2, x.src, x.tgt, x.coef);
    validate_complex(e, c);
    return c;
}

// ---------------------------------------------------------------------------
// Cohomology dimensions.

/// d2-cohomology per cell (the Dolbeault direction).
template <class Engine>
BiTable column_cohomology(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    BiTable out;
    for (auto& [b, idx] : c.cells()) {
        long n = static_cast<long>(idx.size());
        long out_rank = e.rank(c.block(2, b));
        long in_rank = e.rank(c.block(2, {b.first, b.second - 1}));
        bump(out, b, n - out_rank - in_rank);
    }
    return out;
}

/// d1-cohomology per cell.
template <class Engine>
BiTable row_cohomology(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    BiTable out;
    for (auto& [b, idx] : c.cells()) {
        long n = static_cast<long>(idx.size());
        long out_rank = e.rank(c.block(1, b));
        long in_rank = e.rank(c.block(1, {b.first - 1, b.second}));
        bump(out, b, n - out_rank - in_rank);
    }
    return out;
}

/// b_k of the total complex, keyed by k.
template <class Engine>
std::map<int, long> de_rham_dims(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    std::map<int, long> out;
    if (c.size() == 0)
        return out;
    int lo = c.min_p() + c.min_q(), hi = c.max_p() + c.max_q();
    for (int k = lo; k <= hi; ++k) {
        long n = static_cast<long>(c.total_basis(k).size());
        long v = n - static_cast<long>(e.rank(c.total(k))) - static_cast<long>(e.rank(c.total(k - 1)));
        if (v != 0)
            out[k] = v;
    }
    return out;
}

/// dim(ker d1 cap ker d2) - dim im(d1 d2) per cell.
template <class Engine>
BiTable bott_chern_dims(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    using M = Mat<typename Engine::Scalar>;
    BiTable out;
    for (auto& [b, idx] : c.cells()) {
        long n = static_cast<long>(idx.size());
        long ker = n - static_cast<long>(e.rank(M::vcat(c.block(1, b), c.block(2, b))));
        Bideg src{b.first - 1, b.second - 1};
        M dd = c.block(1, {src.first, src.second + 1}) * c.block(2, src);
        bump(out, b, ker - static_cast<long>(e.rank(dd)));
    }
    return out;
}

/// dim ker(d1 d2) - dim(im d1 + im d2) per cell.
template <class Engine>
BiTable aeppli_dims(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    using M = Mat<typename Engine::Scalar>;
    BiTable out;
    for (auto& [b, idx] : c.cells()) {
        long n = static_cast<long>(idx.size());
        M dd = c.block(1, {b.first, b.second + 1}) * c.block(2, b);
        long ker = n - static_cast<long>(e.rank(dd));
        M in1 = c.block(1, {b.first - 1, b.second});
        M in2 = c.block(2, {b.first, b.second - 1});
        bump(out, b, ker - static_cast<long>(e.rank(M::hcat(in1, in2))));
    }
    return out;
}

/// Rank of d1 d2 out of each cell; equals the number of square summands with
/// their lower-left corner there.
template <class Engine>
BiTable square_corners(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c) {
    BiTable out;
    for (auto& [b, idx] : c.cells()) {
        (void)idx;
        auto dd = c.block(1, {b.first, b.second + 1}) * c.block(2, b);
        bump(out, b, static_cast<long>(e.rank(dd)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Filtered linear algebra on the total complex.

enum class Filtration { Column, Row }; // F^p = sum_{a >= p} A^{a,*}, resp. by the q-degree

template <class Engine>
class FilteredComplex {
  public:
    using S = typename Engine::Scalar;
    using M = Mat<S>;

    FilteredComplex(const Engine& e, const DoubleComplex<S>& c, Filtration f) : e_(e), c_(c), f_(f) {
        if (c.size() == 0)
            return;
        kmin_ = c.min_p() + c.min_q();
        kmax_ = c.max_p() + c.max_q();
        lmin_ = f == Filtration::Column ? c.min_p() : c.min_q();
        lmax_ = f == Filtration::Column ? c.max_p() : c.max_q();
    }

    int kmin() const { return kmin_; }
    int kmax() const { return kmax_; }
    int lmin() const { return lmin_; }
    int lmax() const { return lmax_; }

    int level(std::size_t g) const {
        auto& gen = c_.generators()[g];
        return f_ == Filtration::Column ? gen.p : gen.q;
    }

    std::size_t dim(int k) const { return basis(k).size(); }

    const std::vector<std::size_t>& basis(int k) const {
        auto it = basis_.find(k);
        if (it == basis_.end())
            it = basis_.emplace(k, c_.total_basis(k)).first;
        return it->second;
    }

    const M& d(int k) const {
        auto it = d_.find(k);
        if (it == d_.end())
            it = d_.emplace(k, c_.total(k)).first;
        return it->second;
    }

    /// Coordinate basis of F^l T^k.
    M filt(int l, int k) const {
        const auto& b = basis(k);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (level(b[i]) >= l)
                keep.push_back(i);
        M out(b.size(), keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            out(keep[j], j) = S(1);
        return out;
    }

    /// Z_r^l in degree k: x in F^l with dx in F^{l+r}; r = -1 gives F^l itself.
    const M& z(int r, int l, int k) const {
        auto key = std::make_tuple(r, l, k);
        auto it = z_.find(key);
        if (it != z_.end())
            return it->second;
        M val;
        if (r < 0)
            val = filt(l, k);
        else
            val = preimage(e_, d(k), filt(l, k), filt(l + r, k + 1));
        return z_.emplace(key, std::move(val)).first->second;
    }

    /// Z_{r-1}^{l+1} + d Z_{r-1}^{l-r+1}, the subspace quotiented out in E_r^l.
    const M& denominator(int r, int l, int k) const {
        auto key = std::make_tuple(r, l, k);
        auto it = den_.find(key);
        if (it != den_.end())
            return it->second;
        M a = z(r - 1, l + 1, k);
        M b = d(k - 1) * z(r - 1, l - r + 1, k - 1);
        return den_.emplace(key, span_sum(e_, a, b)).first->second;
    }

    long page_dim(int r, int l, int k) const {
        long num = static_cast<long>(z(r, l, k).cols());
        return num - static_cast<long>(denominator(r, l, k).cols());
    }

    /// Rank of d_r : E_r^{l} (degree k) -> E_r^{l+r} (degree k+1).
    long differential_rank(int r, int l, int k) const {
        const M& den = denominator(r, l + r, k + 1);
        M img = d(k) * z(r, l, k);
        long with = static_cast<long>(span_sum(e_, img, den).cols());
        return with - static_cast<long>(den.cols());
    }

    /// Closed forms of degree k lying in F^l.
    M closed(int l, int k) const { return preimage(e_, d(k), filt(l, k), M(dim(k + 1), 0)); }

  private:
    const Engine& e_;
    const DoubleComplex<S>& c_;
    Filtration f_;
    int kmin_ = 0, kmax_ = -1, lmin_ = 0, lmax_ = -1;
    mutable std::map<int, std::vector<std::size_t>> basis_;
    mutable std::map<int, M> d_;
    mutable std::map<std::tuple<int, int, int>, M> z_;
    mutable std::map<std::tuple<int, int, int>, M> den_;
};

struct FrolicherPages {
    int max_r = 0;
    // Keyed by page r (>= 1); positions are bidegrees (p, q) of the source.
    std::map<int, BiTable> column_dims, row_dims;
    std::map<int, BiTable> column_ranks, row_ranks;
};

namespace detail {

template <class Engine>
void run_pages(const FilteredComplex<Engine>& fc, Filtration f, int max_r, std::map<int, BiTable>& dims,
               std::map<int, BiTable>& ranks) {
    for (int r = 1; r <= max_r; ++r) {
        BiTable& dt = dims[r];
        BiTable& rt = ranks[r];
        for (int k = fc.kmin(); k <= fc.kmax(); ++k)
            for (int l = fc.lmin(); l <= fc.lmax(); ++l) {
                Bideg pos = f == Filtration::Column ? Bideg{l, k - l} : Bideg{k - l, l};
                bump(dt, pos, fc.page_dim(r, l, k));
                bump(rt, pos, fc.differential_rank(r, l, k));
            }
    }
}

} // namespace detail

/// E_r dimensions and d_r ranks of both Froelicher spectral sequences for
/// r = 1..max_r.
template <class Engine>
FrolicherPages frolicher_pages(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c, int max_r) {
    FrolicherPages out;
    out.max_r = max_r;
    if (c.size() == 0)
        return out;
    FilteredComplex<Engine> col(e, c, Filtration::Column), row(e, c, Filtration::Row);
    detail::run_pages(col, Filtration::Column, max_r, out.column_dims, out.column_ranks);
    detail::run_pages(row, Filtration::Row, max_r, out.row_dims, out.row_ranks);
    return out;
}

/// Pages beyond this index are all equal for the complex.
template <class S>
int stable_page(const DoubleComplex<S>& c) {
    if (c.size() == 0)
        return 1;
    return std::max(c.max_p() - c.min_p(), c.max_q() - c.min_q()) + 1;
}

/// b_d^{p,q} = dim gr_F^p gr_{Fbar}^q H^d, keyed by (p, q).
template <class Engine>
BiTable refined_betti(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c, int d) {
    using M = Mat<typename Engine::Scalar>;
    BiTable out;
    if (c.size() == 0)
        return out;
    FilteredComplex<Engine> col(e, c, Filtration::Column), row(e, c, Filtration::Row);
    if (d < col.kmin() || d > col.kmax())
        return out;
    M exact = e.colspace(c.total(d - 1));
    long dim_b = static_cast<long>(exact.cols());

    std::map<int, M> fz, gz;
    for (int p = col.lmin(); p <= col.lmax() + 1; ++p)
        fz[p] = span_sum(e, col.closed(p, d), exact);
    for (int q = row.lmin(); q <= row.lmax() + 1; ++q)
        gz[q] = span_sum(e, row.closed(q, d), exact);

    std::map<Bideg, long> f;
    auto fval = [&](int p, int q) -> long {
        p = std::clamp(p, col.lmin(), col.lmax() + 1);
        q = std::clamp(q, row.lmin(), row.lmax() + 1);
        auto it = f.find({p, q});
        if (it != f.end())
            return it->second;
        long v = static_cast<long>(span_intersection(e, fz[p], gz[q]).cols()) - dim_b;
        f[{p, q}] = v;
        return v;
    };
    for (int p = col.lmin(); p <= col.lmax(); ++p)
        for (int q = row.lmin(); q <= row.lmax(); ++q)
            bump(out, {p, q}, fval(p, q) - fval(p + 1, q) - fval(p, q + 1) + fval(p + 1, q + 1));
    return out;
}

} // namespace otlab
