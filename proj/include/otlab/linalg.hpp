#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace otlab {

/// Dense row-major matrix.
template <class S>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = S(1);
        return m;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& x = a(i, k);
                if (is_zero_entry(x))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += x * b(k, j);
            }
        return out;
    }

    friend Mat operator+(Mat a, const Mat& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    /// Columns of a followed by columns of b (rows must agree, or one side empty).
    static Mat hcat(const Mat& a, const Mat& b) {
        std::size_t rows = a.cols_ ? a.rows_ : b.rows_;
        Mat out(rows, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < a.cols_; ++c)
                out(r, c) = a(r, c);
            for (std::size_t c = 0; c < b.cols_; ++c)
                out(r, a.cols_ + c) = b(r, c);
        }
        return out;
    }

    static Mat vcat(const Mat& a, const Mat& b) {
        std::size_t cols = a.rows_ ? a.cols_ : b.cols_;
        Mat out(a.rows_ + b.rows_, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < a.rows_; ++r)
                out(r, c) = a(r, c);
            for (std::size_t r = 0; r < b.rows_; ++r)
                out(a.rows_ + r, c) = b(r, c);
        }
        return out;
    }

    Mat columns(std::size_t first, std::size_t count) const {
        Mat out(rows_, count);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < count; ++c)
                out(r, c) = (*this)(r, first + c);
        return out;
    }

    Mat rows_range(std::size_t first, std::size_t count) const {
        Mat out(count, cols_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(r, c) = (*this)(first + r, c);
        return out;
    }

  public:
    static bool is_zero_entry(const GaussianRational& x) { return x.is_zero(); }
    static bool is_zero_entry(const Cplx& x) { return x.re == 0 && x.im == 0; }
    static bool is_zero_entry(const Real& x) { return x == 0; }

  private:

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

// ---------------------------------------------------------------------------
// Exact linear algebra over Q(i).

class ExactEngine {
  public:
    using Scalar = GaussianRational;
    static constexpr bool exact = true;

    /// Reduced row echelon form in place; returns pivot columns.
    static std::vector<std::size_t> rref(Mat<Scalar>& m) {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
            std::size_t piv = row;
            while (piv < m.rows() && m(piv, col).is_zero())
                ++piv;
            if (piv == m.rows())
                continue;
            if (piv != row)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    std::swap(m(piv, c), m(row, c));
            Scalar inv = Scalar(1) / m(row, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m(row, c) *= inv;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (r == row || m(r, col).is_zero())
                    continue;
                Scalar f = m(r, col);
                for (std::size_t c = col; c < m.cols(); ++c)
                    if (!m(row, c).is_zero())
                        m(r, c) -= f * m(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank(const Mat<Scalar>& m) const {
        if (m.empty())
            return 0;
        Mat<Scalar> w = m;
        return rref(w).size();
    }

    /// Basis of the null space, as columns.
    Mat<Scalar> kernel(const Mat<Scalar>& m) const {
        std::size_t n = m.cols();
        if (m.rows() == 0)
            return Mat<Scalar>::identity(n);
        Mat<Scalar> w = m;
        auto pivots = rref(w);
        std::vector<bool> is_pivot(n, false);
        for (auto p : pivots)
            is_pivot[p] = true;
        Mat<Scalar> out(n, n - pivots.size());
        std::size_t k = 0;
        for (std::size_t free = 0; free < n; ++free) {
            if (is_pivot[free])
                continue;
            out(free, k) = Scalar(1);
            for (std::size_t i = 0; i < pivots.size(); ++i)
                out(pivots[i], k) = -w(i, free);
            ++k;
        }
        return out;
    }

    /// Linearly independent columns spanning the column space of m.
    Mat<Scalar> colspace(const Mat<Scalar>& m) const {
        if (m.empty())
            return Mat<Scalar>(m.rows(), 0);
        Mat<Scalar> w = m;
        auto pivots = rref(w);
        Mat<Scalar> out(m.rows(), pivots.size());
        for (std::size_t k = 0; k < pivots.size(); ++k)
            for (std::size_t r = 0; r < m.rows(); ++r)
                out(r, k) = m(r, pivots[k]);
        return out;
    }

    bool is_zero(const Mat<Scalar>& m) const {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero())
                    return false;
        return true;
    }

    std::string residual(const Mat<Scalar>& m) const {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero())
                    return to_string(m(r, c));
        return "0";
    }
};

// ---------------------------------------------------------------------------
// High-precision complex linear algebra with singular-value thresholding.

struct SvdResult {
    std::vector<Real> sigma;   // per column of the input, unsorted
    Mat<Cplx> u;               // m x n, column j = A v_j / sigma_j (zero when sigma_j = 0)
    Mat<Cplx> v;               // n x n unitary
};

namespace detail {

/// Contiguous block of mpfr variables at one precision.
class MpfrArray {
  public:
    MpfrArray(std::size_t n, mpfr_prec_t prec) : v_(n) {
        for (auto& x : v_) {
            mpfr_init2(&x, prec);
            mpfr_set_zero(&x, 1);
        }
    }
    ~MpfrArray() {
        for (auto& x : v_)
            mpfr_clear(&x);
    }
    MpfrArray(const MpfrArray&) = delete;
    MpfrArray& operator=(const MpfrArray&) = delete;
    mpfr_ptr operator[](std::size_t i) { return &v_[i]; }

  private:
    std::vector<__mpfr_struct> v_;
};

inline mpfr_prec_t working_precision() {
    Real probe(1);
    return mpfr_get_prec(probe.backend().data());
}

} // namespace detail

/// One-sided Jacobi (Hestenes) SVD, carried out on raw mpfr storage.
inline SvdResult jacobi_svd(const Mat<Cplx>& a, const Real& tol) {
    const std::size_t m = a.rows(), n = a.cols();
    const mpfr_prec_t prec = detail::working_precision();
    constexpr auto rnd = MPFR_RNDN;
    // Column-major: column j of w occupies [j*m, (j+1)*m); same for v with n rows.
    detail::MpfrArray wr(m * n, prec), wi(m * n, prec), vr(n * n, prec), vi(n * n, prec);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            mpfr_set(wr[c * m + r], a(r, c).re.backend().data(), rnd);
            mpfr_set(wi[c * m + r], a(r, c).im.backend().data(), rnd);
        }
    for (std::size_t i = 0; i < n; ++i)
        mpfr_set_ui(vr[i * n + i], 1, rnd);

    detail::MpfrArray t(16, prec);
    mpfr_ptr alpha = t[0], beta = t[1], gr = t[2], gi = t[3], g = t[4], lim = t[5], zeta = t[6], tt = t[7],
             c = t[8], s = t[9], pr = t[10], pi = t[11], x = t[12], y = t[13], tol2 = t[14], tmp = t[15];
    mpfr_set(tol2, tol.backend().data(), rnd);
    mpfr_sqr(tol2, tol2, rnd);

    // Rotates columns i, j of (re, im) with rows `len`:
    //   a_i' = c a_i - conj(p) s a_j,   a_j' = p s a_i + c a_j
    detail::MpfrArray q(4, prec);
    auto rotate = [&](detail::MpfrArray& re, detail::MpfrArray& im, std::size_t len, std::size_t i, std::size_t j) {
        mpfr_ptr ar = q[0], ai = q[1], br = q[2], bi = q[3];
        for (std::size_t r = 0; r < len; ++r) {
            mpfr_ptr xr = re[i * len + r], xi = im[i * len + r], yr = re[j * len + r], yi = im[j * len + r];
            mpfr_set(ar, xr, rnd);
            mpfr_set(ai, xi, rnd);
            mpfr_set(br, yr, rnd);
            mpfr_set(bi, yi, rnd);
            // conj(p) b = (pr br + pi bi) + i (pr bi - pi br)
            mpfr_mul(x, pr, br, rnd);
            mpfr_fma(x, pi, bi, x, rnd);
            mpfr_mul(y, pr, bi, rnd);
            mpfr_fms(y, pi, br, y, rnd);
            mpfr_neg(y, y, rnd);
            mpfr_mul(xr, c, ar, rnd);
            mpfr_fms(tmp, s, x, xr, rnd);
            mpfr_neg(xr, tmp, rnd);
            mpfr_mul(xi, c, ai, rnd);
            mpfr_fms(tmp, s, y, xi, rnd);
            mpfr_neg(xi, tmp, rnd);
            // p a = (pr ar - pi ai) + i (pr ai + pi ar)
            mpfr_mul(x, pr, ar, rnd);
            mpfr_fms(x, pi, ai, x, rnd);
            mpfr_neg(x, x, rnd);
            mpfr_mul(y, pr, ai, rnd);
            mpfr_fma(y, pi, ar, y, rnd);
            mpfr_mul(yr, c, br, rnd);
            mpfr_fma(yr, s, x, yr, rnd);
            mpfr_mul(yi, c, bi, rnd);
            mpfr_fma(yi, s, y, yi, rnd);
        }
    };

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                mpfr_set_zero(alpha, 1);
                mpfr_set_zero(beta, 1);
                mpfr_set_zero(gr, 1);
                mpfr_set_zero(gi, 1);
                for (std::size_t r = 0; r < m; ++r) {
                    mpfr_ptr xr = wr[i * m + r], xi = wi[i * m + r], yr = wr[j * m + r], yi = wi[j * m + r];
                    mpfr_fma(alpha, xr, xr, alpha, rnd);
                    mpfr_fma(alpha, xi, xi, alpha, rnd);
                    mpfr_fma(beta, yr, yr, beta, rnd);
                    mpfr_fma(beta, yi, yi, beta, rnd);
                    // conj(x) y
                    mpfr_fma(gr, xr, yr, gr, rnd);
                    mpfr_fma(gr, xi, yi, gr, rnd);
                    mpfr_fma(gi, xr, yi, gi, rnd);
                    mpfr_mul(tmp, xi, yr, rnd);
                    mpfr_sub(gi, gi, tmp, rnd);
                }
                mpfr_sqr(g, gr, rnd);
                mpfr_fma(g, gi, gi, g, rnd); // |gamma|^2
                if (mpfr_zero_p(g))
                    continue;
                mpfr_mul(lim, alpha, beta, rnd);
                mpfr_mul(lim, lim, tol2, rnd);
                if (mpfr_lessequal_p(g, lim))
                    continue;
                rotated = true;
                mpfr_sqrt(g, g, rnd);
                mpfr_div(pr, gr, g, rnd);
                mpfr_div(pi, gi, g, rnd);
                // zeta = (beta - alpha) / (2g), t = sign(zeta) / (|zeta| + sqrt(1 + zeta^2))
                mpfr_sub(zeta, beta, alpha, rnd);
                mpfr_div(zeta, zeta, g, rnd);
                mpfr_div_2ui(zeta, zeta, 1, rnd);
                mpfr_sqr(tt, zeta, rnd);
                mpfr_add_ui(tt, tt, 1, rnd);
                mpfr_sqrt(tt, tt, rnd);
                mpfr_abs(tmp, zeta, rnd);
                mpfr_add(tt, tt, tmp, rnd);
                mpfr_ui_div(tt, 1, tt, rnd);
                if (mpfr_sgn(zeta) < 0)
                    mpfr_neg(tt, tt, rnd);
                mpfr_sqr(c, tt, rnd);
                mpfr_add_ui(c, c, 1, rnd);
                mpfr_rec_sqrt(c, c, rnd);
                mpfr_mul(s, c, tt, rnd);
                rotate(wr, wi, m, i, j);
                rotate(vr, vi, n, i, j);
            }
        if (!rotated)
            break;
    }

    SvdResult out;
    out.sigma.resize(n);
    out.u = Mat<Cplx>(m, n);
    out.v = Mat<Cplx>(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        mpfr_set_zero(alpha, 1);
        for (std::size_t r = 0; r < m; ++r) {
            mpfr_fma(alpha, wr[j * m + r], wr[j * m + r], alpha, rnd);
            mpfr_fma(alpha, wi[j * m + r], wi[j * m + r], alpha, rnd);
        }
        mpfr_sqrt(alpha, alpha, rnd);
        mpfr_set(out.sigma[j].backend().data(), alpha, rnd);
        if (!mpfr_zero_p(alpha))
            for (std::size_t r = 0; r < m; ++r) {
                mpfr_div(out.u(r, j).re.backend().data(), wr[j * m + r], alpha, rnd);
                mpfr_div(out.u(r, j).im.backend().data(), wi[j * m + r], alpha, rnd);
            }
        for (std::size_t r = 0; r < n; ++r) {
            mpfr_set(out.v(r, j).re.backend().data(), vr[j * n + r], rnd);
            mpfr_set(out.v(r, j).im.backend().data(), vi[j * n + r], rnd);
        }
    }
    return out;
}

class FloatEngine {
  public:
    using Scalar = Cplx;
    static constexpr bool exact = false;

    explicit FloatEngine(Tolerance tol = {}) : tol_(tol) {}
    const Tolerance& tolerance() const { return tol_; }

    std::size_t rank(const Mat<Scalar>& m) const { return colspace(m).cols(); }

    Mat<Scalar> kernel(const Mat<Scalar>& m) const {
        std::size_t n = m.cols();
        if (m.rows() == 0 || exactly_zero(m))
            return Mat<Scalar>::identity(n);
        if (n > m.rows())
            return complement(colspace(adjoint(m)));
        auto svd = decompose(m);
        Real thr = threshold(svd);
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < n; ++j)
            if (svd.sigma[j] <= thr)
                keep.push_back(j);
        Mat<Scalar> out(n, keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k)
            for (std::size_t r = 0; r < n; ++r)
                out(r, k) = svd.v(r, keep[k]);
        return out;
    }

    /// Orthonormal basis of the column space.
    Mat<Scalar> colspace(const Mat<Scalar>& m) const {
        if (m.empty() || exactly_zero(m))
            return Mat<Scalar>(m.rows(), 0);
        auto svd = decompose(m.cols() > m.rows() ? adjoint(m) : m);
        Real thr = threshold(svd);
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < svd.sigma.size(); ++j)
            if (svd.sigma[j] > thr)
                keep.push_back(j);
        // For a wide input, A = V S U^H and the range is spanned by V.
        const Mat<Scalar>& basis = m.cols() > m.rows() ? svd.v : svd.u;
        Mat<Scalar> out(m.rows(), keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k)
            for (std::size_t r = 0; r < m.rows(); ++r)
                out(r, k) = basis(r, keep[k]);
        return out;
    }

    static Mat<Scalar> adjoint(const Mat<Scalar>& m) {
        Mat<Scalar> t(m.cols(), m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                t(c, r) = conj(m(r, c));
        return t;
    }

    /// Orthonormal basis of the orthogonal complement of orthonormal columns q,
    /// grown greedily from the coordinate vector with the largest residual.
    static Mat<Scalar> complement(const Mat<Scalar>& q) {
        const std::size_t n = q.rows();
        std::vector<std::vector<Scalar>> cols;
        for (std::size_t j = 0; j < q.cols(); ++j) {
            std::vector<Scalar> v(n);
            for (std::size_t r = 0; r < n; ++r)
                v[r] = q(r, j);
            cols.push_back(std::move(v));
        }
        const std::size_t want = n - q.cols();
        std::vector<std::vector<Scalar>> found;
        while (found.size() < want) {
            std::size_t best = 0;
            Real best_norm = -1;
            for (std::size_t k = 0; k < n; ++k) {
                Real res = 1;
                for (auto& v : cols)
                    res -= norm_sq(v[k]);
                if (res > best_norm) {
                    best_norm = res;
                    best = k;
                }
            }
            std::vector<Scalar> x(n);
            x[best] = Scalar(Real(1));
            for (int pass = 0; pass < 2; ++pass)
                for (auto& v : cols) {
                    Scalar dot;
                    for (std::size_t r = 0; r < n; ++r)
                        dot += conj(v[r]) * x[r];
                    for (std::size_t r = 0; r < n; ++r)
                        x[r] -= dot * v[r];
                }
            Real nrm = 0;
            for (auto& e : x)
                nrm += norm_sq(e);
            nrm = boost::multiprecision::sqrt(nrm);
            for (auto& e : x)
                e /= Scalar(nrm);
            cols.push_back(x);
            found.push_back(std::move(x));
        }
        Mat<Scalar> out(n, found.size());
        for (std::size_t j = 0; j < found.size(); ++j)
            for (std::size_t r = 0; r < n; ++r)
                out(r, j) = found[j][r];
        return out;
    }

    static bool exactly_zero(const Mat<Scalar>& m) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!Mat<Scalar>::is_zero_entry(m(r, c)))
                    return false;
        return true;
    }

    bool is_zero(const Mat<Scalar>& m) const { return max_abs(m) <= tol_.eps(); }

    std::string residual(const Mat<Scalar>& m) const { return format_real(max_abs(m), 6); }

    static Real max_abs(const Mat<Scalar>& m) {
        Real best = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Real a = abs(m(r, c));
                if (a > best)
                    best = a;
            }
        return best;
    }

  private:
    SvdResult decompose(const Mat<Scalar>& m) const {
        PrecisionScope scope(tol_.bits);
        auto svd = jacobi_svd(m, tol_.eps() * tol_.sqrt_eps());
        Real scale = 1;
        for (auto& s : svd.sigma)
            if (s > scale)
                scale = s;
        Real lo = tol_.eps() * scale, hi = tol_.sqrt_eps() * scale;
        for (auto& s : svd.sigma)
            if (s > lo && s < hi)
                fail(ErrorKind::RankUnstable, "singular value " + format_real(s, 6) + " inside the refusal band");
        return svd;
    }

    Real threshold(const SvdResult& svd) const {
        Real scale = 1;
        for (auto& s : svd.sigma)
            if (s > scale)
                scale = s;
        return tol_.eps() * scale;
    }

    Tolerance tol_;
};

// ---------------------------------------------------------------------------
// Subspace helpers shared by both engines. Subspaces are given by spanning
// columns; results are bases.

template <class Engine>
Mat<typename Engine::Scalar> span_sum(const Engine& e, const Mat<typename Engine::Scalar>& a,
                                      const Mat<typename Engine::Scalar>& b) {
    return e.colspace(Mat<typename Engine::Scalar>::hcat(a, b));
}

template <class Engine>
Mat<typename Engine::Scalar> span_intersection(const Engine& e, const Mat<typename Engine::Scalar>& a,
                                               const Mat<typename Engine::Scalar>& b) {
    using M = Mat<typename Engine::Scalar>;
    if (a.cols() == 0 || b.cols() == 0)
        return M(a.cols() ? a.rows() : b.rows(), 0);
    M ab = e.colspace(a), bb = e.colspace(b);
    M neg = bb;
    for (std::size_t r = 0; r < neg.rows(); ++r)
        for (std::size_t c = 0; c < neg.cols(); ++c)
            neg(r, c) = -neg(r, c);
    M k = e.kernel(M::hcat(ab, neg));
    return e.colspace(ab * k.rows_range(0, ab.cols()));
}

/// {x in span(v) : m x in span(w)}.
template <class Engine>
Mat<typename Engine::Scalar> preimage(const Engine& e, const Mat<typename Engine::Scalar>& m,
                                      const Mat<typename Engine::Scalar>& v, const Mat<typename Engine::Scalar>& w) {
    using M = Mat<typename Engine::Scalar>;
    if (v.cols() == 0)
        return M(v.rows(), 0);
    M mv = m * v;
    M neg = w;
    for (std::size_t r = 0; r < neg.rows(); ++r)
        for (std::size_t c = 0; c < neg.cols(); ++c)
            neg(r, c) = -neg(r, c);
    M k = e.kernel(w.cols() ? M::hcat(mv, neg) : mv);
    return e.colspace(v * k.rows_range(0, v.cols()));
}

// ---------------------------------------------------------------------------
// Small real systems (partial pivoting).

inline Real determinant(Mat<Real> a) {
    const std::size_t n = a.rows();
    Real det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (boost::multiprecision::abs(a(r, col)) > boost::multiprecision::abs(a(piv, col)))
                piv = r;
        if (a(piv, col) == 0)
            return 0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(piv, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            Real f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c)
                a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

/// Solves a x = b column by column.
inline Mat<Real> solve(Mat<Real> a, Mat<Real> b) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (boost::multiprecision::abs(a(r, col)) > boost::multiprecision::abs(a(piv, col)))
                piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(piv, c), a(col, c));
            for (std::size_t c = 0; c < b.cols(); ++c)
                std::swap(b(piv, c), b(col, c));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            Real f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c)
                a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c)
                b(r, c) -= f * b(col, c);
        }
    }
    Mat<Real> x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = n; i-- > 0;) {
            Real acc = b(i, c);
            for (std::size_t k = i + 1; k < n; ++k)
                acc -= a(i, k) * x(k, c);
            x(i, c) = acc / a(i, i);
        }
    return x;
}

} // namespace otlab
