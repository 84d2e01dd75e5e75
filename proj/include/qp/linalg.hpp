#pragma once

#include <utility>
#include <vector>

#include "qp/errors.hpp"
#include "qp/poly.hpp"

namespace qp {

/// Dense row-major matrix over a commutative ring.
template <ring_element R>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, R(0)) {}
    Mat(int rows, int cols, std::vector<R> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != size_t(rows) * cols) throw Error("Mat: bad entry count");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    R& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const R& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("Mat: shape mismatch");
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("Mat: shape mismatch");
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw Error("Mat: shape mismatch");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const R& aik = a(i, k);
                if (aik == R(0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
            }
        return c;
    }
    friend Mat operator*(const R& s, const Mat& a) {
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
        return c;
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Determinant by cofactor expansion; ring-safe (no divisions).
    R det() const {
        if (rows_ != cols_) throw Error("Mat: det of non-square");
        return det_rec(*this);
    }

    /// Row-echelon rank; requires exact zero tests, so field only.
    int rank() const
        requires field_element<R>
    {
        Mat m = *this;
        return m.forward_eliminate();
    }

    /// Basis of the right kernel.
    std::vector<std::vector<R>> kernel() const
        requires field_element<R>
    {
        Mat m = *this;
        std::vector<int> pivot_col;
        m.reduced_echelon(pivot_col);
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivot_col) is_pivot[size_t(c)] = true;
        std::vector<std::vector<R>> basis;
        for (int j = 0; j < cols_; ++j) {
            if (is_pivot[size_t(j)]) continue;
            std::vector<R> v(size_t(cols_), R(0));
            v[size_t(j)] = R(1);
            for (size_t r = 0; r < pivot_col.size(); ++r)
                v[size_t(pivot_col[r])] = -m(int(r), j);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Inverse; throws SingularGroupElement if not invertible.
    Mat inverse() const
        requires field_element<R>
    {
        if (rows_ != cols_) throw Error("Mat: inverse of non-square");
        int n = rows_;
        Mat aug(n, 2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = R(1);
        }
        std::vector<int> pivot_col;
        aug.reduced_echelon(pivot_col);
        if (int(pivot_col.size()) != n || pivot_col[size_t(n) - 1] >= n)
            throw SingularGroupElement("Mat: singular matrix");
        for (int i = 0; i < n; ++i)
            if (pivot_col[size_t(i)] != i) throw SingularGroupElement("Mat: singular matrix");
        Mat inv(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    }

    std::vector<R> apply(const std::vector<R>& v) const {
        if (int(v.size()) != cols_) throw Error("Mat: apply shape mismatch");
        std::vector<R> out(size_t(rows_), R(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[size_t(i)] = out[size_t(i)] + (*this)(i, j) * v[size_t(j)];
        return out;
    }

    /// Entry-wise map to another ring.
    template <class S, class Conv>
    Mat<S> map(Conv conv) const {
        Mat<S> out(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(i, j) = conv((*this)(i, j));
        return out;
    }

  private:
    static R det_rec(const Mat& m) {
        int n = m.rows_;
        if (n == 1) return m(0, 0);
        if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        R acc(0);
        for (int j = 0; j < n; ++j) {
            if (m(0, j) == R(0)) continue;
            Mat sub(n - 1, n - 1);
            for (int i = 1; i < n; ++i) {
                int cc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    sub(i - 1, cc++) = m(i, c);
                }
            }
            R term = m(0, j) * det_rec(sub);
            if (j % 2 == 0) {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        return acc;
    }

    int forward_eliminate()
        requires field_element<R>
    {
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int piv = -1;
            for (int r = rank; r < rows_; ++r)
                if (!((*this)(r, col) == R(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            swap_rows(piv, rank);
            for (int r = rank + 1; r < rows_; ++r) {
                if ((*this)(r, col) == R(0)) continue;
                R f = (*this)(r, col) / (*this)(rank, col);
                for (int c = col; c < cols_; ++c)
                    (*this)(r, c) = (*this)(r, c) - f * (*this)(rank, c);
            }
            ++rank;
        }
        return rank;
    }

    void reduced_echelon(std::vector<int>& pivot_col)
        requires field_element<R>
    {
        pivot_col.clear();
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int piv = -1;
            for (int r = rank; r < rows_; ++r)
                if (!((*this)(r, col) == R(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            swap_rows(piv, rank);
            R inv_p = R(1) / (*this)(rank, col);
            for (int c = col; c < cols_; ++c) (*this)(rank, c) = (*this)(rank, c) * inv_p;
            for (int r = 0; r < rows_; ++r) {
                if (r == rank || (*this)(r, col) == R(0)) continue;
                R f = (*this)(r, col);
                for (int c = col; c < cols_; ++c)
                    (*this)(r, c) = (*this)(r, c) - f * (*this)(rank, c);
            }
            pivot_col.push_back(col);
            ++rank;
        }
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    int rows_, cols_;
    std::vector<R> a_;
};

using QMat = Mat<Rat>;

/// Congruence diagonalization of a symmetric matrix over a field of
/// characteristic 0: returns (g, d) with g * m * g^T diagonal with entries d.
/// Zero diagonal entries are fixed up with row+column additions.
template <field_element R>
std::pair<Mat<R>, std::vector<R>> congruent_diagonalize(const Mat<R>& m_in) {
    int n = m_in.rows();
    Mat<R> m = m_in;
    Mat<R> g = Mat<R>::identity(n);
    // row dst += f * row src, the same on columns; g tracks row operations.
    auto row_col_add = [&](int dst, int src, const R& f) {
        for (int c = 0; c < n; ++c) m(dst, c) = m(dst, c) + f * m(src, c);
        for (int r = 0; r < n; ++r) m(r, dst) = m(r, dst) + f * m(r, src);
        for (int c = 0; c < n; ++c) g(dst, c) = g(dst, c) + f * g(src, c);
    };
    auto row_col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int c = 0; c < n; ++c) std::swap(m(a, c), m(b, c));
        for (int r = 0; r < n; ++r) std::swap(m(r, a), m(r, b));
        for (int c = 0; c < n; ++c) std::swap(g(a, c), g(b, c));
    };
    for (int k = 0; k < n; ++k) {
        if (m(k, k) == R(0)) {
            int diag = -1;
            for (int j = k + 1; j < n; ++j)
                if (!(m(j, j) == R(0))) {
                    diag = j;
                    break;
                }
            if (diag >= 0) {
                row_col_swap(k, diag);
            } else {
                int off = -1;
                for (int j = k + 1; j < n; ++j)
                    if (!(m(k, j) == R(0))) {
                        off = j;
                        break;
                    }
                if (off < 0) continue;  // row and column k already zero
                row_col_add(k, off, R(1));  // m(k,k) becomes 2*m(k,off) != 0
            }
        }
        const R pivot = m(k, k);
        for (int r = k + 1; r < n; ++r) {
            if (m(r, k) == R(0)) continue;
            R f = -(m(r, k) / pivot);
            row_col_add(r, k, f);
        }
    }
    std::vector<R> d;
    d.reserve(size_t(n));
    for (int i = 0; i < n; ++i) d.push_back(m(i, i));
    return {g, d};
}

}  // namespace qp
