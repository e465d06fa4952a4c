#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tleaf {

using Vec = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_cols(const std::vector<Vec>& cols, std::size_t rows) {
        return from_rows(cols, rows).transpose();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_row(std::size_t i, const Vec& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    void set_col(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    Rational trace() const {
        Rational t;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    // Submatrix copy of rows [r0, r0+nr) and cols [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix s = x;
        for (std::size_t k = 0; k < s.a_.size(); ++k)
            if (!y.a_[k].is_zero()) s.a_[k] += y.a_[k];
        return s;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix s = x;
        for (std::size_t k = 0; k < s.a_.size(); ++k)
            if (!y.a_[k].is_zero()) s.a_[k] -= y.a_[k];
        return s;
    }
    friend Matrix operator-(const Matrix& x) {
        Matrix s = x;
        for (auto& v : s.a_)
            if (!v.is_zero()) v = -v;
        return s;
    }
    friend Matrix operator*(const Rational& c, const Matrix& x) {
        Matrix s = x;
        for (auto& v : s.a_)
            if (!v.is_zero()) v *= c;
        return s;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix p(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Rational& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const Rational& ykj = y(k, j);
                    if (!ykj.is_zero()) p(i, j) += xik * ykj;
                }
            }
        return p;
    }
    friend Vec operator*(const Matrix& x, const Vec& v) {
        if (x.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        Vec out(x.rows_);
        for (std::size_t k = 0; k < x.cols_; ++k) {
            if (v[k].is_zero()) continue;
            for (std::size_t i = 0; i < x.rows_; ++i) {
                const Rational& xik = x(i, k);
                if (!xik.is_zero()) out[i] += xik * v[k];
            }
        }
        return out;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;

    static void check_same(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
};

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (auto& b : blocks) r += b.rows(), c += b.cols();
    Matrix m(r, c);
    r = c = 0;
    for (auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const Vec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// In-place Gauss-Jordan. Returns pivot columns; rows beyond rank are zero.
inline std::vector<std::size_t> rref_inplace(Matrix& m) {
    std::vector<std::size_t> pivots;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = R;
        for (std::size_t i = r; i < R; ++i)
            if (!m(i, c).is_zero()) {
                p = i;
                if (m(i, c).is_small()) break;
            }
        if (p == R) continue;
        if (p != r)
            for (std::size_t j = c; j < C; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = m(r, c).inverse();
        nz.clear();
        for (std::size_t j = c; j < C; ++j)
            if (!m(r, j).is_zero()) {
                if (!inv.is_one()) m(r, j) *= inv;
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j : nz) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Reduced row-echelon form with zero rows dropped.
inline Matrix rref(Matrix m) {
    auto piv = rref_inplace(m);
    return m.block(0, 0, piv.size(), m.cols());
}

inline std::size_t matrix_rank(Matrix m) { return rref_inplace(m).size(); }

// Rows of the result span {x : m x = 0}.
inline Matrix nullspace_rows(const Matrix& m) {
    Matrix r = m;
    auto piv = rref_inplace(r);
    const std::size_t C = m.cols();
    std::vector<char> is_piv(C, 0);
    for (auto p : piv) is_piv[p] = 1;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        Vec v(C);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k)
            if (!r(k, f).is_zero()) v[piv[k]] = -r(k, f);
        out.push_back(std::move(v));
    }
    return Matrix::from_rows(out, C);
}

inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug = hstack(m, Matrix::identity(n));
    auto piv = rref_inplace(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    return aug.block(0, n, n, n);
}

// Canonical subspace: basis rows in RREF.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : n_(ambient), b_(0, ambient) {}

    static Subspace span_rows(const Matrix& rows) {
        Subspace s;
        s.n_ = rows.cols();
        s.b_ = rref(rows);
        return s;
    }
    static Subspace span(const std::vector<Vec>& vecs, std::size_t ambient) {
        return span_rows(Matrix::from_rows(vecs, ambient));
    }
    static Subspace full(std::size_t n) { return span_rows(Matrix::identity(n)); }
    static Subspace zero(std::size_t n) { return Subspace(n); }
    static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& idx) {
        Matrix m(idx.size(), n);
        for (std::size_t k = 0; k < idx.size(); ++k) m(k, idx[k]) = 1;
        return span_rows(m);
    }

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return b_.rows(); }
    const Matrix& basis() const { return b_; }
    std::vector<Vec> vectors() const {
        std::vector<Vec> v;
        for (std::size_t i = 0; i < b_.rows(); ++i) v.push_back(b_.row(i));
        return v;
    }
    // Basis vectors as columns.
    Matrix columns() const { return b_.transpose(); }

    bool contains(const Vec& v) const {
        if (v.size() != n_) throw std::invalid_argument("ambient mismatch");
        Matrix m = vstack(b_, Matrix::from_rows({v}, n_));
        return matrix_rank(m) == dim();
    }
    bool contains(const Subspace& o) const {
        check(o);
        if (o.dim() > dim()) return false;
        return matrix_rank(vstack(b_, o.b_)) == dim();
    }

    // Annihilator rows: {a : a . v = 0 for v in this}.
    Matrix annihilator() const { return nullspace_rows(b_.rows() ? b_ : Matrix(0, n_)); }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.b_ == b.b_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    void check(const Subspace& o) const {
        if (o.n_ != n_) throw std::invalid_argument("subspace ambient mismatch");
    }

private:
    std::size_t n_ = 0;
    Matrix b_;
};

inline Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check(b);
    return Subspace::span_rows(vstack(a.basis(), b.basis()));
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check(b);
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient());
    if (a.dim() == a.ambient()) return b;
    if (b.dim() == b.ambient()) return a;
    // x = sum c_i a_i must satisfy ann(b) x = 0; solve in the coordinates of a.
    Matrix annb = b.annihilator();
    Matrix coeff = nullspace_rows(annb * a.basis().transpose());
    if (coeff.rows() == 0) return Subspace::zero(a.ambient());
    return Subspace::span_rows(coeff * a.basis());
}

// {x : x^T F v = 0 for all v in s}. F must be symmetric.
inline Subspace perp(const Subspace& s, const Matrix& form) {
    if (!form.is_symmetric()) throw std::invalid_argument("perp: form is not symmetric");
    if (form.rows() != s.ambient()) throw std::invalid_argument("perp: dimension mismatch");
    if (s.dim() == 0) return Subspace::full(s.ambient());
    Matrix k = nullspace_rows(s.basis() * form);
    return Subspace::span_rows(k.rows() ? k : Matrix(0, s.ambient()));
}

inline Subspace image(const Matrix& m, const Subspace& s) {
    if (m.cols() != s.ambient()) throw std::invalid_argument("image: dimension mismatch");
    if (s.dim() == 0) return Subspace::zero(m.rows());
    return Subspace::span_rows((m * s.basis().transpose()).transpose());
}

inline Subspace image(const Matrix& m) { return image(m, Subspace::full(m.cols())); }

inline Subspace kernel(const Matrix& m, const Subspace& s) {
    if (m.cols() != s.ambient()) throw std::invalid_argument("kernel: dimension mismatch");
    if (s.dim() == 0) return s;
    Matrix coeff = nullspace_rows(m * s.basis().transpose());
    if (coeff.rows() == 0) return Subspace::zero(s.ambient());
    return Subspace::span_rows(coeff * s.basis());
}

inline Subspace kernel(const Matrix& m) { return kernel(m, Subspace::full(m.cols())); }

struct ImageKernel {
    Subspace image, kernel;
};

inline ImageKernel map_image_kernel(const Matrix& m, const Subspace& v) { return {image(m, v), kernel(m, v)}; }

// {x : m x in s}
inline Subspace preimage(const Matrix& m, const Subspace& s) {
    if (m.rows() != s.ambient()) throw std::invalid_argument("preimage: dimension mismatch");
    if (s.dim() == s.ambient()) return Subspace::full(m.cols());
    Matrix k = nullspace_rows(s.annihilator() * m);
    return Subspace::span_rows(k.rows() ? k : Matrix(0, m.cols()));
}

// Direct sum inside V (+) W.
inline Subspace direct_sum(const Subspace& a, const Subspace& b) {
    Matrix m(a.dim() + b.dim(), a.ambient() + b.ambient());
    m.set_block(0, 0, a.basis());
    m.set_block(a.dim(), a.ambient(), b.basis());
    return Subspace::span_rows(m);
}

inline Subspace direct_sum(const std::vector<Subspace>& parts) {
    Subspace acc = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
    return acc;
}

}  // namespace tleaf
