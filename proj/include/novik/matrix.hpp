// Dense matrices over truncated Novikov series. Small sizes only; boundary
// operators of desk-scale complexes and their SNF transforms.

#ifndef NOVIK_MATRIX_HPP
#define NOVIK_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "novik/series.hpp"

namespace novik {

template <class C>
class Matrix {
public:
    Matrix(FormPtr form, std::size_t rows, std::size_t cols)
        : form_(std::move(form)), rows_(rows), cols_(cols),
          data_(rows * cols, Series<C>::zero(form_)) {}

    static Matrix identity(FormPtr form, std::size_t n) {
        Matrix m(form, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Series<C>::one(form);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FormPtr& form() const { return form_; }

    Series<C>& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Series<C>& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

    // row_i += f * row_k
    void add_row_multiple(std::size_t i, std::size_t k, const Series<C>& f) {
        for (std::size_t j = 0; j < cols_; ++j)
            at(i, j) = add(at(i, j), detail::mul_certified(f, at(k, j)));
    }
    // col_j += f * col_k
    void add_col_multiple(std::size_t j, std::size_t k, const Series<C>& f) {
        for (std::size_t i = 0; i < rows_; ++i)
            at(i, j) = add(at(i, j), detail::mul_certified(f, at(i, k)));
    }
    void scale_row(std::size_t i, const Series<C>& f) {
        for (std::size_t j = 0; j < cols_; ++j)
            at(i, j) = detail::mul_certified(f, at(i, j));
    }

    Matrix transposed() const {
        Matrix t(form_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix out(a.form_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                Series<C> acc = Series<C>::zero(a.form_);
                for (std::size_t k = 0; k < a.cols_; ++k)
                    acc = add(acc, detail::mul_certified(a.at(i, k), b.at(k, j)));
                out.at(i, j) = std::move(acc);
            }
        return out;
    }

    std::vector<Series<C>> apply(const std::vector<Series<C>>& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<Series<C>> out(rows_, Series<C>::zero(form_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] = add(out[i], detail::mul_certified(at(i, j), v[j]));
        return out;
    }

private:
    FormPtr form_;
    std::size_t rows_, cols_;
    std::vector<Series<C>> data_;
};

using ZMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

inline QMatrix to_rational(const ZMatrix& m) {
    QMatrix out(m.form(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = to_rational(m.at(i, j));
    return out;
}

// Laplace expansion; intended for the small verification matrices of SNF
// certificates, not for general use.
template <class C>
Series<C> determinant(const Matrix<C>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Series<C>::one(m.form());
    if (n == 1) return m.at(0, 0);
    Series<C> acc = Series<C>::zero(m.form());
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<C> minor(m.form(), n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cj = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cj++) = m.at(i, c);
            }
        }
        Series<C> term = detail::mul_certified(m.at(0, j), determinant(minor));
        acc = (j % 2 == 0) ? add(acc, term) : sub(acc, term);
    }
    return acc;
}

// Entrywise agreement below m; every entry must certify the window.
template <class C>
bool matrices_agree_below(const Matrix<C>& a, const Matrix<C>& b, const DegreeValue& m) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!agree_below(a.at(i, j), b.at(i, j), m)) return false;
    return true;
}

}  // namespace novik

#endif  // NOVIK_MATRIX_HPP
