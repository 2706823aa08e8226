#pragma once

#include "weylith/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weylith {

/// Row-major dense matrix over an exact field.
template <class F>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<F> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_)
            throw ShapeMismatch("matrix data has " + std::to_string(data_.size()) + " entries, expected "
                                + std::to_string(rows_ * cols_));
    }
    DenseMatrix(std::initializer_list<std::initializer_list<F>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw ShapeMismatch("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<F> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const F> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<F>& data() const { return data_; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
    }

    DenseMatrix transpose() const
    {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<F> column(std::size_t c) const
    {
        std::vector<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, c);
        return v;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw ShapeMismatch("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " * "
                                + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& x = a(i, k);
                if (x.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ShapeMismatch("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
struct RowEchelon {
    DenseMatrix<F> reduced;
    std::vector<std::size_t> pivots;  // strictly increasing
};

/// Gauss-Jordan elimination to reduced row-echelon form.
template <class F>
RowEchelon<F> rref(DenseMatrix<F> m)
{
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c).is_zero())
            ++sel;
        if (sel == rows)
            continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j)
                std::swap(m(sel, j), m(r, j));
        const F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            if (!m(r, j).is_zero())
                m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const F factor = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const DenseMatrix<F>& m)
{
    return rref(m).pivots.size();
}

/// Right null space. Free columns are taken in increasing order, each with a unit
/// in its own position, so the basis is in reduced column-echelon form on the free rows.
template <class F>
DenseMatrix<F> kernel_basis(const DenseMatrix<F>& m)
{
    auto [r, pivots] = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free.push_back(c);
    DenseMatrix<F> k(n, free.size());
    for (std::size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = F(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (!r(i, free[j]).is_zero())
                k(pivots[i], j) = -r(i, free[j]);
    }
    return k;
}

/// Indices of the free (non-pivot) columns of `m`, i.e. the rows of kernel_basis(m)
/// that carry the identity block.
template <class F>
std::vector<std::size_t> free_columns(const RowEchelon<F>& e, std::size_t cols)
{
    std::vector<std::size_t> free;
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (next < e.pivots.size() && e.pivots[next] == c) {
            ++next;
            continue;
        }
        free.push_back(c);
    }
    return free;
}

template <class F>
F determinant(DenseMatrix<F> m)
{
    if (m.rows() != m.cols())
        throw ShapeMismatch("determinant of non-square matrix");
    const std::size_t n = m.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c).is_zero())
            ++sel;
        if (sel == n)
            return F(0);
        if (sel != c) {
            for (std::size_t j = c; j < n; ++j)
                std::swap(m(sel, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        const F inv = F(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero())
                continue;
            const F factor = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero())
                    m(i, j) -= factor * m(c, j);
        }
    }
    return det;
}

template <class F>
DenseMatrix<F> hstack(const std::vector<DenseMatrix<F>>& parts, std::size_t rows)
{
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows)
            throw ShapeMismatch("hstack row mismatch");
        cols += p.cols();
    }
    DenseMatrix<F> out(rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                out(i, off + j) = p(i, j);
        off += p.cols();
    }
    return out;
}

template <class F>
DenseMatrix<F> select_rows(const DenseMatrix<F>& m, const std::vector<std::size_t>& rows)
{
    DenseMatrix<F> out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(rows[i], j);
    return out;
}

template <class F>
DenseMatrix<F> kronecker(const DenseMatrix<F>& a, const DenseMatrix<F>& b)
{
    DenseMatrix<F> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero())
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

/// Standard basis vectors completing the column span of `m` to the whole space,
/// chosen greedily in increasing index order.
template <class F>
std::vector<std::size_t> complement_coordinates(const DenseMatrix<F>& m)
{
    const std::size_t n = m.rows();
    DenseMatrix<F> aug(n, m.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols() + i) = F(1);
    }
    std::vector<std::size_t> out;
    for (auto p : rref(std::move(aug)).pivots)
        if (p >= m.cols())
            out.push_back(p - m.cols());
    return out;
}

}  // namespace weylith
