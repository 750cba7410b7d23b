#include "stokesopt/csr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stokesopt {

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("CsrMatrix: negative dimension");
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("CsrMatrix: triplet index out of range");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    CsrMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_.assign(static_cast<size_t>(rows) + 1, 0);
    m.col_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());

    size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const int c = triplets[i].col;
            double v = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
                v += triplets[i].value;
                ++i;
            }
            m.col_indices_.push_back(c);
            m.values_.push_back(v);
        }
        m.row_offsets_[static_cast<size_t>(r) + 1] = static_cast<int>(m.col_indices_.size());
    }
    return m;
}

CsrMatrix CsrMatrix::linear_combination(
    const std::vector<std::pair<double, const CsrMatrix*>>& terms) {
    if (terms.empty()) throw std::invalid_argument("linear_combination: no terms");
    const int rows = terms.front().second->rows();
    const int cols = terms.front().second->cols();
    std::vector<Triplet> triplets;
    for (const auto& [coeff, mat] : terms) {
        if (mat->rows() != rows || mat->cols() != cols)
            throw std::invalid_argument("linear_combination: dimension mismatch");
        for (int r = 0; r < rows; ++r) {
            for (int k = mat->row_offsets_[r]; k < mat->row_offsets_[static_cast<size_t>(r) + 1]; ++k)
                triplets.push_back({r, mat->col_indices_[k], coeff * mat->values_[k]});
        }
    }
    return from_triplets(rows, cols, std::move(triplets));
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
        throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
            s += values_[k] * x[col_indices_[k]];
        y[r] = s;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<size_t>(rows_));
    multiply(x, y);
    return y;
}

std::vector<double> CsrMatrix::multiply_transpose(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != rows_)
        throw std::invalid_argument("CsrMatrix::multiply_transpose: size mismatch");
    std::vector<double> y(static_cast<size_t>(cols_), 0.0);
    for (int r = 0; r < rows_; ++r) {
        const double xr = x[r];
        if (xr == 0.0) continue;
        for (int k = row_offsets_[r]; k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
            y[col_indices_[k]] += values_[k] * xr;
    }
    return y;
}

double CsrMatrix::quadratic_form(std::span<const double> x) const {
    if (rows_ != cols_) throw std::invalid_argument("quadratic_form: matrix not square");
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("quadratic_form: size mismatch");
    double s = 0.0;
    for (int r = 0; r < rows_; ++r) {
        double row = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
            row += values_[k] * x[col_indices_[k]];
        s += x[r] * row;
    }
    return s;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(static_cast<size_t>(std::min(rows_, cols_)), 0.0);
    for (int r = 0; r < static_cast<int>(d.size()); ++r) d[r] = value_at(r, r);
    return d;
}

std::vector<double> CsrMatrix::row_sums() const {
    std::vector<double> s(static_cast<size_t>(rows_), 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_offsets_[r]; k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
            s[r] += values_[k];
    return s;
}

double CsrMatrix::value_at(int row, int col) const {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::invalid_argument("value_at: index out of range");
    const int lo = row_offsets_[row];
    const int hi = row_offsets_[static_cast<size_t>(row) + 1];
    const auto first = col_indices_.begin() + lo;
    const auto last = col_indices_.begin() + hi;
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0.0;
    return values_[static_cast<size_t>(it - col_indices_.begin())];
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace stokesopt
