#ifndef STOKESOPT_CSR_HPP
#define STOKESOPT_CSR_HPP

#include <span>
#include <utility>
#include <vector>

namespace stokesopt {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// Compressed sparse row matrix. Column indices are sorted and unique within
// each row; duplicates are summed during construction.
class CsrMatrix {
public:
    CsrMatrix() = default;

    static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

    // c0*M0 + c1*M1 + ...; all matrices must share dimensions.
    static CsrMatrix linear_combination(
        const std::vector<std::pair<double, const CsrMatrix*>>& terms);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nonzeros() const { return static_cast<int>(values_.size()); }

    std::span<const int> row_offsets() const { return row_offsets_; }
    std::span<const int> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    // y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;
    // y = A^T x
    std::vector<double> multiply_transpose(std::span<const double> x) const;

    // x^T A x (square matrices).
    double quadratic_form(std::span<const double> x) const;

    std::vector<double> diagonal() const;
    std::vector<double> row_sums() const;

    // Entry lookup; zero when the position is not stored.
    double value_at(int row, int col) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_offsets_{0};
    std::vector<int> col_indices_;
    std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

}  // namespace stokesopt

#endif
