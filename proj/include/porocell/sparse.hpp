// CSR sparse matrices with triplet assembly, used for all discrete operators.
#pragma once

#include <span>
#include <string>
#include <vector>

namespace porocell {

class TripletList {
  public:
    TripletList(int rows, int cols) : rows_(rows), cols_(cols) {}

    void add(int i, int j, double v) {
        is_.push_back(i);
        js_.push_back(j);
        vs_.push_back(v);
    }
    // Adds s * B at block offset (row_off, col_off).
    void add_block(const class SparseMatrix& B, int row_off, int col_off, double s = 1.0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return vs_.size(); }

    const std::vector<int>& row_indices() const { return is_; }
    const std::vector<int>& col_indices() const { return js_; }
    const std::vector<double>& values() const { return vs_; }

  private:
    int rows_, cols_;
    std::vector<int> is_, js_;
    std::vector<double> vs_;
};

class SparseMatrix {
  public:
    SparseMatrix() = default;

    // Sums duplicate entries in insertion order; columns per row end up
    // sorted and unique.
    static SparseMatrix from_triplets(const TripletList& t);
    static SparseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(vals_.size()); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }
    std::vector<double>& values() { return vals_; }

    void matvec(std::span<const double> x, std::span<double> y) const;  // y = A x
    std::vector<double> apply(std::span<const double> x) const;
    double quadratic_form(std::span<const double> x) const;  // x^T A x

    SparseMatrix transposed() const;
    SparseMatrix scaled(double s) const;
    double max_asymmetry() const;  // max |A - A^T|, 0 for exactly symmetric
    double entry(int i, int j) const;

    // Symmetric Dirichlet elimination: for each (dof, value), moves the
    // column into rhs, zeroes row and column, sets a unit diagonal and
    // rhs[dof] = value. Throws if a constrained diagonal is missing.
    void eliminate_dirichlet(std::span<double> rhs, const std::vector<int>& dofs,
                             const std::vector<double>& values);

    void write_matrix_market(const std::string& path) const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> vals_;
};

// C = sum_k coefs[k] * mats[k]; all matrices must share dimensions.
SparseMatrix csr_weighted_sum(const std::vector<std::pair<double, const SparseMatrix*>>& terms);

std::vector<double> axpy(double a, std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace porocell
