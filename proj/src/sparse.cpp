#include "porocell/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace porocell {

void TripletList::add_block(const SparseMatrix& B, int row_off, int col_off, double s) {
    for (int i = 0; i < B.rows(); ++i)
        for (int k = B.row_ptr()[i]; k < B.row_ptr()[i + 1]; ++k)
            add(row_off + i, col_off + B.col_idx()[k], s * B.values()[k]);
}

SparseMatrix SparseMatrix::from_triplets(const TripletList& t) {
    SparseMatrix m;
    m.rows_ = t.rows();
    m.cols_ = t.cols();
    const auto& is = t.row_indices();
    const auto& js = t.col_indices();
    const auto& vs = t.values();

    // Stable counting sort by (row, col) keeps duplicate summation in
    // insertion order, so symmetric inserts stay exactly symmetric.
    std::vector<int> count(m.rows_ + 1, 0);
    for (int i : is) count[i + 1]++;
    for (int r = 0; r < m.rows_; ++r) count[r + 1] += count[r];
    std::vector<int> order(vs.size());
    {
        std::vector<int> next(count.begin(), count.end() - 1);
        for (std::size_t k = 0; k < vs.size(); ++k) order[next[is[k]]++] = static_cast<int>(k);
    }
    m.row_ptr_.assign(m.rows_ + 1, 0);
    m.col_idx_.clear();
    m.vals_.clear();
    std::vector<int> idx;
    for (int r = 0; r < m.rows_; ++r) {
        const int begin = count[r], end = count[r + 1];
        idx.assign(order.begin() + begin, order.begin() + end);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return js[a] < js[b]; });
        int last_col = -1;
        for (int k : idx) {
            if (js[k] != last_col) {
                m.col_idx_.push_back(js[k]);
                m.vals_.push_back(vs[k]);
                last_col = js[k];
            } else {
                m.vals_.back() += vs[k];
            }
        }
        m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
    }
    return m;
}

SparseMatrix SparseMatrix::identity(int n) {
    TripletList t(n, n);
    for (int i = 0; i < n; ++i) t.add(i, i, 1.0);
    return from_triplets(t);
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k] * x[col_idx_[k]];
        y[i] = s;
    }
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    matvec(x, y);
    return y;
}

double SparseMatrix::quadratic_form(std::span<const double> x) const {
    double q = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k] * x[col_idx_[k]];
        q += x[i] * s;
    }
    return q;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix m;
    m.rows_ = cols_;
    m.cols_ = rows_;
    m.row_ptr_.assign(cols_ + 1, 0);
    for (int c : col_idx_) m.row_ptr_[c + 1]++;
    for (int r = 0; r < cols_; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    m.col_idx_.resize(col_idx_.size());
    m.vals_.resize(vals_.size());
    std::vector<int> next(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
    for (int i = 0; i < rows_; ++i) {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const int pos = next[col_idx_[k]]++;
            m.col_idx_[pos] = i;
            m.vals_[pos] = vals_[k];
        }
    }
    return m;
}

SparseMatrix SparseMatrix::scaled(double s) const {
    SparseMatrix m = *this;
    for (double& v : m.vals_) v *= s;
    return m;
}

double SparseMatrix::max_asymmetry() const {
    const SparseMatrix t = transposed();
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i) {
        int ka = row_ptr_[i], kb = t.row_ptr_[i];
        const int ea = row_ptr_[i + 1], eb = t.row_ptr_[i + 1];
        while (ka < ea || kb < eb) {
            const int ca = ka < ea ? col_idx_[ka] : cols_;
            const int cb = kb < eb ? t.col_idx_[kb] : cols_;
            if (ca == cb) {
                worst = std::max(worst, std::abs(vals_[ka] - t.vals_[kb]));
                ++ka;
                ++kb;
            } else if (ca < cb) {
                worst = std::max(worst, std::abs(vals_[ka]));
                ++ka;
            } else {
                worst = std::max(worst, std::abs(t.vals_[kb]));
                ++kb;
            }
        }
    }
    return worst;
}

double SparseMatrix::entry(int i, int j) const {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (col_idx_[k] == j) return vals_[k];
    return 0.0;
}

void SparseMatrix::eliminate_dirichlet(std::span<double> rhs, const std::vector<int>& dofs,
                                       const std::vector<double>& values) {
    if (rows_ != cols_) throw std::invalid_argument("eliminate_dirichlet: matrix must be square");
    if (dofs.size() != values.size())
        throw std::invalid_argument("eliminate_dirichlet: dof/value size mismatch");
    std::vector<double> bc_value(rows_, 0.0);
    std::vector<char> constrained(rows_, 0);
    for (std::size_t k = 0; k < dofs.size(); ++k) {
        constrained[dofs[k]] = 1;
        bc_value[dofs[k]] = values[k];
    }
    for (int i = 0; i < rows_; ++i) {
        if (constrained[i]) {
            bool diag_found = false;
            for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                if (col_idx_[k] == i) {
                    vals_[k] = 1.0;
                    diag_found = true;
                } else {
                    vals_[k] = 0.0;
                }
            }
            if (!diag_found)
                throw std::runtime_error("eliminate_dirichlet: missing diagonal entry");
            rhs[i] = bc_value[i];
        } else {
            for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                const int j = col_idx_[k];
                if (constrained[j]) {
                    rhs[i] -= vals_[k] * bc_value[j];
                    vals_[k] = 0.0;
                }
            }
        }
    }
}

void SparseMatrix::write_matrix_market(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_matrix_market: cannot open " + path);
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << rows_ << " " << cols_ << " " << nnz() << "\n";
    os.precision(17);
    for (int i = 0; i < rows_; ++i)
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            os << i + 1 << " " << col_idx_[k] + 1 << " " << vals_[k] << "\n";
}

SparseMatrix csr_weighted_sum(const std::vector<std::pair<double, const SparseMatrix*>>& terms) {
    if (terms.empty()) throw std::invalid_argument("csr_weighted_sum: no terms");
    const int r = terms[0].second->rows(), c = terms[0].second->cols();
    TripletList t(r, c);
    for (const auto& [w, m] : terms) {
        if (m->rows() != r || m->cols() != c)
            throw std::invalid_argument("csr_weighted_sum: dimension mismatch");
        t.add_block(*m, 0, 0, w);
    }
    return SparseMatrix::from_triplets(t);
}

std::vector<double> axpy(double a, std::span<const double> x, std::span<const double> y) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
    return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace porocell
