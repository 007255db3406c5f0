#include "porocell/amg.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace porocell {

namespace {

// CSR product C = A * B via row-wise sparse accumulation.
SparseMatrix csr_matmul(const SparseMatrix& A, const SparseMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("csr_matmul: dimension mismatch");
    TripletList trip(A.rows(), B.cols());
    std::vector<double> acc(B.cols(), 0.0);
    std::vector<int> marked;
    for (int i = 0; i < A.rows(); ++i) {
        marked.clear();
        for (int ka = A.row_ptr()[i]; ka < A.row_ptr()[i + 1]; ++ka) {
            const int j = A.col_idx()[ka];
            const double va = A.values()[ka];
            for (int kb = B.row_ptr()[j]; kb < B.row_ptr()[j + 1]; ++kb) {
                const int c = B.col_idx()[kb];
                if (acc[c] == 0.0) marked.push_back(c);
                acc[c] += va * B.values()[kb];
            }
        }
        std::sort(marked.begin(), marked.end());
        for (int c : marked) {
            trip.add(i, c, acc[c]);
            acc[c] = 0.0;
        }
    }
    return SparseMatrix::from_triplets(trip);
}

struct Strength {
    // strong[i] = columns j of the same unknown with a_ij < 0 and
    // -a_ij >= theta * max_k(-a_ik)
    std::vector<std::vector<int>> strong;
    std::vector<std::vector<int>> strong_transpose;
};

Strength strength_graph(const SparseMatrix& A, double theta, const std::vector<int>& comp) {
    const int n = A.rows();
    const bool labeled = !comp.empty();
    Strength s;
    s.strong.resize(n);
    s.strong_transpose.resize(n);
    for (int i = 0; i < n; ++i) {
        double smax = 0.0;
        for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            const int j = A.col_idx()[k];
            if (j == i || (labeled && comp[j] != comp[i])) continue;
            smax = std::max(smax, -A.values()[k]);
        }
        if (smax <= 0.0) continue;  // no negative couplings: smoothing-only row
        const double cut = theta * smax;
        for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            const int j = A.col_idx()[k];
            const double v = A.values()[k];
            if (j == i || (labeled && comp[j] != comp[i])) continue;
            if (v < 0.0 && -v >= cut) s.strong[i].push_back(j);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j : s.strong[i]) s.strong_transpose[j].push_back(i);
    return s;
}

enum class PointState : char { Undecided, Coarse, Fine };

// Classical first-pass greedy splitting: measure = number of undecided points
// strongly depending on i, plus 2 per fine dependent.
std::vector<PointState> split_cf(const Strength& s, int n) {
    std::vector<PointState> state(n, PointState::Undecided);
    std::vector<int> measure(n);
    for (int i = 0; i < n; ++i) measure[i] = static_cast<int>(s.strong_transpose[i].size());
    // max-heap on (measure, -index); stale entries skipped lazily
    std::priority_queue<std::pair<int, int>> heap;
    for (int i = 0; i < n; ++i)
        if (measure[i] > 0) heap.push({measure[i], -i});
    while (!heap.empty()) {
        const auto [m, negi] = heap.top();
        heap.pop();
        const int i = -negi;
        if (state[i] != PointState::Undecided || m != measure[i]) continue;
        state[i] = PointState::Coarse;
        for (int j : s.strong_transpose[i]) {
            if (state[j] != PointState::Undecided) continue;
            state[j] = PointState::Fine;
            for (int k : s.strong[j]) {
                if (state[k] == PointState::Undecided) {
                    ++measure[k];
                    heap.push({measure[k], -k});
                }
            }
        }
        for (int j : s.strong[i]) {
            if (state[j] == PointState::Undecided) {
                --measure[j];
                if (measure[j] > 0) heap.push({measure[j], -j});
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (state[i] == PointState::Undecided) state[i] = PointState::Fine;
    // Legality pass: every strongly connected F point needs at least one
    // coarse interpolatory neighbor, otherwise its smooth error is invisible
    // to the coarse grid. Promote uncovered F points.
    for (int i = 0; i < n; ++i) {
        if (state[i] != PointState::Fine || s.strong[i].empty()) continue;
        bool covered = false;
        for (int j : s.strong[i])
            if (state[j] == PointState::Coarse) {
                covered = true;
                break;
            }
        if (!covered) state[i] = PointState::Coarse;
    }
    return state;
}

// Direct interpolation within each unknown. Negative and positive couplings
// are scaled separately; positive couplings without a coarse counterpart are
// lumped into the diagonal. Cross-unknown entries enter only through the
// Galerkin products and the smoother.
SparseMatrix direct_interpolation(const SparseMatrix& A, const Strength& s,
                                  const std::vector<PointState>& state, int n_coarse,
                                  const std::vector<int>& coarse_id,
                                  const std::vector<int>& comp) {
    const int n = A.rows();
    const bool labeled = !comp.empty();
    TripletList trip(n, n_coarse);
    std::vector<char> in_P(n, 0);
    for (int i = 0; i < n; ++i) {
        if (state[i] == PointState::Coarse) {
            trip.add(i, coarse_id[i], 1.0);
            continue;
        }
        for (int j : s.strong[i])
            if (state[j] == PointState::Coarse) in_P[j] = 1;
        double neg_all = 0.0, pos_all = 0.0, neg_p = 0.0, pos_p = 0.0, diag = 0.0;
        for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            const int j = A.col_idx()[k];
            const double v = A.values()[k];
            if (j == i) {
                diag = v;
                continue;
            }
            if (labeled && comp[j] != comp[i]) continue;
            (v < 0.0 ? neg_all : pos_all) += v;
            if (in_P[j]) (v < 0.0 ? neg_p : pos_p) += v;
        }
        double d = diag;
        if (pos_p == 0.0) d += pos_all;
        const double alpha = neg_p != 0.0 ? neg_all / neg_p : 0.0;
        const double beta = pos_p != 0.0 ? pos_all / pos_p : 0.0;
        if (d > 0.0) {
            for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
                const int j = A.col_idx()[k];
                if (j == i || !in_P[j]) continue;
                const double v = A.values()[k];
                trip.add(i, coarse_id[j], -(v < 0.0 ? alpha : beta) * v / d);
            }
        }
        for (int j : s.strong[i]) in_P[j] = 0;
    }
    return SparseMatrix::from_triplets(trip);
}

void gauss_seidel(const SparseMatrix& A, std::span<double> x, std::span<const double> b,
                  bool forward) {
    const int n = A.rows();
    for (int step = 0; step < n; ++step) {
        const int i = forward ? step : n - 1 - step;
        double s = b[i], diag = 0.0;
        for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) {
            const int j = A.col_idx()[k];
            if (j == i)
                diag = A.values()[k];
            else
                s -= A.values()[k] * x[j];
        }
        if (diag != 0.0) x[i] = s / diag;
    }
}

void vcycle_level(const AmgHierarchy& h, std::size_t level, std::span<const double> b,
                  std::span<double> x) {
    if (level == h.levels.size()) {
        const auto sol = h.coarse_factor.solve(b);
        std::copy(sol.begin(), sol.end(), x.begin());
        return;
    }
    const AmgLevel& lv = h.levels[level];
    std::fill(x.begin(), x.end(), 0.0);
    for (int s = 0; s < h.nu; ++s) gauss_seidel(lv.A, x, b, true);
    std::vector<double> r(lv.A.rows());
    lv.A.matvec(x, r);
    for (int i = 0; i < lv.A.rows(); ++i) r[i] = b[i] - r[i];
    std::vector<double> rc(lv.n_coarse), xc(lv.n_coarse);
    lv.R.matvec(r, rc);
    vcycle_level(h, level + 1, rc, xc);
    std::vector<double> corr(lv.A.rows());
    lv.P.matvec(xc, corr);
    for (int i = 0; i < lv.A.rows(); ++i) x[i] += corr[i];
    for (int s = 0; s < h.nu; ++s) gauss_seidel(lv.A, x, b, false);
}

}  // namespace

double AmgHierarchy::operator_complexity() const {
    double total = coarse_matrix.nnz();
    for (const AmgLevel& lv : levels) total += lv.A.nnz();
    const double fine = levels.empty() ? coarse_matrix.nnz() : levels.front().A.nnz();
    return fine > 0 ? total / fine : 1.0;
}

std::string AmgHierarchy::summary_json() const {
    std::ostringstream os;
    os << "{\"theta\":" << theta << ",\"nu\":" << nu << ",\"levels\":[";
    for (const AmgLevel& lv : levels)
        os << "{\"n\":" << lv.A.rows() << ",\"nnz\":" << lv.A.nnz() << "},";
    os << "{\"n\":" << coarse_matrix.rows() << ",\"nnz\":" << coarse_matrix.nnz()
       << ",\"direct\":true}],\"coarse_shifted\":" << (coarse_shifted ? "true" : "false")
       << ",\"operator_complexity\":" << operator_complexity() << "}";
    return os.str();
}

AmgHierarchy amg_setup(const SparseMatrix& A, double theta, int nu, AmgOptions opts) {
    if (A.rows() != A.cols()) throw std::invalid_argument("amg_setup: matrix must be square");
    if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("amg_setup: theta must be in [0,1]");
    AmgHierarchy h;
    h.theta = theta;
    h.nu = nu;
    opts.theta = theta;
    opts.nu = nu;

    if (!opts.components.empty() &&
        static_cast<int>(opts.components.size()) != A.rows())
        throw std::invalid_argument("amg_setup: component labels do not match the matrix size");

    SparseMatrix current = A;
    std::vector<int> comp = opts.components;
    while (current.rows() > opts.max_coarse &&
           static_cast<int>(h.levels.size()) < opts.max_levels - 1) {
        const Strength s = strength_graph(current, theta, comp);
        const auto state = split_cf(s, current.rows());
        std::vector<int> coarse_id(current.rows(), -1);
        int nc = 0;
        for (int i = 0; i < current.rows(); ++i)
            if (state[i] == PointState::Coarse) coarse_id[i] = nc++;
        if (nc == 0 || nc >= current.rows()) break;  // coarsening impossible or stalled

        AmgLevel lv;
        lv.A = std::move(current);
        lv.P = direct_interpolation(lv.A, s, state, nc, coarse_id, comp);
        lv.R = lv.P.transposed();
        lv.n_coarse = nc;
        current = csr_matmul(csr_matmul(lv.R, lv.A), lv.P);
        if (!comp.empty()) {
            std::vector<int> coarse_comp(nc);
            for (int i = 0; i < lv.A.rows(); ++i)
                if (coarse_id[i] >= 0) coarse_comp[coarse_id[i]] = comp[i];
            comp = std::move(coarse_comp);
        }
        h.levels.push_back(std::move(lv));
    }

    h.coarse_matrix = std::move(current);
    bool need_shift = false;
    try {
        (void)factorize_spd(h.coarse_matrix);
    } catch (const NotSpdError&) {
        need_shift = true;
    }
    if (need_shift) {
        double dmax = 0.0;
        for (int i = 0; i < h.coarse_matrix.rows(); ++i)
            dmax = std::max(dmax, std::abs(h.coarse_matrix.entry(i, i)));
        TripletList t(h.coarse_matrix.rows(), h.coarse_matrix.cols());
        t.add_block(h.coarse_matrix, 0, 0);
        for (int i = 0; i < h.coarse_matrix.rows(); ++i) t.add(i, i, 1e-14 * dmax);
        h.coarse_matrix = SparseMatrix::from_triplets(t);
        h.coarse_shifted = true;
    }
    h.coarse_factor = factorize_symmetric(h.coarse_matrix);
    return h;
}

std::vector<double> vcycle(const AmgHierarchy& h, std::span<const double> r) {
    std::vector<double> x(h.size());
    vcycle_level(h, 0, r, x);
    return x;
}

std::vector<double> vcycle_iterations(const AmgHierarchy& h, std::span<const double> b, int k) {
    const SparseMatrix& A = h.levels.empty() ? h.coarse_matrix : h.levels.front().A;
    std::vector<double> x(h.size(), 0.0), r(b.begin(), b.end()), ax(h.size());
    for (int c = 0; c < k; ++c) {
        if (c > 0) {
            A.matvec(x, ax);
            for (int i = 0; i < h.size(); ++i) r[i] = b[i] - ax[i];
        }
        const std::vector<double> e = vcycle(h, r);
        for (int i = 0; i < h.size(); ++i) x[i] += e[i];
    }
    return x;
}

LinearOperator vcycle_operator(const AmgHierarchy& h, int cycles) {
    const AmgHierarchy* hp = &h;
    return {h.size(), [hp, cycles](std::span<const double> b, std::span<double> y) {
                const std::vector<double> x = vcycle_iterations(*hp, b, cycles);
                std::copy(x.begin(), x.end(), y.begin());
            }};
}

}  // namespace porocell
