#include "orchid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orchid/errors.hpp"

namespace orchid {

namespace {

constexpr double kEps = 1e-9;

// Dense tableau: rows 0..m-1 are constraints, row m is the reduced-cost row;
// column n_total is the rhs (objective row rhs holds -objective).
class Tableau {
public:
    Tableau(int m, int n) : m_(m), n_(n), t_((m + 1) * (n + 1), 0.0), basis_(m, -1) {}

    double& at(int r, int c) { return t_[r * (n_ + 1) + c]; }
    double at(int r, int c) const { return t_[r * (n_ + 1) + c]; }
    int cols() const { return n_; }
    std::vector<int>& basis() { return basis_; }

    void pivot(int row, int col) {
        double p = at(row, col);
        double* pr = &t_[row * (n_ + 1)];
        for (int c = 0; c <= n_; ++c) pr[c] /= p;
        for (int r = 0; r <= m_; ++r) {
            if (r == row) continue;
            double f = at(r, col);
            if (f == 0.0) continue;
            double* rr = &t_[r * (n_ + 1)];
            for (int c = 0; c <= n_; ++c) rr[c] -= f * pr[c];
            rr[col] = 0.0;
        }
        basis_[row] = col;
    }

    // Runs simplex iterations on columns [0, usable). Dantzig rule with a
    // switch to Bland's rule after a stall threshold to rule out cycling.
    void optimize(int usable) {
        long long iter = 0;
        const long long bland_after = 8LL * (m_ + usable);
        const long long max_iter = 1000LL * (m_ + usable) + 100000;
        while (true) {
            if (++iter > max_iter) throw NumericalError("simplex iteration limit exceeded");
            bool bland = iter > bland_after;
            int col = -1;
            double best = -kEps;
            for (int c = 0; c < usable; ++c) {
                double rc = at(m_, c);
                if (rc < -kEps) {
                    if (bland) {
                        col = c;
                        break;
                    }
                    if (rc < best) {
                        best = rc;
                        col = c;
                    }
                }
            }
            if (col < 0) return;  // optimal
            int row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m_; ++r) {
                double a = at(r, col);
                if (a > kEps) {
                    double ratio = at(r, n_) / a;
                    if (ratio < best_ratio - kEps ||
                        (ratio < best_ratio + kEps && (row < 0 || basis_[r] < basis_[row]))) {
                        best_ratio = ratio;
                        row = r;
                    }
                }
            }
            if (row < 0) throw NumericalError("LP is unbounded");
            pivot(row, col);
        }
    }

private:
    int m_, n_;
    std::vector<double> t_;
    std::vector<int> basis_;
};

}  // namespace

LpResult solve_equality_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                           const std::vector<double>& c) {
    int m = static_cast<int>(A.size());
    int n = static_cast<int>(c.size());
    int total = n + m;  // original + artificial columns
    Tableau t(m, total);

    for (int r = 0; r < m; ++r) {
        double sign = b[r] < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t.at(r, j) = sign * A[r][j];
        t.at(r, n + r) = 1.0;
        t.at(r, total) = sign * b[r];
        t.basis()[r] = n + r;
    }
    // Phase 1: reduced costs for objective sum(artificials).
    for (int j = 0; j <= total; ++j) {
        double s = 0;
        for (int r = 0; r < m; ++r) s += t.at(r, j);
        if (j < n || j == total) t.at(m, j) = -s;
    }
    t.optimize(n);  // artificials never re-enter

    LpResult res;
    if (t.at(m, total) < -1e-7) return res;  // infeasible: artificial mass remains

    // Drive remaining artificials (basic at value ~0) out where possible.
    for (int r = 0; r < m; ++r) {
        if (t.basis()[r] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(t.at(r, j)) > 1e-7) {
                col = j;
                break;
            }
        if (col >= 0) t.pivot(r, col);
        // else: redundant row; artificial stays basic at 0 and is harmless
    }

    // Phase 2: rebuild the reduced-cost row for the true objective.
    for (int j = 0; j <= total; ++j) t.at(m, j) = 0.0;
    for (int j = 0; j < n; ++j) t.at(m, j) = c[j];
    for (int r = 0; r < m; ++r) {
        int bj = t.basis()[r];
        double cb = bj < n ? c[bj] : 0.0;
        if (cb == 0.0) continue;
        for (int j = 0; j <= total; ++j) t.at(m, j) -= cb * t.at(r, j);
    }
    for (int r = 0; r < m; ++r)
        if (t.basis()[r] < n) t.at(m, t.basis()[r]) = 0.0;
    t.optimize(n);

    res.feasible = true;
    res.objective = -t.at(m, total);
    res.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (t.basis()[r] < n) res.x[t.basis()[r]] = t.at(r, total);
    return res;
}

}  // namespace orchid
