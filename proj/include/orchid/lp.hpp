#pragma once

#include <vector>

namespace orchid {

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

/// Minimizes c'x subject to Ax = b, x >= 0 (dense two-phase primal simplex).
/// A is row-major with rows.size() constraints. Throws NumericalError if the
/// pivoting does not terminate.
LpResult solve_equality_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                           const std::vector<double>& c);

}  // namespace orchid
