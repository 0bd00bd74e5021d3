#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "orchid/hypergraph.hpp"
#include "orchid/measures.hpp"

namespace orchid {

struct CouplingResult {
    double cost = 0.0;
    std::optional<std::vector<std::tuple<int, int, double>>> plan;  // (source, target, mass)
};

struct TransportOptions {
    int distance_cap = -1;   // >= 0: truncated BFS; a missing pair under the cap is a hard failure
    bool want_plan = false;
    bool reduce = true;      // cancel equal point masses first
};

/// Cancels point masses the two measures share exactly (within 1e-14), the
/// mass-cancellation reduction that preserves W1 on a metric cost.
std::pair<SparseMeasure, SparseMeasure> reduce_instance(const SparseMeasure& mu,
                                                        const SparseMeasure& nu);

/// Exact minimum-cost transport between equal-total supplies and demands with
/// integer costs (successive shortest paths; cost[a][b] < 0 means forbidden).
double solve_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                       const std::vector<std::vector<int>>& cost,
                       std::vector<std::tuple<int, int, double>>* plan = nullptr);

/// Exact Wasserstein-1 distance between two measures under hop distances.
CouplingResult wasserstein1(const Hypergraph& h, const SparseMeasure& mu, const SparseMeasure& nu,
                            const TransportOptions& opts = {});

/// W1 between the base node's Dirac measure and mu.
double jump(const Hypergraph& h, const SparseMeasure& mu);

enum class BarycenterSupport { TwoHop, Full };

/// Minimizes (1/n) sum_i W1(mubar, mu_i) over measures supported on the
/// candidate set; returns the minimizer and the minimized mean distance.
std::pair<SparseMeasure, double> wasserstein_barycenter(
    const Hypergraph& h, const std::vector<SparseMeasure>& measures,
    BarycenterSupport support_mode = BarycenterSupport::TwoHop);

/// Exact 1-D Wasserstein-1 between empirical distributions (quantile
/// integration; handles unequal sample counts).
double w1_empirical_1d(std::vector<double> xs, std::vector<double> ys);

}  // namespace orchid
