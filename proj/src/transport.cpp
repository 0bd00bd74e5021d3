#include "orchid/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "orchid/lp.hpp"

namespace orchid {

namespace {
constexpr double kMassEps = 1e-14;
}

std::pair<SparseMeasure, SparseMeasure> reduce_instance(const SparseMeasure& mu,
                                                        const SparseMeasure& nu) {
    SparseMeasure a, b;
    a.base_node = mu.base_node;
    b.base_node = nu.base_node;
    size_t i = 0, j = 0;
    while (i < mu.support.size() || j < nu.support.size()) {
        if (j == nu.support.size() ||
            (i < mu.support.size() && mu.support[i] < nu.support[j])) {
            a.support.push_back(mu.support[i]);
            a.mass.push_back(mu.mass[i]);
            ++i;
        } else if (i == mu.support.size() || nu.support[j] < mu.support[i]) {
            b.support.push_back(nu.support[j]);
            b.mass.push_back(nu.mass[j]);
            ++j;
        } else {
            // Shared atom: cancel the common mass. Keeping it in place is
            // optimal because the ground cost is a metric, so only the
            // difference needs transporting.
            double x = mu.mass[i], y = nu.mass[j];
            if (std::abs(x - y) > kMassEps) {
                if (x > y) {
                    a.support.push_back(mu.support[i]);
                    a.mass.push_back(x - y);
                } else {
                    b.support.push_back(nu.support[j]);
                    b.mass.push_back(y - x);
                }
            }
            ++i;
            ++j;
        }
    }
    return {std::move(a), std::move(b)};
}

double solve_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                       const std::vector<std::vector<int>>& cost,
                       std::vector<std::tuple<int, int, double>>* plan) {
    int p = static_cast<int>(supply.size());
    int q = static_cast<int>(demand.size());
    if (p == 0 || q == 0) return 0.0;

    std::vector<double> rem_supply = supply;
    std::vector<double> rem_demand = demand;
    std::vector<std::vector<double>> flow(p, std::vector<double>(q, 0.0));
    std::vector<double> pot_s(p, 0.0), pot_t(q, 0.0);  // dual potentials

    double remaining = 0;
    for (double d : demand) remaining += d;

    const double inf = std::numeric_limits<double>::infinity();
    while (remaining > 1e-13) {
        // Dijkstra over the residual bipartite network with reduced costs.
        std::vector<double> ds(p, inf), dt(q, inf);
        std::vector<int> par_t(q, -1), par_s(p, -1);  // parents: sink<-source, source<-sink
        std::vector<bool> done_s(p, false), done_t(q, false);
        for (int a = 0; a < p; ++a)
            if (rem_supply[a] > 1e-13) ds[a] = 0.0;

        int target = -1;
        double bd = inf;
        while (true) {
            int best = -1;
            bool best_is_sink = false;
            bd = inf;
            for (int a = 0; a < p; ++a)
                if (!done_s[a] && ds[a] < bd) bd = ds[a], best = a, best_is_sink = false;
            for (int b = 0; b < q; ++b)
                if (!done_t[b] && dt[b] < bd) bd = dt[b], best = b, best_is_sink = true;
            if (best < 0) break;
            // The first finalized deficit sink ends the search: no cheaper
            // augmenting path can appear later.
            if (best_is_sink && rem_demand[best] > 1e-13) {
                target = best;
                break;
            }
            if (!best_is_sink) {
                int a = best;
                done_s[a] = true;
                for (int b = 0; b < q; ++b) {
                    if (cost[a][b] < 0) continue;
                    double rc = cost[a][b] + pot_s[a] - pot_t[b];
                    if (ds[a] + rc < dt[b] - 1e-13) {
                        dt[b] = ds[a] + rc;
                        par_t[b] = a;
                    }
                }
            } else {
                int b = best;
                done_t[b] = true;
                for (int a = 0; a < p; ++a) {
                    if (flow[a][b] <= 1e-15 || cost[a][b] < 0) continue;
                    double rc = -cost[a][b] - pot_s[a] + pot_t[b];
                    if (dt[b] + rc < ds[a] - 1e-13) {
                        ds[a] = dt[b] + rc;
                        par_s[a] = b;
                    }
                }
            }
        }

        if (target < 0) throw InfiniteCostError("transport demand unreachable from any supply");

        // Bottleneck along the alternating path back to a free source.
        double bottleneck = rem_demand[target];
        int b = target;
        while (true) {
            int a = par_t[b];
            if (par_s[a] < 0) {
                bottleneck = std::min(bottleneck, rem_supply[a]);
                break;
            }
            int pb = par_s[a];
            bottleneck = std::min(bottleneck, flow[a][pb]);
            b = pb;
        }
        b = target;
        while (true) {
            int a = par_t[b];
            flow[a][b] += bottleneck;
            if (par_s[a] < 0) {
                rem_supply[a] -= bottleneck;
                break;
            }
            flow[a][par_s[a]] -= bottleneck;
            b = par_s[a];
        }
        rem_demand[target] -= bottleneck;
        remaining -= bottleneck;

        // Standard potential update, capping at the target distance so arcs
        // into the unreached region keep nonnegative reduced costs.
        double dcap = bd;
        for (int a = 0; a < p; ++a) pot_s[a] += std::min(ds[a], dcap);
        for (int bb = 0; bb < q; ++bb) pot_t[bb] += std::min(dt[bb], dcap);
    }

    double total = 0;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b)
            if (flow[a][b] > 1e-15) total += flow[a][b] * cost[a][b];
    if (plan) {
        plan->clear();
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < q; ++b)
                if (flow[a][b] > 1e-15) plan->emplace_back(a, b, flow[a][b]);
    }
    return total;
}

CouplingResult wasserstein1(const Hypergraph& h, const SparseMeasure& mu, const SparseMeasure& nu,
                            const TransportOptions& opts) {
    SparseMeasure a = mu, b = nu;
    if (opts.reduce) std::tie(a, b) = reduce_instance(mu, nu);

    CouplingResult res;
    if (a.support.empty()) {
        if (opts.want_plan) res.plan.emplace();
        return res;
    }

    int p = static_cast<int>(a.support.size());
    int q = static_cast<int>(b.support.size());
    std::vector<std::vector<int>> cost(p, std::vector<int>(q, -1));
    for (int s = 0; s < p; ++s) {
        int src = a.support[s];
        const DistanceMap* dm;
        DistanceMap local;
        if (opts.distance_cap == 3) {
            dm = &h.distances3(src);
        } else if (opts.distance_cap >= 0) {
            local = h.distances_from(src, opts.distance_cap);
            dm = &local;
        } else {
            dm = &h.distances_full(src);
        }
        for (int t = 0; t < q; ++t) {
            auto it = dm->find(b.support[t]);
            if (it != dm->end()) {
                cost[s][t] = it->second;
            } else if (opts.distance_cap >= 0) {
                // Walk measures of adjacent bases sit within one hop of them,
                // so every pair is within the cap; a miss means the caller
                // holds the wrong cap.
                throw NumericalError("distance cap violated for transport pair");
            }
        }
    }

    std::vector<std::tuple<int, int, double>> raw_plan;
    res.cost = solve_transport(a.mass, b.mass, cost, opts.want_plan ? &raw_plan : nullptr);
    if (opts.want_plan) {
        res.plan.emplace();
        for (auto [s, t, m] : raw_plan)
            res.plan->emplace_back(a.support[s], b.support[t], m);
    }
    return res;
}

double jump(const Hypergraph& h, const SparseMeasure& mu) {
    const auto& d = h.distances_full(mu.base_node);
    double total = 0;
    for (size_t k = 0; k < mu.support.size(); ++k) {
        auto it = d.find(mu.support[k]);
        if (it == d.end()) throw InfiniteCostError("measure support unreachable from its base");
        total += mu.mass[k] * it->second;
    }
    return total;
}

std::pair<SparseMeasure, double> wasserstein_barycenter(const Hypergraph& h,
                                                        const std::vector<SparseMeasure>& measures,
                                                        BarycenterSupport support_mode) {
    if (measures.size() < 2) throw SpecError("barycenter needs at least two measures");
    int n_meas = static_cast<int>(measures.size());

    std::set<int> cand;
    if (support_mode == BarycenterSupport::TwoHop) {
        for (const auto& m : measures)
            for (const auto& [node, _] : h.distances_from(m.base_node, 2)) cand.insert(node);
    } else {
        for (int v = 0; v < h.node_count(); ++v) cand.insert(v);
    }

    // A candidate must reach every support node of every measure.
    std::vector<int> support;
    std::vector<std::vector<std::vector<int>>> dist(n_meas);  // [i][s][k]
    for (int s : cand) {
        const auto& dm = h.distances_full(s);
        bool ok = true;
        std::vector<std::vector<int>> per_meas(n_meas);
        for (int i = 0; i < n_meas && ok; ++i) {
            per_meas[i].reserve(measures[i].support.size());
            for (int k : measures[i].support) {
                auto it = dm.find(k);
                if (it == dm.end()) {
                    ok = false;
                    break;
                }
                per_meas[i].push_back(it->second);
            }
        }
        if (!ok) continue;
        for (int i = 0; i < n_meas; ++i) dist[i].push_back(std::move(per_meas[i]));
        support.push_back(s);
    }
    int ns = static_cast<int>(support.size());
    if (ns == 0) throw InfiniteCostError("no barycenter support can reach all measures");

    // Variables: mubar(s) for s in support, then T_i(s,k) blocks.
    std::vector<int> block_offset(n_meas);
    int nvars = ns;
    for (int i = 0; i < n_meas; ++i) {
        block_offset[i] = nvars;
        nvars += ns * static_cast<int>(measures[i].support.size());
    }
    auto tvar = [&](int i, int s, int k) {
        return block_offset[i] + s * static_cast<int>(measures[i].support.size()) + k;
    };

    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    // Row marginals tie each transport block to mubar.
    for (int i = 0; i < n_meas; ++i) {
        int nk = static_cast<int>(measures[i].support.size());
        for (int s = 0; s < ns; ++s) {
            std::vector<double> row(nvars, 0.0);
            row[s] = -1.0;
            for (int k = 0; k < nk; ++k) row[tvar(i, s, k)] = 1.0;
            A.push_back(std::move(row));
            rhs.push_back(0.0);
        }
    }
    // Column marginals reproduce each input measure.
    for (int i = 0; i < n_meas; ++i) {
        int nk = static_cast<int>(measures[i].support.size());
        for (int k = 0; k < nk; ++k) {
            std::vector<double> row(nvars, 0.0);
            for (int s = 0; s < ns; ++s) row[tvar(i, s, k)] = 1.0;
            A.push_back(std::move(row));
            rhs.push_back(measures[i].mass[k]);
        }
    }
    std::vector<double> c(nvars, 0.0);
    for (int i = 0; i < n_meas; ++i) {
        int nk = static_cast<int>(measures[i].support.size());
        for (int s = 0; s < ns; ++s)
            for (int k = 0; k < nk; ++k) c[tvar(i, s, k)] = dist[i][s][k] / double(n_meas);
    }

    auto lp = solve_equality_lp(A, rhs, c);
    if (!lp.feasible) throw InfiniteCostError("barycenter LP infeasible");

    SparseMeasure bary;
    bary.base_node = measures[0].base_node;
    for (int s = 0; s < ns; ++s)
        if (lp.x[s] > 1e-12) {
            bary.support.push_back(support[s]);
            bary.mass.push_back(lp.x[s]);
        }
    return {std::move(bary), lp.objective};
}

double w1_empirical_1d(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty()) throw EmptyFeatureError("empty sample set in w1_empirical_1d");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    size_t i = 0, j = 0;
    double t = 0.0, total = 0.0;
    double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
    while (t < 1.0 - 1e-15) {
        double next_x = (i + 1) / nx;
        double next_y = (j + 1) / ny;
        double tn = std::min(next_x, next_y);
        total += (tn - t) * std::abs(xs[i] - ys[j]);
        if (next_x <= tn + 1e-15 && i + 1 < xs.size()) ++i;
        if (next_y <= tn + 1e-15 && j + 1 < ys.size()) ++j;
        t = tn;
    }
    return total;
}

}  // namespace orchid
