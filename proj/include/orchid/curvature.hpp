#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "orchid/hypergraph.hpp"
#include "orchid/measures.hpp"
#include "orchid/transport.hpp"

namespace orchid {

enum class Aggregator { Mean, Barycenter, Max };

Aggregator aggregator_from_string(const std::string& s);
std::string to_string(Aggregator a);

struct CurvatureConfig {
    MeasureKind measure_kind = MeasureKind::WeightedEdges;
    Aggregator aggregator = Aggregator::Mean;
    double alpha = 0.0;
    /// When true, the per-node edge average divides by the full degree
    /// (counting singleton incident edges) instead of only the edges that
    /// carry a defined curvature.
    bool strict_degree_denominator = false;
    BarycenterSupport barycenter_support = BarycenterSupport::TwoHop;
};

struct CurvatureSelection {
    bool edges = true;
    bool directional = true;
    bool node_edges = true;
    bool node_neighborhood = true;
};

struct CurvatureResult {
    CurvatureConfig config;
    std::vector<std::optional<double>> edge_curvatures;           // null for singleton edges
    std::vector<std::tuple<int, int, double>> directional;        // (i, j, kappa), i < j
    std::vector<std::optional<double>> node_edges;                // null for isolated nodes
    std::vector<std::optional<double>> node_neighborhood;         // null for isolated nodes
};

/// Computes every curvature notion for one hypergraph under one configuration.
/// Walk measures and pairwise W1 solves are memoized across queries, and the
/// memo tables are safe to share across threads.
class CurvatureEngine {
public:
    CurvatureEngine(const Hypergraph& h, CurvatureConfig cfg);

    const CurvatureConfig& config() const { return cfg_; }
    const Hypergraph& hypergraph() const { return h_; }

    /// Walk measure of node i (throws IsolatedNodeError for isolated i, alpha < 1).
    const SparseMeasure& measure(int i);

    /// Memoized W1 between the walk measures of i and j.
    double pair_w1(int i, int j);

    /// 1 - W1(mu_i, mu_j) / d(i, j); requires i != j in one component.
    double directional(int i, int j);

    /// Aggregated edge curvature; null for singleton edges.
    std::optional<double> edge_curvature(int e);

    /// Mean curvature of the node's non-singleton incident edges (null if none).
    std::optional<double> node_curvature_edges(int i);

    /// Mean directional curvature toward the node's neighbors (null if isolated).
    std::optional<double> node_curvature_neighborhood(int i);

    /// 1 - Agg(s) / max-pairwise-distance(s) for a node set with |s| >= 2.
    double subset_curvature(const std::vector<int>& s);

    /// Closed-form sandwich for the edge curvature from total-variation
    /// distances and the extreme metric values. Mean and Max only; requires a
    /// connected hypergraph for the diameter factor.
    std::pair<double, double> curvature_bounds(int e);

    /// Batch driver: computes the selected families for the whole hypergraph
    /// with deterministic, index-ordered output.
    CurvatureResult all_curvatures(const CurvatureSelection& sel = {}, int threads = 1);

private:
    double w1_uncached(int i, int j);
    int diameter();

    const Hypergraph& h_;
    CurvatureConfig cfg_;
    std::mutex mutex_;
    std::vector<std::optional<std::optional<SparseMeasure>>> measures_;  // outer: computed yet?
    std::unordered_map<long long, double> w1_memo_;
    std::optional<int> diameter_;
};

std::string curvature_result_to_json(const CurvatureResult& res, const Hypergraph& h,
                                     int indent = -1);

}  // namespace orchid
