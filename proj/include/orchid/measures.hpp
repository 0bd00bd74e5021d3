#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orchid/hypergraph.hpp"

namespace orchid {

/// The three one-step lazy random walks: uniform over neighbors (EN),
/// uniform edge then uniform node (EE), cardinality-weighted edge then
/// uniform node (WE).
enum class MeasureKind { EqualNodes, EqualEdges, WeightedEdges };

MeasureKind measure_kind_from_string(const std::string& s);
std::string to_string(MeasureKind k);

/// Finitely supported probability measure attached to a node.
struct SparseMeasure {
    int base_node = -1;
    std::vector<int> support;   // sorted, distinct
    std::vector<double> mass;   // same length, nonnegative, sums to 1

    double total() const;
    double at(int node) const;  // 0 if node not in support
};

/// One step of the alpha-lazy walk of the given kind from node i.
/// Throws IsolatedNodeError if i has no neighbors and alpha < 1.
SparseMeasure build_measure(const Hypergraph& h, int i, MeasureKind kind, double alpha);

/// One measure per node; isolated nodes yield nullopt instead of failing.
std::vector<std::optional<SparseMeasure>> measure_matrix(const Hypergraph& h, MeasureKind kind,
                                                         double alpha);

std::string measure_to_json(const SparseMeasure& m);

}  // namespace orchid
