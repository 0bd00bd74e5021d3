#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orchid/errors.hpp"

namespace orchid {

using DistanceMap = std::unordered_map<int, int>;

/// Plain graph produced by the clique/star expansions.
struct Graph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> weights;  // empty for unweighted graphs, cooccurrence counts otherwise

    std::vector<std::vector<int>> adjacency() const;
};

struct StructuralProfile {
    std::optional<int> uniform_r;
    std::optional<int> regular_k;
    std::optional<int> intersecting_s;
    std::optional<int> cooccurrent_c;
    std::optional<int> diameter;  // absent if disconnected or not requested
    std::optional<int> d_min;     // 1 whenever some edge has cardinality >= 2
    int component_count = 0;
};

/// Immutable sparse multi-hypergraph over dense node indices.
///
/// Edges are stored in input order as sorted index sets; identical edges may
/// repeat. All queries are read-only and safe to call concurrently; BFS
/// results are cached behind a mutex keyed by source node.
class Hypergraph {
public:
    Hypergraph(int node_count, std::vector<std::vector<int>> edges,
               std::vector<std::string> node_labels = {});

    // Movable (the BFS memo mutex is per-instance, not part of the value).
    Hypergraph(Hypergraph&& other) noexcept;
    Hypergraph& operator=(Hypergraph&& other) noexcept;
    Hypergraph(const Hypergraph& other);
    Hypergraph& operator=(const Hypergraph& other);

    /// Parses the edge-list text format: one edge per nonempty line,
    /// comma- or whitespace-separated node tokens, duplicates within a line
    /// dropped, labels mapped to indices in first-appearance order.
    static Hypergraph parse(const std::string& text);
    std::string serialize() const;

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int incidence_count() const { return incidence_count_; }

    const std::vector<int>& edge(int e) const { return edges_[e]; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    int degree(int i) const { return static_cast<int>(incident_[i].size()); }
    const std::vector<int>& incident_edges(int i) const { return incident_[i]; }
    /// Nodes adjacent to i, excluding i itself (sorted).
    const std::vector<int>& node_neighborhood(int i) const { return neighbors_[i]; }
    /// Edges sharing at least one node with e, excluding e itself (sorted).
    std::vector<int> edge_neighborhood(int e) const;

    bool adjacent(int i, int j) const;
    /// Number of edges containing both i and j.
    int cooccurrence(int i, int j) const;

    /// Breadth-first hop distances from i; nodes farther than cap (if >= 0)
    /// are omitted. Unreachable nodes are absent.
    DistanceMap distances_from(int i, int cap = -1) const;

    /// Memoized three-hop distances (sufficient for transport between the
    /// walk measures of adjacent nodes, whose supports sit within one hop).
    const DistanceMap& distances3(int i) const;
    /// Memoized full BFS from i.
    const DistanceMap& distances_full(int i) const;

    /// Distance between two nodes, throws InfiniteCostError if disconnected.
    int distance(int i, int j) const;

    Graph clique_expansion(bool weighted = false) const;
    Graph star_expansion() const;

    /// Treats a simple graph as its 2-uniform hypergraph.
    static Hypergraph from_graph(const Graph& g);

    std::vector<int> component_labels() const;
    StructuralProfile structural_profile(bool exact_diameter = false) const;

private:
    int node_count_ = 0;
    int incidence_count_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<int>> neighbors_;

    mutable std::mutex memo_mutex_;
    mutable std::unordered_map<int, DistanceMap> memo3_;
    mutable std::unordered_map<int, DistanceMap> memo_full_;
};

std::string profile_to_json(const Hypergraph& h, const StructuralProfile& p);

}  // namespace orchid
