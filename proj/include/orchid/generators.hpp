#pragma once

#include <cstdint>
#include <vector>

#include "orchid/hypergraph.hpp"

namespace orchid {

/// Configuration-model hypergraph: node stubs (one per unit of degree) are
/// randomly paired with edge slots (one per unit of cardinality); duplicate
/// (node, edge) incidences are discarded, and edges left empty are dropped.
/// Requires sum(degree_seq) == sum(card_seq).
Hypergraph gen_configuration(const std::vector<int>& degree_seq, const std::vector<int>& card_seq,
                             uint64_t seed);

/// Erdos-Renyi hypergraph: each of the n*m incidence cells is filled
/// independently with probability p; empty edges are dropped.
Hypergraph gen_erdos_renyi(int n, int m, double p, uint64_t seed);

struct HsbmResult {
    Hypergraph hypergraph;
    std::vector<int> node_community;  // per node
    std::vector<int> edge_community;  // per retained edge
};

/// Stochastic block model: cell (i, e) is filled with probability
/// affinity[community(i)][community(e)]; empty edges are dropped and the
/// community assignments are returned alongside the hypergraph.
HsbmResult gen_hsbm(const std::vector<int>& node_comm_sizes,
                    const std::vector<int>& edge_comm_sizes,
                    const std::vector<std::vector<double>>& affinity, uint64_t seed);

/// All r-subsets of n nodes. Requires 2 <= r <= n.
Hypergraph make_hyperclique(int n, int r);

/// Windows of r consecutive nodes on a cycle of cycle_len nodes (r-uniform,
/// r-regular, boundary-free). Requires cycle_len > 2r, r >= 2.
Hypergraph make_hypergrid(int cycle_len, int r);

/// Rooted r-uniform k-regular 1-intersecting tree truncated after `depth`
/// expansion levels; the central (root) edge has index 0. Requires r >= 2,
/// k >= 1, depth >= 3 (so the root edge's three-hop neighborhood matches the
/// infinite construction).
Hypergraph make_hypertree(int r, int k, int depth);

/// SplitMix64 mixing step, used to derive independent per-edge RNG substreams
/// from one user seed.
uint64_t splitmix64(uint64_t x);

}  // namespace orchid
