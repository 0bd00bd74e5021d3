#include "orchid/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace orchid {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::mt19937_64 edge_stream(uint64_t seed, uint64_t edge_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(edge_index + 1)));
}

std::vector<std::vector<int>> drop_empty(std::vector<std::vector<int>> edges,
                                         std::vector<int>* kept = nullptr) {
    std::vector<std::vector<int>> out;
    out.reserve(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].empty()) continue;
        if (kept) kept->push_back(static_cast<int>(e));
        out.push_back(std::move(edges[e]));
    }
    return out;
}

}  // namespace

Hypergraph gen_configuration(const std::vector<int>& degree_seq, const std::vector<int>& card_seq,
                             uint64_t seed) {
    long long stubs = std::accumulate(degree_seq.begin(), degree_seq.end(), 0LL);
    long long slots = std::accumulate(card_seq.begin(), card_seq.end(), 0LL);
    if (stubs != slots)
        throw SpecError("configuration model: degree total must equal cardinality total");
    for (int d : degree_seq)
        if (d < 0) throw SpecError("configuration model: negative degree");
    for (int c : card_seq)
        if (c < 0) throw SpecError("configuration model: negative cardinality");

    std::vector<int> node_stubs;
    node_stubs.reserve(stubs);
    for (size_t i = 0; i < degree_seq.size(); ++i)
        node_stubs.insert(node_stubs.end(), degree_seq[i], static_cast<int>(i));

    std::mt19937_64 rng(splitmix64(seed));
    std::shuffle(node_stubs.begin(), node_stubs.end(), rng);

    std::vector<std::vector<int>> edges(card_seq.size());
    size_t pos = 0;
    for (size_t e = 0; e < card_seq.size(); ++e) {
        std::set<int> members;
        for (int s = 0; s < card_seq[e]; ++s) members.insert(node_stubs[pos++]);
        edges[e].assign(members.begin(), members.end());  // duplicates discarded by the set
    }
    return Hypergraph(static_cast<int>(degree_seq.size()), drop_empty(std::move(edges)));
}

Hypergraph gen_erdos_renyi(int n, int m, double p, uint64_t seed) {
    if (n < 1 || m < 1) throw SpecError("erdos-renyi model needs n >= 1 and m >= 1");
    if (p < 0.0 || p > 1.0) throw SpecError("erdos-renyi model needs p in [0,1]");

    std::vector<std::vector<int>> edges(m);
    for (int e = 0; e < m; ++e) {
        auto rng = edge_stream(seed, e);
        std::bernoulli_distribution coin(p);
        for (int i = 0; i < n; ++i)
            if (coin(rng)) edges[e].push_back(i);
    }
    return Hypergraph(n, drop_empty(std::move(edges)));
}

HsbmResult gen_hsbm(const std::vector<int>& node_comm_sizes, const std::vector<int>& edge_comm_sizes,
                    const std::vector<std::vector<double>>& affinity, uint64_t seed) {
    size_t nc = node_comm_sizes.size(), ec = edge_comm_sizes.size();
    if (affinity.size() != nc)
        throw SpecError("hsbm affinity matrix must have one row per node community");
    for (const auto& row : affinity) {
        if (row.size() != ec)
            throw SpecError("hsbm affinity matrix must have one column per edge community");
        for (double v : row)
            if (v < 0.0 || v > 1.0) throw SpecError("hsbm affinity entries must lie in [0,1]");
    }

    std::vector<int> node_comm;
    for (size_t c = 0; c < nc; ++c) {
        if (node_comm_sizes[c] < 0) throw SpecError("hsbm community sizes must be nonnegative");
        node_comm.insert(node_comm.end(), node_comm_sizes[c], static_cast<int>(c));
    }
    std::vector<int> edge_comm_all;
    for (size_t c = 0; c < ec; ++c) {
        if (edge_comm_sizes[c] < 0) throw SpecError("hsbm community sizes must be nonnegative");
        edge_comm_all.insert(edge_comm_all.end(), edge_comm_sizes[c], static_cast<int>(c));
    }
    int n = static_cast<int>(node_comm.size());
    int m = static_cast<int>(edge_comm_all.size());
    if (n < 1 || m < 1) throw SpecError("hsbm needs at least one node and one edge");

    std::vector<std::vector<int>> edges(m);
    for (int e = 0; e < m; ++e) {
        auto rng = edge_stream(seed, e);
        for (int i = 0; i < n; ++i) {
            std::bernoulli_distribution coin(affinity[node_comm[i]][edge_comm_all[e]]);
            if (coin(rng)) edges[e].push_back(i);
        }
    }
    std::vector<int> kept;
    auto nonempty = drop_empty(std::move(edges), &kept);
    HsbmResult res{Hypergraph(n, std::move(nonempty)), std::move(node_comm), {}};
    res.edge_community.reserve(kept.size());
    for (int e : kept) res.edge_community.push_back(edge_comm_all[e]);
    return res;
}

Hypergraph make_hyperclique(int n, int r) {
    if (r < 2 || r > n) throw SpecError("hyperclique needs 2 <= r <= n");
    std::vector<std::vector<int>> edges;
    std::vector<int> pick(r);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        edges.push_back(pick);
        int i = r - 1;
        while (i >= 0 && pick[i] == n - r + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    return Hypergraph(n, std::move(edges));
}

Hypergraph make_hypergrid(int cycle_len, int r) {
    if (r < 2) throw SpecError("hypergrid needs r >= 2");
    if (cycle_len <= 2 * r) throw SpecError("hypergrid needs cycle_len > 2r");
    std::vector<std::vector<int>> edges(cycle_len);
    for (int s = 0; s < cycle_len; ++s)
        for (int k = 0; k < r; ++k) edges[s].push_back((s + k) % cycle_len);
    return Hypergraph(cycle_len, std::move(edges));
}

Hypergraph make_hypertree(int r, int k, int depth) {
    if (r < 2) throw SpecError("hypertree needs r >= 2");
    if (k < 1) throw SpecError("hypertree needs k >= 1");
    if (depth < 3) throw SpecError("hypertree needs depth >= 3");

    std::vector<std::vector<int>> edges;
    int next_node = 0;
    std::vector<int> frontier;
    edges.emplace_back();  // central edge, index 0
    for (int i = 0; i < r; ++i) {
        edges[0].push_back(next_node);
        frontier.push_back(next_node++);
    }
    for (int level = 1; level <= depth; ++level) {
        std::vector<int> next_frontier;
        for (int node : frontier) {
            for (int b = 0; b < k - 1; ++b) {
                std::vector<int> e{node};
                for (int i = 1; i < r; ++i) {
                    e.push_back(next_node);
                    next_frontier.push_back(next_node++);
                }
                edges.push_back(std::move(e));
            }
        }
        frontier = std::move(next_frontier);
    }
    return Hypergraph(next_node, std::move(edges));
}

}  // namespace orchid
