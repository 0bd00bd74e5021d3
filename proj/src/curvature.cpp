#include "orchid/curvature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

namespace orchid {

Aggregator aggregator_from_string(const std::string& s) {
    if (s == "mean") return Aggregator::Mean;
    if (s == "barycenter") return Aggregator::Barycenter;
    if (s == "max") return Aggregator::Max;
    throw SpecError("unknown aggregator '" + s + "' (expected mean|barycenter|max)");
}

std::string to_string(Aggregator a) {
    switch (a) {
        case Aggregator::Mean: return "mean";
        case Aggregator::Barycenter: return "barycenter";
        case Aggregator::Max: return "max";
    }
    return "?";
}

namespace {

long long pair_key(int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<long long>(i) << 32 | static_cast<unsigned>(j);
}

/// L1 distance between two sparse measures over merged supports.
double l1_distance(const SparseMeasure& a, const SparseMeasure& b) {
    double total = 0;
    size_t i = 0, j = 0;
    while (i < a.support.size() || j < b.support.size()) {
        if (j == b.support.size() || (i < a.support.size() && a.support[i] < b.support[j])) {
            total += std::abs(a.mass[i]);
            ++i;
        } else if (i == a.support.size() || b.support[j] < a.support[i]) {
            total += std::abs(b.mass[j]);
            ++j;
        } else {
            total += std::abs(a.mass[i] - b.mass[j]);
            ++i;
            ++j;
        }
    }
    return total;
}

}  // namespace

CurvatureEngine::CurvatureEngine(const Hypergraph& h, CurvatureConfig cfg)
    : h_(h), cfg_(cfg), measures_(h.node_count()) {
    if (cfg_.alpha < 0.0 || cfg_.alpha > 1.0) throw SpecError("alpha must lie in [0,1]");
}

const SparseMeasure& CurvatureEngine::measure(int i) {
    std::unique_lock<std::mutex> lock(mutex_);
    if (!measures_[i]) {
        lock.unlock();
        std::optional<SparseMeasure> fresh;
        try {
            fresh = build_measure(h_, i, cfg_.measure_kind, cfg_.alpha);
        } catch (const IsolatedNodeError&) {
            fresh = std::nullopt;
        }
        lock.lock();
        if (!measures_[i]) measures_[i] = std::move(fresh);
    }
    if (!*measures_[i]) throw IsolatedNodeError(i);
    return **measures_[i];
}

double CurvatureEngine::w1_uncached(int i, int j) {
    const SparseMeasure& mi = measure(i);
    const SparseMeasure& mj = measure(j);
    TransportOptions opts;
    // Transport between walk measures of adjacent bases stays within three
    // hops of either base, so the truncated (memoized) BFS suffices there.
    opts.distance_cap = h_.adjacent(i, j) ? 3 : -1;
    return wasserstein1(h_, mi, mj, opts).cost;
}

double CurvatureEngine::pair_w1(int i, int j) {
    if (i == j) return 0.0;
    long long key = pair_key(i, j);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = w1_memo_.find(key);
        if (it != w1_memo_.end()) return it->second;
    }
    double v = w1_uncached(i, j);
    std::lock_guard<std::mutex> lock(mutex_);
    w1_memo_.emplace(key, v);
    return v;
}

double CurvatureEngine::directional(int i, int j) {
    if (i == j) throw SpecError("directional curvature needs two distinct nodes");
    int d = h_.distance(i, j);  // throws InfiniteCostError across components
    return 1.0 - pair_w1(i, j) / d;
}

std::optional<double> CurvatureEngine::edge_curvature(int e) {
    const auto& nodes = h_.edge(e);
    int sz = static_cast<int>(nodes.size());
    if (sz < 2) return std::nullopt;

    switch (cfg_.aggregator) {
        case Aggregator::Mean: {
            double sum = 0;
            int pairs = 0;
            for (int a = 0; a < sz; ++a)
                for (int b = a + 1; b < sz; ++b) {
                    sum += pair_w1(nodes[a], nodes[b]);
                    ++pairs;
                }
            return 1.0 - sum / pairs;
        }
        case Aggregator::Max: {
            double worst = 0;
            for (int a = 0; a < sz; ++a)
                for (int b = a + 1; b < sz; ++b)
                    worst = std::max(worst, pair_w1(nodes[a], nodes[b]));
            return 1.0 - worst;
        }
        case Aggregator::Barycenter: {
            std::vector<SparseMeasure> ms;
            ms.reserve(sz);
            for (int i : nodes) ms.push_back(measure(i));
            auto [bary, mean_dist] = wasserstein_barycenter(h_, ms, cfg_.barycenter_support);
            (void)bary;
            // mean_dist = (1/|e|) sum_i W1(mu_i, bar), and the curvature
            // normalizes the sum by |e| - 1.
            return 1.0 - mean_dist * sz / (sz - 1.0);
        }
    }
    return std::nullopt;
}

std::optional<double> CurvatureEngine::node_curvature_edges(int i) {
    double sum = 0;
    int defined = 0;
    for (int e : h_.incident_edges(i)) {
        auto k = edge_curvature(e);
        if (k) {
            sum += *k;
            ++defined;
        }
    }
    if (defined == 0) return std::nullopt;
    int denom = cfg_.strict_degree_denominator ? h_.degree(i) : defined;
    return sum / denom;
}

std::optional<double> CurvatureEngine::node_curvature_neighborhood(int i) {
    const auto& nbrs = h_.node_neighborhood(i);
    if (nbrs.empty()) return std::nullopt;
    double sum = 0;
    for (int j : nbrs) sum += 1.0 - pair_w1(i, j);  // adjacent, so d(i,j) = 1
    return sum / static_cast<double>(nbrs.size());
}

double CurvatureEngine::subset_curvature(const std::vector<int>& s) {
    std::set<int> uniq(s.begin(), s.end());
    std::vector<int> nodes(uniq.begin(), uniq.end());
    int sz = static_cast<int>(nodes.size());
    if (sz < 2) throw SpecError("subset curvature needs at least two distinct nodes");

    int extent = 0;
    for (int a = 0; a < sz; ++a)
        for (int b = a + 1; b < sz; ++b)
            extent = std::max(extent, h_.distance(nodes[a], nodes[b]));

    double agg = 0;
    switch (cfg_.aggregator) {
        case Aggregator::Mean: {
            double sum = 0;
            int pairs = 0;
            for (int a = 0; a < sz; ++a)
                for (int b = a + 1; b < sz; ++b) {
                    sum += pair_w1(nodes[a], nodes[b]);
                    ++pairs;
                }
            agg = sum / pairs;
            break;
        }
        case Aggregator::Max: {
            for (int a = 0; a < sz; ++a)
                for (int b = a + 1; b < sz; ++b)
                    agg = std::max(agg, pair_w1(nodes[a], nodes[b]));
            break;
        }
        case Aggregator::Barycenter: {
            std::vector<SparseMeasure> ms;
            ms.reserve(sz);
            for (int i : nodes) ms.push_back(measure(i));
            auto [bary, mean_dist] = wasserstein_barycenter(h_, ms, cfg_.barycenter_support);
            (void)bary;
            agg = mean_dist * sz / (sz - 1.0);
            break;
        }
    }
    return 1.0 - agg / extent;
}

int CurvatureEngine::diameter() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (diameter_) return *diameter_;
    }
    auto profile = h_.structural_profile(true);
    if (!profile.diameter)
        throw UnsupportedError("diameter unavailable: hypergraph is disconnected");
    std::lock_guard<std::mutex> lock(mutex_);
    diameter_ = *profile.diameter;
    return *diameter_;
}

std::pair<double, double> CurvatureEngine::curvature_bounds(int e) {
    if (cfg_.aggregator == Aggregator::Barycenter)
        throw UnsupportedError("curvature bounds are defined for mean and max aggregation only");
    const auto& nodes = h_.edge(e);
    int sz = static_cast<int>(nodes.size());
    if (sz < 2) throw SpecError("curvature bounds need an edge with at least two nodes");

    int diam = diameter();
    int d_min = 1;  // some edge has cardinality >= 2 here, so adjacent nodes exist

    // Aggregate total-variation distances (half the L1 norm of the difference).
    double agg_tv = 0;
    if (cfg_.aggregator == Aggregator::Mean) {
        double sum = 0;
        int pairs = 0;
        for (int a = 0; a < sz; ++a)
            for (int b = a + 1; b < sz; ++b) {
                sum += 0.5 * l1_distance(measure(nodes[a]), measure(nodes[b]));
                ++pairs;
            }
        agg_tv = sum / pairs;
    } else {
        for (int a = 0; a < sz; ++a)
            for (int b = a + 1; b < sz; ++b)
                agg_tv = std::max(agg_tv, 0.5 * l1_distance(measure(nodes[a]), measure(nodes[b])));
    }
    return {1.0 - diam * agg_tv, 1.0 - d_min * agg_tv};
}

CurvatureResult CurvatureEngine::all_curvatures(const CurvatureSelection& sel, int threads) {
    CurvatureResult res;
    res.config = cfg_;

    // Unique within-edge node pairs in lexicographic order.
    std::vector<std::pair<int, int>> pairs;
    if (sel.directional || sel.edges || sel.node_edges || sel.node_neighborhood) {
        std::set<std::pair<int, int>> uniq;
        for (int e = 0; e < h_.edge_count(); ++e) {
            const auto& nodes = h_.edge(e);
            for (size_t a = 0; a < nodes.size(); ++a)
                for (size_t b = a + 1; b < nodes.size(); ++b)
                    uniq.emplace(nodes[a], nodes[b]);
        }
        pairs.assign(uniq.begin(), uniq.end());
    }

    // Warm the W1 memo in parallel; everything downstream is cache hits.
    int nthreads = std::max(1, threads);
    if (nthreads > 1 && pairs.size() > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                size_t idx;
                while ((idx = next.fetch_add(1)) < pairs.size())
                    pair_w1(pairs[idx].first, pairs[idx].second);
            });
        for (auto& th : pool) th.join();
    } else {
        for (auto [i, j] : pairs) pair_w1(i, j);
    }

    if (sel.directional) {
        res.directional.reserve(pairs.size());
        for (auto [i, j] : pairs) res.directional.emplace_back(i, j, 1.0 - pair_w1(i, j));
    }
    if (sel.edges || sel.node_edges) {
        res.edge_curvatures.resize(h_.edge_count());
        if (nthreads > 1 && cfg_.aggregator == Aggregator::Barycenter) {
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            for (int t = 0; t < nthreads; ++t)
                pool.emplace_back([&] {
                    int e;
                    while ((e = next.fetch_add(1)) < h_.edge_count())
                        res.edge_curvatures[e] = edge_curvature(e);
                });
            for (auto& th : pool) th.join();
        } else {
            for (int e = 0; e < h_.edge_count(); ++e) res.edge_curvatures[e] = edge_curvature(e);
        }
    }
    if (sel.node_edges) {
        res.node_edges.resize(h_.node_count());
        for (int i = 0; i < h_.node_count(); ++i) {
            double sum = 0;
            int defined = 0;
            for (int e : h_.incident_edges(i))
                if (res.edge_curvatures[e]) {
                    sum += *res.edge_curvatures[e];
                    ++defined;
                }
            if (defined == 0) continue;
            int denom = cfg_.strict_degree_denominator ? h_.degree(i) : defined;
            res.node_edges[i] = sum / denom;
        }
        if (!sel.edges) res.edge_curvatures.clear();
    }
    if (sel.node_neighborhood) {
        res.node_neighborhood.resize(h_.node_count());
        for (int i = 0; i < h_.node_count(); ++i) res.node_neighborhood[i] = node_curvature_neighborhood(i);
    }
    return res;
}

std::string curvature_result_to_json(const CurvatureResult& res, const Hypergraph& h, int indent) {
    nlohmann::json j;
    j["config"] = {{"measure", to_string(res.config.measure_kind)},
                   {"agg", to_string(res.config.aggregator)},
                   {"alpha", res.config.alpha}};
    auto& ec = j["edge_curvature"] = nlohmann::json::array();
    for (const auto& v : res.edge_curvatures)
        ec.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    auto& dir = j["directional"] = nlohmann::json::array();
    for (const auto& [i, jn, v] : res.directional) dir.push_back({i, jn, v});
    auto& ne = j["node_curvature_edges"] = nlohmann::json::object();
    for (size_t i = 0; i < res.node_edges.size(); ++i)
        ne[h.label(static_cast<int>(i))] =
            res.node_edges[i] ? nlohmann::json(*res.node_edges[i]) : nlohmann::json(nullptr);
    auto& nn = j["node_curvature_neighborhood"] = nlohmann::json::object();
    for (size_t i = 0; i < res.node_neighborhood.size(); ++i)
        nn[h.label(static_cast<int>(i))] = res.node_neighborhood[i]
                                               ? nlohmann::json(*res.node_neighborhood[i])
                                               : nlohmann::json(nullptr);
    return j.dump(indent);
}

}  // namespace orchid
