#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "orchid/curvature.hpp"
#include "orchid/generators.hpp"
#include "oracles.hpp"

using namespace orchid;

namespace {

CurvatureConfig cfg(MeasureKind k, Aggregator a, double alpha) {
    CurvatureConfig c;
    c.measure_kind = k;
    c.aggregator = a;
    c.alpha = alpha;
    return c;
}

const std::vector<MeasureKind> kKinds{MeasureKind::EqualNodes, MeasureKind::EqualEdges,
                                      MeasureKind::WeightedEdges};
const std::vector<Aggregator> kAggs{Aggregator::Mean, Aggregator::Barycenter, Aggregator::Max};

// Dual of K4: nodes are the six K4 edges, hyperedges its four triangles.
// 3-uniform, 2-regular, and every adjacent pair co-occurs in exactly one edge.
Hypergraph dual_k4() { return Hypergraph(6, {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}}); }

}  // namespace

TEST_CASE("triangle: directional, node, and edge curvature all equal 1/2") {
    Hypergraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    for (auto kind : kKinds) {
        for (auto agg : kAggs) {
            CurvatureEngine eng(k3, cfg(kind, agg, 0.0));
            CHECK(eng.directional(0, 1) == doctest::Approx(0.5));
            for (int e = 0; e < 3; ++e)
                CHECK(*eng.edge_curvature(e) == doctest::Approx(0.5));
            for (int i = 0; i < 3; ++i) {
                CHECK(*eng.node_curvature_edges(i) == doctest::Approx(0.5));
                CHECK(*eng.node_curvature_neighborhood(i) == doctest::Approx(0.5));
            }
        }
    }
}

TEST_CASE("path ends are flat toward the middle") {
    Hypergraph path(3, {{0, 1}, {1, 2}});
    CurvatureEngine eng(path, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CHECK(eng.directional(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("full laziness gives zero curvature everywhere") {
    // With alpha = 1 both measures are Diracs at distance d, so W1/d = 1.
    Hypergraph h(4, {{0, 1}, {1, 2}, {2, 3}});
    CurvatureEngine eng(h, cfg(MeasureKind::WeightedEdges, Aggregator::Max, 1.0));
    CHECK(eng.directional(0, 1) == doctest::Approx(0.0));
    CHECK(eng.directional(0, 3) == doctest::Approx(0.0));
    CHECK(*eng.edge_curvature(0) == doctest::Approx(0.0));
    CHECK(eng.subset_curvature({0, 2, 3}) == doctest::Approx(0.0));
}

TEST_CASE("cross-component queries raise infinite-cost errors") {
    Hypergraph h(4, {{0, 1}, {2, 3}});
    CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CHECK_THROWS_AS(eng.directional(0, 2), InfiniteCostError);
    CHECK_THROWS_AS(eng.subset_curvature({0, 1, 2}), InfiniteCostError);
}

TEST_CASE("subset curvature: an edge behaves exactly like edge curvature") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 10);
        for (auto agg : kAggs) {
            CurvatureEngine eng(h, cfg(MeasureKind::WeightedEdges, agg, 0.1));
            for (int e = 0; e < h.edge_count(); ++e) {
                if (h.edge(e).size() < 2) continue;
                CHECK(eng.subset_curvature(h.edge(e)) ==
                      doctest::Approx(*eng.edge_curvature(e)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("subset of two one-neighbor path ends has identical walk measures") {
    // On the path 0-1-2 both end walks sit entirely on the middle node, so
    // their transport cost is zero and the subset {0,2} has curvature 1.
    Hypergraph path(3, {{0, 1}, {1, 2}});
    CurvatureEngine eng(path, cfg(MeasureKind::EqualNodes, Aggregator::Max, 0.0));
    CHECK(eng.subset_curvature({0, 2}) == doctest::Approx(1.0));
}

TEST_CASE("singleton edges and isolated nodes yield nulls, not failures") {
    Hypergraph h(4, {{0, 1}, {2}});
    CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CHECK_FALSE(eng.edge_curvature(1).has_value());
    CHECK_FALSE(eng.node_curvature_edges(2).has_value());
    CHECK_FALSE(eng.node_curvature_neighborhood(3).has_value());
    auto res = eng.all_curvatures();
    CHECK_FALSE(res.edge_curvatures[1].has_value());
    CHECK_FALSE(res.node_edges[2].has_value());
    CHECK_FALSE(res.node_neighborhood[2].has_value());
    CHECK(res.node_edges[0].has_value());
}

TEST_CASE("per-node edge average: strict mode divides by the full degree") {
    Hypergraph h(3, {{0, 1, 2}, {0}});
    CurvatureEngine loose(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CHECK(*loose.node_curvature_edges(0) == doctest::Approx(0.5));
    auto strict_cfg = cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0);
    strict_cfg.strict_degree_denominator = true;
    CurvatureEngine strict(h, strict_cfg);
    CHECK(*strict.node_curvature_edges(0) == doctest::Approx(0.25));
}

TEST_CASE("uniform, regular, 1-cooccurrent fixture: all walk kinds coincide") {
    auto h = dual_k4();
    auto p = h.structural_profile();
    CHECK(p.uniform_r == 3);
    CHECK(p.regular_k == 2);
    CHECK(p.cooccurrent_c == 1);
    for (int i = 0; i < h.node_count(); ++i) {
        auto en = build_measure(h, i, MeasureKind::EqualNodes, 0.2);
        auto ee = build_measure(h, i, MeasureKind::EqualEdges, 0.2);
        auto we = build_measure(h, i, MeasureKind::WeightedEdges, 0.2);
        REQUIRE(en.support == ee.support);
        REQUIRE(en.support == we.support);
        for (size_t k = 0; k < en.support.size(); ++k) {
            CHECK(en.mass[k] == doctest::Approx(ee.mass[k]).epsilon(1e-12));
            CHECK(en.mass[k] == doctest::Approx(we.mass[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("on simple graphs every configuration collapses to graph curvature") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        auto h = oracle::random_connected_graph(rng, 16);
        std::vector<std::pair<int, int>> gedges;
        for (int e = 0; e < h.edge_count(); ++e) gedges.push_back({h.edge(e)[0], h.edge(e)[1]});
        oracle::GraphOrc ref(h.node_count(), gedges);

        std::vector<CurvatureResult> results;
        for (auto kind : kKinds)
            for (auto agg : kAggs) {
                CurvatureEngine eng(h, cfg(kind, agg, 0.1));
                results.push_back(eng.all_curvatures());
            }
        for (size_t r = 1; r < results.size(); ++r) {
            REQUIRE(results[r].directional.size() == results[0].directional.size());
            for (size_t d = 0; d < results[r].directional.size(); ++d)
                CHECK(std::get<2>(results[r].directional[d]) ==
                      doctest::Approx(std::get<2>(results[0].directional[d])).epsilon(1e-9));
            for (int e = 0; e < h.edge_count(); ++e)
                CHECK(*results[r].edge_curvatures[e] ==
                      doctest::Approx(*results[0].edge_curvatures[e]).epsilon(1e-9));
        }
        for (const auto& [i, j, v] : results[0].directional)
            CHECK(v == doctest::Approx(ref.directional(i, j, 0.1)).epsilon(1e-9));
    }
}

TEST_CASE("uniform-neighbor curvature equals graph curvature on the clique expansion") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 12);
        auto g = h.clique_expansion();
        oracle::GraphOrc ref(g.node_count, g.edges);
        CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
        auto res = eng.all_curvatures();
        for (const auto& [i, j, v] : res.directional)
            CHECK(v == doctest::Approx(ref.directional(i, j, 0.0)).epsilon(1e-9));
    }
}

TEST_CASE("max aggregation never exceeds mean or barycenter aggregation") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 12; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 10);
        for (auto kind : kKinds) {
            CurvatureEngine mean_eng(h, cfg(kind, Aggregator::Mean, 0.1));
            CurvatureEngine bary_eng(h, cfg(kind, Aggregator::Barycenter, 0.1));
            CurvatureEngine max_eng(h, cfg(kind, Aggregator::Max, 0.1));
            for (int e = 0; e < h.edge_count(); ++e) {
                if (h.edge(e).size() < 2) continue;
                double km = *max_eng.edge_curvature(e);
                CHECK(km <= *mean_eng.edge_curvature(e) + 1e-9);
                CHECK(km <= *bary_eng.edge_curvature(e) + 1e-9);
            }
        }
    }
}

TEST_CASE("barycenter curvature agrees between 2-hop and full candidate support") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 10);
        auto full_cfg = cfg(MeasureKind::WeightedEdges, Aggregator::Barycenter, 0.1);
        full_cfg.barycenter_support = BarycenterSupport::Full;
        CurvatureEngine two_hop(h, cfg(MeasureKind::WeightedEdges, Aggregator::Barycenter, 0.1));
        CurvatureEngine full(h, full_cfg);
        for (int e = 0; e < h.edge_count(); ++e) {
            if (h.edge(e).size() < 2) continue;
            CHECK(*two_hop.edge_curvature(e) ==
                  doctest::Approx(*full.edge_curvature(e)).epsilon(1e-8));
        }
    }
}

TEST_CASE("edge curvature bounds sandwich the exact value") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 12);
        for (auto agg : {Aggregator::Mean, Aggregator::Max}) {
            CurvatureEngine eng(h, cfg(MeasureKind::EqualEdges, agg, 0.1));
            for (int e = 0; e < h.edge_count(); ++e) {
                if (h.edge(e).size() < 2) continue;
                auto [lo, hi] = eng.curvature_bounds(e);
                double k = *eng.edge_curvature(e);
                CHECK(lo <= k + 1e-9);
                CHECK(k <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("bounds collapse to the exact curvature on diameter-1 hypergraphs") {
    auto h = make_hyperclique(6, 3);
    for (auto agg : {Aggregator::Mean, Aggregator::Max}) {
        CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, agg, 0.0));
        auto [lo, hi] = eng.curvature_bounds(0);
        CHECK(lo == doctest::Approx(hi).epsilon(1e-12));
        CHECK(lo == doctest::Approx(*eng.edge_curvature(0)).epsilon(1e-9));
    }
}

TEST_CASE("bounds refuse barycenter aggregation and disconnected inputs") {
    Hypergraph h(4, {{0, 1}, {2, 3}});
    CurvatureEngine bary(h, cfg(MeasureKind::EqualNodes, Aggregator::Barycenter, 0.0));
    CHECK_THROWS_AS(bary.curvature_bounds(0), UnsupportedError);
    CurvatureEngine mean_eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CHECK_THROWS_AS(mean_eng.curvature_bounds(0), UnsupportedError);
}

TEST_CASE("laziness concentrates curvature by the exact clique closed form") {
    // On the complete r-set hypergraph all distances are 1, so transport cost
    // equals total variation and the pairwise cost is |alpha - (1-alpha)/(n-1)|.
    int n = 6;
    auto h = make_hyperclique(n, 3);
    for (double alpha : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Mean, alpha));
        double expected = 1.0 - std::abs(alpha - (1.0 - alpha) / (n - 1));
        CHECK(*eng.edge_curvature(0) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("curvature values never exceed 1") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = oracle::random_connected_hypergraph(rng, 12);
        CurvatureEngine eng(h, cfg(MeasureKind::WeightedEdges, Aggregator::Mean, 0.2));
        auto res = eng.all_curvatures();
        for (const auto& v : res.edge_curvatures)
            if (v) CHECK(*v <= 1.0 + 1e-12);
        for (const auto& [i, j, v] : res.directional) CHECK(v <= 1.0 + 1e-12);
        for (const auto& v : res.node_neighborhood)
            if (v) CHECK(*v <= 1.0 + 1e-12);
    }
}

TEST_CASE("batch results are identical across thread counts") {
    std::mt19937_64 rng(61);
    auto h = oracle::random_connected_hypergraph(rng, 16);
    CurvatureEngine a(h, cfg(MeasureKind::WeightedEdges, Aggregator::Mean, 0.1));
    CurvatureEngine b(h, cfg(MeasureKind::WeightedEdges, Aggregator::Mean, 0.1));
    auto ra = a.all_curvatures({}, 1);
    auto rb = b.all_curvatures({}, 4);
    REQUIRE(ra.directional.size() == rb.directional.size());
    for (size_t i = 0; i < ra.directional.size(); ++i)
        CHECK(std::get<2>(ra.directional[i]) == std::get<2>(rb.directional[i]));
    for (int e = 0; e < h.edge_count(); ++e)
        CHECK(ra.edge_curvatures[e] == rb.edge_curvatures[e]);
}

TEST_CASE("empty selection produces a metadata-only result") {
    Hypergraph k3(3, {{0, 1, 2}});
    CurvatureEngine eng(k3, cfg(MeasureKind::EqualNodes, Aggregator::Mean, 0.0));
    CurvatureSelection none;
    none.edges = none.directional = none.node_edges = none.node_neighborhood = false;
    auto res = eng.all_curvatures(none);
    CHECK(res.edge_curvatures.empty());
    CHECK(res.directional.empty());
    CHECK(res.node_edges.empty());
    CHECK(res.config.alpha == 0.0);
}

TEST_CASE("result JSON exposes the contracted field names") {
    Hypergraph h = Hypergraph::parse("a b\nc\n");
    CurvatureEngine eng(h, cfg(MeasureKind::WeightedEdges, Aggregator::Mean, 0.1));
    auto res = eng.all_curvatures();
    auto j = nlohmann::json::parse(curvature_result_to_json(res, h));
    CHECK(j["config"]["measure"] == "we");
    CHECK(j["config"]["agg"] == "mean");
    CHECK(j["config"]["alpha"] == doctest::Approx(0.1));
    REQUIRE(j["edge_curvature"].is_array());
    CHECK(j["edge_curvature"].size() == 2);
    CHECK(j["edge_curvature"][1].is_null());
    REQUIRE(j["directional"].is_array());
    CHECK(j["directional"][0].size() == 3);
    CHECK(j["node_curvature_edges"].is_object());
    CHECK(j["node_curvature_edges"]["c"].is_null());
    CHECK(j["node_curvature_neighborhood"]["a"].is_number());
}

TEST_CASE("positive curvature bounds subset extent via jump distances") {
    auto h = make_hyperclique(6, 3);
    std::mt19937_64 rng(67);
    for (double alpha : {0.0, 0.1, 0.3}) {
        CurvatureEngine eng(h, cfg(MeasureKind::EqualNodes, Aggregator::Max, alpha));
        std::uniform_int_distribution<int> vd(0, 5);
        for (int trial = 0; trial < 20; ++trial) {
            std::set<int> s{vd(rng), vd(rng), vd(rng)};
            if (s.size() < 2) continue;
            std::vector<int> nodes(s.begin(), s.end());
            double ks = eng.subset_curvature(nodes);
            if (ks <= 0) continue;
            // the diameter-realizing pair here is any distinct pair (all at distance 1)
            double ji = jump(h, eng.measure(nodes[0]));
            double jj = jump(h, eng.measure(nodes[1]));
            CHECK(1.0 <= (ji + jj) / ks + 1e-9);
        }
    }
}
