#include <doctest.h>

#include <random>

#include "orchid/measures.hpp"
#include "oracles.hpp"

using orchid::build_measure;
using orchid::Hypergraph;
using orchid::MeasureKind;

namespace {

// Dense reference construction straight from the incidence structure.
std::vector<double> dense_measure(const Hypergraph& h, int i, MeasureKind kind, double alpha) {
    int n = h.node_count();
    std::vector<double> mu(n, 0.0);
    mu[i] += alpha;
    double move = 1.0 - alpha;
    if (move == 0.0) return mu;
    switch (kind) {
        case MeasureKind::EqualNodes: {
            const auto& nb = h.node_neighborhood(i);
            for (int j : nb) mu[j] += move / nb.size();
            break;
        }
        case MeasureKind::EqualEdges: {
            std::vector<int> wide;
            for (int e : h.incident_edges(i))
                if (h.edge(e).size() >= 2) wide.push_back(e);
            for (int e : wide)
                for (int j : h.edge(e))
                    if (j != i) mu[j] += move / (wide.size() * (h.edge(e).size() - 1.0));
            break;
        }
        case MeasureKind::WeightedEdges: {
            double denom = 0;
            for (int e : h.incident_edges(i)) denom += h.edge(e).size() - 1.0;
            for (int e : h.incident_edges(i))
                for (int j : h.edge(e))
                    if (j != i) mu[j] += move / denom;
            break;
        }
    }
    return mu;
}

}  // namespace

TEST_CASE("kind names round-trip") {
    for (auto k : {MeasureKind::EqualNodes, MeasureKind::EqualEdges, MeasureKind::WeightedEdges})
        CHECK(orchid::measure_kind_from_string(orchid::to_string(k)) == k);
    CHECK_THROWS_AS(orchid::measure_kind_from_string("nope"), orchid::SpecError);
}

TEST_CASE("uniform-neighbor walk on a triangle splits evenly") {
    Hypergraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    auto m = build_measure(k3, 0, MeasureKind::EqualNodes, 0.0);
    CHECK(m.support == std::vector<int>{1, 2});
    CHECK(m.at(1) == doctest::Approx(0.5));
    CHECK(m.at(2) == doctest::Approx(0.5));
    CHECK(m.total() == doctest::Approx(1.0));
}

TEST_CASE("edge-uniform walk skips singleton edges in its denominator") {
    // node 0 in edges {0}, {0,1}, {0,2,3}
    Hypergraph h(4, {{0}, {0, 1}, {0, 2, 3}});
    auto m = build_measure(h, 0, MeasureKind::EqualEdges, 0.0);
    CHECK(m.at(1) == doctest::Approx(0.5));
    CHECK(m.at(2) == doctest::Approx(0.25));
    CHECK(m.at(3) == doctest::Approx(0.25));
    CHECK(m.total() == doctest::Approx(1.0));
}

TEST_CASE("cardinality-weighted walk distributes by co-member count") {
    Hypergraph h(4, {{0}, {0, 1}, {0, 2, 3}});
    auto m = build_measure(h, 0, MeasureKind::WeightedEdges, 0.0);
    // denominators: (1-1) + (2-1) + (3-1) = 3
    CHECK(m.at(1) == doctest::Approx(1.0 / 3));
    CHECK(m.at(2) == doctest::Approx(1.0 / 3));
    CHECK(m.at(3) == doctest::Approx(1.0 / 3));
}

TEST_CASE("laziness keeps alpha at the base node") {
    Hypergraph k3(3, {{0, 1, 2}});
    for (auto kind :
         {MeasureKind::EqualNodes, MeasureKind::EqualEdges, MeasureKind::WeightedEdges}) {
        auto m = build_measure(k3, 0, kind, 0.3);
        CHECK(m.at(0) == doctest::Approx(0.3));
        CHECK(m.at(1) == doctest::Approx(0.35));
        CHECK(m.total() == doctest::Approx(1.0));
    }
}

TEST_CASE("alpha = 1 collapses to the Dirac measure, even for isolated nodes") {
    Hypergraph h(2, {{0}, {1}});
    auto m = build_measure(h, 0, MeasureKind::EqualNodes, 1.0);
    CHECK(m.support == std::vector<int>{0});
    CHECK(m.at(0) == doctest::Approx(1.0));
}

TEST_CASE("isolated nodes reject walk measures below full laziness") {
    Hypergraph h(2, {{0}, {1}});
    CHECK_THROWS_AS(build_measure(h, 0, MeasureKind::EqualNodes, 0.5),
                    orchid::IsolatedNodeError);
    auto rows = orchid::measure_matrix(h, MeasureKind::EqualNodes, 0.0);
    CHECK_FALSE(rows[0].has_value());
    CHECK_FALSE(rows[1].has_value());
}

TEST_CASE("alpha outside [0,1] is rejected") {
    Hypergraph k3(3, {{0, 1, 2}});
    CHECK_THROWS_AS(build_measure(k3, 0, MeasureKind::EqualNodes, -0.1), orchid::SpecError);
    CHECK_THROWS_AS(build_measure(k3, 0, MeasureKind::EqualNodes, 1.1), orchid::SpecError);
}

TEST_CASE("all three walks match a dense reference on random hypergraphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto h = oracle::random_hypergraph(rng);
        std::uniform_real_distribution<double> ad(0.0, 1.0);
        double alpha = ad(rng);
        for (auto kind :
             {MeasureKind::EqualNodes, MeasureKind::EqualEdges, MeasureKind::WeightedEdges}) {
            for (int i = 0; i < h.node_count(); ++i) {
                if (h.node_neighborhood(i).empty()) continue;
                auto m = build_measure(h, i, kind, alpha);
                auto ref = dense_measure(h, i, kind, alpha);
                CHECK(m.total() == doctest::Approx(1.0).epsilon(1e-12));
                for (int k = 0; k < h.node_count(); ++k)
                    CHECK(m.at(k) == doctest::Approx(ref[k]).epsilon(1e-12));
                // support is sorted and confined to the closed neighborhood
                for (size_t s = 1; s < m.support.size(); ++s)
                    CHECK(m.support[s - 1] < m.support[s]);
                for (int s : m.support)
                    CHECK((s == i || h.adjacent(i, s)));
            }
        }
    }
}
