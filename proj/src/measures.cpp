#include "orchid/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace orchid {

MeasureKind measure_kind_from_string(const std::string& s) {
    if (s == "en") return MeasureKind::EqualNodes;
    if (s == "ee") return MeasureKind::EqualEdges;
    if (s == "we") return MeasureKind::WeightedEdges;
    throw SpecError("unknown measure kind '" + s + "' (expected en|ee|we)");
}

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::EqualNodes: return "en";
        case MeasureKind::EqualEdges: return "ee";
        case MeasureKind::WeightedEdges: return "we";
    }
    return "?";
}

double SparseMeasure::total() const {
    double s = 0;
    for (double m : mass) s += m;
    return s;
}

double SparseMeasure::at(int node) const {
    auto it = std::lower_bound(support.begin(), support.end(), node);
    if (it == support.end() || *it != node) return 0.0;
    return mass[it - support.begin()];
}

SparseMeasure build_measure(const Hypergraph& h, int i, MeasureKind kind, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw SpecError("alpha must lie in [0,1]");
    const auto& nbrs = h.node_neighborhood(i);
    if (nbrs.empty() && alpha < 1.0) throw IsolatedNodeError(i);

    // node -> moving mass, accumulated per the chosen walk
    std::map<int, double> moving;
    double lazy = alpha;
    double move = 1.0 - alpha;

    if (move > 0.0) {
        switch (kind) {
            case MeasureKind::EqualNodes: {
                double w = move / static_cast<double>(nbrs.size());
                for (int j : nbrs) moving[j] += w;
                break;
            }
            case MeasureKind::EqualEdges: {
                int singletons = 0;
                for (int e : h.incident_edges(i))
                    if (h.edge(e).size() == 1) ++singletons;
                int denom = h.degree(i) - singletons;
                // denom > 0 here: i has a neighbor, so some incident edge has |e| >= 2
                for (int e : h.incident_edges(i)) {
                    const auto& ed = h.edge(e);
                    if (ed.size() < 2) continue;
                    double w = move / (denom * static_cast<double>(ed.size() - 1));
                    for (int j : ed)
                        if (j != i) moving[j] += w;
                }
                break;
            }
            case MeasureKind::WeightedEdges: {
                long long denom = 0;
                for (int e : h.incident_edges(i)) denom += static_cast<long long>(h.edge(e).size()) - 1;
                for (int e : h.incident_edges(i)) {
                    const auto& ed = h.edge(e);
                    double w = move / static_cast<double>(denom);
                    for (int j : ed)
                        if (j != i) moving[j] += w;
                }
                break;
            }
        }
    }
    if (lazy > 0.0) moving[i] += lazy;

    SparseMeasure out;
    out.base_node = i;
    out.support.reserve(moving.size());
    out.mass.reserve(moving.size());
    for (const auto& [node, m] : moving) {
        out.support.push_back(node);
        out.mass.push_back(m);
    }
    return out;
}

std::vector<std::optional<SparseMeasure>> measure_matrix(const Hypergraph& h, MeasureKind kind,
                                                         double alpha) {
    std::vector<std::optional<SparseMeasure>> rows(h.node_count());
    for (int i = 0; i < h.node_count(); ++i) {
        try {
            rows[i] = build_measure(h, i, kind, alpha);
        } catch (const IsolatedNodeError&) {
            rows[i] = std::nullopt;
        }
    }
    return rows;
}

std::string measure_to_json(const SparseMeasure& m) {
    nlohmann::json j;
    j["node"] = m.base_node;
    j["support"] = m.support;
    j["mass"] = m.mass;
    return j.dump();
}

}  // namespace orchid
