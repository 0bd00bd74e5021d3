#include "orchid/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace orchid {

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(node_count);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
}

Hypergraph::Hypergraph(int node_count, std::vector<std::vector<int>> edges,
                       std::vector<std::string> node_labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(node_labels)) {
    if (labels_.empty()) {
        labels_.reserve(node_count_);
        for (int i = 0; i < node_count_; ++i) labels_.push_back("v" + std::to_string(i));
    }
    incident_.assign(node_count_, {});
    std::vector<std::set<int>> nbr(node_count_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        auto& ed = edges_[e];
        std::sort(ed.begin(), ed.end());
        if (ed.empty()) throw SpecError("empty hyperedge");
        if (std::adjacent_find(ed.begin(), ed.end()) != ed.end())
            throw SpecError("repeated node within a hyperedge");
        for (int i : ed) {
            if (i < 0 || i >= node_count_) throw SpecError("node index out of range");
            incident_[i].push_back(e);
            for (int j : ed)
                if (j != i) nbr[i].insert(j);
        }
        incidence_count_ += static_cast<int>(ed.size());
    }
    neighbors_.resize(node_count_);
    for (int i = 0; i < node_count_; ++i)
        neighbors_[i].assign(nbr[i].begin(), nbr[i].end());
}

Hypergraph::Hypergraph(Hypergraph&& other) noexcept
    : node_count_(other.node_count_),
      incidence_count_(other.incidence_count_),
      edges_(std::move(other.edges_)),
      labels_(std::move(other.labels_)),
      incident_(std::move(other.incident_)),
      neighbors_(std::move(other.neighbors_)),
      memo3_(std::move(other.memo3_)),
      memo_full_(std::move(other.memo_full_)) {}

Hypergraph& Hypergraph::operator=(Hypergraph&& other) noexcept {
    if (this != &other) {
        node_count_ = other.node_count_;
        incidence_count_ = other.incidence_count_;
        edges_ = std::move(other.edges_);
        labels_ = std::move(other.labels_);
        incident_ = std::move(other.incident_);
        neighbors_ = std::move(other.neighbors_);
        memo3_ = std::move(other.memo3_);
        memo_full_ = std::move(other.memo_full_);
    }
    return *this;
}

Hypergraph::Hypergraph(const Hypergraph& other)
    : node_count_(other.node_count_),
      incidence_count_(other.incidence_count_),
      edges_(other.edges_),
      labels_(other.labels_),
      incident_(other.incident_),
      neighbors_(other.neighbors_) {}

Hypergraph& Hypergraph::operator=(const Hypergraph& other) {
    if (this != &other) *this = Hypergraph(other);
    return *this;
}

Hypergraph Hypergraph::parse(const std::string& text) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<int>> edges;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        std::vector<int> edge;
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) return;
            auto [it, inserted] = index.try_emplace(tok, static_cast<int>(labels.size()));
            if (inserted) labels.push_back(tok);
            if (std::find(edge.begin(), edge.end(), it->second) == edge.end())
                edge.push_back(it->second);
            tok.clear();
        };
        for (char c : line) {
            if (c == ',' || c == ' ' || c == '\t' || c == '\r')
                flush();
            else
                tok.push_back(c);
        }
        flush();
        if (edge.empty()) throw ParseError(lineno, "edge has no node tokens");
        edges.push_back(std::move(edge));
    }
    int n = static_cast<int>(labels.size());
    return Hypergraph(n, std::move(edges), std::move(labels));
}

std::string Hypergraph::serialize() const {
    std::ostringstream out;
    for (const auto& e : edges_) {
        for (size_t k = 0; k < e.size(); ++k) {
            if (k) out << ' ';
            out << labels_[e[k]];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<int> Hypergraph::edge_neighborhood(int e) const {
    std::set<int> out;
    for (int i : edges_[e])
        for (int f : incident_[i])
            if (f != e) out.insert(f);
    return {out.begin(), out.end()};
}

bool Hypergraph::adjacent(int i, int j) const {
    const auto& n = neighbors_[i];
    return std::binary_search(n.begin(), n.end(), j);
}

int Hypergraph::cooccurrence(int i, int j) const {
    int c = 0;
    for (int e : incident_[i]) {
        const auto& ed = edges_[e];
        if (std::binary_search(ed.begin(), ed.end(), j)) ++c;
    }
    return c;
}

DistanceMap Hypergraph::distances_from(int i, int cap) const {
    DistanceMap dist;
    dist[i] = 0;
    std::deque<int> queue{i};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = dist[u];
        if (cap >= 0 && du >= cap) continue;
        for (int v : neighbors_[u]) {
            if (dist.emplace(v, du + 1).second) queue.push_back(v);
        }
    }
    return dist;
}

const DistanceMap& Hypergraph::distances3(int i) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo3_.find(i);
    if (it == memo3_.end()) it = memo3_.emplace(i, distances_from(i, 3)).first;
    return it->second;
}

const DistanceMap& Hypergraph::distances_full(int i) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_full_.find(i);
    if (it == memo_full_.end()) it = memo_full_.emplace(i, distances_from(i)).first;
    return it->second;
}

int Hypergraph::distance(int i, int j) const {
    const auto& d = distances_full(i);
    auto it = d.find(j);
    if (it == d.end())
        throw InfiniteCostError("nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                " are in different components");
    return it->second;
}

Graph Hypergraph::clique_expansion(bool weighted) const {
    std::map<std::pair<int, int>, int> count;
    for (const auto& e : edges_)
        for (size_t a = 0; a < e.size(); ++a)
            for (size_t b = a + 1; b < e.size(); ++b) count[{e[a], e[b]}]++;
    Graph g;
    g.node_count = node_count_;
    for (const auto& [pair, c] : count) {
        g.edges.push_back(pair);
        if (weighted) g.weights.push_back(c);
    }
    return g;
}

Graph Hypergraph::star_expansion() const {
    Graph g;
    g.node_count = node_count_ + edge_count();
    for (int e = 0; e < edge_count(); ++e)
        for (int i : edges_[e]) g.edges.emplace_back(i, node_count_ + e);
    return g;
}

Hypergraph Hypergraph::from_graph(const Graph& g) {
    std::vector<std::vector<int>> edges;
    edges.reserve(g.edges.size());
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    return Hypergraph(g.node_count, std::move(edges));
}

std::vector<int> Hypergraph::component_labels() const {
    std::vector<int> comp(node_count_, -1);
    int next = 0;
    for (int s = 0; s < node_count_; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : neighbors_[u])
                if (comp[v] == -1) {
                    comp[v] = next;
                    queue.push_back(v);
                }
        }
        ++next;
    }
    return comp;
}

StructuralProfile Hypergraph::structural_profile(bool exact_diameter) const {
    StructuralProfile p;
    if (!edges_.empty()) {
        int r = static_cast<int>(edges_[0].size());
        bool uniform = std::all_of(edges_.begin(), edges_.end(),
                                   [&](const auto& e) { return static_cast<int>(e.size()) == r; });
        if (uniform) p.uniform_r = r;
    }
    if (node_count_ > 0) {
        int k = degree(0);
        bool regular = true;
        for (int i = 1; i < node_count_ && regular; ++i) regular = degree(i) == k;
        if (regular) p.regular_k = k;
    }
    {
        std::optional<int> s;
        bool consistent = true;
        for (size_t a = 0; a < edges_.size() && consistent; ++a) {
            for (size_t b = a + 1; b < edges_.size() && consistent; ++b) {
                std::vector<int> inter;
                std::set_intersection(edges_[a].begin(), edges_[a].end(), edges_[b].begin(),
                                      edges_[b].end(), std::back_inserter(inter));
                if (inter.empty()) continue;
                int sz = static_cast<int>(inter.size());
                if (!s)
                    s = sz;
                else if (*s != sz)
                    consistent = false;
            }
        }
        if (consistent && s) p.intersecting_s = s;
    }
    {
        std::optional<int> c;
        bool consistent = true;
        for (int i = 0; i < node_count_ && consistent; ++i) {
            for (int j : neighbors_[i]) {
                if (j <= i) continue;
                int co = cooccurrence(i, j);
                if (!c)
                    c = co;
                else if (*c != co) {
                    consistent = false;
                    break;
                }
            }
        }
        if (consistent && c) p.cooccurrent_c = c;
    }
    auto comp = component_labels();
    p.component_count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    for (const auto& e : edges_)
        if (e.size() >= 2) {
            p.d_min = 1;
            break;
        }
    if (exact_diameter && p.component_count == 1 && node_count_ > 0) {
        int diam = 0;
        for (int i = 0; i < node_count_; ++i) {
            auto d = distances_from(i);
            for (const auto& [_, v] : d) diam = std::max(diam, v);
        }
        p.diameter = diam;
    }
    return p;
}

std::string profile_to_json(const Hypergraph& h, const StructuralProfile& p) {
    nlohmann::json j;
    j["n"] = h.node_count();
    j["m"] = h.edge_count();
    j["c"] = h.incidence_count();
    double nm = static_cast<double>(h.node_count()) * h.edge_count();
    j["density"] = nm > 0 ? h.incidence_count() / nm : 0.0;
    auto put = [&](const char* key, const std::optional<int>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("uniform_r", p.uniform_r);
    put("regular_k", p.regular_k);
    put("intersecting_s", p.intersecting_s);
    put("cooccurrent_c", p.cooccurrent_c);
    put("diameter", p.diameter);
    put("d_min", p.d_min);
    j["components"] = p.component_count;
    return j.dump(2);
}

}  // namespace orchid
