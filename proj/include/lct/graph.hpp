#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lct/errors.hpp"

namespace lct {

/// Edge ids are ordered shorter-first, then lexicographically, so that the
/// generated names e0, e1, ..., e10, ... sort numerically.
inline bool shortlex_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct EdgeSpec {
    std::string id;
    std::vector<int> ends; // 1 endpoint = virtual edge, 2 = true edge
};

struct Edge {
    std::string id;
    int a = -1;
    int b = -1; // -1 for virtual edges
    bool is_true() const { return b >= 0; }
};

/// A graph in the half-edge sense: every vertex carries exactly delta
/// incidences, an edge has one endpoint (virtual) or two (true).
class HalfEdgeGraph {
public:
    HalfEdgeGraph() = default;

    static HalfEdgeGraph make(std::vector<int> vertex_ids, std::vector<EdgeSpec> edge_specs, int delta) {
        check(delta >= 1, Errc::bad_parameter, "delta must be positive");
        HalfEdgeGraph g;
        g.delta_ = delta;
        std::sort(vertex_ids.begin(), vertex_ids.end());
        check(std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) == vertex_ids.end(),
              Errc::semantic_error, "duplicate vertex id");
        for (int v : vertex_ids)
            check(v >= 0, Errc::semantic_error, "vertex ids must be non-negative");
        g.vertices_ = std::move(vertex_ids);
        for (size_t i = 0; i < g.vertices_.size(); ++i) g.vidx_[g.vertices_[i]] = static_cast<int>(i);

        std::sort(edge_specs.begin(), edge_specs.end(),
                  [](const EdgeSpec& x, const EdgeSpec& y) { return shortlex_less(x.id, y.id); });
        g.edges_.reserve(edge_specs.size());
        std::set<std::pair<int, int>> seen_pairs;
        for (auto& spec : edge_specs) {
            check(g.eidx_.find(spec.id) == g.eidx_.end(), Errc::semantic_error,
                  "duplicate edge id '" + spec.id + "'");
            check(spec.ends.size() == 1 || spec.ends.size() == 2, Errc::bad_endpoint_count,
                  "edge '" + spec.id + "' must have 1 or 2 endpoints");
            for (int v : spec.ends)
                check(g.vidx_.count(v) > 0, Errc::unknown_vertex,
                      "edge '" + spec.id + "' references unknown vertex " + std::to_string(v));
            Edge e;
            e.id = spec.id;
            e.a = spec.ends[0];
            if (spec.ends.size() == 2) {
                check(spec.ends[0] != spec.ends[1], Errc::bad_endpoint_count,
                      "edge '" + spec.id + "' has equal endpoints");
                e.a = std::min(spec.ends[0], spec.ends[1]);
                e.b = std::max(spec.ends[0], spec.ends[1]);
                auto [it, fresh] = seen_pairs.emplace(e.a, e.b);
                check(fresh, Errc::multi_edge,
                      "vertices " + std::to_string(e.a) + " and " + std::to_string(e.b) +
                          " share more than one edge");
            }
            g.eidx_[e.id] = static_cast<int>(g.edges_.size());
            g.edges_.push_back(std::move(e));
        }

        g.incident_.assign(g.vertices_.size(), {});
        g.adj_.assign(g.vertices_.size(), {});
        for (size_t ei = 0; ei < g.edges_.size(); ++ei) {
            const Edge& e = g.edges_[ei];
            g.incident_[g.vidx_.at(e.a)].push_back(static_cast<int>(ei));
            if (e.is_true()) {
                g.incident_[g.vidx_.at(e.b)].push_back(static_cast<int>(ei));
                g.adj_[g.vidx_.at(e.a)].push_back({e.b, static_cast<int>(ei)});
                g.adj_[g.vidx_.at(e.b)].push_back({e.a, static_cast<int>(ei)});
            }
        }
        for (size_t vi = 0; vi < g.vertices_.size(); ++vi)
            check(static_cast<int>(g.incident_[vi].size()) == delta, Errc::degree_mismatch,
                  "vertex " + std::to_string(g.vertices_[vi]) + " has " +
                      std::to_string(g.incident_[vi].size()) + " incident edges, expected " +
                      std::to_string(delta));
        return g;
    }

    int delta() const { return delta_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<int>& vertex_ids() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int idx) const { return edges_[idx]; }

    bool has_vertex(int id) const { return vidx_.count(id) > 0; }
    int vertex_index(int id) const {
        auto it = vidx_.find(id);
        check(it != vidx_.end(), Errc::unknown_vertex, "unknown vertex " + std::to_string(id));
        return it->second;
    }

    int edge_index(const std::string& id) const {
        auto it = eidx_.find(id);
        return it == eidx_.end() ? -1 : it->second;
    }

    /// Incident edge indices, in canonical (shortlex id) order.
    const std::vector<int>& incident_edges(int vertex_id) const { return incident_[vertex_index(vertex_id)]; }
    /// (neighbor id, edge index) pairs over true edges, in canonical edge order.
    const std::vector<std::pair<int, int>>& adjacency(int vertex_id) const { return adj_[vertex_index(vertex_id)]; }

    int degree(int vertex_id) const { return static_cast<int>(adjacency(vertex_id).size()); }

    int other_endpoint(int edge_idx, int vertex_id) const {
        const Edge& e = edges_[edge_idx];
        return e.a == vertex_id ? e.b : e.a;
    }

    int true_edge_count() const {
        int n = 0;
        for (const auto& e : edges_) n += e.is_true() ? 1 : 0;
        return n;
    }

    /// Vertices within path distance r of the start set, ascending ids.
    std::vector<int> neighborhood(const std::vector<int>& start, int r) const {
        check(r >= 0, Errc::bad_parameter, "radius must be >= 0");
        std::unordered_map<int, int> dist;
        std::queue<int> q;
        for (int v : start) {
            vertex_index(v); // validates
            if (dist.emplace(v, 0).second) q.push(v);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            int d = dist[v];
            if (d == r) continue;
            for (auto [n, ei] : adjacency(v))
                if (dist.emplace(n, d + 1).second) q.push(n);
        }
        std::vector<int> out;
        out.reserve(dist.size());
        for (auto& [v, d] : dist) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_forest() const {
        // A graph is a forest iff every component has one more vertex than true edges.
        std::vector<int> comp = component_labels();
        int ncomp = 0;
        for (size_t i = 0; i < comp.size(); ++i) ncomp += comp[i] == static_cast<int>(i) ? 1 : 0;
        return true_edge_count() == vertex_count() - ncomp;
    }

    /// For each vertex index, the index of its component representative
    /// (the least vertex index in the component).
    std::vector<int> component_labels() const {
        std::vector<int> comp(vertices_.size(), -1);
        for (size_t i = 0; i < vertices_.size(); ++i) {
            if (comp[i] >= 0) continue;
            comp[i] = static_cast<int>(i);
            std::queue<int> q;
            q.push(static_cast<int>(i));
            while (!q.empty()) {
                int vi = q.front();
                q.pop();
                for (auto [n, ei] : adj_[vi]) {
                    int ni = vidx_.at(n);
                    if (comp[ni] < 0) {
                        comp[ni] = static_cast<int>(i);
                        q.push(ni);
                    }
                }
            }
        }
        return comp;
    }

    bool operator==(const HalfEdgeGraph& o) const {
        if (delta_ != o.delta_ || vertices_ != o.vertices_ || edges_.size() != o.edges_.size())
            return false;
        for (size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i].id != o.edges_[i].id || edges_[i].a != o.edges_[i].a ||
                edges_[i].b != o.edges_[i].b)
                return false;
        return true;
    }

private:
    int delta_ = 0;
    std::vector<int> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<int, int> vidx_;
    std::unordered_map<std::string, int> eidx_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Path x_0 .. x_L with true edges between consecutive vertices and virtual
/// edges padding every vertex to delta incidences.
inline HalfEdgeGraph build_path(int delta, int length) {
    check(length >= 0, Errc::bad_parameter, "path length must be >= 0");
    std::vector<int> vertices(length + 1);
    for (int i = 0; i <= length; ++i) vertices[i] = i;
    std::vector<EdgeSpec> edges;
    int next = 0;
    for (int i = 0; i < length; ++i)
        edges.push_back({"e" + std::to_string(next++), {i, i + 1}});
    for (int i = 0; i <= length; ++i) {
        int have = (i > 0 ? 1 : 0) + (i < length ? 1 : 0);
        for (int j = have; j < delta; ++j)
            edges.push_back({"e" + std::to_string(next++), {i}});
    }
    return HalfEdgeGraph::make(std::move(vertices), std::move(edges), delta);
}

/// Star: center 0 adjacent to 1..k, everything padded with virtual edges.
inline HalfEdgeGraph build_star(int delta, int k) {
    check(k >= 0 && k <= delta, Errc::k_out_of_range,
          "k must lie in 0.." + std::to_string(delta));
    std::vector<int> vertices(k + 1);
    for (int i = 0; i <= k; ++i) vertices[i] = i;
    std::vector<EdgeSpec> edges;
    int next = 0;
    for (int i = 1; i <= k; ++i)
        edges.push_back({"e" + std::to_string(next++), {0, i}});
    for (int j = k; j < delta; ++j)
        edges.push_back({"e" + std::to_string(next++), {0}});
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j < delta; ++j)
            edges.push_back({"e" + std::to_string(next++), {i}});
    return HalfEdgeGraph::make(std::move(vertices), std::move(edges), delta);
}

} // namespace lct
