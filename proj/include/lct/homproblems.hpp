#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/lcl.hpp"

namespace lct {

/// Finite simple graph (loopless, undirected), vertices named by strings and
/// kept in shortlex order.
class SimpleGraph {
public:
    SimpleGraph() = default;

    SimpleGraph(std::vector<std::string> names,
                const std::vector<std::pair<std::string, std::string>>& edges) {
        std::sort(names.begin(), names.end(), shortlex_less);
        check(std::adjacent_find(names.begin(), names.end()) == names.end(), Errc::semantic_error,
              "duplicate vertex name");
        names_ = std::move(names);
        for (size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = static_cast<int>(i);
        std::set<std::pair<int, int>> seen;
        for (const auto& [x, y] : edges) {
            int a = index_of(x), b = index_of(y);
            check(a != b, Errc::semantic_error, "loop edge at '" + x + "'");
            auto [it, fresh] = seen.emplace(std::min(a, b), std::max(a, b));
            check(fresh, Errc::semantic_error, "duplicate edge {" + x + ", " + y + "}");
        }
        edges_.assign(seen.begin(), seen.end());
        adj_.assign(names_.size(), {});
        for (auto [a, b] : edges_) {
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        for (auto& row : adj_) std::sort(row.begin(), row.end());
    }

    int n() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& adjacency(int i) const { return adj_[i]; }
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        check(it != index_.end(), Errc::semantic_error, "unknown vertex '" + name + "'");
        return it->second;
    }

    bool has_edge(int a, int b) const {
        return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
    }

    int max_degree() const {
        int d = 0;
        for (int i = 0; i < n(); ++i) d = std::max(d, degree(i));
        return d;
    }

    bool is_forest() const {
        return static_cast<int>(edges_.size()) == n() - component_count();
    }

    int component_count() const {
        std::vector<int> comp = component_labels();
        int c = 0;
        for (size_t i = 0; i < comp.size(); ++i) c += comp[i] == static_cast<int>(i) ? 1 : 0;
        return c;
    }

    std::vector<int> component_labels() const {
        std::vector<int> comp(n(), -1);
        for (int i = 0; i < n(); ++i) {
            if (comp[i] >= 0) continue;
            comp[i] = i;
            std::queue<int> q;
            q.push(i);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int nb : adj_[v])
                    if (comp[nb] < 0) {
                        comp[nb] = i;
                        q.push(nb);
                    }
            }
        }
        return comp;
    }

    /// BFS distances from a vertex (by index); -1 for unreachable.
    std::vector<int> distances_from(int start) const {
        std::vector<int> dist(n(), -1);
        dist[start] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int nb : adj_[v])
                if (dist[nb] < 0) {
                    dist[nb] = dist[v] + 1;
                    q.push(nb);
                }
        }
        return dist;
    }

    bool operator==(const SimpleGraph& o) const { return names_ == o.names_ && edges_ == o.edges_; }

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::map<std::string, int> index_;
};

/// The labeling problem whose valid colorings are exactly homomorphisms into
/// H: one label per H-vertex, constant vertex multisets, and edge pairs taken
/// from H's adjacency.
inline Lcl lcl_from_graph(const SimpleGraph& h, int delta) {
    check(h.n() > 0, Errc::empty_graph, "homomorphism target must have vertices");
    std::vector<LabelMultiset> vcs;
    for (int v = 0; v < h.n(); ++v) vcs.push_back(LabelMultiset(std::vector<int>(delta, v)));
    std::vector<LabelMultiset> ecs;
    for (auto [a, b] : h.edges()) ecs.push_back(LabelMultiset({a, b}));
    return Lcl(delta, h.names(), std::move(vcs), std::move(ecs));
}

inline bool has_clique(const SimpleGraph& h, int size) {
    check(size >= 1, Errc::bad_parameter, "clique size must be >= 1");
    if (size > h.n()) return false;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(pick.size()) == size) return true;
        for (int v = from; v < h.n(); ++v) {
            bool ok = true;
            for (int u : pick)
                if (!h.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back(v);
            if (self(self, v + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

/// The tower over the 5-cycle: a 5-cycle for delta 2, then one apex per step,
/// adjacent to everything below it. Clique-free at size delta+1 throughout.
inline SimpleGraph build_h_delta(int delta) {
    check(delta >= 2, Errc::delta_too_small, "the family starts at delta 2");
    std::vector<std::string> names = {"v0", "v1", "v2", "v3", "v4"};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back("v" + std::to_string(i), "v" + std::to_string((i + 1) % 5));
    for (int d = 3; d <= delta; ++d) {
        std::string apex = "w" + std::to_string(d);
        for (const auto& below : names) edges.emplace_back(below, apex);
        names.push_back(apex);
    }
    return SimpleGraph(std::move(names), edges);
}

/// Greedy scan: take a vertex iff its path distance to every taken vertex
/// exceeds r. The result is pairwise more than r apart and every vertex lies
/// within r of it.
inline std::vector<std::string> maximal_discrete_set(const SimpleGraph& g, int r,
                                                     std::optional<std::vector<std::string>> order =
                                                         std::nullopt) {
    check(r >= 0, Errc::bad_parameter, "r must be >= 0");
    std::vector<int> scan;
    if (order) {
        check(static_cast<int>(order->size()) == g.n(), Errc::bad_parameter,
              "order must be a permutation of the vertex set");
        std::set<int> seen;
        for (const auto& name : *order) {
            int i = g.index_of(name);
            check(seen.insert(i).second, Errc::bad_parameter, "order repeats '" + name + "'");
            scan.push_back(i);
        }
    } else {
        for (int i = 0; i < g.n(); ++i) scan.push_back(i);
    }
    std::vector<bool> taken(g.n(), false);
    std::vector<int> chosen;
    for (int v : scan) {
        // Bounded BFS to depth r looking for an already-chosen vertex.
        bool blocked = false;
        std::map<int, int> dist{{v, 0}};
        std::queue<int> q;
        q.push(v);
        while (!q.empty() && !blocked) {
            int u = q.front();
            q.pop();
            if (taken[u]) {
                blocked = true;
                break;
            }
            if (dist[u] == r) continue;
            for (int nb : g.adjacency(u))
                if (dist.emplace(nb, dist[u] + 1).second) q.push(nb);
        }
        if (!blocked) {
            taken[v] = true;
            chosen.push_back(v);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::string> out;
    for (int v : chosen) out.push_back(g.name(v));
    return out;
}

namespace detail {

/// Least homomorphism of a path component into the 5-cycle, positions given
/// in path order, with per-position admissible target sets.
inline bool path_into_c5(const SimpleGraph& h2, const std::vector<std::vector<int>>& allowed,
                         std::vector<int>& out) {
    out.clear();
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == allowed.size()) return true;
        for (int t : allowed[i]) {
            if (!pick.empty() && !h2.has_edge(pick.back(), t)) continue;
            pick.push_back(t);
            if (self(self, i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) return false;
    out = pick;
    return true;
}

} // namespace detail

/// Homomorphism of a bounded-degree forest into the tower graph. For degree
/// bounds above 2 a maximal independent set goes to the top apex and the rest
/// recurses one level down; the base maps a maximal 4-discrete set to v0 and
/// completes the leftover paths exactly.
inline std::map<std::string, std::string> hom_solve_h_delta(const SimpleGraph& forest, int delta) {
    check(delta >= 2, Errc::delta_too_small, "the family starts at delta 2");
    check(forest.is_forest(), Errc::not_a_forest, "input must be acyclic");
    check(forest.max_degree() <= delta, Errc::degree_too_high,
          "maximum degree exceeds the requested bound");
    std::map<std::string, std::string> out;
    if (forest.n() == 0) return out;

    if (delta > 2) {
        std::vector<std::string> independent = maximal_discrete_set(forest, 1);
        std::set<std::string> apex_set(independent.begin(), independent.end());
        std::string apex = "w" + std::to_string(delta);
        for (const auto& v : independent) out[v] = apex;
        std::vector<std::string> rest_names;
        std::vector<std::pair<std::string, std::string>> rest_edges;
        for (int i = 0; i < forest.n(); ++i)
            if (!apex_set.count(forest.name(i))) rest_names.push_back(forest.name(i));
        for (auto [a, b] : forest.edges())
            if (!apex_set.count(forest.name(a)) && !apex_set.count(forest.name(b)))
                rest_edges.emplace_back(forest.name(a), forest.name(b));
        SimpleGraph rest(std::move(rest_names), rest_edges);
        for (auto& [v, image] : hom_solve_h_delta(rest, delta - 1)) out[v] = image;
        return out;
    }

    // Base: degree <= 2, so components are paths. Anchor a maximal 4-discrete
    // set at v0; every leftover path then has short length, and one bounded on
    // both sides is long enough for the cycle to absorb the parity.
    SimpleGraph h2 = build_h_delta(2);
    int v0 = h2.index_of("v0");
    std::vector<int> n_v0 = h2.adjacency(v0);
    std::vector<std::string> anchors = maximal_discrete_set(forest, 4);
    std::set<int> anchor_set;
    for (const auto& name : anchors) anchor_set.insert(forest.index_of(name));
    for (const auto& name : anchors) out[name] = "v0";

    std::vector<bool> done(forest.n(), false);
    for (int i : anchor_set) done[i] = true;
    std::vector<int> all_targets;
    for (int t = 0; t < h2.n(); ++t) all_targets.push_back(t);

    for (int start = 0; start < forest.n(); ++start) {
        if (done[start]) continue;
        // Walk to one end of this leftover path component.
        auto leftover_neighbors = [&](int v) {
            std::vector<int> ns;
            for (int nb : forest.adjacency(v))
                if (!anchor_set.count(nb)) ns.push_back(nb);
            return ns;
        };
        int head = start, prev = -1;
        while (true) {
            auto ns = leftover_neighbors(head);
            int next = -1;
            for (int nb : ns)
                if (nb != prev) next = nb;
            if (next < 0) break;
            prev = head;
            head = next;
        }
        std::vector<int> path{head};
        prev = -1;
        while (true) {
            auto ns = leftover_neighbors(path.back());
            int next = -1;
            for (int nb : ns)
                if (nb != prev) next = nb;
            if (next < 0) break;
            prev = path.back();
            path.push_back(next);
        }
        std::vector<std::vector<int>> allowed(path.size(), all_targets);
        for (size_t i = 0; i < path.size(); ++i)
            for (int nb : forest.adjacency(path[i]))
                if (anchor_set.count(nb)) allowed[i] = n_v0;
        std::vector<int> images;
        check(detail::path_into_c5(h2, allowed, images), Errc::invariant_breach,
              "leftover path admits no cycle homomorphism");
        for (size_t i = 0; i < path.size(); ++i) {
            out[forest.name(path[i])] = h2.name(images[i]);
            done[path[i]] = true;
        }
    }
    return out;
}

inline bool is_graph_homomorphism(const SimpleGraph& g, const SimpleGraph& h,
                                  const std::map<std::string, std::string>& map) {
    for (int i = 0; i < g.n(); ++i)
        if (!map.count(g.name(i))) return false;
    for (auto [a, b] : g.edges())
        if (!h.has_edge(h.index_of(map.at(g.name(a))), h.index_of(map.at(g.name(b))))) return false;
    return true;
}

/// Converters between the two graph views, for cross-checking homomorphisms
/// against half-edge colorings. Vertex names become decimal ids.
inline SimpleGraph simple_from_half_edge(const HalfEdgeGraph& g) {
    std::vector<std::string> names;
    for (int v : g.vertex_ids()) names.push_back(std::to_string(v));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : g.edges())
        if (e.is_true()) edges.emplace_back(std::to_string(e.a), std::to_string(e.b));
    return SimpleGraph(std::move(names), edges);
}

inline HalfEdgeGraph half_edge_from_simple(const SimpleGraph& g, int delta) {
    check(g.max_degree() <= delta, Errc::degree_too_high, "padding requires degree <= delta");
    std::vector<int> vertices;
    for (int i = 0; i < g.n(); ++i) vertices.push_back(i);
    std::vector<EdgeSpec> specs;
    int next = 0;
    for (auto [a, b] : g.edges()) specs.push_back({"e" + std::to_string(next++), {a, b}});
    for (int i = 0; i < g.n(); ++i)
        for (int j = g.degree(i); j < delta; ++j)
            specs.push_back({"e" + std::to_string(next++), {i}});
    return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta);
}

/// A vertex map into H induces the half-edge coloring that repeats the image
/// on every half edge of the vertex.
inline Coloring coloring_from_hom(const HalfEdgeGraph& g, const Lcl& pi_h,
                                  const std::map<std::string, std::string>& map) {
    Coloring c;
    for (int v : g.vertex_ids()) {
        int label = pi_h.label_id(map.at(std::to_string(v)));
        for (int ei : g.incident_edges(v)) c.set(v, g.edge(ei).id, label);
    }
    return c;
}

} // namespace lct
