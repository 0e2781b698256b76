#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/homproblems.hpp"
#include "lct/lcl.hpp"

namespace lct::testutil {

inline SimpleGraph complete_graph(int k) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back(std::to_string(i));
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) edges.emplace_back(std::to_string(i), std::to_string(j));
    return SimpleGraph(std::move(names), edges);
}

/// Proper coloring with k colors as a labeling problem.
inline Lcl make_k_lcl(int k, int delta) { return lcl_from_graph(complete_graph(k), delta); }

inline Lcl make_h2_lcl() { return lcl_from_graph(build_h_delta(2), 2); }

/// Perfect matching on paths: every vertex pairs one matched and one
/// unmatched half edge, matched halves meet matched halves.
inline Lcl make_perfect_matching_lcl() {
    return Lcl(2, {"M", "U"}, {LabelMultiset({0, 1})},
               {LabelMultiset({0, 0}), LabelMultiset({1, 1})});
}

inline LabelMultiset ms(std::vector<int> labels) { return LabelMultiset(std::move(labels)); }

/// Random tree on n vertices (ids 0..n-1) with true degree capped at delta,
/// padded with virtual edges.
inline HalfEdgeGraph random_tree(std::mt19937& rng, int n, int delta) {
    std::vector<int> vertices(n);
    for (int i = 0; i < n; ++i) vertices[i] = i;
    std::vector<int> true_degree(n, 0);
    std::vector<EdgeSpec> specs;
    int next = 0;
    for (int v = 1; v < n; ++v) {
        std::vector<int> candidates;
        for (int u = 0; u < v; ++u)
            if (true_degree[u] < delta) candidates.push_back(u);
        if (candidates.empty()) break; // leaves isolated vertices; still a forest
        int u = candidates[std::uniform_int_distribution<int>(0, candidates.size() - 1)(rng)];
        specs.push_back({"e" + std::to_string(next++), {u, v}});
        true_degree[u]++;
        true_degree[v]++;
    }
    for (int v = 0; v < n; ++v)
        for (int j = true_degree[v]; j < delta; ++j)
            specs.push_back({"e" + std::to_string(next++), {v}});
    return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta);
}

/// Random forest: several random trees merged under one id space.
inline HalfEdgeGraph random_forest(std::mt19937& rng, int n, int delta) {
    std::vector<int> vertices(n);
    for (int i = 0; i < n; ++i) vertices[i] = i;
    std::vector<int> true_degree(n, 0);
    std::vector<EdgeSpec> specs;
    int next = 0;
    for (int v = 1; v < n; ++v) {
        if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) continue; // new component
        std::vector<int> candidates;
        for (int u = 0; u < v; ++u)
            if (true_degree[u] < delta) candidates.push_back(u);
        if (candidates.empty()) continue;
        int u = candidates[std::uniform_int_distribution<int>(0, candidates.size() - 1)(rng)];
        specs.push_back({"e" + std::to_string(next++), {u, v}});
        true_degree[u]++;
        true_degree[v]++;
    }
    for (int v = 0; v < n; ++v)
        for (int j = true_degree[v]; j < delta; ++j)
            specs.push_back({"e" + std::to_string(next++), {v}});
    return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta);
}

/// Random graph that may contain cycles: a random tree plus extra true edges
/// between vertices that still have virtual capacity.
inline HalfEdgeGraph random_graph_with_cycles(std::mt19937& rng, int n, int delta) {
    std::vector<int> vertices(n);
    for (int i = 0; i < n; ++i) vertices[i] = i;
    std::vector<int> true_degree(n, 0);
    std::set<std::pair<int, int>> present;
    std::vector<EdgeSpec> specs;
    int next = 0;
    auto add = [&](int u, int v) {
        specs.push_back({"e" + std::to_string(next++), {u, v}});
        present.emplace(std::min(u, v), std::max(u, v));
        true_degree[u]++;
        true_degree[v]++;
    };
    for (int v = 1; v < n; ++v) {
        std::vector<int> candidates;
        for (int u = 0; u < v; ++u)
            if (true_degree[u] < delta) candidates.push_back(u);
        if (candidates.empty()) continue;
        add(candidates[std::uniform_int_distribution<int>(0, candidates.size() - 1)(rng)], v);
    }
    for (int attempts = 0; attempts < n; ++attempts) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (u == v || true_degree[u] >= delta || true_degree[v] >= delta) continue;
        if (present.count({std::min(u, v), std::max(u, v)})) continue;
        add(u, v);
    }
    for (int v = 0; v < n; ++v)
        for (int j = true_degree[v]; j < delta; ++j)
            specs.push_back({"e" + std::to_string(next++), {v}});
    return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta);
}

inline SimpleGraph random_simple_forest(std::mt19937& rng, int n, int maxdeg) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<int> degree(n, 0);
    std::vector<std::pair<std::string, std::string>> edges;
    for (int v = 1; v < n; ++v) {
        if (std::uniform_int_distribution<int>(0, 7)(rng) == 0) continue;
        std::vector<int> candidates;
        for (int u = 0; u < v; ++u)
            if (degree[u] < maxdeg) candidates.push_back(u);
        if (candidates.empty() || maxdeg == 0) continue;
        int u = candidates[std::uniform_int_distribution<int>(0, candidates.size() - 1)(rng)];
        if (degree[v] >= maxdeg) continue;
        edges.emplace_back(std::to_string(u), std::to_string(v));
        degree[u]++;
        degree[v]++;
    }
    return SimpleGraph(std::move(names), edges);
}

/// Random labeling problem over a small alphabet; constraint families are
/// random nonempty subsets of all candidate multisets.
inline Lcl random_lcl(std::mt19937& rng, int delta, int sigma_size, int max_vcs, int max_ecs) {
    std::vector<std::string> sigma;
    for (int i = 0; i < sigma_size; ++i) sigma.push_back(std::to_string(i + 1));
    std::vector<LabelMultiset> all_v;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == delta) {
            all_v.push_back(LabelMultiset(pick));
            return;
        }
        for (int x = from; x < sigma_size; ++x) {
            pick.push_back(x);
            self(self, x);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::vector<LabelMultiset> all_e;
    for (int a = 0; a < sigma_size; ++a)
        for (int b = a; b < sigma_size; ++b) all_e.push_back(LabelMultiset({a, b}));

    auto sample = [&](std::vector<LabelMultiset> pool, int want) {
        std::shuffle(pool.begin(), pool.end(), rng);
        int count = std::uniform_int_distribution<int>(1, want)(rng);
        pool.resize(std::min<size_t>(pool.size(), count));
        return pool;
    };
    return Lcl(delta, std::move(sigma), sample(all_v, max_vcs), sample(all_e, max_ecs));
}

/// Dumb oracle: tries every total labeling of the half edges in order and
/// keeps the first one that extends the partial coloring, satisfies the
/// problem, and stays inside the restriction.
inline std::optional<Coloring> brute_force_complete(const HalfEdgeGraph& g, const Lcl& lcl,
                                                    const Coloring& partial,
                                                    const std::vector<LabelMultiset>* restrict_v) {
    std::vector<std::pair<int, std::string>> halves;
    for (int v : g.vertex_ids())
        for (int ei : g.incident_edges(v)) halves.emplace_back(v, g.edge(ei).id);
    int n = lcl.alphabet_size();
    std::vector<int> counter(halves.size(), 0);
    while (true) {
        Coloring c;
        for (size_t i = 0; i < halves.size(); ++i) c.set(halves[i].first, halves[i].second, counter[i]);
        bool extends = true;
        for (const auto& [key, label] : partial)
            if (c.get(key.first, key.second) != label) {
                extends = false;
                break;
            }
        if (extends && verify_coloring(g, lcl, c).ok()) {
            bool inside = true;
            if (restrict_v) {
                for (int v : g.vertex_ids()) {
                    std::vector<int> star;
                    for (int ei : g.incident_edges(v)) star.push_back(*c.get(v, g.edge(ei).id));
                    LabelMultiset m(std::move(star));
                    if (std::find(restrict_v->begin(), restrict_v->end(), m) == restrict_v->end()) {
                        inside = false;
                        break;
                    }
                }
            }
            if (inside) return c;
        }
        size_t i = halves.size();
        while (i > 0 && counter[i - 1] == n - 1) counter[--i] = 0;
        if (i == 0) return std::nullopt;
        counter[i - 1]++;
    }
}

/// Path with both endpoint stars precolored: multiset `a` at one end with
/// `alpha` on the path edge, `b`/`beta` at the other; leftover endpoint labels
/// fill the virtual half edges in ascending order.
inline Coloring precolor_endpoint_stars(const HalfEdgeGraph& path, int length,
                                        const LabelMultiset& a, int alpha, const LabelMultiset& b,
                                        int beta) {
    Coloring c;
    auto pin_star = [&](int v, int toward, const LabelMultiset& m, int path_label) {
        std::vector<int> rest = m.labels();
        rest.erase(std::find(rest.begin(), rest.end(), path_label));
        size_t next = 0;
        for (int ei : path.incident_edges(v)) {
            const Edge& e = path.edge(ei);
            if (e.is_true() && path.other_endpoint(ei, v) == toward)
                c.set(v, e.id, path_label);
            else if (!e.is_true())
                c.set(v, e.id, rest[next++]);
        }
    };
    if (length == 0) {
        // Single vertex: the whole star is the multiset a.
        std::vector<int> labels = a.labels();
        size_t next = 0;
        for (int ei : path.incident_edges(0)) c.set(0, path.edge(ei).id, labels[next++]);
        return c;
    }
    pin_star(0, 1, a, alpha);
    pin_star(length, length - 1, b, beta);
    return c;
}

} // namespace lct::testutil
