#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/lcl.hpp"

namespace lct {

/// Extension problem on a finite forest: find a total coloring extending
/// `partial` whose true-edge pairs are admissible and whose vertex multisets
/// all lie in `restrict_vertices` (or in the full vertex-constraint set when
/// null).
struct CompletionQuery {
    const HalfEdgeGraph& graph;
    const Lcl& lcl;
    const Coloring& partial;
    const std::vector<LabelMultiset>* restrict_vertices = nullptr;
};

namespace detail {

inline uint64_t pack_counts(const std::vector<int>& counts) {
    uint64_t key = 0;
    for (size_t i = 0; i < counts.size(); ++i) key |= static_cast<uint64_t>(counts[i]) << (4 * i);
    return key;
}

class TreeSolver {
public:
    explicit TreeSolver(const CompletionQuery& q) : g_(q.graph), lcl_(q.lcl) {
        check(g_.delta() == lcl_.delta(), Errc::semantic_error, "graph and problem disagree on delta");
        check(lcl_.alphabet_size() <= 16, Errc::bad_parameter, "alphabet too large for the solver");
        check(g_.is_forest(), Errc::not_a_forest, "completion requires an acyclic graph");
        const auto& all = lcl_.vertex_constraints();
        const auto* multisets = q.restrict_vertices ? q.restrict_vertices : &all;
        for (const auto& m : *multisets) {
            check(lcl_.vertex_allowed(m), Errc::semantic_error,
                  "restriction contains a multiset outside the vertex constraints");
            allowed_keys_.insert(key_of(m));
        }
        sigma_ = lcl_.alphabet_size();
        all_mask_ = sigma_ == 32 ? ~0u : ((1u << sigma_) - 1);

        int n = g_.vertex_count();
        pins_.assign(n, {});
        for (int vi = 0; vi < n; ++vi)
            pins_[vi].assign(g_.incident_edges(g_.vertex_ids()[vi]).size(), -1);
        for (const auto& [key, label] : q.partial) {
            const auto& [v, eid] = key;
            check(g_.has_vertex(v), Errc::semantic_error,
                  "partial coloring references unknown vertex " + std::to_string(v));
            int ei = g_.edge_index(eid);
            check(ei >= 0, Errc::semantic_error, "partial coloring references unknown edge '" + eid + "'");
            const auto& inc = g_.incident_edges(v);
            auto it = std::find(inc.begin(), inc.end(), ei);
            check(it != inc.end(), Errc::semantic_error,
                  "partial coloring assigns a non-incident half edge");
            check(label >= 0 && label < sigma_, Errc::semantic_error,
                  "partial coloring uses a label outside the alphabet");
            pins_[g_.vertex_index(v)][it - inc.begin()] = label;
        }

        parent_.assign(n, -1);
        parent_edge_.assign(n, -1);
        feasible_up_.assign(n, 0);
        order_.reserve(n);
        std::vector<bool> seen(n, false);
        for (int vi = 0; vi < n; ++vi) {
            if (seen[vi]) continue;
            roots_.push_back(vi);
            seen[vi] = true;
            size_t head = order_.size();
            order_.push_back(vi);
            while (head < order_.size()) {
                int ui = order_[head++];
                int u = g_.vertex_ids()[ui];
                for (auto [nb, ei] : g_.adjacency(u)) {
                    int ni = g_.vertex_index(nb);
                    if (seen[ni]) continue;
                    seen[ni] = true;
                    parent_[ni] = ui;
                    parent_edge_[ni] = ei;
                    order_.push_back(ni);
                }
            }
        }
    }

    bool solve(bool materialize, Coloring* out) {
        // Bottom-up: feasible labels for the half edge toward the parent.
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            int vi = *it;
            feasible_up_[vi] = collect_feasible(vi);
            if (parent_[vi] < 0 && feasible_up_[vi] == 0) return false;
        }
        if (!materialize) return true;
        for (int ri : roots_) assign_down(ri, all_mask_, out);
        return true;
    }

private:
    struct Position {
        int edge_idx;
        uint32_t mask;  // labels admissible at this half edge, before the multiset check
        int child = -1; // child vertex index when this is a true edge downward
        bool is_parent = false;
    };

    uint64_t key_of(const LabelMultiset& m) const {
        std::vector<int> counts(lcl_.alphabet_size(), 0);
        for (int l : m.labels()) counts[l]++;
        return pack_counts(counts);
    }

    std::vector<Position> positions_of(int vi) const {
        int v = g_.vertex_ids()[vi];
        const auto& inc = g_.incident_edges(v);
        std::vector<Position> ps;
        for (size_t k = 0; k < inc.size(); ++k) {
            int ei = inc[k];
            Position p;
            p.edge_idx = ei;
            const Edge& e = g_.edge(ei);
            if (ei == parent_edge_[vi]) {
                p.is_parent = true;
                p.mask = all_mask_;
            } else if (e.is_true()) {
                // The other endpoint is a child in the rooted orientation.
                int c = g_.vertex_index(g_.other_endpoint(ei, v));
                p.child = c;
                uint32_t mask = 0;
                for (int x = 0; x < sigma_; ++x) {
                    uint32_t fc = feasible_up_[c];
                    bool ok = false;
                    for (int u = 0; u < sigma_ && !ok; ++u)
                        ok = ((fc >> u) & 1) && lcl_.edge_allowed(x, u);
                    if (ok) mask |= 1u << x;
                }
                p.mask = mask;
            } else {
                p.mask = all_mask_; // virtual: only the multiset constrains it
            }
            int pin = pins_[vi][k];
            if (pin >= 0) p.mask &= 1u << pin;
            ps.push_back(p);
        }
        return ps;
    }

    /// All labels x such that some locally valid star assignment puts x on the
    /// parent half edge (for roots: any bit set means the star is satisfiable).
    uint32_t collect_feasible(int vi) {
        auto ps = positions_of(vi);
        uint32_t result = 0;
        std::vector<int> counts(sigma_, 0);
        enumerate(ps, 0, counts, -1, [&](int parent_label) {
            result |= parent_label >= 0 ? (1u << parent_label) : 1u;
            return parent_label < 0 || result == all_mask_; // stop early when saturated
        });
        return result;
    }

    /// Enumerates star assignments in lexicographic order (positions in
    /// canonical edge order, labels ascending); calls sink with the parent
    /// label (or -1) for each valid one. Sink returning true stops the search.
    template <typename Sink>
    bool enumerate(const std::vector<Position>& ps, size_t i, std::vector<int>& counts,
                   int parent_label, Sink&& sink) const {
        if (i == ps.size()) {
            if (allowed_keys_.count(pack_counts(counts)) == 0) return false;
            return sink(parent_label);
        }
        const Position& p = ps[i];
        for (int x = 0; x < sigma_; ++x) {
            if (!((p.mask >> x) & 1)) continue;
            counts[x]++;
            bool stop = enumerate(ps, i + 1, counts, p.is_parent ? x : parent_label, sink);
            counts[x]--;
            if (stop) return true;
        }
        return false;
    }

    void assign_down(int vi, uint32_t up_mask, Coloring* out) {
        auto ps = positions_of(vi);
        for (auto& p : ps)
            if (p.is_parent) p.mask &= up_mask;
        std::vector<int> counts(sigma_, 0);
        std::vector<int> chosen;
        bool found = enumerate_first(ps, 0, counts, chosen);
        check(found, Errc::invariant_breach, "materialization lost a feasible star");
        int v = g_.vertex_ids()[vi];
        for (size_t i = 0; i < ps.size(); ++i) {
            out->set(v, g_.edge(ps[i].edge_idx).id, chosen[i]);
            if (ps[i].child >= 0) {
                uint32_t child_mask = 0;
                for (int u = 0; u < sigma_; ++u)
                    if (lcl_.edge_allowed(chosen[i], u)) child_mask |= 1u << u;
                assign_down(ps[i].child, child_mask, out);
            }
        }
    }

    bool enumerate_first(const std::vector<Position>& ps, size_t i, std::vector<int>& counts,
                         std::vector<int>& chosen) const {
        if (i == ps.size()) return allowed_keys_.count(pack_counts(counts)) > 0;
        const Position& p = ps[i];
        for (int x = 0; x < sigma_; ++x) {
            if (!((p.mask >> x) & 1)) continue;
            counts[x]++;
            chosen.push_back(x);
            if (enumerate_first(ps, i + 1, counts, chosen)) return true;
            chosen.pop_back();
            counts[x]--;
        }
        return false;
    }

    const HalfEdgeGraph& g_;
    const Lcl& lcl_;
    int sigma_ = 0;
    uint32_t all_mask_ = 0;
    std::unordered_set<uint64_t> allowed_keys_;
    std::vector<std::vector<int>> pins_;
    std::vector<int> parent_, parent_edge_, order_, roots_;
    std::vector<uint32_t> feasible_up_;
};

} // namespace detail

/// Exact: returns a coloring iff one exists. Deterministic; ties break toward
/// the least label with vertices visited from the least-id root downward.
inline std::optional<Coloring> complete(const CompletionQuery& q) {
    detail::TreeSolver solver(q);
    Coloring out;
    if (!solver.solve(true, &out)) return std::nullopt;
    return out;
}

inline bool is_extendable(const CompletionQuery& q) {
    detail::TreeSolver solver(q);
    return solver.solve(false, nullptr);
}

} // namespace lct
