#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lct/classify.hpp"
#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/toast.hpp"
#include "lct/treesolve.hpp"

namespace lct {

struct SolveTraceEvent {
    std::string kind; // "vertex" or "piece"
    long long index = 0;
    std::vector<std::tuple<int, std::string, int>> assigned; // (vertex, edge, label)
};

struct SolveOptions {
    std::optional<std::vector<int>> order; // permutation of vertex ids; default ascending
    bool check_invariants = false;
    std::function<void(const SolveTraceEvent&)> trace;
};

namespace detail {

inline std::vector<int> resolve_order(const HalfEdgeGraph& g,
                                      const std::optional<std::vector<int>>& order) {
    if (!order) return g.vertex_ids();
    std::vector<int> sorted(*order);
    std::sort(sorted.begin(), sorted.end());
    check(sorted == g.vertex_ids(), Errc::bad_parameter,
          "order must be a permutation of the vertex set");
    return *order;
}

/// Lexicographically least label tuple over the positions (labels ascending,
/// positions in the given order) whose multiset is an admissible vertex
/// constraint. Each position carries its own admissible-label mask.
inline bool least_star_assignment(const Lcl& lcl, const std::vector<uint32_t>& masks,
                                  std::vector<int>& out) {
    int n = lcl.alphabet_size();
    out.clear();
    std::vector<int> labels;
    auto rec = [&](auto&& self, size_t pos) -> bool {
        if (pos == masks.size()) {
            std::vector<int> copy(labels);
            return lcl.vertex_allowed(LabelMultiset(std::move(copy)));
        }
        for (int x = 0; x < n; ++x) {
            if (!((masks[pos] >> x) & 1)) continue;
            labels.push_back(x);
            if (self(self, pos + 1)) return true;
            labels.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) return false;
    out = labels;
    return true;
}

} // namespace detail

/// Online one-pass solver: processes vertices in order, colors each full star
/// on arrival, and keeps every half edge facing an unprocessed vertex (or a
/// virtual edge) inside the certified label subset. Works on any finite graph
/// of the right degree shape, cycles included.
inline Coloring greedy_color(const HalfEdgeGraph& g, const Lcl& lcl, const GreedyCertificate& cert,
                             const SolveOptions& opts = {}) {
    check(g.delta() == lcl.delta(), Errc::semantic_error, "graph and problem disagree on delta");
    check(!cert.sigma_prime.empty() && is_greedy_set(lcl, cert.sigma_prime),
          Errc::certificate_invalid, "label subset is not greedy");
    std::vector<int> order = detail::resolve_order(g, opts.order);

    uint32_t prime_mask = 0;
    for (int l : cert.sigma_prime) prime_mask |= 1u << l;

    Coloring c;
    std::vector<bool> processed_idx(g.vertex_count(), false);
    for (size_t stage = 0; stage < order.size(); ++stage) {
        int v = order[stage];
        std::vector<uint32_t> masks;
        const auto& inc = g.incident_edges(v);
        for (int ei : inc) {
            const Edge& e = g.edge(ei);
            int other = e.is_true() ? g.other_endpoint(ei, v) : -1;
            if (other >= 0 && processed_idx[g.vertex_index(other)]) {
                auto partner = c.get(other, e.id);
                check(partner.has_value(), Errc::invariant_breach,
                      "processed neighbor left a half edge uncolored");
                uint32_t mask = 0;
                for (int x = 0; x < lcl.alphabet_size(); ++x)
                    if (lcl.edge_allowed(*partner, x)) mask |= 1u << x;
                masks.push_back(mask);
            } else {
                masks.push_back(prime_mask);
            }
        }
        std::vector<int> chosen;
        check(detail::least_star_assignment(lcl, masks, chosen), Errc::invariant_breach,
              "greedy step has no admissible star assignment");
        SolveTraceEvent ev{"vertex", static_cast<long long>(stage), {}};
        for (size_t i = 0; i < inc.size(); ++i) {
            c.set(v, g.edge(inc[i]).id, chosen[i]);
            if (opts.trace) ev.assigned.emplace_back(v, g.edge(inc[i]).id, chosen[i]);
        }
        processed_idx[g.vertex_index(v)] = true;
        if (opts.trace) opts.trace(ev);
        if (opts.check_invariants) {
            // Every true edge with exactly one colored half carries a certified label.
            for (const auto& e : g.edges()) {
                if (!e.is_true()) continue;
                auto la = c.get(e.a, e.id), lb = c.get(e.b, e.id);
                if (la.has_value() == lb.has_value()) continue;
                int lone = la ? *la : *lb;
                check((prime_mask >> lone) & 1, Errc::invariant_breach,
                      "half-open edge carries an uncertified label");
            }
        }
    }
    return c;
}

/// Solver for problems with a fullness certificate (v_prime, l): builds a
/// (2l+2)-toast and completes each piece exactly, never revising committed
/// assignments, with every vertex multiset confined to v_prime.
inline Coloring toast_color(const HalfEdgeGraph& g, const Lcl& lcl, const FullnessCertificate& cert,
                            const SolveOptions& opts = {}) {
    check(g.delta() == lcl.delta(), Errc::semantic_error, "graph and problem disagree on delta");
    check(g.is_forest(), Errc::not_a_forest, "toast-driven solving requires a forest");
    check(!cert.v_prime.empty(), Errc::certificate_invalid, "certificate subset is empty");
    for (const auto& m : cert.v_prime)
        check(lcl.vertex_allowed(m), Errc::certificate_invalid,
              "certificate subset is not a vertex-constraint subset");
    check(is_l_full(lcl, cert.v_prime, cert.l), Errc::certificate_invalid,
          "certificate subset is not l-full at the claimed l");

    std::vector<int> order = detail::resolve_order(g, opts.order);
    Toast toast = build_toast(g, 2 * cert.l + 2, order);

    Coloring committed;
    for (const auto& piece : toast.pieces) {
        // Materialize the piece as a graph of its own: edges leaving the piece
        // keep only their inside endpoint, so they carry no pair constraint
        // here; the pair is enforced by the later piece that sees both halves.
        std::vector<int> edge_idxs;
        for (int v : piece.vertices)
            for (int ei : g.incident_edges(v)) edge_idxs.push_back(ei);
        std::sort(edge_idxs.begin(), edge_idxs.end());
        edge_idxs.erase(std::unique(edge_idxs.begin(), edge_idxs.end()), edge_idxs.end());
        std::vector<EdgeSpec> specs;
        auto inside = [&](int v) {
            return std::binary_search(piece.vertices.begin(), piece.vertices.end(), v);
        };
        for (int ei : edge_idxs) {
            const Edge& e = g.edge(ei);
            EdgeSpec spec{e.id, {}};
            if (inside(e.a)) spec.ends.push_back(e.a);
            if (e.b >= 0 && inside(e.b)) spec.ends.push_back(e.b);
            if (e.b >= 0 && !inside(e.b)) {
                auto outside_half = committed.get(e.b, e.id);
                auto inside_half = committed.get(e.a, e.id);
                check(!outside_half || inside_half, Errc::invariant_breach,
                      "boundary edge colored on the outside only");
            }
            specs.push_back(std::move(spec));
        }
        HalfEdgeGraph sub = HalfEdgeGraph::make(piece.vertices, std::move(specs), g.delta());

        Coloring pinned;
        for (int v : piece.vertices)
            for (int ei : g.incident_edges(v))
                if (auto l = committed.get(v, g.edge(ei).id)) pinned.set(v, g.edge(ei).id, *l);

        size_t before = committed.size();
        auto result = complete({sub, lcl, pinned, &cert.v_prime});
        check(result.has_value(), Errc::completion_failure,
              "piece " + std::to_string(piece.id) + " admits no certified completion");

        SolveTraceEvent ev{"piece", piece.id, {}};
        for (const auto& [key, label] : *result) {
            auto prev = committed.get(key.first, key.second);
            if (prev) {
                check(*prev == label, Errc::invariant_breach, "committed assignment was revised");
                continue;
            }
            committed.set(key.first, key.second, label);
            if (opts.trace) ev.assigned.emplace_back(key.first, key.second, label);
        }
        if (opts.check_invariants)
            check(committed.size() >= before, Errc::invariant_breach, "commitments shrank");
        if (opts.trace) opts.trace(ev);
    }
    return committed;
}

} // namespace lct
