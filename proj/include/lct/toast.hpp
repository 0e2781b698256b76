#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "lct/graph.hpp"

namespace lct {

struct ToastPiece {
    int id = 0;
    std::vector<int> vertices; // sorted
    int stage = 0;             // stream position at which the piece was added
    bool operator==(const ToastPiece&) const = default;
};

/// A family of finite connected pieces in which distinct pieces are either
/// nested with an l-buffer or more than l apart, and any two same-component
/// vertices share a piece.
struct Toast {
    int l = 0;
    std::vector<ToastPiece> pieces; // birth order
    bool operator==(const Toast&) const = default;
};

namespace detail {

inline bool sorted_subset(const std::vector<int>& small, const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool sorted_intersects(const std::vector<int>& x, const std::vector<int>& y) {
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) return true;
        if (x[i] < y[j]) ++i; else ++j;
    }
    return false;
}

} // namespace detail

/// Online construction: vertices arrive in stream order; a vertex whose
/// radius-1 ball is not yet inside a piece contributes the ball of the least
/// radius r > 0 that keeps the pairwise nesting/distance condition intact.
///
/// The stream defaults to all vertices in ascending order. A duplicate-free
/// prefix is also accepted: stopping the stream early replays exactly the
/// pieces born up to that stage, which is what makes membership decidable
/// from a finite prefix. The cover condition is only guaranteed for complete
/// streams.
inline Toast build_toast(const HalfEdgeGraph& g, int l,
                         std::optional<std::vector<int>> stream_order = std::nullopt) {
    check(l >= 0, Errc::bad_parameter, "l must be >= 0");
    std::vector<int> order = stream_order ? std::move(*stream_order) : g.vertex_ids();
    {
        std::vector<int> sorted(order);
        std::sort(sorted.begin(), sorted.end());
        check(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), Errc::bad_parameter,
              "stream order must not repeat vertices");
        for (int v : sorted)
            check(g.has_vertex(v), Errc::bad_parameter,
                  "stream order mentions unknown vertex " + std::to_string(v));
    }
    Toast toast;
    toast.l = l;
    std::vector<std::vector<int>> buffers; // B(piece, l), cached per piece
    for (size_t stage = 0; stage < order.size(); ++stage) {
        int n = order[stage];
        std::vector<int> ball1 = g.neighborhood({n}, 1);
        bool covered = false;
        for (const auto& p : toast.pieces)
            if (detail::sorted_subset(ball1, p.vertices)) {
                covered = true;
                break;
            }
        if (covered) continue;
        for (int r = 1;; ++r) {
            std::vector<int> piece = g.neighborhood({n}, r);
            std::vector<int> buffer = g.neighborhood(piece, l);
            bool ok = true;
            for (size_t i = 0; i < toast.pieces.size() && ok; ++i) {
                const auto& other = toast.pieces[i].vertices;
                if (detail::sorted_subset(buffers[i], piece)) continue; // old nested in new
                if (detail::sorted_subset(buffer, other)) continue;     // new nested in old
                ok = !detail::sorted_intersects(buffer, other);         // distance > l
            }
            if (ok) {
                toast.pieces.push_back(
                    {static_cast<int>(toast.pieces.size()), std::move(piece), static_cast<int>(stage)});
                buffers.push_back(std::move(buffer));
                break;
            }
            check(r <= g.vertex_count() + 1, Errc::invariant_breach,
                  "least-radius search failed to terminate");
        }
    }
    return toast;
}

struct EmptyPieceViolation {
    int piece;
};
struct UnknownPieceVertexViolation {
    int piece;
    int vertex;
};
struct DisconnectedPieceViolation {
    int piece;
};
struct PairConditionViolation {
    int piece_a;
    int piece_b;
};
struct CoverConditionViolation {
    int x;
    int y;
};

using ToastViolation = std::variant<EmptyPieceViolation, UnknownPieceVertexViolation,
                                    DisconnectedPieceViolation, PairConditionViolation,
                                    CoverConditionViolation>;

struct ToastVerdict {
    std::vector<ToastViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive check of both toast conditions on a finite graph.
inline ToastVerdict verify_toast(const HalfEdgeGraph& g, int l, const std::vector<ToastPiece>& pieces) {
    ToastVerdict verdict;
    std::vector<std::vector<int>> sets;
    for (const auto& p : pieces) {
        std::vector<int> s(p.vertices);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        bool known = true;
        for (int v : s)
            if (!g.has_vertex(v)) {
                verdict.violations.push_back(UnknownPieceVertexViolation{p.id, v});
                known = false;
            }
        if (!known) {
            sets.push_back(std::move(s));
            continue;
        }
        if (s.empty()) {
            verdict.violations.push_back(EmptyPieceViolation{p.id});
        } else {
            // Connectivity: grow within the piece from its least vertex.
            std::unordered_set<int> inside(s.begin(), s.end());
            std::vector<int> stack{s[0]};
            std::unordered_set<int> seen{s[0]};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [nb, ei] : g.adjacency(v))
                    if (inside.count(nb) && seen.insert(nb).second) stack.push_back(nb);
            }
            if (seen.size() != s.size()) verdict.violations.push_back(DisconnectedPieceViolation{p.id});
        }
        sets.push_back(std::move(s));
    }

    for (size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) continue;
        std::vector<int> buffer_i = g.neighborhood(sets[i], l);
        for (size_t j = i + 1; j < sets.size(); ++j) {
            if (sets[j].empty()) continue;
            if (sets[i] == sets[j]) continue;
            if (detail::sorted_subset(buffer_i, sets[j])) continue;
            std::vector<int> buffer_j = g.neighborhood(sets[j], l);
            if (detail::sorted_subset(buffer_j, sets[i])) continue;
            if (detail::sorted_intersects(buffer_i, sets[j]))
                verdict.violations.push_back(PairConditionViolation{pieces[i].id, pieces[j].id});
        }
    }

    // Cover condition: same-component vertex pairs must share a piece.
    const auto& vids = g.vertex_ids();
    std::vector<int> comp = g.component_labels();
    int words = (static_cast<int>(sets.size()) + 63) / 64;
    std::vector<std::vector<uint64_t>> membership(vids.size(), std::vector<uint64_t>(words, 0));
    for (size_t pi = 0; pi < sets.size(); ++pi)
        for (int v : sets[pi])
            if (g.has_vertex(v)) membership[g.vertex_index(v)][pi / 64] |= 1ull << (pi % 64);
    for (size_t i = 0; i < vids.size(); ++i)
        for (size_t j = i + 1; j < vids.size(); ++j) {
            if (comp[i] != comp[j]) continue;
            bool shared = false;
            for (int w = 0; w < words && !shared; ++w)
                shared = (membership[i][w] & membership[j][w]) != 0;
            if (!shared) verdict.violations.push_back(CoverConditionViolation{vids[i], vids[j]});
        }
    return verdict;
}

} // namespace lct
