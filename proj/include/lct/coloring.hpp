#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lct/graph.hpp"
#include "lct/lcl.hpp"

namespace lct {

struct HalfEdgeRef {
    int vertex;
    std::string edge;
    bool operator==(const HalfEdgeRef&) const = default;
};

struct HalfEdgeKeyLess {
    bool operator()(const std::pair<int, std::string>& x, const std::pair<int, std::string>& y) const {
        if (x.first != y.first) return x.first < y.first;
        return shortlex_less(x.second, y.second);
    }
};

/// Partial assignment of labels to half edges, keyed by (vertex id, edge id).
class Coloring {
public:
    using Map = std::map<std::pair<int, std::string>, int, HalfEdgeKeyLess>;

    void set(int vertex, const std::string& edge, int label) { m_[{vertex, edge}] = label; }

    std::optional<int> get(int vertex, const std::string& edge) const {
        auto it = m_.find({vertex, edge});
        if (it == m_.end()) return std::nullopt;
        return it->second;
    }

    size_t size() const { return m_.size(); }
    bool empty() const { return m_.empty(); }
    Map::const_iterator begin() const { return m_.begin(); }
    Map::const_iterator end() const { return m_.end(); }

    bool operator==(const Coloring&) const = default;

private:
    Map m_;
};

struct EdgeViolation {
    std::string edge;
    std::vector<int> observed; // the two half-edge labels, sorted
    bool operator==(const EdgeViolation&) const = default;
};

struct VertexViolation {
    int vertex;
    std::vector<int> observed; // the delta-multiset, sorted
    bool operator==(const VertexViolation&) const = default;
};

struct IncompleteColoring {
    std::vector<HalfEdgeRef> missing;
    bool operator==(const IncompleteColoring&) const = default;
};

using Violation = std::variant<EdgeViolation, VertexViolation, IncompleteColoring>;

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks a coloring against the problem: total on all half edges, every true
/// edge's pair admissible, every vertex's multiset admissible. Virtual edges
/// impose no pair constraint. All violations are reported, not just the first.
inline Verdict verify_coloring(const HalfEdgeGraph& g, const Lcl& lcl, const Coloring& c) {
    check(g.delta() == lcl.delta(), Errc::semantic_error, "graph and problem disagree on delta");
    Verdict verdict;
    IncompleteColoring missing;
    for (const auto& [key, label] : c) {
        const auto& [v, eid] = key;
        int ei = g.has_vertex(v) ? g.edge_index(eid) : -1;
        bool incident = false;
        if (ei >= 0) {
            const Edge& e = g.edge(ei);
            incident = e.a == v || e.b == v;
        }
        check(incident, Errc::semantic_error,
              "coloring assigns a half edge (" + std::to_string(v) + ", " + eid +
                  ") outside the graph's incidence");
        check(label >= 0 && label < lcl.alphabet_size(), Errc::semantic_error,
              "coloring uses a label outside the alphabet");
    }
    for (int v : g.vertex_ids()) {
        std::vector<int> star;
        bool complete = true;
        for (int ei : g.incident_edges(v)) {
            auto l = c.get(v, g.edge(ei).id);
            if (!l) {
                missing.missing.push_back({v, g.edge(ei).id});
                complete = false;
            } else {
                star.push_back(*l);
            }
        }
        if (complete) {
            LabelMultiset m(std::move(star));
            if (!lcl.vertex_allowed(m))
                verdict.violations.push_back(VertexViolation{v, m.labels()});
        }
    }
    for (const auto& e : g.edges()) {
        if (!e.is_true()) continue;
        auto la = c.get(e.a, e.id);
        auto lb = c.get(e.b, e.id);
        if (!la || !lb) continue; // already reported as incomplete
        LabelMultiset pair({*la, *lb});
        if (!std::binary_search(lcl.edge_constraints().begin(), lcl.edge_constraints().end(), pair))
            verdict.violations.push_back(EdgeViolation{e.id, pair.labels()});
    }
    if (!missing.missing.empty()) verdict.violations.push_back(std::move(missing));
    return verdict;
}

} // namespace lct
