#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "lct/classify.hpp"
#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/io.hpp"
#include "lct/lcl.hpp"
#include "lct/solve.hpp"
#include "lct/treesolve.hpp"

namespace lct {

enum class AdversaryMode { hc, comp };
enum class Tri { yes, no, undetermined };

/// Growing forest built stage by stage. Vertices receive their full set of
/// incidences at birth; edges only ever gain a second endpoint. Ids are dense
/// and increase with creation, so any stage prefix is an id prefix.
class StagedGraph {
public:
    explicit StagedGraph(int delta) : delta_(delta) {}

    int delta() const { return delta_; }
    int vertex_count() const { return static_cast<int>(vbirth_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// New vertex adopting the given virtual edges (making them true), padded
    /// with fresh virtual edges up to delta. Adopted edges must come from
    /// pairwise distinct components; the union-find merge rejects cycles.
    int add_vertex(int stage, const std::vector<int>& adopt) {
        check(static_cast<int>(adopt.size()) <= delta_, Errc::invariant_breach,
              "vertex cannot adopt more edges than delta");
        int v = vertex_count();
        vbirth_.push_back(stage);
        uf_.push_back(v);
        inc_.emplace_back();
        inc_[v].reserve(delta_);
        for (int e : adopt) {
            check(e >= 0 && e < edge_count() && edges_[e].b < 0, Errc::invariant_breach,
                  "adopted edge must exist and be virtual");
            edges_[e].b = v;
            edges_[e].join = stage;
            inc_[v].push_back(e);
            merge(edges_[e].a, v);
        }
        for (int j = static_cast<int>(adopt.size()); j < delta_; ++j) {
            int e = edge_count();
            edges_.push_back({v, -1, stage, -1});
            inc_[v].push_back(e);
        }
        return v;
    }

    int vertex_birth(int v) const { return vbirth_[v]; }
    int edge_birth(int e) const { return edges_[e].birth; }
    int edge_join_stage(int e) const { return edges_[e].join; }
    int edge_a(int e) const { return edges_[e].a; }
    int edge_b(int e) const { return edges_[e].b; }
    bool edge_is_true(int e) const { return edges_[e].b >= 0; }
    const std::vector<int>& incident(int v) const { return inc_[v]; }

    bool vertex_exists_at(int v, int stage) const {
        return v >= 0 && v < vertex_count() && vbirth_[v] <= stage;
    }
    bool edge_exists_at(int e, int stage) const {
        return e >= 0 && e < edge_count() && edges_[e].birth <= stage;
    }
    bool edge_true_at(int e, int stage) const {
        return edge_exists_at(e, stage) && edges_[e].join >= 0 && edges_[e].join <= stage;
    }
    std::pair<int, int> edge_ends_at(int e, int stage) const {
        return {edges_[e].a, edge_true_at(e, stage) ? edges_[e].b : -1};
    }

    int component(int v) const { return find(v); }

    std::vector<std::pair<int, int>> true_neighbors(int v) const {
        std::vector<std::pair<int, int>> out;
        for (int e : inc_[v])
            if (edges_[e].b >= 0) out.emplace_back(edges_[e].a == v ? edges_[e].b : edges_[e].a, e);
        return out;
    }

    /// Vertices within distance r of v through true edges, ascending ids.
    std::vector<int> ball(int v, int r, int stage = -1) const {
        int s = stage < 0 ? 1 << 30 : stage;
        std::map<int, int> dist{{v, 0}};
        std::queue<int> q;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (dist[u] == r) continue;
            for (int e : inc_[u]) {
                if (!edge_true_at(e, s)) continue;
                int nb = edges_[e].a == u ? edges_[e].b : edges_[e].a;
                if (dist.emplace(nb, dist[u] + 1).second) q.push(nb);
            }
        }
        std::vector<int> out;
        for (auto& [u, d] : dist) out.push_back(u);
        return out;
    }

    static std::string edge_name(int e) { return "e" + std::to_string(e); }

    HalfEdgeGraph to_half_edge_graph(int stage = -1) const {
        int s = stage < 0 ? 1 << 30 : stage;
        std::vector<int> vertices;
        for (int v = 0; v < vertex_count() && vbirth_[v] <= s; ++v) vertices.push_back(v);
        std::vector<EdgeSpec> specs;
        for (int e = 0; e < edge_count() && edges_[e].birth <= s; ++e) {
            EdgeSpec spec{edge_name(e), {edges_[e].a}};
            if (edge_true_at(e, s)) spec.ends.push_back(edges_[e].b);
            specs.push_back(std::move(spec));
        }
        return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta_);
    }

    /// Subgraph induced on the given vertices at the current stage: edges
    /// keep only their in-set endpoints.
    HalfEdgeGraph induced_subgraph(std::vector<int> vertices) const {
        std::sort(vertices.begin(), vertices.end());
        std::vector<int> edge_idxs;
        for (int v : vertices)
            for (int e : inc_[v]) edge_idxs.push_back(e);
        std::sort(edge_idxs.begin(), edge_idxs.end());
        edge_idxs.erase(std::unique(edge_idxs.begin(), edge_idxs.end()), edge_idxs.end());
        auto inside = [&](int v) { return std::binary_search(vertices.begin(), vertices.end(), v); };
        std::vector<EdgeSpec> specs;
        for (int e : edge_idxs) {
            EdgeSpec spec{edge_name(e), {}};
            if (inside(edges_[e].a)) spec.ends.push_back(edges_[e].a);
            if (edges_[e].b >= 0 && inside(edges_[e].b)) spec.ends.push_back(edges_[e].b);
            specs.push_back(std::move(spec));
        }
        return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta_);
    }

    /// Order-independent fingerprint of the stage prefix; equal hashes mean
    /// identical canonical serializations.
    uint64_t structure_hash(int stage = -1) const {
        int s = stage < 0 ? 1 << 30 : stage;
        uint64_t h = 1469598103934665603ull;
        auto mix = [&h](long long value) { h = fnv1a64(&value, sizeof(value), h); };
        mix(delta_);
        int vcount = 0;
        while (vcount < vertex_count() && vbirth_[vcount] <= s) ++vcount;
        mix(vcount);
        for (int e = 0; e < edge_count() && edges_[e].birth <= s; ++e) {
            mix(e);
            mix(edges_[e].a);
            mix(edge_true_at(e, s) ? edges_[e].b : -1);
        }
        return h;
    }

    /// Shortest path between two vertices through true edges, inclusive.
    std::vector<int> tree_path(int from, int to) const {
        std::map<int, int> parent{{from, from}};
        std::queue<int> q;
        q.push(from);
        while (!q.empty() && !parent.count(to)) {
            int u = q.front();
            q.pop();
            for (auto [nb, e] : true_neighbors(u))
                if (parent.emplace(nb, u).second) q.push(nb);
        }
        check(parent.count(to) > 0, Errc::invariant_breach, "vertices not connected");
        std::vector<int> path{to};
        while (path.back() != from) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
    }

private:
    int find(int v) const {
        while (uf_[v] != v) {
            uf_[v] = uf_[uf_[v]];
            v = uf_[v];
        }
        return v;
    }
    void merge(int a, int b) {
        int ra = find(a), rb = find(b);
        check(ra != rb, Errc::invariant_breach, "construction would close a cycle");
        uf_[std::max(ra, rb)] = std::min(ra, rb);
    }

    struct E {
        int a, b, birth, join;
    };
    int delta_;
    std::vector<int> vbirth_;
    std::vector<E> edges_;
    std::vector<std::vector<int>> inc_;
    mutable std::vector<int> uf_;
};

/// Read-only oracle over the committed construction prefix. Queries about the
/// current stage or later come back undetermined; a solver that cannot commit
/// without them must answer "not yet".
class ConstructionView {
public:
    ConstructionView(const StagedGraph& g, int current_stage)
        : g_(g), current_(current_stage) {}

    int last_visible_stage() const { return current_ - 1; }
    int delta() const { return g_.delta(); }

    Tri vertex_exists(int v, int stage) const {
        if (stage > last_visible_stage()) return Tri::undetermined;
        return g_.vertex_exists_at(v, stage) ? Tri::yes : Tri::no;
    }
    Tri incident(int v, int e, int stage) const {
        if (stage > last_visible_stage()) return Tri::undetermined;
        if (!g_.vertex_exists_at(v, stage) || !g_.edge_exists_at(e, stage)) return Tri::no;
        auto [a, b] = g_.edge_ends_at(e, stage);
        return (a == v || b == v) ? Tri::yes : Tri::no;
    }
    Tri true_edge(int e, int stage) const {
        if (stage > last_visible_stage()) return Tri::undetermined;
        if (!g_.edge_exists_at(e, stage)) return Tri::no;
        return g_.edge_true_at(e, stage) ? Tri::yes : Tri::no;
    }

    std::vector<int> incident_edges(int v, int stage) const {
        if (stage > last_visible_stage() || !g_.vertex_exists_at(v, stage)) return {};
        return g_.incident(v);
    }
    std::optional<std::pair<int, int>> edge_ends(int e, int stage) const {
        if (stage > last_visible_stage() || !g_.edge_exists_at(e, stage)) return std::nullopt;
        return g_.edge_ends_at(e, stage);
    }
    std::vector<int> ball(int v, int r, int stage) const {
        if (stage > last_visible_stage() || !g_.vertex_exists_at(v, stage)) return {};
        return g_.ball(v, r, stage);
    }

private:
    const StagedGraph& g_;
    int current_;
};

/// Candidate online coloring procedure. Contract: deterministic, and once it
/// converges on a half edge at some budget it returns the same label at every
/// larger budget.
class OnlineSolver {
public:
    virtual ~OnlineSolver() = default;
    virtual std::string name() const = 0;
    virtual std::optional<int> answer(int vertex, int edge, int budget,
                                      const ConstructionView& view) = 0;
};

namespace detail {

inline uint64_t he_key(int v, int e) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(v)) << 32) | static_cast<uint32_t>(e);
}

/// Waits until the radius-r view around the queried half edge is unchanged
/// across one stage, then commits the least admissible coloring of that view
/// (or label 0 when the view admits none; a wrong answer is still an answer).
class LookaheadSolver final : public OnlineSolver {
public:
    LookaheadSolver(const Lcl& lcl, int radius) : lcl_(lcl), radius_(radius) {
        check(radius >= 0, Errc::bad_parameter, "lookahead radius must be >= 0");
    }

    std::string name() const override { return "lookahead:" + std::to_string(radius_); }

    std::optional<int> answer(int v, int e, int budget, const ConstructionView& view) override {
        uint64_t key = he_key(v, e);
        if (auto it = done_.find(key); it != done_.end()) return it->second;
        int hi = std::min(budget, view.last_visible_stage());
        int& next = cursor_[key];
        if (next < 1) next = 1;
        for (; next <= hi; ++next) {
            auto label = rule(v, e, next, view);
            if (label) {
                done_[key] = *label;
                ++next;
                return label;
            }
        }
        return std::nullopt;
    }

private:
    std::optional<int> rule(int v, int e, int stage, const ConstructionView& view) const {
        if (view.vertex_exists(v, stage) != Tri::yes || view.vertex_exists(v, stage - 1) != Tri::yes)
            return std::nullopt;
        if (signature(v, stage, view) != signature(v, stage - 1, view)) return std::nullopt;
        auto ball = view.ball(v, radius_, stage);
        std::vector<EdgeSpec> specs;
        std::set<int> edges_seen;
        auto inside = [&](int u) { return std::binary_search(ball.begin(), ball.end(), u); };
        for (int u : ball)
            for (int ei : view.incident_edges(u, stage))
                if (edges_seen.insert(ei).second) {
                    auto ends = view.edge_ends(ei, stage);
                    EdgeSpec spec{StagedGraph::edge_name(ei), {}};
                    if (inside(ends->first)) spec.ends.push_back(ends->first);
                    if (ends->second >= 0 && inside(ends->second)) spec.ends.push_back(ends->second);
                    specs.push_back(std::move(spec));
                }
        auto sub = HalfEdgeGraph::make(ball, std::move(specs), view.delta());
        Coloring empty;
        auto best = complete({sub, lcl_, empty, nullptr});
        if (!best) return 0;
        return best->get(v, StagedGraph::edge_name(e));
    }

    std::string signature(int v, int stage, const ConstructionView& view) const {
        auto ball = view.ball(v, radius_, stage);
        std::string sig;
        for (int u : ball) {
            sig += 'v' + std::to_string(u) + ':';
            for (int ei : view.incident_edges(u, stage)) {
                auto ends = view.edge_ends(ei, stage);
                sig += std::to_string(ei) + '(' + std::to_string(ends->first) + ',' +
                       std::to_string(ends->second) + ')';
            }
            sig += ';';
        }
        return sig;
    }

    Lcl lcl_;
    int radius_;
    std::map<uint64_t, int> done_;
    std::map<uint64_t, int> cursor_;
};

class ObliviousSolver final : public OnlineSolver {
public:
    ObliviousSolver(const Lcl& lcl, int label) : label_(label) {
        check(label >= 0 && label < lcl.alphabet_size(), Errc::bad_parameter,
              "oblivious label outside the alphabet");
    }
    std::string name() const override { return "oblivious:" + std::to_string(label_); }
    std::optional<int> answer(int, int, int budget, const ConstructionView&) override {
        if (budget < 1) return std::nullopt;
        return label_;
    }

private:
    int label_;
};

/// Replays the one-pass greedy procedure against the committed prefix. Sound
/// only for problems with a greedy certificate; the constructions refuse
/// those, so this mainly documents that the guard is what protects them.
class ReplaySolver final : public OnlineSolver {
public:
    explicit ReplaySolver(const Lcl& lcl) : lcl_(lcl) {
        auto cert = decide_greediness(lcl);
        check(cert.has_value(), Errc::bad_parameter,
              "replay solver needs a problem with a greedy certificate");
        for (int l : cert->sigma_prime) prime_mask_ |= 1u << l;
    }

    std::string name() const override { return "replay"; }

    std::optional<int> answer(int v, int e, int budget, const ConstructionView& view) override {
        int hi = std::min(budget, view.last_visible_stage());
        if (view.vertex_exists(v, hi) != Tri::yes) return std::nullopt;
        const auto& labels = star(v, view);
        const auto inc = view.incident_edges(v, hi);
        for (size_t i = 0; i < inc.size(); ++i)
            if (inc[i] == e) return labels[i];
        return std::nullopt;
    }

private:
    /// Star labels for v, aligned with its incident edges. Edges adopted by v
    /// (second endpoint v) lead to older neighbors whose choices are fixed,
    /// everything else stays inside the greedy label set.
    const std::vector<int>& star(int v, const ConstructionView& view) {
        auto it = memo_.find(v);
        if (it != memo_.end()) return it->second;
        int s = view.last_visible_stage();
        const auto inc = view.incident_edges(v, s);
        std::vector<uint32_t> masks;
        for (int e : inc) {
            auto ends = view.edge_ends(e, s);
            if (ends && ends->second == v) {
                int older = ends->first;
                const auto& other = star(older, view);
                const auto other_inc = view.incident_edges(older, s);
                int partner = -1;
                for (size_t i = 0; i < other_inc.size(); ++i)
                    if (other_inc[i] == e) partner = other[i];
                uint32_t mask = 0;
                for (int x = 0; x < lcl_.alphabet_size(); ++x)
                    if (lcl_.edge_allowed(partner, x)) mask |= 1u << x;
                masks.push_back(mask);
            } else {
                masks.push_back(prime_mask_);
            }
        }
        std::vector<int> chosen;
        check(detail::least_star_assignment(lcl_, masks, chosen), Errc::invariant_breach,
              "replayed greedy step lost its star assignment");
        return memo_.emplace(v, std::move(chosen)).first->second;
    }

    Lcl lcl_;
    uint32_t prime_mask_ = 0;
    std::map<int, std::vector<int>> memo_;
};

} // namespace detail

inline std::unique_ptr<OnlineSolver> make_lookahead_solver(const Lcl& lcl, int radius) {
    return std::make_unique<detail::LookaheadSolver>(lcl, radius);
}
inline std::unique_ptr<OnlineSolver> make_oblivious_solver(const Lcl& lcl, int label) {
    return std::make_unique<detail::ObliviousSolver>(lcl, label);
}
inline std::unique_ptr<OnlineSolver> make_replay_solver(const Lcl& lcl) {
    return std::make_unique<detail::ReplaySolver>(lcl);
}

/// Spec grammar: builtin:lookahead:R | builtin:oblivious:LABEL | builtin:replay.
inline std::unique_ptr<OnlineSolver> make_builtin_solver(const Lcl& lcl, const std::string& spec) {
    std::vector<std::string> parts;
    size_t from = 0;
    while (true) {
        size_t colon = spec.find(':', from);
        parts.push_back(spec.substr(from, colon - from));
        if (colon == std::string::npos) break;
        from = colon + 1;
    }
    check(!parts.empty() && parts[0] == "builtin", Errc::bad_parameter,
          "solver spec must start with 'builtin:'");
    if (parts.size() == 3 && parts[1] == "lookahead") {
        try {
            return make_lookahead_solver(lcl, std::stoi(parts[2]));
        } catch (const std::logic_error&) {
            fail(Errc::bad_parameter, "bad lookahead radius '" + parts[2] + "'");
        }
    }
    if (parts.size() == 3 && parts[1] == "oblivious")
        return make_oblivious_solver(lcl, lcl.label_id(parts[2]));
    if (parts.size() == 2 && parts[1] == "replay") return make_replay_solver(lcl);
    fail(Errc::bad_parameter, "unknown solver spec '" + spec + "'");
}

enum class OutcomeKind { violation, divergence, budget_exhausted };

struct TrackedViolation {
    int object_index = 0;
    Verdict verdict;
};

struct AdversaryOutcome {
    OutcomeKind kind = OutcomeKind::divergence;
    int stage = 0;
    std::vector<TrackedViolation> violations;   // violation outcome
    std::vector<std::pair<int, int>> pending;   // divergence outcome: (vertex, edge)
};

struct AdversaryStageRecord {
    int stage = 0;
    std::string kase; // "initial" | "uninteresting" | "interesting"
    long long new_vertices_first = -1, new_vertices_count = 0;
    long long new_edges_first = -1, new_edges_count = 0;
    long long n_value = 0;
    int interesting_count = 0;
    long long pending_count = 0;
    bool tracked_changed = false;
    std::vector<std::vector<int>> tracked;                                    // paths / centers
    std::vector<int> tracked_set;                                             // vc indices / labels
    std::vector<std::pair<int, std::vector<int>>> vertex_reserves;            // per vc index
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> half_edge_reserves; // per label
    uint64_t graph_hash = 0;
    long long vertex_count = 0, edge_count = 0;
};

struct AdversaryTranscript {
    AdversaryMode mode = AdversaryMode::hc;
    long long n0 = 0;
    int max_stages = 0;
    std::string solver;
    std::vector<AdversaryStageRecord> stages;
    AdversaryOutcome outcome;
    HalfEdgeGraph final_graph;
};

struct AdversaryOptions {
    int max_stages = 200;
    std::optional<long long> n0;
};

namespace detail {

class AdversaryEngine {
public:
    AdversaryEngine(const Lcl& lcl, OnlineSolver& solver, AdversaryMode mode,
                    const AdversaryOptions& opts)
        : lcl_(lcl), solver_(solver), mode_(mode), opts_(opts), g_(lcl.delta()) {}

    AdversaryTranscript run() {
        if (mode_ == AdversaryMode::hc)
            check(!decide_fullness(lcl_).has_value(), Errc::lcl_is_full,
                  "construction requires a problem with no fullness certificate");
        else
            check(!decide_greediness(lcl_).has_value(), Errc::lcl_is_greedy,
                  "construction requires a problem with no greedy certificate");

        long long cap = mode_ == AdversaryMode::hc
                            ? static_cast<long long>(lcl_.vertex_constraints().size())
                            : lcl_.alphabet_size();
        long long base = mode_ == AdversaryMode::hc
                             ? 4 * static_cast<long long>(lcl_.vertex_constraints().size())
                             : 2 * static_cast<long long>(lcl_.delta()) * lcl_.alphabet_size();
        long long n0 = 1;
        if (opts_.n0) {
            n0 = *opts_.n0;
            check(n0 >= 1, Errc::bad_parameter, "n0 must be positive");
        } else {
            for (long long i = 0; i <= cap; ++i) {
                n0 *= base;
                check(n0 <= 4'000'000, Errc::bad_parameter,
                      "default n0 is too large to materialize; pass an explicit n0");
            }
        }

        transcript_.mode = mode_;
        transcript_.n0 = n0;
        transcript_.max_stages = opts_.max_stages;
        transcript_.solver = solver_.name();

        initial_stage(n0);

        bool decided = false;
        int stage = 0;
        for (stage = 1; stage <= opts_.max_stages && !decided; ++stage)
            decided = run_stage(stage);
        if (!decided) {
            transcript_.outcome.stage = opts_.max_stages;
            if (!pending_.empty()) {
                transcript_.outcome.kind = OutcomeKind::divergence;
                for (uint64_t key : pending_)
                    transcript_.outcome.pending.emplace_back(static_cast<int>(key >> 32),
                                                             static_cast<int>(key & 0xffffffffu));
            } else {
                transcript_.outcome.kind = OutcomeKind::budget_exhausted;
            }
        }
        transcript_.final_graph = g_.to_half_edge_graph();
        return std::move(transcript_);
    }

private:
    // ---- shared machinery ----

    void initial_stage(long long n0) {
        n_ = n0;
        for (long long i = 0; i < n0; ++i) {
            int v = g_.add_vertex(0, {});
            tracked_.push_back({v});
        }
        rebuild_queries();
        AdversaryStageRecord rec = base_record(0, "initial");
        rec.new_vertices_first = 0;
        rec.new_vertices_count = g_.vertex_count();
        rec.new_edges_first = 0;
        rec.new_edges_count = g_.edge_count();
        rec.tracked_changed = true;
        fill_tracked(rec);
        transcript_.stages.push_back(std::move(rec));
    }

    AdversaryStageRecord base_record(int stage, const char* kase) {
        AdversaryStageRecord rec;
        rec.stage = stage;
        rec.kase = kase;
        rec.n_value = n_;
        rec.interesting_count = interesting_count_;
        rec.pending_count = static_cast<long long>(pending_.size());
        rec.graph_hash = g_.structure_hash();
        rec.vertex_count = g_.vertex_count();
        rec.edge_count = g_.edge_count();
        return rec;
    }

    void fill_tracked(AdversaryStageRecord& rec) {
        rec.tracked = tracked_;
        rec.tracked_set = tracked_set_;
        for (const auto& [key, vec] : vertex_reserves_) rec.vertex_reserves.emplace_back(key, vec);
        for (const auto& [key, vec] : half_edge_reserves_)
            rec.half_edge_reserves.emplace_back(key, vec);
    }

    /// Query set: every half edge meeting a tracked object (the whole path in
    /// one mode, the radius-1 ball around the center in the other).
    void rebuild_queries() {
        queries_.clear();
        for (const auto& object : tracked_)
            for (int v : object_vertices(object))
                for (int e : g_.incident(v)) queries_.push_back(he_key(v, e));
        pending_.clear();
        for (uint64_t key : queries_)
            if (!converged_.count(key)) pending_.push_back(key);
    }

    std::vector<int> object_vertices(const std::vector<int>& object) const {
        if (mode_ == AdversaryMode::hc) return object;
        return g_.ball(object[0], 1);
    }

    /// Runs the solver on all pending half edges. Returns true when the run
    /// reached an outcome.
    bool run_stage(int stage) {
        ConstructionView view(g_, stage);
        int budget = stage - 1;
        std::vector<uint64_t> still;
        for (uint64_t key : pending_) {
            int v = static_cast<int>(key >> 32), e = static_cast<int>(key & 0xffffffffu);
            auto label = solver_.answer(v, e, budget, view);
            if (label) {
                check(*label >= 0 && *label < lcl_.alphabet_size(), Errc::bad_parameter,
                      "solver returned a label outside the alphabet");
                converged_.emplace(key, *label);
            } else {
                still.push_back(key);
            }
        }
        pending_ = std::move(still);

        if (!pending_.empty()) {
            uninteresting_case(stage);
            return false;
        }

        // Everything converged: inspect the induced colorings.
        std::vector<TrackedViolation> violations;
        for (size_t i = 0; i < tracked_.size(); ++i) {
            auto vertices = object_vertices(tracked_[i]);
            auto sub = g_.induced_subgraph(vertices);
            Coloring c;
            for (int v : vertices)
                for (int e : g_.incident(v))
                    c.set(v, StagedGraph::edge_name(e), converged_.at(he_key(v, e)));
            auto verdict = verify_coloring(sub, lcl_, c);
            if (!verdict.ok()) violations.push_back({static_cast<int>(i), std::move(verdict)});
        }
        if (!violations.empty()) {
            transcript_.outcome.kind = OutcomeKind::violation;
            transcript_.outcome.stage = stage;
            transcript_.outcome.violations = std::move(violations);
            return true;
        }

        long long cap = mode_ == AdversaryMode::hc
                            ? static_cast<long long>(lcl_.vertex_constraints().size())
                            : lcl_.alphabet_size();
        check(interesting_count_ < cap, Errc::invariant_breach,
              "tracked set saturated yet the coloring is admissible");
        if (mode_ == AdversaryMode::hc)
            interesting_case_hc(stage);
        else
            interesting_case_comp(stage);
        return false;
    }

    LabelMultiset converged_star(int v) const {
        std::vector<int> labels;
        for (int e : g_.incident(v)) labels.push_back(converged_.at(he_key(v, e)));
        return LabelMultiset(std::move(labels));
    }

    void assert_tracked_disjoint() const {
        std::set<int> roots;
        auto add = [&](int v) {
            check(roots.insert(g_.component(v)).second, Errc::invariant_breach,
                  "tracked objects share a component");
        };
        for (const auto& object : tracked_) add(object[0]);
        for (const auto& [key, vec] : vertex_reserves_)
            for (int v : vec) add(v);
        for (const auto& [key, vec] : half_edge_reserves_)
            for (auto [v, e] : vec) add(v);
    }

    void finish_mutation_record(AdversaryStageRecord& rec, int first_v, int first_e) {
        rec.new_vertices_first = first_v < g_.vertex_count() ? first_v : -1;
        rec.new_vertices_count = g_.vertex_count() - first_v;
        rec.new_edges_first = first_e < g_.edge_count() ? first_e : -1;
        rec.new_edges_count = g_.edge_count() - first_e;
        rec.n_value = n_;
        rec.interesting_count = interesting_count_;
        rec.graph_hash = g_.structure_hash();
        rec.vertex_count = g_.vertex_count();
        rec.edge_count = g_.edge_count();
    }

    // ---- the uninteresting case ----

    void uninteresting_case(int stage) {
        int first_v = g_.vertex_count(), first_e = g_.edge_count();
        if (mode_ == AdversaryMode::hc) {
            // Cap every virtual edge in the tracked components with a fresh
            // vertex; the pre-existing tracked region ends the stage with no
            // virtual edges.
            std::set<int> roots;
            for (const auto& object : tracked_) roots.insert(g_.component(object[0]));
            for (const auto& [key, vec] : vertex_reserves_)
                for (int v : vec) roots.insert(g_.component(v));
            std::vector<int> caps;
            for (int e = 0; e < first_e; ++e)
                if (!g_.edge_is_true(e) && roots.count(g_.component(g_.edge_a(e)))) caps.push_back(e);
            for (int e : caps) g_.add_vertex(stage, {e});
            for (int e = 0; e < first_e; ++e)
                check(g_.edge_is_true(e) || !roots.count(g_.component(g_.edge_a(e))),
                      Errc::invariant_breach, "tracked region kept a virtual edge after capping");
        }
        AdversaryStageRecord rec = base_record(stage, "uninteresting");
        finish_mutation_record(rec, first_v, first_e);
        transcript_.stages.push_back(std::move(rec));
    }

    // ---- the interesting cases ----

    void interesting_case_hc(int stage) {
        int first_v = g_.vertex_count(), first_e = g_.edge_count();
        const auto& vcs = lcl_.vertex_constraints();

        // Pick the offending vertex of each path and the majority multiset.
        std::vector<int> z(tracked_.size(), -1), z_vc(tracked_.size(), -1);
        std::map<int, long long> freq;
        for (size_t i = 0; i < tracked_.size(); ++i) {
            std::vector<int> sorted(tracked_[i]);
            std::sort(sorted.begin(), sorted.end());
            for (int v : sorted) {
                int idx = lcl_.vertex_constraint_index(converged_star(v));
                check(idx >= 0, Errc::invariant_breach, "admissible coloring left the constraints");
                if (!std::binary_search(tracked_set_.begin(), tracked_set_.end(), idx)) {
                    z[i] = v;
                    z_vc[i] = idx;
                    break;
                }
            }
            check(z[i] >= 0, Errc::invariant_breach,
                  "path coloring stayed inside the tracked subset");
            freq[z_vc[i]]++;
        }
        int d = -1;
        long long best = -1;
        for (auto [idx, count] : freq)
            if (count > best) {
                best = count;
                d = idx;
            }
        check(best * static_cast<long long>(vcs.size()) >= n_, Errc::invariant_breach,
              "majority bound failed");
        std::vector<int> zd;
        for (size_t i = 0; i < tracked_.size(); ++i)
            if (z_vc[i] == d) zd.push_back(z[i]);

        tracked_set_.push_back(d);
        std::sort(tracked_set_.begin(), tracked_set_.end());
        std::vector<LabelMultiset> v_prime;
        for (int idx : tracked_set_) v_prime.push_back(vcs[idx]);

        auto witness = find_bad_path_witness(lcl_, v_prime);
        int a_idx = lcl_.vertex_constraint_index(witness.a);
        int b_idx = lcl_.vertex_constraint_index(witness.b);

        auto pool = [&](int idx) -> const std::vector<int>& {
            if (idx == d) return zd;
            auto it = vertex_reserves_.find(idx);
            check(it != vertex_reserves_.end(), Errc::invariant_breach, "missing reserve pool");
            return it->second;
        };

        long long m = n_ / (2 * static_cast<long long>(vcs.size()));
        long long halves = m / 2;
        check(halves >= 1, Errc::invariant_breach, "n dropped below the join budget; n0 too small");

        std::vector<int> v_list, w_list;
        if (a_idx == b_idx) {
            const auto& p = pool(a_idx);
            check(static_cast<long long>(p.size()) >= 2 * m, Errc::invariant_breach,
                  "candidate pool too small");
            for (long long i = 0; i < m; ++i) {
                v_list.push_back(p[2 * i]);
                w_list.push_back(p[2 * i + 1]);
            }
        } else {
            const auto& pa = pool(a_idx);
            const auto& pb = pool(b_idx);
            check(static_cast<long long>(pa.size()) >= m &&
                      static_cast<long long>(pb.size()) >= m,
                  Errc::invariant_breach, "candidate pool too small");
            v_list.assign(pa.begin(), pa.begin() + m);
            w_list.assign(pb.begin(), pb.begin() + m);
        }

        long long floor_len =
            std::max<long long>(max_path_length_, stage) + 1;
        std::vector<std::vector<int>> new_tracked;
        for (long long i = 0; i < halves; ++i) {
            auto [e_v, dist_v] = frontier_virtual(v_list[i], witness.alpha);
            auto [e_w, dist_w] = frontier_virtual(w_list[i], witness.beta);
            long long length = witness.good.least_bad_at_least(
                std::max<long long>(dist_v + dist_w + 2, floor_len));
            long long inner = length - dist_v - dist_w - 1;
            int chain_prev = e_v;
            for (long long t = 1; t <= inner; ++t) {
                std::vector<int> adopt{chain_prev};
                if (t == inner) adopt.push_back(e_w);
                int nv = g_.add_vertex(stage, adopt);
                if (t < inner) chain_prev = g_.incident(nv)[adopt.size()]; // least fresh virtual
            }
            auto path = g_.tree_path(v_list[i], w_list[i]);
            check(static_cast<long long>(path.size()) == length + 1, Errc::invariant_breach,
                  "joined path has the wrong length");
            max_path_length_ = std::max(max_path_length_, length);
            new_tracked.push_back(std::move(path));
        }

        // Rebuild the reserves for the next round.
        std::map<int, std::vector<int>> new_reserves;
        for (int c : tracked_set_) {
            std::vector<int> vec;
            if (c == a_idx)
                vec.assign(v_list.begin() + halves, v_list.begin() + 2 * halves);
            else if (c == b_idx)
                vec.assign(w_list.begin() + halves, w_list.begin() + 2 * halves);
            else if (c == d)
                vec.assign(zd.begin(), zd.begin() + halves);
            else {
                const auto& old = vertex_reserves_.at(c);
                check(static_cast<long long>(old.size()) >= halves, Errc::invariant_breach,
                      "reserve pool too small");
                vec.assign(old.begin(), old.begin() + halves);
            }
            new_reserves.emplace(c, std::move(vec));
        }

        tracked_ = std::move(new_tracked);
        vertex_reserves_ = std::move(new_reserves);
        n_ = halves;
        interesting_count_++;
        assert_tracked_disjoint();
        rebuild_queries();

        AdversaryStageRecord rec = base_record(stage, "interesting");
        finish_mutation_record(rec, first_v, first_e);
        rec.pending_count = static_cast<long long>(pending_.size());
        rec.tracked_changed = true;
        fill_tracked(rec);
        transcript_.stages.push_back(std::move(rec));
    }

    /// Nearest virtual edge reachable from v through a half edge labeled
    /// alpha, with the distance from v to its endpoint. Deterministic: least
    /// (distance, edge id).
    std::pair<int, long long> frontier_virtual(int v, int alpha) const {
        int best_edge = -1;
        long long best_dist = -1;
        std::map<int, long long> dist{{v, 0}};
        std::queue<int> q;
        for (int e : g_.incident(v)) {
            if (converged_.at(he_key(v, e)) != alpha) continue;
            if (!g_.edge_is_true(e)) {
                if (best_edge < 0 || e < best_edge) {
                    best_edge = e;
                    best_dist = 0;
                }
                continue;
            }
            int nb = g_.edge_a(e) == v ? g_.edge_b(e) : g_.edge_a(e);
            if (dist.emplace(nb, 1).second) q.push(nb);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (best_edge >= 0 && dist[u] > best_dist) break; // cannot improve
            for (int e : g_.incident(u)) {
                if (!g_.edge_is_true(e)) {
                    if (best_edge < 0 || dist[u] < best_dist ||
                        (dist[u] == best_dist && e < best_edge)) {
                        best_edge = e;
                        best_dist = dist[u];
                    }
                    continue;
                }
                int nb = g_.edge_a(e) == u ? g_.edge_b(e) : g_.edge_a(e);
                if (dist.emplace(nb, dist[u] + 1).second) q.push(nb);
            }
        }
        check(best_edge >= 0, Errc::invariant_breach, "component has no frontier virtual edge");
        return {best_edge, best_dist};
    }

    void interesting_case_comp(int stage) {
        int first_v = g_.vertex_count(), first_e = g_.edge_count();

        // The offending virtual half edge of each center and the majority label.
        std::vector<std::pair<int, int>> offenders(tracked_.size());
        std::vector<int> offender_label(tracked_.size(), -1);
        std::map<int, long long> freq;
        for (size_t i = 0; i < tracked_.size(); ++i) {
            int x = tracked_[i][0];
            int found = -1, found_label = -1;
            for (int e : g_.incident(x)) {
                if (g_.edge_is_true(e)) continue;
                int label = converged_.at(he_key(x, e));
                if (!std::binary_search(tracked_set_.begin(), tracked_set_.end(), label)) {
                    found = e;
                    found_label = label;
                    break;
                }
            }
            check(found >= 0, Errc::invariant_breach,
                  "center kept every virtual label inside the tracked subset");
            offenders[i] = {x, found};
            offender_label[i] = found_label;
            freq[found_label]++;
        }
        int beta = -1;
        long long best = -1;
        for (auto [label, count] : freq)
            if (count > best) {
                best = count;
                beta = label;
            }
        check(best * static_cast<long long>(lcl_.alphabet_size()) >= n_, Errc::invariant_breach,
              "majority bound failed");
        std::vector<std::pair<int, int>> beta_pool;
        for (size_t i = 0; i < tracked_.size(); ++i)
            if (offender_label[i] == beta) beta_pool.push_back(offenders[i]);

        tracked_set_.push_back(beta);
        std::sort(tracked_set_.begin(), tracked_set_.end());

        auto witness = find_bad_star_witness(lcl_, tracked_set_);

        std::map<int, std::vector<std::pair<int, int>>> pools;
        std::map<int, size_t> cursor;
        for (int alpha : tracked_set_) {
            if (alpha == beta)
                pools[alpha] = beta_pool;
            else {
                auto it = half_edge_reserves_.find(alpha);
                check(it != half_edge_reserves_.end(), Errc::invariant_breach,
                      "missing reserve pool");
                pools[alpha] = it->second;
            }
            cursor[alpha] = 0;
        }
        auto take = [&](int alpha) {
            auto& pool = pools.at(alpha);
            size_t& at = cursor.at(alpha);
            check(at < pool.size(), Errc::invariant_breach, "candidate pool exhausted");
            return pool[at++];
        };

        long long m = n_ / (static_cast<long long>(lcl_.delta()) * lcl_.alphabet_size());
        long long halves = m / 2;
        check(halves >= 1, Errc::invariant_breach, "n dropped below the join budget; n0 too small");

        std::vector<std::vector<int>> new_tracked;
        for (long long i = 0; i < halves; ++i) {
            std::vector<int> adopt;
            for (int alpha : witness.alphas) adopt.push_back(take(alpha).second);
            int v = g_.add_vertex(stage, adopt);
            new_tracked.push_back({v});
        }

        std::map<int, std::vector<std::pair<int, int>>> new_reserves;
        for (int alpha : tracked_set_) {
            std::vector<std::pair<int, int>> vec;
            bool fresh_pool = alpha == beta ||
                              std::find(witness.alphas.begin(), witness.alphas.end(), alpha) !=
                                  witness.alphas.end();
            if (fresh_pool) {
                for (long long i = 0; i < halves; ++i) vec.push_back(take(alpha));
            } else {
                const auto& old = half_edge_reserves_.at(alpha);
                check(static_cast<long long>(old.size()) >= halves, Errc::invariant_breach,
                      "reserve pool too small");
                vec.assign(old.begin(), old.begin() + halves);
            }
            new_reserves.emplace(alpha, std::move(vec));
        }

        tracked_ = std::move(new_tracked);
        half_edge_reserves_ = std::move(new_reserves);
        n_ = halves;
        interesting_count_++;
        assert_tracked_disjoint();
        rebuild_queries();

        AdversaryStageRecord rec = base_record(stage, "interesting");
        finish_mutation_record(rec, first_v, first_e);
        rec.pending_count = static_cast<long long>(pending_.size());
        rec.tracked_changed = true;
        fill_tracked(rec);
        transcript_.stages.push_back(std::move(rec));
    }

    const Lcl& lcl_;
    OnlineSolver& solver_;
    AdversaryMode mode_;
    AdversaryOptions opts_;
    StagedGraph g_;
    AdversaryTranscript transcript_;

    std::vector<std::vector<int>> tracked_;  // paths (hc) or singleton centers (comp)
    std::vector<int> tracked_set_;           // vc indices (hc) or labels (comp), sorted
    std::map<int, std::vector<int>> vertex_reserves_;
    std::map<int, std::vector<std::pair<int, int>>> half_edge_reserves_;
    long long n_ = 0;
    int interesting_count_ = 0;
    long long max_path_length_ = 0;

    std::vector<uint64_t> queries_, pending_;
    std::map<uint64_t, int> converged_;
};

} // namespace detail

inline AdversaryTranscript run_hc_adversary(const Lcl& lcl, OnlineSolver& solver,
                                            const AdversaryOptions& opts = {}) {
    return detail::AdversaryEngine(lcl, solver, AdversaryMode::hc, opts).run();
}

inline AdversaryTranscript run_comp_adversary(const Lcl& lcl, OnlineSolver& solver,
                                              const AdversaryOptions& opts = {}) {
    return detail::AdversaryEngine(lcl, solver, AdversaryMode::comp, opts).run();
}

/// One JSON line per stage plus a final outcome record.
inline std::string transcript_to_jsonl(const AdversaryTranscript& t, const Lcl& lcl) {
    std::string out;
    auto tracked_set_json = [&](const std::vector<int>& set) {
        json arr = json::array();
        if (t.mode == AdversaryMode::hc) {
            for (int idx : set) arr.push_back(multiset_names(lcl.vertex_constraints()[idx], lcl));
        } else {
            for (int label : set) arr.push_back(lcl.label_name(label));
        }
        return arr;
    };
    {
        json header;
        header["mode"] = t.mode == AdversaryMode::hc ? "hc" : "comp";
        header["n0"] = t.n0;
        header["max_stages"] = t.max_stages;
        header["solver"] = t.solver;
        out += header.dump() + "\n";
    }
    for (const auto& rec : t.stages) {
        json j;
        j["stage"] = rec.stage;
        j["case"] = rec.kase;
        j["n"] = rec.n_value;
        j["interesting_count"] = rec.interesting_count;
        j["pending"] = rec.pending_count;
        if (rec.new_vertices_count > 0)
            j["new_vertices"] = json::array({rec.new_vertices_first,
                                             rec.new_vertices_first + rec.new_vertices_count - 1});
        if (rec.new_edges_count > 0)
            j["new_edges"] = json::array(
                {rec.new_edges_first, rec.new_edges_first + rec.new_edges_count - 1});
        j["graph"] = json{{"hash", hex64(rec.graph_hash)},
                          {"vertices", rec.vertex_count},
                          {"edges", rec.edge_count}};
        if (rec.tracked_changed) {
            j["tracked"] = rec.tracked;
            j[t.mode == AdversaryMode::hc ? "v_prime" : "sigma_prime"] =
                tracked_set_json(rec.tracked_set);
            if (t.mode == AdversaryMode::hc) {
                json reserves = json::object();
                for (const auto& [idx, vec] : rec.vertex_reserves)
                    reserves[multiset_names(lcl.vertex_constraints()[idx], lcl).dump()] = vec;
                // keyed by the rendered multiset for readability
                j["reserves"] = std::move(reserves);
            } else {
                json reserves = json::object();
                for (const auto& [label, vec] : rec.half_edge_reserves) {
                    json arr = json::array();
                    for (auto [v, e] : vec)
                        arr.push_back(json::array({v, StagedGraph::edge_name(e)}));
                    reserves[lcl.label_name(label)] = std::move(arr);
                }
                j["reserves"] = std::move(reserves);
            }
        }
        out += j.dump() + "\n";
    }
    {
        json j;
        switch (t.outcome.kind) {
            case OutcomeKind::violation: j["outcome"] = "violation"; break;
            case OutcomeKind::divergence: j["outcome"] = "divergence"; break;
            case OutcomeKind::budget_exhausted: j["outcome"] = "budget_exhausted"; break;
        }
        j["stage"] = t.outcome.stage;
        if (!t.outcome.violations.empty()) {
            json arr = json::array();
            for (const auto& tv : t.outcome.violations) {
                json w;
                w["object"] = tv.object_index;
                w["verdict"] = verdict_to_json(tv.verdict, lcl);
                arr.push_back(std::move(w));
            }
            j["witnesses"] = std::move(arr);
        }
        if (!t.outcome.pending.empty()) {
            json arr = json::array();
            for (auto [v, e] : t.outcome.pending)
                arr.push_back(json::array({v, StagedGraph::edge_name(e)}));
            j["pending"] = std::move(arr);
        }
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace lct
