#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lct/lcl.hpp"

namespace lct {

/// One internal path vertex as a label transition: bits[s] has bit t set iff
/// a path step can enter on pair-partner of s and leave on t while the vertex
/// multiset stays inside the chosen constraint subset.
struct TransitionMatrix {
    int size = 0;
    std::vector<uint32_t> rows; // rows[s] bit t

    bool at(int s, int t) const { return (rows[s] >> t) & 1; }
};

namespace detail {

inline void validate_vertex_subset(const Lcl& lcl, const std::vector<LabelMultiset>& v_prime) {
    for (const auto& m : v_prime)
        check(lcl.vertex_allowed(m), Errc::semantic_error,
              "subset contains a multiset outside the vertex constraints");
}

} // namespace detail

inline TransitionMatrix transition_matrix(const Lcl& lcl, const std::vector<LabelMultiset>& v_prime) {
    check(!v_prime.empty(), Errc::empty_subset, "vertex-constraint subset must be nonempty");
    detail::validate_vertex_subset(lcl, v_prime);
    int n = lcl.alphabet_size();
    check(n <= 32, Errc::bad_parameter, "alphabet too large for transition matrices");
    // covered[u] bit t: some multiset in the subset contains both u and t.
    std::vector<uint32_t> covered(n, 0);
    for (int u = 0; u < n; ++u) {
        uint32_t row = 0;
        for (int t = 0; t < n; ++t)
            for (const auto& m : v_prime)
                if (m.covers_pair(u, t)) {
                    row |= 1u << t;
                    break;
                }
        covered[u] = row;
    }
    TransitionMatrix mat;
    mat.size = n;
    mat.rows.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        uint32_t row = 0;
        for (int u = 0; u < n; ++u)
            if (lcl.edge_allowed(s, u)) row |= covered[u];
        mat.rows[s] = row;
    }
    return mat;
}

/// Eventually periodic subset of {1, 2, 3, ...}. `prefix` covers lengths
/// 1..preperiod; beyond that membership repeats with the given period.
struct LengthSet {
    int preperiod = 0;
    int period = 1;
    std::vector<bool> prefix; // lengths 1..preperiod
    std::vector<bool> tail;   // residues of the periodic part

    bool contains(long long length) const {
        check(length >= 1, Errc::bad_parameter, "lengths start at 1");
        if (length <= preperiod) return prefix[static_cast<size_t>(length - 1)];
        return tail[static_cast<size_t>((length - preperiod - 1) % period)];
    }

    bool tail_all_good() const {
        return std::all_of(tail.begin(), tail.end(), [](bool b) { return b; });
    }

    /// The complement is infinite iff some residue of the periodic part is bad.
    bool infinitely_bad() const { return !tail_all_good(); }

    /// Least l >= 1 such that every length >= l is in the set.
    std::optional<int> min_uniform_good() const {
        if (!tail_all_good()) return std::nullopt;
        int l = preperiod + 1;
        while (l > 1 && prefix[static_cast<size_t>(l - 2)]) --l;
        return l;
    }

    long long least_bad_at_least(long long floor) const {
        check(infinitely_bad(), Errc::bad_parameter, "set has only finitely many bad lengths");
        long long start = std::max<long long>(1, floor);
        for (long long length = start;; ++length)
            if (!contains(length)) return length;
    }
};

struct FullnessCertificate {
    std::vector<LabelMultiset> v_prime;
    int l = 0;
    bool operator==(const FullnessCertificate&) const = default;
};

struct GreedyCertificate {
    std::vector<int> sigma_prime; // sorted label ids
    bool operator==(const GreedyCertificate&) const = default;
};

struct BadPathWitness {
    LabelMultiset a;
    int alpha = -1;
    LabelMultiset b;
    int beta = -1;
    LengthSet good; // lengths whose precolored path extends; complement infinite
};

struct BadStarWitness {
    int k = 0;
    std::vector<int> alphas;
    bool operator==(const BadStarWitness&) const = default;
};

/// Which lengths L admit an extension of the precolored endpoint stars
/// (a with alpha on the path edge; b with beta) that keeps every vertex
/// multiset inside v_prime. Exact: the orbit of the alpha-row under the
/// transition matrix is iterated until it repeats, which pins down the
/// eventually periodic answer for all lengths at once.
inline LengthSet good_lengths(const Lcl& lcl, const std::vector<LabelMultiset>& v_prime,
                              const LabelMultiset& a, int alpha, const LabelMultiset& b, int beta) {
    auto in_subset = [&](const LabelMultiset& m) {
        return std::find(v_prime.begin(), v_prime.end(), m) != v_prime.end();
    };
    check(in_subset(a) && in_subset(b), Errc::witness_not_in_subset,
          "endpoint multisets must belong to the subset");
    check(a.contains(alpha) && b.contains(beta), Errc::witness_not_in_subset,
          "path-edge labels must occur in their endpoint multisets");

    TransitionMatrix mat = transition_matrix(lcl, v_prime);
    uint32_t accept = 0;
    for (int s = 0; s < mat.size; ++s)
        if (lcl.edge_allowed(s, beta)) accept |= 1u << s;

    // reach_k = labels on the forward half edge after k internal vertices;
    // length L is good iff reach_{L-1} meets the accept set.
    std::map<uint32_t, int> seen;
    std::vector<uint32_t> orbit;
    uint32_t reach = 1u << alpha;
    int repeat_start = -1, repeat_at = -1;
    for (int k = 0;; ++k) {
        auto it = seen.find(reach);
        if (it != seen.end()) {
            repeat_start = it->second;
            repeat_at = k;
            break;
        }
        seen[reach] = k;
        orbit.push_back(reach);
        uint32_t next = 0;
        for (int s = 0; s < mat.size; ++s)
            if ((reach >> s) & 1) next |= mat.rows[s];
        reach = next;
    }

    LengthSet out;
    out.preperiod = repeat_start;
    out.period = repeat_at - repeat_start;
    for (int k = 0; k < repeat_start; ++k) out.prefix.push_back((orbit[k] & accept) != 0);
    for (int k = repeat_start; k < repeat_at; ++k) out.tail.push_back((orbit[k] & accept) != 0);
    return out;
}

namespace detail {

/// Minimal l making the subset l-full, or nullopt when no l works.
inline std::optional<int> uniform_good_start(const Lcl& lcl,
                                             const std::vector<LabelMultiset>& v_prime) {
    int best = 1;
    for (const auto& a : v_prime)
        for (int alpha : a.support())
            for (const auto& b : v_prime)
                for (int beta : b.support()) {
                    LengthSet ls = good_lengths(lcl, v_prime, a, alpha, b, beta);
                    auto l = ls.min_uniform_good();
                    if (!l) return std::nullopt;
                    best = std::max(best, *l);
                }
    return best;
}

/// Visits nonempty index subsets of {0..n-1} by size, then lexicographically.
template <typename Fn>
bool for_each_subset(int n, long long max_subsets, Fn&& fn) {
    long long visited = 0;
    std::vector<int> pick;
    for (int size = 1; size <= n; ++size) {
        pick.assign(size, 0);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            if (max_subsets > 0 && ++visited > max_subsets)
                fail(Errc::max_subsets_exceeded,
                     "subset enumeration exceeded " + std::to_string(max_subsets));
            if (fn(pick)) return true;
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i) --i;
            if (i < 0) break;
            pick[i]++;
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return false;
}

} // namespace detail

inline bool is_l_full(const Lcl& lcl, const std::vector<LabelMultiset>& v_prime, int l) {
    check(l >= 1, Errc::bad_parameter, "l must be >= 1");
    check(!v_prime.empty(), Errc::empty_subset, "vertex-constraint subset must be nonempty");
    auto start = detail::uniform_good_start(lcl, v_prime);
    return start && *start <= l;
}

/// First nonempty subset of the vertex constraints (by size, then
/// lexicographically) that is l-full for some l, with the minimal such l.
inline std::optional<FullnessCertificate> decide_fullness(const Lcl& lcl, long long max_subsets = 0) {
    const auto& vcs = lcl.vertex_constraints();
    std::optional<FullnessCertificate> cert;
    detail::for_each_subset(static_cast<int>(vcs.size()), max_subsets, [&](const std::vector<int>& pick) {
        std::vector<LabelMultiset> sub;
        sub.reserve(pick.size());
        for (int i : pick) sub.push_back(vcs[i]);
        auto start = detail::uniform_good_start(lcl, sub);
        if (!start) return false;
        cert = FullnessCertificate{std::move(sub), *start};
        return true;
    });
    return cert;
}

/// A quadruple whose bad-length set is infinite, for a subset that is not
/// l-full for any l. Enumeration-first over (a, alpha, b, beta).
inline BadPathWitness find_bad_path_witness(const Lcl& lcl,
                                            const std::vector<LabelMultiset>& v_prime) {
    check(!v_prime.empty(), Errc::empty_subset, "vertex-constraint subset must be nonempty");
    for (const auto& a : v_prime)
        for (int alpha : a.support())
            for (const auto& b : v_prime)
                for (int beta : b.support()) {
                    LengthSet ls = good_lengths(lcl, v_prime, a, alpha, b, beta);
                    if (ls.infinitely_bad()) return BadPathWitness{a, alpha, b, beta, std::move(ls)};
                }
    fail(Errc::subset_is_full, "subset admits extensions at every large length");
}

namespace detail {

/// Can the star with k precolored true half edges (alphas, on the far side)
/// be completed so that the center multiset is admissible and all virtual
/// center half edges carry labels from sigma_prime?
inline bool star_completable(const Lcl& lcl, const std::vector<int>& alphas,
                             uint32_t sigma_prime_mask) {
    int delta = lcl.delta();
    int k = static_cast<int>(alphas.size());
    int n = lcl.alphabet_size();
    // Positions 0..k-1 pair with the alphas, k..delta-1 must stay in sigma_prime.
    std::vector<int> tuple(delta, 0);
    std::vector<int> counts(n, 0);
    auto rec = [&](auto&& self, int pos) -> bool {
        if (pos == delta) {
            std::vector<int> labels;
            labels.reserve(delta);
            for (int i = 0; i < delta; ++i) labels.push_back(tuple[i]);
            return lcl.vertex_allowed(LabelMultiset(std::move(labels)));
        }
        for (int x = 0; x < n; ++x) {
            if (pos < k ? !lcl.edge_allowed(alphas[pos], x) : !((sigma_prime_mask >> x) & 1))
                continue;
            tuple[pos] = x;
            if (self(self, pos + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

inline bool label_in_some_vertex_constraint(const Lcl& lcl, int label) {
    for (const auto& m : lcl.vertex_constraints())
        if (m.contains(label)) return true;
    return false;
}

/// Visits size-k multisets over the given sorted labels in lexicographic
/// order. Returns the first one for which fn returns true, if any.
template <typename Fn>
std::optional<std::vector<int>> first_multiset(const std::vector<int>& labels, int k, Fn&& fn) {
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t from) -> bool {
        if (static_cast<int>(pick.size()) == k) return fn(pick);
        for (size_t i = from; i < labels.size(); ++i) {
            pick.push_back(labels[i]);
            if (self(self, i)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, 0)) return pick;
    return std::nullopt;
}

} // namespace detail

inline bool is_greedy_set(const Lcl& lcl, const std::vector<int>& sigma_prime) {
    uint32_t mask = 0;
    for (int l : sigma_prime) {
        check(l >= 0 && l < lcl.alphabet_size(), Errc::semantic_error,
              "label id outside the alphabet");
        mask |= 1u << l;
    }
    std::vector<int> sorted(sigma_prime);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int k = 0; k <= lcl.delta(); ++k) {
        auto bad = detail::first_multiset(sorted, k, [&](const std::vector<int>& alphas) {
            for (int alpha : alphas)
                if (!detail::label_in_some_vertex_constraint(lcl, alpha)) return true;
            return !detail::star_completable(lcl, alphas, mask);
        });
        if (bad) return false;
    }
    return true;
}

/// First nonempty greedy label subset (by size, then lexicographically).
inline std::optional<GreedyCertificate> decide_greediness(const Lcl& lcl) {
    int n = lcl.alphabet_size();
    std::optional<GreedyCertificate> cert;
    detail::for_each_subset(n, 0, [&](const std::vector<int>& pick) {
        if (!is_greedy_set(lcl, pick)) return false;
        cert = GreedyCertificate{pick};
        return true;
    });
    return cert;
}

/// First (k, alphas) star precoloring over sigma_prime that cannot be
/// completed as the greedy condition demands.
inline BadStarWitness find_bad_star_witness(const Lcl& lcl, const std::vector<int>& sigma_prime) {
    uint32_t mask = 0;
    std::vector<int> sorted(sigma_prime);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int l : sorted) {
        check(l >= 0 && l < lcl.alphabet_size(), Errc::semantic_error,
              "label id outside the alphabet");
        mask |= 1u << l;
    }
    for (int k = 0; k <= lcl.delta(); ++k) {
        auto bad = detail::first_multiset(sorted, k, [&](const std::vector<int>& alphas) {
            for (int alpha : alphas)
                if (!detail::label_in_some_vertex_constraint(lcl, alpha)) return true;
            return !detail::star_completable(lcl, alphas, mask);
        });
        if (bad) return BadStarWitness{k, *bad};
    }
    fail(Errc::set_is_greedy, "label subset satisfies the greedy condition");
}

} // namespace lct
