#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lct/errors.hpp"

namespace lct {

/// A label is an index into the alphabet of its owning Lcl, plus a display name.
struct Label {
    int id = -1;
    std::string name;
};

/// Multiset of label ids, canonicalized as a sorted list. Equality and ordering
/// are order-free by construction.
class LabelMultiset {
public:
    LabelMultiset() = default;
    explicit LabelMultiset(std::vector<int> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<int>& labels() const { return labels_; }

    int count(int label) const {
        auto [lo, hi] = std::equal_range(labels_.begin(), labels_.end(), label);
        return static_cast<int>(hi - lo);
    }
    bool contains(int label) const { return count(label) > 0; }

    /// Distinct labels, ascending.
    std::vector<int> support() const {
        std::vector<int> out;
        for (int l : labels_)
            if (out.empty() || out.back() != l) out.push_back(l);
        return out;
    }

    /// True when this multiset contains {u, t} (with multiplicity if u == t).
    bool covers_pair(int u, int t) const {
        if (u == t) return count(u) >= 2;
        return contains(u) && contains(t);
    }

    bool operator==(const LabelMultiset&) const = default;
    auto operator<=>(const LabelMultiset&) const = default;

private:
    std::vector<int> labels_;
};

/// A locally checkable labeling problem: an alphabet, the admissible vertex
/// multisets (size delta) and the admissible edge pairs (size 2).
class Lcl {
public:
    Lcl(int delta, std::vector<std::string> sigma, std::vector<LabelMultiset> vertex_constraints,
        std::vector<LabelMultiset> edge_constraints)
        : delta_(delta),
          sigma_(std::move(sigma)),
          vertex_constraints_(std::move(vertex_constraints)),
          edge_constraints_(std::move(edge_constraints)) {
        check(delta_ >= 2, Errc::semantic_error, "delta must be >= 2");
        check(!sigma_.empty(), Errc::semantic_error, "alphabet must not be empty");
        for (size_t i = 0; i < sigma_.size(); ++i) {
            auto [it, fresh] = name_to_id_.emplace(sigma_[i], static_cast<int>(i));
            check(fresh, Errc::semantic_error, "duplicate label name '" + sigma_[i] + "'");
        }
        canonicalize(vertex_constraints_, delta_, "vertex");
        canonicalize(edge_constraints_, 2, "edge");
        edge_ok_.assign(sigma_.size(), std::vector<bool>(sigma_.size(), false));
        for (const auto& e : edge_constraints_) {
            int a = e.labels()[0], b = e.labels()[1];
            edge_ok_[a][b] = edge_ok_[b][a] = true;
        }
    }

    int delta() const { return delta_; }
    int alphabet_size() const { return static_cast<int>(sigma_.size()); }
    const std::vector<std::string>& sigma() const { return sigma_; }

    Label label(int id) const {
        check(id >= 0 && id < alphabet_size(), Errc::semantic_error, "label id out of range");
        return Label{id, sigma_[id]};
    }
    const std::string& label_name(int id) const {
        check(id >= 0 && id < alphabet_size(), Errc::semantic_error, "label id out of range");
        return sigma_[id];
    }
    int label_id(const std::string& name) const {
        auto it = name_to_id_.find(name);
        check(it != name_to_id_.end(), Errc::semantic_error, "label '" + name + "' not in alphabet");
        return it->second;
    }

    const std::vector<LabelMultiset>& vertex_constraints() const { return vertex_constraints_; }
    const std::vector<LabelMultiset>& edge_constraints() const { return edge_constraints_; }

    bool edge_allowed(int s, int t) const { return edge_ok_[s][t]; }

    bool vertex_allowed(const LabelMultiset& m) const {
        return std::binary_search(vertex_constraints_.begin(), vertex_constraints_.end(), m);
    }

    /// Index of a multiset within the canonical vertex-constraint list, or -1.
    int vertex_constraint_index(const LabelMultiset& m) const {
        auto it = std::lower_bound(vertex_constraints_.begin(), vertex_constraints_.end(), m);
        if (it == vertex_constraints_.end() || !(*it == m)) return -1;
        return static_cast<int>(it - vertex_constraints_.begin());
    }

    bool operator==(const Lcl& o) const {
        return delta_ == o.delta_ && sigma_ == o.sigma_ &&
               vertex_constraints_ == o.vertex_constraints_ && edge_constraints_ == o.edge_constraints_;
    }

private:
    void canonicalize(std::vector<LabelMultiset>& cs, int want_size, const char* what) {
        for (const auto& m : cs) {
            check(m.size() == want_size, Errc::semantic_error,
                  std::string(what) + " constraint has size " + std::to_string(m.size()) +
                      ", expected " + std::to_string(want_size));
            for (int l : m.labels())
                check(l >= 0 && l < alphabet_size(), Errc::semantic_error,
                      std::string(what) + " constraint uses a label outside the alphabet");
        }
        std::sort(cs.begin(), cs.end());
        check(std::adjacent_find(cs.begin(), cs.end()) == cs.end(), Errc::semantic_error,
              std::string(what) + " constraints contain duplicates");
    }

    int delta_;
    std::vector<std::string> sigma_;
    std::vector<LabelMultiset> vertex_constraints_;
    std::vector<LabelMultiset> edge_constraints_;
    std::map<std::string, int> name_to_id_;
    std::vector<std::vector<bool>> edge_ok_;
};

} // namespace lct
