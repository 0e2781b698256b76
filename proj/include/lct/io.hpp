#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "lct/classify.hpp"
#include "lct/coloring.hpp"
#include "lct/graph.hpp"
#include "lct/homproblems.hpp"
#include "lct/lcl.hpp"
#include "lct/toast.hpp"

namespace lct {

using json = nlohmann::json;

namespace detail {

inline json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::syntax_error, e.what());
    }
}

template <typename T>
T field(const json& j, const char* name) {
    check(j.is_object() && j.contains(name), Errc::semantic_error,
          std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        fail(Errc::semantic_error, std::string("field '") + name + "' has the wrong type");
    }
}

inline std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

} // namespace detail

// ---- labeling problems ----

inline json lcl_to_json(const Lcl& lcl) {
    json j;
    j["delta"] = lcl.delta();
    j["sigma"] = lcl.sigma();
    auto render = [&](const std::vector<LabelMultiset>& cs) {
        json arr = json::array();
        for (const auto& m : cs) {
            json names = json::array();
            for (int l : m.labels()) names.push_back(lcl.label_name(l));
            arr.push_back(std::move(names));
        }
        return arr;
    };
    j["vertex_constraints"] = render(lcl.vertex_constraints());
    j["edge_constraints"] = render(lcl.edge_constraints());
    return j;
}

inline std::string serialize_lcl(const Lcl& lcl) { return detail::dump_document(lcl_to_json(lcl)); }

inline Lcl lcl_from_json(const json& j) {
    int delta = detail::field<int>(j, "delta");
    auto sigma = detail::field<std::vector<std::string>>(j, "sigma");
    std::map<std::string, int> ids;
    for (size_t i = 0; i < sigma.size(); ++i) ids[sigma[i]] = static_cast<int>(i);
    auto read = [&](const char* name) {
        auto rows = detail::field<std::vector<std::vector<std::string>>>(j, name);
        std::vector<LabelMultiset> out;
        for (const auto& row : rows) {
            std::vector<int> labels;
            for (const auto& s : row) {
                auto it = ids.find(s);
                check(it != ids.end(), Errc::semantic_error, "label '" + s + "' not in sigma");
                labels.push_back(it->second);
            }
            out.push_back(LabelMultiset(std::move(labels)));
        }
        return out;
    };
    return Lcl(delta, std::move(sigma), read("vertex_constraints"), read("edge_constraints"));
}

inline Lcl parse_lcl(const std::string& text) { return lcl_from_json(detail::parse_document(text)); }

// ---- half-edge graphs ----

inline json graph_to_json(const HalfEdgeGraph& g) {
    json j;
    j["delta"] = g.delta();
    j["vertices"] = g.vertex_ids();
    json edges = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["id"] = e.id;
        je["ends"] = e.is_true() ? json::array({e.a, e.b}) : json::array({e.a});
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

inline std::string serialize_graph(const HalfEdgeGraph& g) {
    return detail::dump_document(graph_to_json(g));
}

inline HalfEdgeGraph graph_from_json(const json& j) {
    int delta = detail::field<int>(j, "delta");
    auto vertices = detail::field<std::vector<int>>(j, "vertices");
    std::vector<EdgeSpec> specs;
    check(j.contains("edges") && j.at("edges").is_array(), Errc::semantic_error,
          "missing field 'edges'");
    for (const auto& je : j.at("edges")) {
        EdgeSpec spec;
        spec.id = detail::field<std::string>(je, "id");
        spec.ends = detail::field<std::vector<int>>(je, "ends");
        check(spec.ends.size() == 1 || spec.ends.size() == 2, Errc::semantic_error,
              "edge '" + spec.id + "' must list 1 or 2 endpoints");
        specs.push_back(std::move(spec));
    }
    return HalfEdgeGraph::make(std::move(vertices), std::move(specs), delta);
}

inline HalfEdgeGraph parse_graph(const std::string& text) {
    return graph_from_json(detail::parse_document(text));
}

// ---- colorings ----

inline json coloring_to_json(const Coloring& c, const Lcl& lcl) {
    json arr = json::array();
    for (const auto& [key, label] : c) {
        json ja;
        ja["vertex"] = key.first;
        ja["edge"] = key.second;
        ja["label"] = lcl.label_name(label);
        arr.push_back(std::move(ja));
    }
    json j;
    j["assignments"] = std::move(arr);
    return j;
}

inline std::string serialize_coloring(const Coloring& c, const Lcl& lcl) {
    return detail::dump_document(coloring_to_json(c, lcl));
}

inline Coloring coloring_from_json(const json& j, const Lcl& lcl) {
    Coloring c;
    check(j.contains("assignments") && j.at("assignments").is_array(), Errc::semantic_error,
          "missing field 'assignments'");
    for (const auto& ja : j.at("assignments")) {
        int v = detail::field<int>(ja, "vertex");
        auto e = detail::field<std::string>(ja, "edge");
        auto name = detail::field<std::string>(ja, "label");
        check(!c.get(v, e).has_value(), Errc::semantic_error,
              "half edge (" + std::to_string(v) + ", " + e + ") assigned twice");
        c.set(v, e, lcl.label_id(name));
    }
    return c;
}

inline Coloring parse_coloring(const std::string& text, const Lcl& lcl) {
    return coloring_from_json(detail::parse_document(text), lcl);
}

// ---- verdicts ----

inline json verdict_to_json(const Verdict& verdict, const Lcl& lcl) {
    json j;
    j["ok"] = verdict.ok();
    json arr = json::array();
    for (const auto& v : verdict.violations) {
        json jv;
        if (const auto* e = std::get_if<EdgeViolation>(&v)) {
            jv["kind"] = "edge";
            jv["edge"] = e->edge;
            json obs = json::array();
            for (int l : e->observed) obs.push_back(lcl.label_name(l));
            jv["observed"] = std::move(obs);
        } else if (const auto* x = std::get_if<VertexViolation>(&v)) {
            jv["kind"] = "vertex";
            jv["vertex"] = x->vertex;
            json obs = json::array();
            for (int l : x->observed) obs.push_back(lcl.label_name(l));
            jv["observed"] = std::move(obs);
        } else if (const auto* m = std::get_if<IncompleteColoring>(&v)) {
            jv["kind"] = "incomplete";
            json missing = json::array();
            for (const auto& he : m->missing)
                missing.push_back(json{{"vertex", he.vertex}, {"edge", he.edge}});
            jv["missing"] = std::move(missing);
        }
        arr.push_back(std::move(jv));
    }
    j["violations"] = std::move(arr);
    return j;
}

// ---- certificates and witnesses ----

inline json multiset_names(const LabelMultiset& m, const Lcl& lcl) {
    json arr = json::array();
    for (int l : m.labels()) arr.push_back(lcl.label_name(l));
    return arr;
}

inline json fullness_certificate_to_json(const FullnessCertificate& cert, const Lcl& lcl) {
    json j;
    json vp = json::array();
    for (const auto& m : cert.v_prime) vp.push_back(multiset_names(m, lcl));
    j["v_prime"] = std::move(vp);
    j["l"] = cert.l;
    return j;
}

inline json greedy_certificate_to_json(const GreedyCertificate& cert, const Lcl& lcl) {
    json j;
    json sp = json::array();
    for (int l : cert.sigma_prime) sp.push_back(lcl.label_name(l));
    j["sigma_prime"] = std::move(sp);
    return j;
}

inline json length_set_to_json(const LengthSet& ls) {
    json j;
    j["preperiod"] = ls.preperiod;
    j["period"] = ls.period;
    j["good_prefix"] = ls.prefix;
    j["good_residues"] = ls.tail;
    return j;
}

inline json bad_path_witness_to_json(const BadPathWitness& w, const Lcl& lcl) {
    json j;
    j["a"] = multiset_names(w.a, lcl);
    j["alpha"] = lcl.label_name(w.alpha);
    j["b"] = multiset_names(w.b, lcl);
    j["beta"] = lcl.label_name(w.beta);
    j["bad"] = length_set_to_json(w.good);
    return j;
}

inline json bad_star_witness_to_json(const BadStarWitness& w, const Lcl& lcl) {
    json j;
    j["k"] = w.k;
    json alphas = json::array();
    for (int l : w.alphas) alphas.push_back(lcl.label_name(l));
    j["alphas"] = std::move(alphas);
    return j;
}

// ---- toasts ----

inline json toast_to_json(const Toast& t) {
    json j;
    j["l"] = t.l;
    json pieces = json::array();
    for (const auto& p : t.pieces) {
        json jp;
        jp["id"] = p.id;
        jp["vertices"] = p.vertices;
        jp["stage"] = p.stage;
        pieces.push_back(std::move(jp));
    }
    j["pieces"] = std::move(pieces);
    return j;
}

inline std::string serialize_toast(const Toast& t) { return detail::dump_document(toast_to_json(t)); }

// ---- simple graphs and homomorphisms ----

inline json simple_graph_to_json(const SimpleGraph& g) {
    json j;
    j["vertices"] = g.names();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back(json::array({g.name(a), g.name(b)}));
    j["edges"] = std::move(edges);
    return j;
}

inline std::string serialize_simple_graph(const SimpleGraph& g) {
    return detail::dump_document(simple_graph_to_json(g));
}

inline SimpleGraph simple_graph_from_json(const json& j) {
    auto names = detail::field<std::vector<std::string>>(j, "vertices");
    auto rows = detail::field<std::vector<std::vector<std::string>>>(j, "edges");
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& row : rows) {
        check(row.size() == 2, Errc::semantic_error, "edges must be vertex pairs");
        edges.emplace_back(row[0], row[1]);
    }
    return SimpleGraph(std::move(names), edges);
}

inline SimpleGraph parse_simple_graph(const std::string& text) {
    return simple_graph_from_json(detail::parse_document(text));
}

inline json hom_map_to_json(const std::map<std::string, std::string>& map) {
    json j;
    j["map"] = map;
    return j;
}

inline std::string serialize_hom_map(const std::map<std::string, std::string>& map) {
    return detail::dump_document(hom_map_to_json(map));
}

// ---- hashing ----

inline uint64_t fnv1a64(const void* data, size_t size, uint64_t seed = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace lct
