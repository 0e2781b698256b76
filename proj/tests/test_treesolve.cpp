#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lct/treesolve.hpp"

#include "testutil.hpp"

using namespace lct;
using namespace lct::testutil;

namespace {

Coloring pin_endpoint_vertices(const HalfEdgeGraph& path, int length, int label_first,
                               int label_last) {
    Coloring c;
    for (int ei : path.incident_edges(0)) c.set(0, path.edge(ei).id, label_first);
    for (int ei : path.incident_edges(length)) c.set(length, path.edge(ei).id, label_last);
    return c;
}

} // namespace

TEST_CASE("triangle problem completes a pinned path through the least middle label") {
    Lcl k3 = make_k_lcl(3, 2);
    auto path = build_path(2, 2);
    Coloring pins = pin_endpoint_vertices(path, 2, 0, 0);
    auto vcs = k3.vertex_constraints();
    auto result = complete({path, k3, pins, &vcs});
    REQUIRE(result.has_value());
    REQUIRE(verify_coloring(path, k3, *result).ok());
    // Middle vertex could take label 2 or 3; least-label tie-break gives 2.
    for (int ei : path.incident_edges(1)) REQUIRE(*result->get(1, path.edge(ei).id) == 1);
}

TEST_CASE("two-coloring joins equal endpoint values only across even distance") {
    Lcl k2 = make_k_lcl(2, 2);
    auto even = build_path(2, 2);
    Coloring even_pins = pin_endpoint_vertices(even, 2, 0, 0);
    REQUIRE(is_extendable({even, k2, even_pins, nullptr}));

    auto odd = build_path(2, 3);
    Coloring odd_pins = pin_endpoint_vertices(odd, 3, 0, 0);
    REQUIRE_FALSE(is_extendable({odd, k2, odd_pins, nullptr}));
    REQUIRE_FALSE(complete({odd, k2, odd_pins, nullptr}).has_value());
}

TEST_CASE("empty partial coloring on a single vertex") {
    Lcl k3 = make_k_lcl(3, 2);
    auto g = build_path(2, 0);
    Coloring empty;
    auto result = complete({g, k3, empty, nullptr});
    REQUIRE(result.has_value());
    REQUIRE(verify_coloring(g, k3, *result).ok());
}

TEST_CASE("cycles are rejected") {
    Lcl k3 = make_k_lcl(3, 2);
    auto cycle = HalfEdgeGraph::make(
        {0, 1, 2}, {{"e0", {0, 1}}, {"e1", {1, 2}}, {"e2", {0, 2}}}, 2);
    Coloring empty;
    REQUIRE_THROWS_MATCHES(complete({cycle, k3, empty, nullptr}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::not_a_forest;
                           }));
    REQUIRE_THROWS_MATCHES(is_extendable({cycle, k3, empty, nullptr}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::not_a_forest;
                           }));
}

TEST_CASE("completion agrees with raw enumeration on small random forests") {
    std::mt19937 rng(23);
    int present = 0, absent = 0;
    for (int round = 0; round < 60; ++round) {
        int delta = std::uniform_int_distribution<int>(2, 3)(rng);
        int sigma = std::uniform_int_distribution<int>(2, 3)(rng);
        int n = delta == 2 ? std::uniform_int_distribution<int>(1, sigma == 3 ? 5 : 8)(rng)
                           : std::uniform_int_distribution<int>(1, 4)(rng);
        auto g = random_forest(rng, n, delta);
        Lcl lcl = random_lcl(rng, delta, sigma, 5, 4);
        Coloring partial;
        for (int v : g.vertex_ids())
            for (int ei : g.incident_edges(v))
                if (std::uniform_int_distribution<int>(0, 4)(rng) == 0)
                    partial.set(v, g.edge(ei).id,
                                std::uniform_int_distribution<int>(0, sigma - 1)(rng));
        auto expected = brute_force_complete(g, lcl, partial, nullptr);
        auto got = complete({g, lcl, partial, nullptr});
        REQUIRE(got.has_value() == expected.has_value());
        REQUIRE(is_extendable({g, lcl, partial, nullptr}) == expected.has_value());
        (got.has_value() ? present : absent)++;
        if (got) {
            auto verdict = verify_coloring(g, lcl, *got);
            REQUIRE(verdict.ok());
            for (const auto& [key, label] : partial) REQUIRE(*got->get(key.first, key.second) == label);
        }
    }
    // The corpus must exercise both answers.
    REQUIRE(present > 5);
    REQUIRE(absent > 5);
}

TEST_CASE("restriction soundness and monotonicity") {
    std::mt19937 rng(31);
    for (int round = 0; round < 40; ++round) {
        int delta = std::uniform_int_distribution<int>(2, 3)(rng);
        auto g = random_forest(rng, std::uniform_int_distribution<int>(1, 10)(rng), delta);
        Lcl lcl = random_lcl(rng, delta, std::uniform_int_distribution<int>(2, 3)(rng), 6, 4);
        const auto& vcs = lcl.vertex_constraints();
        std::vector<LabelMultiset> small, large;
        for (const auto& m : vcs) {
            bool keep = std::uniform_int_distribution<int>(0, 1)(rng);
            if (keep) small.push_back(m);
            large.push_back(m);
        }
        if (small.empty()) small.push_back(vcs[0]);
        Coloring empty;
        auto restricted = complete({g, lcl, empty, &small});
        if (restricted.has_value()) {
            REQUIRE(verify_coloring(g, lcl, *restricted).ok());
            for (int v : g.vertex_ids()) {
                std::vector<int> star;
                for (int ei : g.incident_edges(v)) star.push_back(*restricted->get(v, g.edge(ei).id));
                LabelMultiset m(std::move(star));
                REQUIRE(std::find(small.begin(), small.end(), m) != small.end());
            }
            // Enlarging the restriction can never lose the answer.
            REQUIRE(is_extendable({g, lcl, empty, &large}));
        }
    }
}

TEST_CASE("completion is deterministic") {
    std::mt19937 rng(37);
    for (int round = 0; round < 10; ++round) {
        auto g = random_forest(rng, 12, 3);
        Lcl lcl = random_lcl(rng, 3, 3, 6, 5);
        Coloring empty;
        auto first = complete({g, lcl, empty, nullptr});
        auto second = complete({g, lcl, empty, nullptr});
        REQUIRE(first == second);
    }
}
