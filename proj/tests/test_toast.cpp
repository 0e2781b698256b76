#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lct/io.hpp"
#include "lct/toast.hpp"

#include "testutil.hpp"

using namespace lct;
using namespace lct::testutil;

TEST_CASE("golden pieces on the nine-vertex path") {
    auto path = build_path(2, 8);
    Toast t = build_toast(path, 2);
    REQUIRE(t.pieces.size() == 4);
    REQUIRE(t.pieces[0].vertices == std::vector<int>{0, 1});
    REQUIRE(t.pieces[1].vertices == std::vector<int>{0, 1, 2, 3});
    REQUIRE(t.pieces[2].vertices == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
    REQUIRE(t.pieces[3].vertices == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    REQUIRE(t.pieces[0].stage == 0);
    REQUIRE(t.pieces[1].stage == 1);
    REQUIRE(t.pieces[2].stage == 3);
    REQUIRE(t.pieces[3].stage == 6);
    REQUIRE(verify_toast(path, 2, t.pieces).ok());
}

TEST_CASE("single vertex yields one piece") {
    auto g = build_path(3, 0);
    for (int l : {0, 1, 3}) {
        Toast t = build_toast(g, l);
        REQUIRE(t.pieces.size() == 1);
        REQUIRE(t.pieces[0].vertices == std::vector<int>{0});
        REQUIRE(verify_toast(g, l, t.pieces).ok());
    }
}

TEST_CASE("pieces never span components") {
    // Two 3-vertex paths in one graph.
    std::vector<EdgeSpec> specs;
    int next = 0;
    auto link = [&](int a, int b) { specs.push_back({"e" + std::to_string(next++), {a, b}}); };
    auto pad = [&](int v, int count) {
        for (int i = 0; i < count; ++i) specs.push_back({"e" + std::to_string(next++), {v}});
    };
    link(0, 1);
    link(1, 2);
    link(10, 11);
    link(11, 12);
    for (int v : {0, 2, 10, 12}) pad(v, 1);
    auto g = HalfEdgeGraph::make({0, 1, 2, 10, 11, 12}, std::move(specs), 2);
    Toast t = build_toast(g, 2);
    for (const auto& p : t.pieces) {
        bool low = false, high = false;
        for (int v : p.vertices) (v < 10 ? low : high) = true;
        REQUIRE((low ^ high));
    }
    REQUIRE(verify_toast(g, 2, t.pieces).ok());
}

TEST_CASE("verify_toast flags hand-built violations") {
    auto path = build_path(2, 3);
    // Two pieces within distance 1 <= l and no containment.
    std::vector<ToastPiece> close{{0, {0, 1}, 0}, {1, {2, 3}, 1}};
    auto v1 = verify_toast(path, 2, close);
    REQUIRE_FALSE(v1.ok());
    REQUIRE(std::holds_alternative<PairConditionViolation>(v1.violations[0]));

    // A pair of vertices no piece covers.
    auto short_path = build_path(2, 1);
    std::vector<ToastPiece> lonely{{0, {0}, 0}};
    auto v2 = verify_toast(short_path, 1, lonely);
    bool cover = false;
    for (const auto& violation : v2.violations)
        cover = cover || std::holds_alternative<CoverConditionViolation>(violation);
    REQUIRE(cover);

    std::vector<ToastPiece> scattered{{0, {0, 2}, 0}};
    auto v3 = verify_toast(path, 0, scattered);
    bool disconnected = false;
    for (const auto& violation : v3.violations)
        disconnected = disconnected || std::holds_alternative<DisconnectedPieceViolation>(violation);
    REQUIRE(disconnected);

    std::vector<ToastPiece> empty{{0, {}, 0}};
    REQUIRE_FALSE(verify_toast(path, 1, empty).ok());
}

TEST_CASE("builder output verifies on random trees") {
    std::mt19937 rng(61);
    for (int round = 0; round < 50; ++round) {
        int delta = std::uniform_int_distribution<int>(2, 3)(rng);
        int n = std::uniform_int_distribution<int>(1, 80)(rng);
        auto g = random_tree(rng, n, delta);
        for (int l : {1, 2, 4}) {
            Toast t = build_toast(g, l);
            REQUIRE(verify_toast(g, l, t.pieces).ok());
            // Stage invariant: after the build every radius-1 ball sits inside
            // some piece.
            for (int v : g.vertex_ids()) {
                auto ball = g.neighborhood({v}, 1);
                bool inside = false;
                for (const auto& p : t.pieces)
                    inside = inside ||
                             std::includes(p.vertices.begin(), p.vertices.end(), ball.begin(), ball.end());
                REQUIRE(inside);
            }
        }
    }
}

TEST_CASE("builder is deterministic and prefix-replayable") {
    std::mt19937 rng(67);
    auto g = random_tree(rng, 40, 3);
    Toast a = build_toast(g, 2);
    Toast b = build_toast(g, 2);
    REQUIRE(a == b);
    REQUIRE(serialize_toast(a) == serialize_toast(b));

    // Membership of a piece is decided by the stage prefix up to its birth:
    // replaying the stream up to that stage reproduces exactly the pieces
    // born so far.
    for (const auto& p : a.pieces) {
        std::vector<int> prefix(g.vertex_ids().begin(), g.vertex_ids().begin() + p.stage + 1);
        Toast replay = build_toast(g, 2, prefix);
        REQUIRE(replay.pieces.size() == static_cast<size_t>(p.id) + 1);
        for (int i = 0; i <= p.id; ++i) REQUIRE(replay.pieces[i] == a.pieces[i]);
    }
}

TEST_CASE("custom stream orders stay valid") {
    std::mt19937 rng(71);
    auto g = random_tree(rng, 30, 2);
    std::vector<int> order = g.vertex_ids();
    for (int round = 0; round < 10; ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        Toast t = build_toast(g, 2, order);
        REQUIRE(verify_toast(g, 2, t.pieces).ok());
    }
    REQUIRE_THROWS_MATCHES(build_toast(g, 2, std::vector<int>{0, 0, 1}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::bad_parameter;
                           }));
}
