#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lct/classify.hpp"
#include "lct/io.hpp"
#include "lct/treesolve.hpp"

#include "testutil.hpp"

using namespace lct;
using namespace lct::testutil;

namespace {

/// Oracle for length goodness: materialize the path, pin both endpoint stars,
/// and ask the completion engine.
bool path_extendable(const Lcl& lcl, const std::vector<LabelMultiset>& v_prime,
                     const LabelMultiset& a, int alpha, const LabelMultiset& b, int beta, int len) {
    auto path = build_path(lcl.delta(), len);
    if (len == 0) return false; // not queried; lengths start at 1
    Coloring pins = precolor_endpoint_stars(path, len, a, alpha, b, beta);
    return is_extendable({path, lcl, pins, &v_prime});
}

std::vector<std::vector<LabelMultiset>> nonempty_subsets(const std::vector<LabelMultiset>& vcs) {
    std::vector<std::vector<LabelMultiset>> out;
    for (unsigned mask = 1; mask < (1u << vcs.size()); ++mask) {
        std::vector<LabelMultiset> sub;
        for (size_t i = 0; i < vcs.size(); ++i)
            if ((mask >> i) & 1) sub.push_back(vcs[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

} // namespace

TEST_CASE("transition matrices for the named problems") {
    Lcl k3 = make_k_lcl(3, 2);
    auto m3 = transition_matrix(k3, k3.vertex_constraints());
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) REQUIRE(m3.at(s, t) == (s != t));

    Lcl k2 = make_k_lcl(2, 2);
    auto m2 = transition_matrix(k2, k2.vertex_constraints());
    REQUIRE(m2.rows == std::vector<uint32_t>{0b10, 0b01});

    Lcl no_edges(2, {"1", "2"}, {ms({0, 0})}, {});
    auto mz = transition_matrix(no_edges, no_edges.vertex_constraints());
    REQUIRE(mz.rows == std::vector<uint32_t>{0, 0});

    REQUIRE_THROWS_MATCHES(transition_matrix(k3, {}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::empty_subset;
                           }));
}

TEST_CASE("good_lengths on the triangle problem") {
    Lcl k3 = make_k_lcl(3, 2);
    const auto& vcs = k3.vertex_constraints();

    auto same = good_lengths(k3, vcs, ms({0, 0}), 0, ms({0, 0}), 0);
    REQUIRE_FALSE(same.contains(1));
    for (int l = 2; l <= 12; ++l) REQUIRE(same.contains(l));
    REQUIRE(same.tail_all_good());

    auto diff = good_lengths(k3, vcs, ms({0, 0}), 0, ms({1, 1}), 1);
    for (int l = 1; l <= 12; ++l) REQUIRE(diff.contains(l));
    REQUIRE(diff.min_uniform_good() == 1);

    REQUIRE_THROWS_MATCHES(good_lengths(k3, vcs, ms({0, 0}), 1, ms({0, 0}), 0), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::witness_not_in_subset;
                           }));
}

TEST_CASE("good_lengths parity on the two-coloring problem") {
    Lcl k2 = make_k_lcl(2, 2);
    const auto& vcs = k2.vertex_constraints();
    auto ls = good_lengths(k2, vcs, ms({0, 0}), 0, ms({0, 0}), 0);
    for (int l = 1; l <= 12; ++l) REQUIRE(ls.contains(l) == (l % 2 == 0));
    REQUIRE(ls.infinitely_bad());
}

TEST_CASE("good_lengths matches the completion oracle everywhere small") {
    std::mt19937 rng(41);
    std::vector<Lcl> corpus{make_k_lcl(2, 2), make_k_lcl(3, 2), make_perfect_matching_lcl(),
                            make_h2_lcl()};
    for (int i = 0; i < 6; ++i)
        corpus.push_back(random_lcl(rng, std::uniform_int_distribution<int>(2, 3)(rng),
                                    std::uniform_int_distribution<int>(2, 3)(rng), 4, 3));
    for (const auto& lcl : corpus) {
        for (const auto& v_prime : nonempty_subsets(lcl.vertex_constraints())) {
            for (const auto& a : v_prime)
                for (int alpha : a.support())
                    for (const auto& b : v_prime)
                        for (int beta : b.support()) {
                            auto ls = good_lengths(lcl, v_prime, a, alpha, b, beta);
                            for (int len = 1; len <= 8; ++len)
                                REQUIRE(ls.contains(len) ==
                                        path_extendable(lcl, v_prime, a, alpha, b, beta, len));
                        }
        }
    }
}

TEST_CASE("is_l_full on the named problems") {
    Lcl k3 = make_k_lcl(3, 2);
    REQUIRE(is_l_full(k3, k3.vertex_constraints(), 2));
    REQUIRE_FALSE(is_l_full(k3, k3.vertex_constraints(), 1));

    Lcl k2 = make_k_lcl(2, 2);
    for (int l = 1; l <= 6; ++l) REQUIRE_FALSE(is_l_full(k2, k2.vertex_constraints(), l));
}

TEST_CASE("l-fullness is monotone in l") {
    std::mt19937 rng(43);
    for (int round = 0; round < 20; ++round) {
        Lcl lcl = random_lcl(rng, 2, std::uniform_int_distribution<int>(2, 3)(rng), 4, 3);
        for (const auto& v_prime : nonempty_subsets(lcl.vertex_constraints()))
            for (int l = 1; l <= 5; ++l)
                if (is_l_full(lcl, v_prime, l)) REQUIRE(is_l_full(lcl, v_prime, l + 1));
    }
}

TEST_CASE("decide_fullness on the named problems") {
    Lcl k3 = make_k_lcl(3, 2);
    auto cert = decide_fullness(k3);
    REQUIRE(cert.has_value());
    REQUIRE(cert->v_prime == k3.vertex_constraints());
    REQUIRE(cert->l == 2);

    REQUIRE_FALSE(decide_fullness(make_k_lcl(2, 2)).has_value());
    REQUIRE_FALSE(decide_fullness(make_perfect_matching_lcl()).has_value());
}

TEST_CASE("the cycle homomorphism problem is full exactly from length 4") {
    // No closed walk of length 3 exists in the 5-cycle, so the quadruple with
    // both stars at the same vertex value blocks l = 3; every length >= 4
    // admits a walk between any two cycle vertices.
    Lcl h2 = make_h2_lcl();
    auto cert = decide_fullness(h2);
    REQUIRE(cert.has_value());
    REQUIRE(cert->v_prime == h2.vertex_constraints());
    REQUIRE(cert->l == 4);
    REQUIRE(is_l_full(h2, h2.vertex_constraints(), 4));
    REQUIRE_FALSE(is_l_full(h2, h2.vertex_constraints(), 3));

    // Cross-check both boundary lengths against the completion engine.
    const auto& vcs = h2.vertex_constraints();
    LabelMultiset v0v0({0, 0});
    REQUIRE_FALSE(path_extendable(h2, vcs, v0v0, 0, v0v0, 0, 3));
    for (int len = 4; len <= 10; ++len) {
        for (const auto& a : vcs)
            for (const auto& b : vcs)
                REQUIRE(path_extendable(h2, vcs, a, a.labels()[0], b, b.labels()[0], len));
    }
}

TEST_CASE("max-subsets guard") {
    Lcl k2 = make_k_lcl(2, 2);
    REQUIRE_THROWS_MATCHES(decide_fullness(k2, 2), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::max_subsets_exceeded;
                           }));
}

TEST_CASE("bad path witnesses") {
    Lcl k2 = make_k_lcl(2, 2);
    auto w = find_bad_path_witness(k2, k2.vertex_constraints());
    REQUIRE(w.a == ms({0, 0}));
    REQUIRE(w.alpha == 0);
    REQUIRE(w.b == ms({0, 0}));
    REQUIRE(w.beta == 0);
    for (int l = 1; l <= 12; ++l) REQUIRE(w.good.contains(l) == (l % 2 == 0));

    std::vector<LabelMultiset> ones{ms({0, 0})};
    auto w1 = find_bad_path_witness(k2, ones);
    REQUIRE(w1.a == ms({0, 0}));
    REQUIRE(w1.good.infinitely_bad());

    Lcl pm = make_perfect_matching_lcl();
    auto wpm = find_bad_path_witness(pm, pm.vertex_constraints());
    REQUIRE(wpm.good.infinitely_bad());
    // Recheck sampled bad lengths via the completion engine.
    int checked = 0;
    for (int len = 1; len <= 12; ++len)
        if (!wpm.good.contains(len)) {
            REQUIRE_FALSE(
                path_extendable(pm, pm.vertex_constraints(), wpm.a, wpm.alpha, wpm.b, wpm.beta, len));
            checked++;
        }
    REQUIRE(checked > 0);

    Lcl k3 = make_k_lcl(3, 2);
    REQUIRE_THROWS_MATCHES(find_bad_path_witness(k3, k3.vertex_constraints()), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::subset_is_full;
                           }));
}

TEST_CASE("is_greedy_set on the named problems") {
    Lcl k4 = make_k_lcl(4, 3);
    REQUIRE(is_greedy_set(k4, {0, 1, 2, 3}));

    Lcl k3d3 = make_k_lcl(3, 3);
    REQUIRE_FALSE(is_greedy_set(k3d3, {0, 1, 2}));

    Lcl k3 = make_k_lcl(3, 2);
    REQUIRE_FALSE(is_greedy_set(k3, {}));
}

TEST_CASE("decide_greediness returns the first subset in size-then-lex order") {
    // For proper (delta+1)-coloring any delta labels already satisfy the
    // greedy condition, so the first certificate is smaller than the full
    // alphabet.
    auto g4 = decide_greediness(make_k_lcl(4, 3));
    REQUIRE(g4.has_value());
    REQUIRE(g4->sigma_prime == std::vector<int>{0, 1, 2});

    auto g3 = decide_greediness(make_k_lcl(3, 2));
    REQUIRE(g3.has_value());
    REQUIRE(g3->sigma_prime == std::vector<int>{0, 1});

    REQUIRE_FALSE(decide_greediness(make_h2_lcl()).has_value());
    REQUIRE_FALSE(decide_greediness(make_k_lcl(2, 2)).has_value());
    REQUIRE_FALSE(decide_greediness(make_perfect_matching_lcl()).has_value());
}

TEST_CASE("bad star witnesses") {
    Lcl k3d3 = make_k_lcl(3, 3);
    auto w = find_bad_star_witness(k3d3, {0, 1, 2});
    REQUIRE(w.k == 3);
    REQUIRE(w.alphas == std::vector<int>{0, 1, 2});

    Lcl h2 = make_h2_lcl();
    auto wh = find_bad_star_witness(h2, {0});
    REQUIRE(wh.k == 1);
    REQUIRE(wh.alphas == std::vector<int>{0});

    Lcl empty_v(2, {"1", "2"}, {}, {ms({0, 1})});
    auto we = find_bad_star_witness(empty_v, {0});
    REQUIRE(we.k == 0);
    REQUIRE(we.alphas.empty());

    Lcl k4 = make_k_lcl(4, 3);
    REQUIRE_THROWS_MATCHES(find_bad_star_witness(k4, {0, 1, 2, 3}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::set_is_greedy;
                           }));
}

TEST_CASE("bad star witnesses really block the star completion") {
    std::mt19937 rng(47);
    for (int round = 0; round < 30; ++round) {
        int delta = std::uniform_int_distribution<int>(2, 3)(rng);
        Lcl lcl = random_lcl(rng, delta, std::uniform_int_distribution<int>(2, 3)(rng), 4, 3);
        std::vector<int> all_labels;
        for (int l = 0; l < lcl.alphabet_size(); ++l) all_labels.push_back(l);
        if (is_greedy_set(lcl, all_labels)) continue;
        auto w = find_bad_star_witness(lcl, all_labels);
        // Enumerate every completion of the star: center pairs with the
        // witness labels, virtual center halves range over the full alphabet
        // (the witness set is all of it), each leaf multiset completable.
        bool completable = false;
        std::vector<int> tuple(delta, 0);
        auto rec = [&](auto&& self, int pos) -> bool {
            if (pos == delta) {
                std::vector<int> labels(tuple.begin(), tuple.end());
                return lcl.vertex_allowed(LabelMultiset(std::move(labels)));
            }
            for (int x = 0; x < lcl.alphabet_size(); ++x) {
                if (pos < w.k && !lcl.edge_allowed(w.alphas[pos], x)) continue;
                tuple[pos] = x;
                if (self(self, pos + 1)) return true;
            }
            return false;
        };
        bool leaves_ok = true;
        for (int alpha : w.alphas) {
            bool any = false;
            for (const auto& m : lcl.vertex_constraints()) any = any || m.contains(alpha);
            leaves_ok = leaves_ok && any;
        }
        completable = leaves_ok && rec(rec, 0);
        REQUIRE_FALSE(completable);
    }
}

TEST_CASE("greedy implies full on random problems") {
    std::mt19937 rng(53);
    int greedy_seen = 0;
    for (int round = 0; round < 60; ++round) {
        int delta = std::uniform_int_distribution<int>(2, 3)(rng);
        Lcl lcl = random_lcl(rng, delta, std::uniform_int_distribution<int>(2, 3)(rng), 5, 4);
        if (decide_greediness(lcl).has_value()) {
            greedy_seen++;
            REQUIRE(decide_fullness(lcl).has_value());
        }
    }
    REQUIRE(greedy_seen > 3);
}

TEST_CASE("certificates and witnesses serialize to their wire shapes") {
    Lcl k3 = make_k_lcl(3, 2);
    auto full = decide_fullness(k3);
    json jf = fullness_certificate_to_json(*full, k3);
    REQUIRE(jf["l"] == 2);
    REQUIRE(jf["v_prime"] == json::parse(R"([["1","1"],["2","2"],["3","3"]])"));

    auto greedy = decide_greediness(k3);
    json jg = greedy_certificate_to_json(*greedy, k3);
    REQUIRE(jg["sigma_prime"] == json::parse(R"(["1","2"])"));

    Lcl k2 = make_k_lcl(2, 2);
    auto w = find_bad_path_witness(k2, k2.vertex_constraints());
    json jw = bad_path_witness_to_json(w, k2);
    REQUIRE(jw["a"] == json::parse(R"(["1","1"])"));
    REQUIRE(jw["alpha"] == "1");
    REQUIRE(jw["beta"] == "1");
    REQUIRE(jw["bad"].contains("preperiod"));
    REQUIRE(jw["bad"].contains("period"));
    REQUIRE(jw["bad"].contains("good_prefix"));
    REQUIRE(jw["bad"].contains("good_residues"));

    Lcl k3d3 = make_k_lcl(3, 3);
    json js = bad_star_witness_to_json(find_bad_star_witness(k3d3, {0, 1, 2}), k3d3);
    REQUIRE(js["k"] == 3);
    REQUIRE(js["alphas"] == json::parse(R"(["1","2","3"])"));
}
