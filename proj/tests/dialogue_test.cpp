#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "dsem/dialogue.hpp"
#include "dsem/error.hpp"
#include "support/test_util.hpp"

using namespace dsem;

namespace {

Dialogue make_dialogue(std::vector<int> replies) {
    Dialogue d;
    d.doc_id = "test";
    d.replies = std::move(replies);
    for (std::size_t i = 0; i < d.replies.size(); ++i) {
        d.utterances.push_back("utterance " + std::to_string(i));
        d.speakers.push_back("s" + std::to_string(i % 2));
    }
    return d;
}

EmbeddingMatrix make_embeddings(std::vector<std::vector<double>> rows) {
    EmbeddingMatrix e;
    e.rows = static_cast<int>(rows.size());
    e.cols = static_cast<int>(rows[0].size());
    for (const auto& row : rows)
        e.values.insert(e.values.end(), row.begin(), row.end());
    return e;
}

// Ancestor test by direct reply-chain walk, for property checks.
bool is_ancestor(const std::vector<int>& replies, int anc, int v) {
    for (int a = replies[static_cast<std::size_t>(v)]; a != -1;
         a = replies[static_cast<std::size_t>(a)]) {
        if (a == anc)
            return true;
    }
    return false;
}

std::vector<int> random_replies(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> replies{-1};
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        replies.push_back(pick(rng));
    }
    return replies;
}

}  // namespace

TEST_SUITE("dialogue") {

TEST_CASE("reply list validation") {
    CHECK_NOTHROW(validate_replies({-1}));
    CHECK_NOTHROW(validate_replies({-1, 0, 1, 0}));
    CHECK_THROWS_AS(validate_replies({}), std::invalid_argument);
    CHECK_THROWS_AS(validate_replies({0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_replies({-1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_replies({-1, 0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(validate_replies({-1, -1}), std::invalid_argument);

    Dialogue d = make_dialogue({-1, 0});
    d.speakers.pop_back();
    CHECK_THROWS_AS(validate_dialogue(d), std::invalid_argument);
}

TEST_CASE("cosine similarity") {
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> y{0.0, 1.0};
    const std::vector<double> d{std::sqrt(0.5), std::sqrt(0.5)};
    const std::vector<double> zero{0.0, 0.0};
    CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine(x, y) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cosine(x, d) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(cosine(x, zero), std::invalid_argument);
    CHECK_THROWS_AS(cosine(x, std::vector<double>{1.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("thread closure of a chain") {
    CHECK(thread_closure({-1, 0, 1}) ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("thread closure of a star has no sibling pairs") {
    CHECK(thread_closure({-1, 0, 0, 0}) ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("thread closure of a mixed tree") {
    CHECK(thread_closure({-1, 0, 1, 0}) ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}});
}

TEST_CASE("thread closure matches the ancestor walk on random trees") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 2 + static_cast<int>(seed % 29);
        const std::vector<int> replies = random_replies(n, seed);
        const auto pairs = thread_closure(replies);
        std::set<std::pair<int, int>> closure(pairs.begin(), pairs.end());
        CHECK(closure.size() == pairs.size());
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const bool related =
                    is_ancestor(replies, u, v) || is_ancestor(replies, v, u);
                CHECK(closure.contains({u, v}) == related);
            }
        }
    }
}

TEST_CASE("build_dialogue_graph clips negative cosines and adds self-loops") {
    const Dialogue d = make_dialogue({-1, 0});
    SUBCASE("orthogonal embeddings leave only self-loops") {
        const WeightedGraph g =
            build_dialogue_graph(d, make_embeddings({{1.0, 0.0}, {0.0, 1.0}}));
        CHECK(g.edges().size() == 2);
        CHECK(g.self_loop(0) == 1.0);
        CHECK(g.self_loop(1) == 1.0);
        CHECK(g.edge_weight(0, 1) == 0.0);
    }
    SUBCASE("opposed embeddings clip to zero weight") {
        const WeightedGraph g =
            build_dialogue_graph(d, make_embeddings({{1.0, 0.0}, {-1.0, 0.0}}));
        CHECK(g.edge_weight(0, 1) == 0.0);
    }
    SUBCASE("diagonal embedding yields the analytic cosine") {
        const WeightedGraph g = build_dialogue_graph(
            d, make_embeddings({{1.0, 0.0}, {std::sqrt(0.5), std::sqrt(0.5)}}));
        CHECK(g.edge_weight(0, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
}

TEST_CASE("identical embeddings on a chain give unit closure edges") {
    const Dialogue d = make_dialogue({-1, 0, 1});
    const WeightedGraph g = build_dialogue_graph(
        d, make_embeddings({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}));
    CHECK(g.edge_weight(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.edge_weight(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.edge_weight(1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.edges().size() == 6);
}

TEST_CASE("build_dialogue_graph error contract") {
    const Dialogue d = make_dialogue({-1, 0});
    CHECK_THROWS_AS(build_dialogue_graph(d, make_embeddings({{1.0, 0.0}})),
                    mismatch_error);
    CHECK_THROWS_AS(
        build_dialogue_graph(d, make_embeddings({{1.0, 0.0}, {0.0, 0.0}})),
        std::invalid_argument);
}

TEST_CASE("attach_root examples") {
    CHECK(attach_root(TwoLevelTree{{{0, 1}, {2, 3}}}) ==
          SubDialogueSet{{0, 1}, {0, 2, 3}});
    CHECK(attach_root(TwoLevelTree{{{0}, {1, 2}}}) == SubDialogueSet{{0, 1, 2}});
    CHECK(attach_root(TwoLevelTree{{{0, 1, 2}}}) == SubDialogueSet{{0, 1, 2}});
    CHECK(attach_root(TwoLevelTree{{{0}}}) == SubDialogueSet{{0}});
}

TEST_CASE("attach_root sorts members and sub-dialogues") {
    const SubDialogueSet subs = attach_root(TwoLevelTree{{{3, 1}, {2, 0}}});
    CHECK(subs == SubDialogueSet{{0, 1, 3}, {0, 2}});
}

TEST_CASE("attach_root covers every non-root vertex exactly once") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 7;
        const TwoLevelTree t = dsem::testing::random_partition(n, rng);
        const SubDialogueSet subs = attach_root(t);
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        for (const auto& sub : subs) {
            CHECK(!sub.empty());
            CHECK(sub.front() == 0);
            for (int v : sub)
                ++seen[static_cast<std::size_t>(v)];
        }
        CHECK(seen[0] == static_cast<int>(subs.size()));
        for (int v = 1; v < n; ++v)
            CHECK(seen[static_cast<std::size_t>(v)] == 1);
    }
}

}  // TEST_SUITE
