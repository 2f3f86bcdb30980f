#include <doctest.h>

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "dsem/error.hpp"
#include "dsem/io.hpp"
#include "support/test_util.hpp"

using namespace dsem;
using dsem::testing::read_text;
using dsem::testing::TempDir;
using dsem::testing::write_text;

TEST_SUITE("io") {

TEST_CASE("dialogue file roundtrip") {
    TempDir tmp;
    Dialogue d;
    d.doc_id = "doc \"quoted\"\nline";
    d.utterances = {"hello", "re: hello", "tabs\tand\\slashes"};
    d.speakers = {"alice", "bob", "alice"};
    d.replies = {-1, 0, 1};

    const auto path = tmp.file("dialogue.json");
    write_dialogue_file(path, d);
    const Dialogue back = read_dialogue_file(path);
    CHECK(back.doc_id == d.doc_id);
    CHECK(back.utterances == d.utterances);
    CHECK(back.speakers == d.speakers);
    CHECK(back.replies == d.replies);
}

TEST_CASE("dialogue writer emits the planted sidecar and readers ignore it") {
    TempDir tmp;
    Dialogue d;
    d.doc_id = "planted";
    d.utterances = {"a", "b"};
    d.speakers = {"s0", "s1"};
    d.replies = {-1, 0};
    const std::vector<std::string> planted{"shared", "c0"};

    const auto path = tmp.file("dialogue.json");
    write_dialogue_file(path, d, &planted);
    const std::string text = read_text(path);
    CHECK(text.find("\"planted\": [\"shared\", \"c0\"]") != std::string::npos);
    CHECK(read_dialogue_file(path).doc_id == "planted");

    const std::vector<std::string> wrong{"shared"};
    CHECK_THROWS_AS(write_dialogue_file(path, d, &wrong), std::invalid_argument);
}

TEST_CASE("dialogue files with unknown fields still parse") {
    TempDir tmp;
    const auto path = tmp.file("extra.json");
    write_text(path, R"({"doc_id": "x", "sentences": ["a"], "speakers": ["s"],
                         "replies": [-1], "origin": "corpus-7", "score": 3})");
    CHECK(read_dialogue_file(path).size() == 1);
}

TEST_CASE("malformed dialogue files raise parse_error") {
    TempDir tmp;
    const auto path = tmp.file("bad.json");

    write_text(path, "not json at all");
    CHECK_THROWS_AS(read_dialogue_file(path), parse_error);

    write_text(path, R"({"doc_id": "x"})");
    CHECK_THROWS_AS(read_dialogue_file(path), parse_error);

    write_text(path, R"({"doc_id": "x", "sentences": ["a"], "speakers": ["s"],
                         "replies": [0]})");
    CHECK_THROWS_AS(read_dialogue_file(path), parse_error);

    write_text(path, R"({"doc_id": "x", "sentences": "a", "speakers": ["s"],
                         "replies": [-1]})");
    CHECK_THROWS_AS(read_dialogue_file(path), parse_error);

    CHECK_THROWS_AS(read_dialogue_file(tmp.file("missing.json")), parse_error);
}

TEST_CASE("binary embedding roundtrip with magic sniffing") {
    TempDir tmp;
    EmbeddingMatrix e;
    e.rows = 2;
    e.cols = 3;
    e.values = {1.0, -0.5, 0.25, 0.0, 2.0, -8.0};

    const auto path = tmp.file("emb.semd");
    write_embeddings_file(path, e);
    const std::string bytes = read_text(path);
    REQUIRE(bytes.size() == 12 + 4 * 6);
    CHECK(bytes.substr(0, 4) == "SEMD");

    const EmbeddingMatrix back = read_embeddings_file(path);
    CHECK(back.rows == 2);
    CHECK(back.cols == 3);
    CHECK(back.values == e.values);
}

TEST_CASE("JSON embedding files are accepted") {
    TempDir tmp;
    const auto path = tmp.file("emb.json");
    write_text(path, R"({"dim": 2, "vectors": [[1.0, 0.0], [0.5, -0.5]]})");
    const EmbeddingMatrix e = read_embeddings_file(path);
    CHECK(e.rows == 2);
    CHECK(e.cols == 2);
    CHECK(e.values == std::vector<double>{1.0, 0.0, 0.5, -0.5});
}

TEST_CASE("malformed embedding files raise parse_error") {
    TempDir tmp;
    const auto path = tmp.file("bad.semd");

    write_text(path, std::string("SEMD") + std::string(4, '\0'));
    CHECK_THROWS_AS(read_embeddings_file(path), parse_error);

    std::string header("SEMD");
    const auto u32 = [](std::uint32_t v) {
        std::string s(4, '\0');
        for (int i = 0; i < 4; ++i)
            s[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
        return s;
    };
    write_text(path, header + u32(2) + u32(2) + std::string(4, '\0'));
    CHECK_THROWS_AS(read_embeddings_file(path), parse_error);

    write_text(path, R"({"dim": 2, "vectors": [[1.0, 0.0], [0.5]]})");
    CHECK_THROWS_AS(read_embeddings_file(path), parse_error);

    write_text(path, R"({"dim": 2})");
    CHECK_THROWS_AS(read_embeddings_file(path), parse_error);
}

TEST_CASE("embedding writer validates its input") {
    TempDir tmp;
    EmbeddingMatrix e;
    e.rows = 2;
    e.cols = 2;
    e.values = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(write_embeddings_file(tmp.file("x.semd"), e),
                    std::invalid_argument);
}

TEST_CASE("graph file roundtrip keeps exact weights") {
    TempDir tmp;
    WeightedGraph g(4);
    g.add_edge(0, 1, 1.0);
    g.add_edge(2, 3, 0.1);
    g.add_edge(1, 1, 0.7071067811865476);

    const auto path = tmp.file("graph.json");
    write_graph_file(path, g);
    const WeightedGraph back = read_graph_file(path);
    CHECK(back.num_vertices() == 4);
    CHECK(back.edges() == g.edges());
}

TEST_CASE("malformed graph files raise parse_error") {
    TempDir tmp;
    const auto path = tmp.file("bad.json");

    write_text(path, R"({"n": 2})");
    CHECK_THROWS_AS(read_graph_file(path), parse_error);

    write_text(path, R"({"n": 0, "edges": []})");
    CHECK_THROWS_AS(read_graph_file(path), parse_error);

    write_text(path, R"({"n": 2, "edges": [[0, 1]]})");
    CHECK_THROWS_AS(read_graph_file(path), parse_error);

    write_text(path, R"({"n": 2, "edges": [[0, 5, 1.0]]})");
    CHECK_THROWS_AS(read_graph_file(path), parse_error);

    write_text(path, R"({"n": 2, "edges": [[0, 1, 1.0], [1, 0, 0.5]]})");
    CHECK_THROWS_AS(read_graph_file(path), parse_error);
}

TEST_CASE("partition report golden rendering") {
    PartitionReport r;
    r.doc_id = "demo";
    r.sigma = 0.15;
    r.entropy_1d = 2.0;
    r.entropy_final = 1.0;
    r.rounds = 2;
    r.sub_dialogues = {{0, 1}, {0, 2, 3}};

    const std::string expected =
        "{\n"
        "  \"doc_id\": \"demo\",\n"
        "  \"sigma\": 0.150000000,\n"
        "  \"entropy_1d\": 2.000000000,\n"
        "  \"entropy_final\": 1.000000000,\n"
        "  \"rounds\": 2,\n"
        "  \"sub_dialogues\": [[0, 1], [0, 2, 3]]\n"
        "}\n";
    CHECK(render_partition_report(r) == expected);
}

TEST_CASE("partition report never prints a negative zero") {
    PartitionReport r;
    r.doc_id = "zero";
    r.entropy_1d = -0.0;
    r.entropy_final = -0.0;
    r.sub_dialogues = {{0}};
    const std::string text = render_partition_report(r);
    CHECK(text.find("-0.000000000") == std::string::npos);
    CHECK(text.find("\"entropy_final\": 0.000000000") != std::string::npos);
}

TEST_CASE("traced report is well-formed JSON with the expected fields") {
    PartitionReport r;
    r.doc_id = "traced";
    r.sigma = 0.5;
    r.entropy_1d = 1.998363672593813;
    r.entropy_final = 1.0459827202128607;
    r.rounds = 3;
    r.sub_dialogues = {{0, 1}, {0, 2, 3}};
    MergeTrace trace;
    trace.se_initial = r.entropy_1d;
    trace.se_final = r.entropy_final;
    trace.truncated = false;
    trace.rounds.push_back({{{0, 1, 0.47619047619047605}}, 1.998363672593813,
                            1.5221731964033369});
    trace.rounds.push_back({{{2, 3, 0.47619047619047605}}, 1.5221731964033369,
                            1.0459827202128607});
    trace.rounds.push_back({{}, 1.0459827202128607, 1.0459827202128607});
    r.trace = trace;

    TempDir tmp;
    const auto path = tmp.file("report.json");
    write_partition_report(path, r);
    const nlohmann::json parsed = nlohmann::json::parse(read_text(path));
    CHECK(parsed["doc_id"] == "traced");
    CHECK(parsed["trace"]["truncated"] == false);
    REQUIRE(parsed["trace"]["rounds"].size() == 3);
    CHECK(parsed["trace"]["rounds"][0]["round"] == 1);
    CHECK(parsed["trace"]["rounds"][0]["merges"][0]["a"] == 0);
    CHECK(parsed["trace"]["rounds"][0]["merges"][0]["b"] == 1);
    CHECK(parsed["trace"]["rounds"][2]["merges"].empty());
    CHECK(parsed["sub_dialogues"][1] == nlohmann::json({0, 2, 3}));
}

TEST_CASE("report rendering is byte-stable across calls") {
    PartitionReport r;
    r.doc_id = "stable";
    r.sigma = 0.15;
    r.entropy_1d = 1.2345678949;
    r.entropy_final = 0.000000001;
    r.rounds = 1;
    r.sub_dialogues = {{0}};
    CHECK(render_partition_report(r) == render_partition_report(r));
}

}  // TEST_SUITE
