// Temporal graph container: parsing, chronological index, neighbor views,
// batching, projection, labels and serialization round-trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tgc/graph.hpp"

namespace {

using tgc::Interaction;
using tgc::NeighborEntry;
using tgc::NodeId;
using tgc::ParseError;
using tgc::TemporalGraph;

TemporalGraph parse_text(const std::string& text) {
    std::istringstream in(text);
    return TemporalGraph::parse(in);
}

// Line number carried by the error for a given bad input.
std::size_t failing_line(const std::string& text) {
    std::istringstream in(text);
    try {
        TemporalGraph::parse(in);
    } catch (const ParseError& e) {
        return e.line;
    }
    return 0;
}

}  // namespace

TEST_CASE("repeated interactions stay distinct and sort by time") {
    const auto g = parse_text("0 1 5\n0 1 3\n");
    REQUIRE(g.num_interactions() == 2);
    // External ids 0 and 1 appear in that order, so internal ids match.
    CHECK(g.interactions()[0] == Interaction{0, 1, 3.0});
    CHECK(g.interactions()[1] == Interaction{0, 1, 5.0});
}

TEST_CASE("equal timestamps keep input order") {
    const auto g = parse_text("0 1 1.0\n0 2 1.0\n1 2 1.0\n");
    CHECK(g.interactions()[0].target == 1);
    CHECK(g.interactions()[1].target == 2);
    CHECK(g.interactions()[2].source == 1);
}

TEST_CASE("node ids compact in order of first appearance") {
    const auto g = parse_text("# header comment\n5 7 2.0\n7 9 1.0\n\n5 9 1.5 # tail\n");
    REQUIRE(g.num_nodes() == 3);
    CHECK(g.external_id(0) == 5);
    CHECK(g.external_id(1) == 7);
    CHECK(g.external_id(2) == 9);
    CHECK(g.internal_id(9) == NodeId{2});
    CHECK(g.internal_id(4) == std::nullopt);

    // Sorted: (7,9,1.0), (5,9,1.5), (5,7,2.0) in internal ids.
    CHECK(g.interactions()[0] == Interaction{1, 2, 1.0});
    CHECK(g.interactions()[1] == Interaction{0, 2, 1.5});
    CHECK(g.interactions()[2] == Interaction{0, 1, 2.0});
}

TEST_CASE("degrees count both endpoints") {
    const auto g = parse_text("0 1 1\n0 2 2\n0 1 3\n");
    REQUIRE(g.degrees().size() == 3);
    CHECK(g.degrees()[0] == 3);
    CHECK(g.degrees()[1] == 2);
    CHECK(g.degrees()[2] == 1);
}

TEST_CASE("parse errors carry the offending line number") {
    CHECK(failing_line("0 1 1.0\n0 1\n") == 2);             // field count
    CHECK(failing_line("0 x 1.0\n") == 1);                  // bad node id
    CHECK(failing_line("0 1 nope\n") == 1);                 // bad timestamp
    CHECK(failing_line("0 1 1.0\n\n3 3 2.0\n") == 3);       // self-loop
    CHECK(failing_line("0 1 -1.0\n") == 1);                 // negative time
    CHECK_THROWS_AS(parse_text(""), ParseError);            // empty input
    CHECK_THROWS_AS(parse_text("# only comments\n"), ParseError);
}

TEST_CASE("constructor validates dense events") {
    CHECK_THROWS_AS(TemporalGraph({{0, 5, 1.0}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(TemporalGraph({{1, 1, 1.0}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(TemporalGraph({{0, 1, -2.0}}, 2), std::invalid_argument);
}

TEST_CASE("neighbor view is strictly before t and keeps the most recent l") {
    // History of node 0: (1,1), (2,2), (3,3).
    const TemporalGraph g({{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}}, 4);

    const auto at3 = g.neighbor_view(0, 3.0, 2);
    REQUIRE(at3.size() == 2);
    CHECK(at3[0] == NeighborEntry{1, 1.0});  // time 3 itself excluded
    CHECK(at3[1] == NeighborEntry{2, 2.0});

    const auto at10 = g.neighbor_view(0, 10.0, 2);
    REQUIRE(at10.size() == 2);
    CHECK(at10[0] == NeighborEntry{2, 2.0});  // two latest, time-ascending
    CHECK(at10[1] == NeighborEntry{3, 3.0});

    CHECK(g.neighbor_view(0, 1.0, 2).empty());  // nothing strictly earlier
    CHECK(g.neighbor_view(3, 3.0, 5).empty());  // node 3 first appears at t=3

    CHECK_THROWS_AS(g.neighbor_view(9, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.neighbor_view(0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("static projection deduplicates pairs and direction") {
    const auto g = parse_text("0 1 3\n0 1 5\n1 0 7\n");
    const auto edges = g.static_projection();
    REQUIRE(edges.size() == 1);
    CHECK(edges[0] == std::pair<NodeId, NodeId>{0, 1});

    const auto g2 = parse_text("2 1 1\n0 2 2\n1 0 3\n");
    const auto e2 = g2.static_projection();  // internal: 2->0, 1->1, 0->2
    REQUIRE(e2.size() == 3);
    CHECK(e2[0] == std::pair<NodeId, NodeId>{0, 1});
    CHECK(e2[1] == std::pair<NodeId, NodeId>{0, 2});
    CHECK(e2[2] == std::pair<NodeId, NodeId>{1, 2});
}

TEST_CASE("chronological batches tile the stream in order") {
    const TemporalGraph g(
        {{0, 1, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}, {0, 1, 4.0}, {0, 1, 5.0}}, 2);

    const auto by2 = g.chronological_batches(2);
    REQUIRE(by2.size() == 3);
    CHECK(by2[0].size() == 2);
    CHECK(by2[1].size() == 2);
    CHECK(by2[2].size() == 1);
    CHECK(by2[0][0].time == 1.0);
    CHECK(by2[2][0].time == 5.0);

    CHECK(g.chronological_batches(1).size() == 5);
    CHECK(g.chronological_batches(5).size() == 1);
    CHECK(g.chronological_batches(100).size() == 1);
    CHECK_THROWS_AS(g.chronological_batches(0), std::invalid_argument);
}

TEST_CASE("serialize then parse reproduces the interaction sequence") {
    const auto g = parse_text("12 7 0.125\n7 30 3.0000000001\n12 30 0.125\n");
    std::ostringstream out;
    g.serialize(out);
    const auto g2 = parse_text(out.str());

    REQUIRE(g2.num_interactions() == g.num_interactions());
    for (std::size_t i = 0; i < g.num_interactions(); ++i) {
        const auto& a = g.interactions()[i];
        const auto& b = g2.interactions()[i];
        CHECK(g.external_id(a.source) == g2.external_id(b.source));
        CHECK(g.external_id(a.target) == g2.external_id(b.target));
        CHECK(a.time == b.time);  // %.17g round-trips doubles bit-exactly
    }
}

TEST_CASE("labels parse with first-appearance compaction") {
    auto g = parse_text("10 20 1\n20 30 2\n");
    std::istringstream labels("10 red\n20 blue\n30 red\n");
    g.parse_labels(labels);
    REQUIRE(g.has_labels());
    CHECK(g.num_clusters() == 2);
    CHECK(g.labels()[0] == 0);  // red
    CHECK(g.labels()[1] == 1);  // blue
    CHECK(g.labels()[2] == 0);
}

TEST_CASE("label errors: unknown node, uncovered node, bad shape") {
    auto g = parse_text("0 1 1\n");
    {
        std::istringstream in("0 a\n5 b\n");
        CHECK_THROWS_AS(g.parse_labels(in), ParseError);  // node 5 not in graph
    }
    {
        std::istringstream in("0 a\n");
        CHECK_THROWS_AS(g.parse_labels(in), ParseError);  // node 1 uncovered
    }
    {
        std::istringstream in("0 a extra\n1 a\n");
        CHECK_THROWS_AS(g.parse_labels(in), ParseError);
    }
    CHECK_THROWS_AS(g.set_labels({0}, 1), std::invalid_argument);      // size
    CHECK_THROWS_AS(g.set_labels({0, 2}, 2), std::invalid_argument);   // range
}

TEST_CASE("unit-interval rescale maps times affinely onto [0,1]") {
    auto g = parse_text("0 1 10\n1 2 20\n0 2 15\n");
    std::istringstream labels("0 a\n1 b\n2 a\n");
    g.parse_labels(labels);

    const auto r = g.with_unit_interval_times();
    REQUIRE(r.num_interactions() == 3);
    CHECK(r.interactions()[0].time == 0.0);
    CHECK(r.interactions()[1].time == 0.5);
    CHECK(r.interactions()[2].time == 1.0);
    CHECK(r.external_id(2) == 2);
    CHECK(r.has_labels());
    CHECK(r.labels()[1] == 1);

    // Degenerate span: all events share a timestamp -> all zeros.
    const auto flat = parse_text("0 1 7\n1 2 7\n").with_unit_interval_times();
    CHECK(flat.interactions()[0].time == 0.0);
    CHECK(flat.interactions()[1].time == 0.0);
}
