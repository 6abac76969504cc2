#include <doctest.h>

#include <sstream>

#include "demograph/error.hpp"
#include "demograph/graph.hpp"
#include "oracles.hpp"

using namespace demograph;

namespace {
Graph ingest(const std::string &text, EdgeListSchema schema = {}) {
    std::istringstream in(text);
    return ingest_edge_list(in, schema);
}
} // namespace

TEST_CASE("duplicate directed pairs collapse to one undirected edge") {
    Graph g = ingest("1 2\n2 1\n1 2\n");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
    g.validate();
}

TEST_CASE("empty input yields the empty graph") {
    Graph g = ingest("");
    CHECK(g.node_count() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("duplicate weighted edges keep the maximum weight") {
    Graph g = ingest("a b 3.5\nb a 2.0\n");
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_weights(0)[0] == 3.5);
    CHECK(g.edge_weights(1)[0] == 3.5);
    CHECK_FALSE(g.has_uniform_weights());
}

TEST_CASE("comments, blank lines and custom delimiters") {
    Graph g = ingest("# header\n\n  \na,b\nb,c\n", EdgeListSchema{','});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("self-loop lines register the node but add no edge") {
    Graph g = ingest("a a\na b\n");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    g.validate();
}

TEST_CASE("malformed lines and non-positive weights are rejected with line numbers") {
    CHECK_THROWS_WITH_AS(ingest("1 2\nonly_one_field\n"),
                         doctest::Contains("line 2"), DataError);
    CHECK_THROWS_WITH_AS(ingest("1 2 0.0\n"), doctest::Contains("weight"), DataError);
    CHECK_THROWS_WITH_AS(ingest("1 2 -3\n"), doctest::Contains("weight"), DataError);
    CHECK_THROWS_WITH_AS(ingest("1 2 x\n"), doctest::Contains("line 1"), DataError);
    CHECK_THROWS_AS(ingest("1 2 3 4\n"), DataError);
}

TEST_CASE("neighbor lists are sorted and symmetric on random graphs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Graph g = oracles::gnm_random(60, 140, seed);
        g.validate(); // full-scan symmetry + sortedness + no self loops
        CHECK(g.edge_count() == 140);
    }
}

TEST_CASE("export then re-ingest reproduces the same external edge set") {
    Graph g = oracles::gnm_random(40, 90, 7);
    std::ostringstream out;
    write_edge_list(g, out);
    Graph h = ingest(out.str());
    REQUIRE(h.node_count() == g.node_count());
    REQUIRE(h.edge_count() == g.edge_count());
    auto key = [](const Graph &gr) {
        std::set<std::pair<std::string, std::string>> s;
        for (NodeIndex u = 0; u < gr.node_count(); ++u)
            for (NodeIndex v : gr.neighbors(u)) {
                auto a = gr.external_id(u), b = gr.external_id(v);
                s.insert({std::min(a, b), std::max(a, b)});
            }
        return s;
    };
    CHECK(key(g) == key(h));
}

TEST_CASE("weighted export round-trips weights exactly") {
    Graph g = oracles::make_weighted_graph(4, {{0, 1, 0.125}, {1, 2, 7.25}, {2, 3, 1.0}});
    std::ostringstream out;
    write_edge_list(g, out);
    Graph h = ingest(out.str());
    REQUIRE(h.edge_count() == 3);
    auto a = *h.find_external("0");
    auto b = *h.find_external("1");
    auto nb = h.neighbors(a);
    auto pos = std::find(nb.begin(), nb.end(), b) - nb.begin();
    CHECK(h.edge_weights(a)[pos] == 0.125);
}

TEST_CASE("induced subgraph keeps external ids and drops cut edges") {
    Graph g = oracles::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::vector<bool> keep{true, true, true, false};
    std::vector<NodeIndex> old_to_new;
    Graph h = induced_subgraph(g, keep, &old_to_new);
    CHECK(h.node_count() == 3);
    CHECK(h.edge_count() == 2);
    CHECK(old_to_new[3] == kInvalidNode);
    CHECK(h.external_id(old_to_new[2]) == "2");
    h.validate();
}
