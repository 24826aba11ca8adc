// Copyright 2026 The hone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>
#include <sstream>

#include "hone/generators.hpp"
#include "hone/graph.hpp"
#include "test_util.hpp"

using namespace hone;
using hone::testing::graph_of;

namespace {

Graph parse(const std::string& text, EdgeListOptions opts = {}) {
  std::istringstream in(text);
  return load_edge_list(in, opts);
}

void check_invariants(const Graph& g) {
  std::size_t total = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(nb[i] != u);
      if (i > 0) CHECK(nb[i - 1] < nb[i]);
      const auto e = g.edge_index(u, nb[i]);
      REQUIRE(e.has_value());
      CHECK(g.edge_index(nb[i], u) == e);
      CHECK(g.incident_edges(u)[i] == *e);
    }
  }
  CHECK(total == 2 * g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    CHECK(g.edge(e).first < g.edge(e).second);
    if (e > 0) CHECK(g.edge(e - 1) < g.edge(e));
  }
}

}  // namespace

TEST_CASE("one-indexed triangle") {
  const Graph g = parse("1 2\n2 3\n3 1\n", {.one_indexed = true});
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.label(0) == 1);
  CHECK(g.label(2) == 3);
  check_invariants(g);
}

TEST_CASE("self-loops and duplicates are dropped") {
  const Graph g = parse("0 0\n0 1\n1 0\n");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.edge(0) == std::pair<NodeId, NodeId>{0, 1});
}

TEST_CASE("comments and weight tokens") {
  const Graph g = parse("% comment\n1 2 0.5\n", {.one_indexed = true});
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.edge(0) == std::pair<NodeId, NodeId>{0, 1});
  CHECK(parse("# other comment\n\n5 7\n").num_edges() == 1);
}

TEST_CASE("node labels are compacted in ascending order") {
  const Graph g = parse("10 30\n30 20\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.label(0) == 10);
  CHECK(g.label(1) == 20);
  CHECK(g.label(2) == 30);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("self-loop-only nodes stay in the graph") {
  const Graph g = parse("0 1\n2 2\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("MatrixMarket header is skipped on request") {
  const std::string text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n2 3\n";
  const Graph g = parse(text, {.one_indexed = true, .skip_header = true});
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse("0 1\n1 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1\n", {.one_indexed = true}), ParseError);
}

TEST_CASE("empty graphs are rejected") {
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("% nothing\n3 3\n"), std::invalid_argument);
}

TEST_CASE("missing file names the path") {
  try {
    load_edge_list_file("/nonexistent/graph.edges");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/graph.edges") != std::string::npos);
  }
}

TEST_CASE("degree") {
  const Graph k4 = complete_graph(4);
  for (NodeId u = 0; u < 4; ++u) CHECK(degree(k4, u) == 3);
  const Graph star = star_graph(3);
  CHECK(degree(star, 0) == 3);
  CHECK(degree(star, 1) == 1);
  CHECK(degree(path_graph(3), 1) == 2);
}

TEST_CASE("common neighbors") {
  CHECK(common_neighbors(complete_graph(4), 0, 1) == std::vector<NodeId>{2, 3});
  CHECK(common_neighbors(path_graph(3), 0, 2) == std::vector<NodeId>{1});
  CHECK(common_neighbors(cycle_graph(4), 0, 1).empty());
}

TEST_CASE("random graph invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = erdos_renyi(40, 0.15, rng());
    check_invariants(g);
    // degree equals the number of incident edges in the edge list
    std::vector<std::size_t> count(g.num_nodes(), 0);
    for (auto [u, v] : g.edges()) {
      ++count[u];
      ++count[v];
    }
    for (NodeId u = 0; u < g.num_nodes(); ++u) CHECK(g.degree(u) == count[u]);
    for (auto [u, v] : g.edges()) {
      for (NodeId w : common_neighbors(g, u, v)) {
        CHECK(g.has_edge(u, w));
        CHECK(g.has_edge(v, w));
      }
    }
  }
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = erdos_renyi(30, 0.1, rng());
    if (g.num_edges() == 0) continue;
    std::ostringstream out;
    write_edge_list(g, out);
    const Graph back = parse(out.str());
    CHECK(back == g);
  }
  // isolated node and non-contiguous labels
  const Graph g = parse("3 9\n9 12\n5 5\n");
  std::ostringstream out;
  write_edge_list(g, out);
  CHECK(parse(out.str()) == g);
}

TEST_CASE("from_edges validates endpoints") {
  const std::vector<std::pair<NodeId, NodeId>> bad = {{0, 5}};
  CHECK_THROWS(Graph::from_edges(3, bad));
  const Graph g = graph_of(3, {{2, 0}, {0, 2}, {1, 1}});
  CHECK(g.num_edges() == 1);
  CHECK(g.edge(0) == std::pair<NodeId, NodeId>{0, 2});
}

TEST_CASE("generators") {
  const Graph er = erdos_renyi(2000, 10.0 / 1999.0, 3);
  const double avg = 2.0 * static_cast<double>(er.num_edges()) / 2000.0;
  CHECK(avg == doctest::Approx(10.0).epsilon(0.1));
  CHECK(erdos_renyi(50, 0.2, 9) == erdos_renyi(50, 0.2, 9));
  CHECK(erdos_renyi(10, 1.0, 1).num_edges() == 45);
  CHECK(erdos_renyi(10, 0.0, 1).num_edges() == 0);

  const Graph sbm = stochastic_block_model({100, 100}, 0.15, 0.01, 4);
  std::size_t within = 0, between = 0;
  for (auto [u, v] : sbm.edges()) ((u < 100) == (v < 100) ? within : between)++;
  CHECK(within > 10 * between);

  CHECK(petersen_graph().num_nodes() == 10);
  CHECK(petersen_graph().num_edges() == 15);
  for (NodeId u = 0; u < 10; ++u) CHECK(petersen_graph().degree(u) == 3);
  CHECK(cycle_graph(5).num_edges() == 5);
  CHECK(path_graph(4).num_edges() == 3);
  CHECK(complete_graph(6).num_edges() == 15);
}

TEST_CASE("permute_nodes moves labels with their nodes") {
  const Graph g = parse("10 20\n20 30\n");
  const Graph p = permute_nodes(g, {2, 0, 1});
  CHECK(p.label(2) == 10);
  CHECK(p.label(0) == 20);
  CHECK(p.has_edge(2, 0));
  CHECK(p.has_edge(0, 1));
}
