#include <doctest.h>

#include "gbary/generators.hpp"
#include "test_support.hpp"

using namespace gbary;

namespace {

int intra_edge_count(const Graph& g, const std::vector<int>& community) {
  int count = 0;
  for (const auto& e : g.edges()) {
    if (community[e.u] == community[e.v]) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("SBM degenerate probabilities") {
  SUBCASE("p_in = p_out = 1 gives the complete graph") {
    const Graph g = generate_sbm(6, 3, 1.0, 1.0, 1);
    CHECK(g.edges().size() == 15);
  }
  SUBCASE("one community with p_in = 1 gives the complete graph") {
    const Graph g = generate_sbm(5, 1, 1.0, 0.0, 1);
    CHECK(g.edges().size() == 10);
  }
  SUBCASE("invalid probability is rejected") {
    CHECK_THROWS_AS(generate_sbm(5, 1, 1.5, 0.0, 1), Error);
  }
}

TEST_CASE("benchmark-scale SBM: connected with the expected intra-edge count") {
  const std::vector<int> community = balanced_partition(50, 5);
  double total_intra = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    const Graph g = generate_sbm(community, 0.3, 0.1, 100 + seed);
    CHECK(is_connected(g));
    CHECK(static_cast<bool>(check_connectivity(laplacian(g))));
    total_intra += intra_edge_count(g, community);
  }
  // 5 * C(10,2) * 0.3 = 67.5 expected intra edges; the 10-seed average has
  // a standard error around 2.2.
  CHECK(total_intra / 10.0 == doctest::Approx(67.5).epsilon(0.2));
}

TEST_CASE("generators are deterministic in the seed") {
  const Graph a = generate_sbm(20, 4, 0.4, 0.1, 99);
  const Graph b = generate_sbm(20, 4, 0.4, 0.1, 99);
  REQUIRE(a.edges().size() == b.edges().size());
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    CHECK(a.edges()[i].u == b.edges()[i].u);
    CHECK(a.edges()[i].v == b.edges()[i].v);
  }
  const Graph c = generate_sbm(20, 4, 0.4, 0.1, 100);
  bool same = a.edges().size() == c.edges().size();
  if (same) {
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
      same = same && a.edges()[i].u == c.edges()[i].u && a.edges()[i].v == c.edges()[i].v;
    }
  }
  CHECK_FALSE(same);
}

TEST_CASE("edge perturbation") {
  SUBCASE("zero perturbation is the identity") {
    const Graph g = generate_sbm(12, 2, 0.5, 0.2, 3);
    const Graph p = perturb_edges(g, 0, 0, 7);
    CHECK((laplacian(p).mat() - laplacian(g).mat()).norm() == 0.0);
  }
  SUBCASE("complete graph has no room for additions") {
    const Graph k4 = generate_sbm(4, 1, 1.0, 0.0, 1);
    CHECK_THROWS_AS(perturb_edges(k4, 0, 1, 5), InfeasiblePerturbationError);
  }
  SUBCASE("tree has no removable edge") {
    const Graph tree(3, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}});
    CHECK_THROWS_AS(perturb_edges(tree, 1, 0, 5), InfeasiblePerturbationError);
  }
  SUBCASE("balanced perturbation keeps the graph connected with the same edge count") {
    const Graph base = generate_sbm(50, 5, 0.3, 0.1, 11);
    for (int seed = 0; seed < 5; ++seed) {
      const Graph p = perturb_edges(base, 10, 10, 200 + seed);
      CHECK(p.num_nodes() == base.num_nodes());
      CHECK(p.edges().size() == base.edges().size());
      CHECK(is_connected(p));
    }
  }
}

TEST_CASE("line-communities generator") {
  SUBCASE("single community with p_in = 1 is complete") {
    const Graph g = generate_line_communities(6, 1, 1.0, 1);
    CHECK(g.edges().size() == 15);
  }
  SUBCASE("exactly k-1 inter-community edges") {
    for (int k : {2, 3, 5}) {
      const std::vector<int> community = balanced_partition(50, k);
      for (int seed = 0; seed < 5; ++seed) {
        const Graph g = generate_line_communities(50, k, 0.2, 400 + seed);
        CHECK(is_connected(g));
        const int inter =
            static_cast<int>(g.edges().size()) - intra_edge_count(g, community);
        CHECK(inter == k - 1);
      }
    }
  }
  SUBCASE("inter-community edges follow one of the two fixed patterns") {
    // Blocks of 50/5 = 10 nodes: block c spans [10c, 10c+9].
    for (int seed = 0; seed < 10; ++seed) {
      const Graph g = generate_line_communities(50, 5, 0.2, 500 + seed);
      const std::vector<int> community = balanced_partition(50, 5);
      for (const auto& e : g.edges()) {
        if (community[e.u] == community[e.v]) continue;
        const int c = community[e.u];
        REQUIRE(community[e.v] == c + 1);
        const bool pattern_a = e.u == 10 * c + 9 && e.v == 10 * (c + 1);
        const bool pattern_b = e.u == 10 * c && e.v == 10 * (c + 1) + 9;
        CHECK((pattern_a || pattern_b));
      }
    }
  }
  SUBCASE("generator outputs satisfy the connectivity assumption") {
    for (int c = 1; c <= 5; ++c) {
      const Graph g = generate_line_communities(50, c, 0.25, 600 + c);
      CHECK(static_cast<bool>(check_connectivity(laplacian(g))));
    }
  }
}

TEST_CASE("multi-layer SBM shares labels across independent layers") {
  const MultiLayerGraph ml = generate_multilayer_sbm(30, 3, 2, 0.4, 0.05, 8);
  REQUIRE(ml.layers.size() == 2);
  CHECK(ml.labels.size() == 30);
  for (const auto& layer : ml.layers) {
    CHECK(layer.num_nodes() == 30);
    CHECK(is_connected(layer));
  }
  // Independent draws: the layers differ.
  CHECK((laplacian(ml.layers[0]).mat() - laplacian(ml.layers[1]).mat()).norm() > 0.0);
}
