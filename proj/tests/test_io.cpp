#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "gbary/io.hpp"
#include "test_support.hpp"

using namespace gbary;

namespace {

std::string dump(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  write_graph(g, out, format);
  return out.str();
}

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace

TEST_CASE("edge-list round trip is lossless") {
  const Graph g(3, {Edge{0, 1, 1.0 / 3.0}, Edge{1, 2, -0.1234567890123456789}});
  const Graph back = parse(dump(g, GraphFormat::EdgeListTsv));
  REQUIRE(back.num_nodes() == 3);
  REQUIRE(back.edges().size() == 2);
  CHECK(back.edges()[0].w == g.edges()[0].w);  // bit-exact
  CHECK(back.edges()[1].w == g.edges()[1].w);
}

TEST_CASE("triangle TSV reproduces its Laplacian") {
  const Graph g = parse("# nodes=3\n0\t1\t1\n0\t2\t1\n1\t2\t1\n");
  CHECK((laplacian(g).mat() - laplacian(test::triangle(1.0)).mat()).norm() == 0.0);
}

TEST_CASE("dense CSV formats") {
  SUBCASE("laplacian tag accepted") {
    const Graph g = parse("laplacian\n1,-1\n-1,1\n");
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].w == 1.0);
  }
  SUBCASE("adjacency tag accepted") {
    const Graph g = parse("adjacency\n0,2\n2,0\n");
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].w == 2.0);
  }
  SUBCASE("adjacency with a nonzero diagonal is rejected") {
    CHECK_THROWS_AS(parse("adjacency\n1,2\n2,0\n"), ParseError);
  }
  SUBCASE("laplacian with nonzero row sums is rejected") {
    CHECK_THROWS_AS(parse("laplacian\n1,-0.5\n-0.5,1\n"), ParseError);
  }
  SUBCASE("asymmetric input is rejected") {
    CHECK_THROWS_AS(parse("laplacian\n1,-1\n-2,2\n"), NonSymmetricInputError);
  }
  SUBCASE("non-square input is rejected") {
    CHECK_THROWS_AS(parse("laplacian\n1,-1,0\n-1,1,0\n"), DimensionMismatchError);
  }
  SUBCASE("dense round trip") {
    const Graph g = test::random_connected_graph(6, 40);
    const Graph back = parse(dump(g, GraphFormat::DenseCsv));
    CHECK((laplacian(back).mat() - laplacian(g).mat()).norm() <= 1e-15);
  }
}

TEST_CASE("labels survive the edge-list round trip") {
  const Graph g(2, {Edge{0, 1, 2.0}}, {"alpha", "beta"});
  const Graph back = parse(dump(g, GraphFormat::EdgeListTsv));
  CHECK(back.node_labels()[0] == "alpha");
  CHECK(back.node_labels()[1] == "beta");
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse("# nodes=2\n0\t1\tabc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("weights\n1,2\n"), ParseError);
  CHECK_THROWS_AS(parse("# nodes=2\n0\t5\t1\n"), ParseError);
}

TEST_CASE("format_double round trips random doubles") {
  Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.below(8));
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}
