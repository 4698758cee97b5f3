#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gjw/errors.hpp"
#include "gjw/graph.hpp"
#include "gjw/graph_expr.hpp"
#include "gjw/graph_io.hpp"
#include "oracle.hpp"

using namespace gjw;

namespace {

Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  const auto A = oracle::random_symmetric_01(n, density, rng);
  std::vector<double> w;
  for (const auto& row : A) w.insert(w.end(), row.begin(), row.end());
  return Graph::from_weights(n, w);
}

void check_simple(const Graph& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.weight(i, i) == 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(g.weight(i, j) == g.weight(j, i));
      CHECK((g.weight(i, j) == 0.0 || g.weight(i, j) == 1.0));
    }
  }
}

std::size_t sum_choose2(const Graph& g) {
  std::size_t s = 0;
  for (auto d : degree_sequence(g)) s += d * (d - (d > 0 ? 1 : 0)) / 2;
  return s;
}

}  // namespace

TEST_CASE("family constructors") {
  CHECK(edge_count(make_family(GraphFamily::complete(5))) == 10);
  const auto p2 = make_family(GraphFamily::path(2));
  CHECK(p2.size() == 2);
  CHECK(p2.weight(0, 1) == 1.0);
  CHECK(p2.weight(1, 0) == 1.0);
  CHECK(edge_count(p2) == 1);
  CHECK(make_family(GraphFamily::circulant(12, 6)) == make_family(GraphFamily::complete(12)));
  CHECK(edge_count(make_family(GraphFamily::wheel(7))) == 12);
  CHECK(edge_count(make_family(GraphFamily::complete_bipartite(3, 4))) == 12);
  CHECK(make_family(GraphFamily::hypercube(3)).size() == 8);
  CHECK(edge_count(make_family(GraphFamily::hypercube(3))) == 12);
  CHECK(edge_count(make_family(GraphFamily::ladder(7))) == 19);
  CHECK(edge_count(make_family(GraphFamily::prism(5))) == 15);
}

TEST_CASE("bad family parameters throw") {
  CHECK_THROWS_AS(make_family(GraphFamily::complete(0)), ParameterError);
  CHECK_THROWS_AS(make_family(GraphFamily::cycle(2)), ParameterError);
  CHECK_THROWS_AS(Graph::from_weights(2, {0, 1, 0, 0}), ParameterError);
  CHECK_THROWS_AS(Graph::from_weights(2, {1, 1, 1, 0}), ParameterError);
}

TEST_CASE("circulant limits") {
  for (std::size_t n = 3; n <= 15; ++n) {
    CHECK(make_family(GraphFamily::circulant(n, 1)) == make_family(GraphFamily::cycle(n)));
    const std::size_t r = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    CHECK(make_family(GraphFamily::circulant(n, r)) == make_family(GraphFamily::complete(n)));
  }
}

TEST_CASE("open band degrees") {
  const auto g = make_family(GraphFamily::circulant(8, 2, true));
  const auto d = degree_sequence(g);
  CHECK(d == std::vector<std::size_t>{2, 3, 4, 4, 4, 4, 3, 2});
  CHECK(g == Graph::from_weights(8, [] {
          std::vector<double> w(64, 0.0);
          for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
              if (i != j && std::abs(i - j) <= 2) w[i * 8 + j] = 1.0;
          return w;
        }()));
}

TEST_CASE("join examples") {
  const auto kb = join(make_family(GraphFamily::empty(3)), make_family(GraphFamily::empty(4)));
  CHECK(kb == make_family(GraphFamily::complete_bipartite(3, 4)));
  CHECK(edge_count(kb) == 12);
  CHECK(join(make_family(GraphFamily::complete(1)), make_family(GraphFamily::cycle(5))) ==
        make_family(GraphFamily::wheel(6)));
  const auto e = join(make_family(GraphFamily::empty(1)), make_family(GraphFamily::empty(1)));
  CHECK(edge_count(e) == 1);
}

TEST_CASE("product examples") {
  const auto p7 = make_family(GraphFamily::path(7)), p2 = make_family(GraphFamily::path(2));
  CHECK(edge_count(product(p7, p2, ProductKind::Cartesian)) == 19);
  CHECK(product(p7, p2, ProductKind::Lexicographic) == product(p7, p2, ProductKind::Strong));
  CHECK(product(make_family(GraphFamily::complete(1)), make_family(GraphFamily::cycle(5)), ProductKind::Corona) ==
        make_family(GraphFamily::wheel(6)));
  CHECK(product(p7, p2, ProductKind::Cartesian) == make_family(GraphFamily::ladder(7)));
}

TEST_CASE("two-path counts and wedges") {
  CHECK(two_path_count(make_family(GraphFamily::complete(4))) == 12);
  CHECK(two_path_count(make_family(GraphFamily::cycle(6))) == 6);
  CHECK(two_path_count(make_family(GraphFamily::circulant(20, 3))) == 300);

  const auto w = enumerate_wedges(make_family(GraphFamily::path(3)));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == Wedge{1, 0, 2});

  const auto k3 = enumerate_wedges(make_family(GraphFamily::complete(3)));
  REQUIRE(k3.size() == 3);
  std::set<std::size_t> centers;
  for (const auto& x : k3) centers.insert(x.center);
  CHECK(centers.size() == 3);

  const auto star = join(make_family(GraphFamily::complete(1)), make_family(GraphFamily::empty(3)));
  const auto sw = enumerate_wedges(star);
  REQUIRE(sw.size() == 3);
  for (const auto& x : sw) CHECK(x.center == 0);
}

TEST_CASE("graph invariants on random graphs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  for (int t = 0; t < 30; ++t) {
    const auto g1 = random_graph(size(rng), 0.5, rng);
    const auto g2 = random_graph(size(rng), 0.5, rng);
    for (auto kind : {ProductKind::Cartesian, ProductKind::Tensor, ProductKind::Strong, ProductKind::Lexicographic,
                      ProductKind::Corona}) {
      const auto p = product(g1, g2, kind);
      check_simple(p);
      CHECK(two_path_count(p) == sum_choose2(p));
      CHECK(two_path_count(p) == enumerate_wedges(p).size());
    }
    const auto j = join(g1, g2);
    check_simple(j);
    CHECK(edge_count(j) == edge_count(g1) + edge_count(g2) + g1.size() * g2.size());
    CHECK(j == complement(disjoint_union(complement(g1), complement(g2))));
    check_simple(complement(g1));
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(make_family(GraphFamily::path(1))));
  CHECK(is_connected(make_family(GraphFamily::cycle(5))));
  CHECK_FALSE(is_connected(make_family(GraphFamily::empty(2))));
  CHECK_FALSE(is_connected(disjoint_union(make_family(GraphFamily::path(3)), make_family(GraphFamily::path(2)))));
}

TEST_CASE("DOT output") {
  std::ostringstream s;
  write_dot(s, make_family(GraphFamily::path(3)));
  CHECK(s.str() == "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto g = random_graph(6, 0.4, rng);
    std::stringstream s;
    write_edge_list(s, g);
    CHECK(read_edge_list(s) == g);
  }
  const auto w = Graph::from_weights(3, {0, 2.5, 0, 2.5, 0, 1, 0, 1, 0});
  std::stringstream s;
  write_edge_list(s, w);
  CHECK(s.str() == "n 3\n0 1 2.5\n1 2\n");
  CHECK(read_edge_list(s) == w);
  CHECK_FALSE(w.is_simple());

  std::istringstream in("# comment\n\nn 4\n0 1\n\n2 3  # trailing\n");
  const auto g = read_edge_list(in);
  CHECK(edge_count(g) == 2);
  for (const char* bad : {"n 2\n0 5\n", "n 2\n0 1\n1 0\n", "n 2\n0 1 0\n", "n 2\n0 1 x\n", "n 2\n0 1 2 3\n",
                          "0 1\n", "n 2\n1 1\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_edge_list(in), ParseError);
  }
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345678.9, 1e300}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("graph expressions") {
  CHECK(edge_count(parse_graph_expression("cartesian(path(7),path(2))")) == 19);
  CHECK(parse_graph_expression("join(complete(1), cycle(5))") == make_family(GraphFamily::wheel(6)));
  CHECK(parse_graph_expression("banded(8,2)") == make_family(GraphFamily::circulant(8, 2, true)));
  CHECK(parse_graph_expression("complement(complete(4))") == make_family(GraphFamily::empty(4)));
  CHECK_THROWS_AS(parse_graph_expression("cartesian(path(3)"), ParseError);
  CHECK_THROWS_AS(parse_graph_expression("octopus(3)"), ParseError);
}
