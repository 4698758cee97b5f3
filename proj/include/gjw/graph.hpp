#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gjw {

/// One undirected edge, i < j, with its weight (1 for simple graphs).
struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;
};

/// A 2-path centered on `center`: edges (center, leg_a) and (center, leg_b), leg_a < leg_b.
struct Wedge {
  std::size_t center;
  std::size_t leg_a;
  std::size_t leg_b;

  friend bool operator==(const Wedge&, const Wedge&) = default;
};

// Symmetric, zero-diagonal adjacency. Immutable after construction; every
// factory validates the invariants and throws ParameterError otherwise.
class Graph {
 public:
  /// Row-major n*n weights. Labels may be empty (vertex indices are used instead).
  static Graph from_weights(std::size_t n, std::vector<double> weights,
                            std::vector<std::string> labels = {});
  static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
  static Graph empty(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i * n_ + j]; }
  bool adjacent(std::size_t i, std::size_t j) const { return weight(i, j) != 0.0; }
  bool is_simple() const noexcept { return simple_; }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const std::size_t> neighbors(std::size_t i) const { return neighbors_[i]; }

  std::string label(std::size_t i) const;
  bool has_labels() const noexcept { return !labels_.empty(); }

  /// Entrywise equality of weights; labels are bookkeeping and do not participate.
  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.weights_ == b.weights_; }

 private:
  Graph(std::size_t n, std::vector<double> weights, std::vector<std::string> labels);

  std::size_t n_ = 0;
  std::vector<double> weights_;
  std::vector<std::string> labels_;
  bool simple_ = true;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

enum class FamilyKind {
  Empty,
  Complete,
  Path,
  Cycle,
  Circulant,
  Star,
  Wheel,
  CompleteBipartite,
  Ladder,
  Prism,
  CreutzLadder,
  Hypercube,
};

// Named graph family. `n` is the total vertex count for every kind except
// CompleteBipartite (part sizes m, n), Ladder/Prism/CreutzLadder (rungs n,
// 2n vertices) and Hypercube (dimension n, 2^n vertices).
struct GraphFamily {
  FamilyKind kind = FamilyKind::Complete;
  std::size_t n = 1;
  std::size_t r = 1;      // circulant range
  std::size_t m = 0;      // first part of K_{m,n}
  bool open = false;      // circulant with open boundary (banded path)

  static GraphFamily empty(std::size_t n) { return {FamilyKind::Empty, n}; }
  static GraphFamily complete(std::size_t n) { return {FamilyKind::Complete, n}; }
  static GraphFamily path(std::size_t n) { return {FamilyKind::Path, n}; }
  static GraphFamily cycle(std::size_t n) { return {FamilyKind::Cycle, n}; }
  static GraphFamily circulant(std::size_t n, std::size_t r, bool open = false) {
    return {FamilyKind::Circulant, n, r, 0, open};
  }
  static GraphFamily star(std::size_t n) { return {FamilyKind::Star, n}; }
  static GraphFamily wheel(std::size_t n) { return {FamilyKind::Wheel, n}; }
  static GraphFamily complete_bipartite(std::size_t m, std::size_t n) {
    return {FamilyKind::CompleteBipartite, n, 1, m};
  }
  static GraphFamily ladder(std::size_t n) { return {FamilyKind::Ladder, n}; }
  static GraphFamily prism(std::size_t n) { return {FamilyKind::Prism, n}; }
  static GraphFamily creutz_ladder(std::size_t n) { return {FamilyKind::CreutzLadder, n}; }
  static GraphFamily hypercube(std::size_t dim) { return {FamilyKind::Hypercube, dim}; }
};

std::string describe(const GraphFamily& family);

/// Builds a simple graph for the family; throws ParameterError naming the violated bound.
Graph make_family(const GraphFamily& family);

enum class ProductKind { Cartesian, Tensor, Strong, Lexicographic, Corona };

std::string to_string(ProductKind kind);

// Products order vertices row-major over (vertex of g1, vertex of g2).
// Corona places g1 first, then the private copy of g2 for each g1 vertex in order.
Graph product(const Graph& g1, const Graph& g2, ProductKind kind);
Graph join(const Graph& g1, const Graph& g2);
Graph complement(const Graph& g);
Graph disjoint_union(const Graph& g1, const Graph& g2);

// Counts use the support of the adjacency (nonzero entries).
std::size_t edge_count(const Graph& g);
std::size_t two_path_count(const Graph& g);
std::vector<std::size_t> degree_sequence(const Graph& g);
bool is_connected(const Graph& g);
std::vector<Wedge> enumerate_wedges(const Graph& g);

}  // namespace gjw
