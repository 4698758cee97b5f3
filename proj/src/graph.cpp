#include "gjw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "gjw/errors.hpp"

namespace gjw {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void require_simple(const Graph& g, const char* op) {
  if (!g.is_simple()) throw ParameterError(std::string(op) + " requires simple (0/1) graphs");
}

std::string composite_label(const Graph& a, std::size_t i, const Graph& b, std::size_t j) {
  return "(" + a.label(i) + "," + b.label(j) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<double> weights, std::vector<std::string> labels)
    : n_(n), weights_(std::move(weights)), labels_(std::move(labels)) {
  require(n_ >= 1, "graph needs n >= 1 vertices");
  require(weights_.size() == n_ * n_, "weight matrix must be n*n");
  require(labels_.empty() || labels_.size() == n_, "labels must be empty or one per vertex");
  neighbors_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    require(weight(i, i) == 0.0, "graph must have zero diagonal (vertex " + std::to_string(i) + ")");
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = weight(i, j);
      require(std::isfinite(w), "graph weights must be finite");
      require(w == weight(j, i), "graph weights must be symmetric (entry " + std::to_string(i) +
                                     "," + std::to_string(j) + ")");
      if (w != 0.0 && w != 1.0) simple_ = false;
      if (w != 0.0) {
        neighbors_[i].push_back(j);
        if (i < j) edges_.push_back({i, j, w});
      }
    }
  }
}

Graph Graph::from_weights(std::size_t n, std::vector<double> weights, std::vector<std::string> labels) {
  return Graph(n, std::move(weights), std::move(labels));
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  std::vector<double> w(n * n, 0.0);
  for (auto [i, j] : edges) {
    require(i < n && j < n, "edge endpoint out of range");
    require(i != j, "self-edges are not allowed");
    w[i * n + j] = w[j * n + i] = 1.0;
  }
  return Graph(n, std::move(w), {});
}

Graph Graph::empty(std::size_t n) { return Graph(n, std::vector<double>(n * n, 0.0), {}); }

std::string Graph::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

std::string describe(const GraphFamily& f) {
  switch (f.kind) {
    case FamilyKind::Empty: return "empty(" + std::to_string(f.n) + ")";
    case FamilyKind::Complete: return "complete(" + std::to_string(f.n) + ")";
    case FamilyKind::Path: return "path(" + std::to_string(f.n) + ")";
    case FamilyKind::Cycle: return "cycle(" + std::to_string(f.n) + ")";
    case FamilyKind::Circulant:
      return std::string(f.open ? "banded(" : "circulant(") + std::to_string(f.n) + "," +
             std::to_string(f.r) + ")";
    case FamilyKind::Star: return "star(" + std::to_string(f.n) + ")";
    case FamilyKind::Wheel: return "wheel(" + std::to_string(f.n) + ")";
    case FamilyKind::CompleteBipartite:
      return "bipartite(" + std::to_string(f.m) + "," + std::to_string(f.n) + ")";
    case FamilyKind::Ladder: return "ladder(" + std::to_string(f.n) + ")";
    case FamilyKind::Prism: return "prism(" + std::to_string(f.n) + ")";
    case FamilyKind::CreutzLadder: return "creutz(" + std::to_string(f.n) + ")";
    case FamilyKind::Hypercube: return "hypercube(" + std::to_string(f.n) + ")";
  }
  return "unknown";
}

Graph make_family(const GraphFamily& f) {
  const std::size_t n = f.n;
  switch (f.kind) {
    case FamilyKind::Empty:
      require(n >= 1, "empty graph requires n >= 1");
      return Graph::empty(n);
    case FamilyKind::Complete: {
      require(n >= 1, "complete graph requires n >= 1");
      std::vector<double> w(n * n, 1.0);
      for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
      return Graph::from_weights(n, std::move(w));
    }
    case FamilyKind::Path: {
      require(n >= 1, "path requires n >= 1");
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      return Graph::from_edges(n, e);
    }
    case FamilyKind::Cycle: {
      require(n >= 3, "cycle requires n >= 3");
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
      return Graph::from_edges(n, e);
    }
    case FamilyKind::Circulant: {
      std::vector<std::pair<std::size_t, std::size_t>> e;
      if (f.open) {
        require(n >= 2, "banded graph requires n >= 2");
        require(f.r >= 1 && f.r <= n - 1, "banded graph requires 1 <= r <= n-1");
        for (std::size_t k = 1; k <= f.r; ++k)
          for (std::size_t i = 0; i + k < n; ++i) e.emplace_back(i, i + k);
      } else {
        require(n >= 2, "circulant requires n >= 2");
        require(f.r >= 1 && f.r <= n / 2, "circulant requires 1 <= r <= floor(n/2)");
        // offsets +k and -k coincide for k = n/2; from_edges clamps the entry to 1
        for (std::size_t k = 1; k <= f.r; ++k)
          for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + k) % n);
      }
      return Graph::from_edges(n, e);
    }
    case FamilyKind::Star:
      require(n >= 2, "star requires n >= 2");
      return join(Graph::empty(1), Graph::empty(n - 1));
    case FamilyKind::Wheel:
      require(n >= 4, "wheel requires n >= 4");
      return join(Graph::empty(1), make_family(GraphFamily::cycle(n - 1)));
    case FamilyKind::CompleteBipartite:
      require(f.m >= 1 && n >= 1, "complete bipartite requires m, n >= 1");
      return join(Graph::empty(f.m), Graph::empty(n));
    case FamilyKind::Ladder:
      require(n >= 1, "ladder requires n >= 1 rungs");
      return product(make_family(GraphFamily::path(n)), make_family(GraphFamily::path(2)),
                     ProductKind::Cartesian);
    case FamilyKind::Prism:
      require(n >= 3, "prism requires n >= 3");
      return product(make_family(GraphFamily::cycle(n)), make_family(GraphFamily::path(2)),
                     ProductKind::Cartesian);
    case FamilyKind::CreutzLadder:
      require(n >= 1, "creutz ladder requires n >= 1 rungs");
      return product(make_family(GraphFamily::path(n)), make_family(GraphFamily::complete(2)),
                     ProductKind::Lexicographic);
    case FamilyKind::Hypercube: {
      require(n >= 1 && n <= 16, "hypercube requires 1 <= dimension <= 16");
      const Graph k2 = make_family(GraphFamily::complete(2));
      Graph q = k2;
      for (std::size_t d = 1; d < n; ++d) q = product(q, k2, ProductKind::Cartesian);
      return q;
    }
  }
  throw ParameterError("unknown graph family");
}

std::string to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::Cartesian: return "cartesian";
    case ProductKind::Tensor: return "tensor";
    case ProductKind::Strong: return "strong";
    case ProductKind::Lexicographic: return "lexicographic";
    case ProductKind::Corona: return "corona";
  }
  return "unknown";
}

Graph product(const Graph& g1, const Graph& g2, ProductKind kind) {
  require_simple(g1, "graph product");
  require_simple(g2, "graph product");
  const std::size_t n1 = g1.size();
  const std::size_t n2 = g2.size();

  if (kind == ProductKind::Corona) {
    const std::size_t n = n1 * (1 + n2);
    std::vector<double> w(n * n, 0.0);
    std::vector<std::string> labels(n);
    auto set = [&](std::size_t a, std::size_t b) { w[a * n + b] = w[b * n + a] = 1.0; };
    for (std::size_t a = 0; a < n1; ++a) {
      labels[a] = g1.label(a);
      for (std::size_t b = 0; b < n1; ++b)
        if (g1.adjacent(a, b)) set(a, b);
    }
    for (std::size_t a = 0; a < n1; ++a) {
      const std::size_t base = n1 + a * n2;
      for (std::size_t p = 0; p < n2; ++p) {
        labels[base + p] = composite_label(g1, a, g2, p);
        set(a, base + p);
        for (std::size_t q = 0; q < n2; ++q)
          if (g2.adjacent(p, q)) set(base + p, base + q);
      }
    }
    return Graph::from_weights(n, std::move(w), std::move(labels));
  }

  const std::size_t n = n1 * n2;
  std::vector<double> w(n * n, 0.0);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t p = 0; p < n2; ++p) {
      const std::size_t u = a * n2 + p;
      labels[u] = composite_label(g1, a, g2, p);
      for (std::size_t b = 0; b < n1; ++b) {
        for (std::size_t q = 0; q < n2; ++q) {
          const std::size_t v = b * n2 + q;
          if (u == v) continue;
          const bool same1 = a == b;
          const bool same2 = p == q;
          const bool adj1 = g1.adjacent(a, b);
          const bool adj2 = g2.adjacent(p, q);
          bool edge = false;
          switch (kind) {
            case ProductKind::Cartesian: edge = (same1 && adj2) || (adj1 && same2); break;
            case ProductKind::Tensor: edge = adj1 && adj2; break;
            case ProductKind::Strong: edge = (same1 && adj2) || (adj1 && same2) || (adj1 && adj2); break;
            case ProductKind::Lexicographic: edge = adj1 || (same1 && adj2); break;
            case ProductKind::Corona: break;
          }
          if (edge) w[u * n + v] = 1.0;
        }
      }
    }
  }
  return Graph::from_weights(n, std::move(w), std::move(labels));
}

Graph join(const Graph& g1, const Graph& g2) {
  require_simple(g1, "join");
  require_simple(g2, "join");
  const std::size_t n1 = g1.size();
  const std::size_t n = n1 + g2.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool left_i = i < n1;
      const bool left_j = j < n1;
      if (left_i && left_j) w[i * n + j] = g1.weight(i, j);
      else if (!left_i && !left_j) w[i * n + j] = g2.weight(i - n1, j - n1);
      else w[i * n + j] = 1.0;
    }
  }
  return Graph::from_weights(n, std::move(w));
}

Graph complement(const Graph& g) {
  require_simple(g, "complement");
  const std::size_t n = g.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) w[i * n + j] = g.adjacent(i, j) ? 0.0 : 1.0;
  return Graph::from_weights(n, std::move(w));
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
  const std::size_t n1 = g1.size();
  const std::size_t n = n1 + g2.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) w[i * n + j] = g1.weight(i, j);
  for (std::size_t i = 0; i < g2.size(); ++i)
    for (std::size_t j = 0; j < g2.size(); ++j) w[(n1 + i) * n + n1 + j] = g2.weight(i, j);
  return Graph::from_weights(n, std::move(w));
}

std::size_t edge_count(const Graph& g) { return g.edges().size(); }

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> deg(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) deg[i] = g.neighbors(i).size();
  return deg;
}

std::size_t two_path_count(const Graph& g) {
  std::size_t total = 0;
  for (std::size_t d : degree_sequence(g))
    if (d > 1) total += d * (d - 1) / 2;
  return total;
}

bool is_connected(const Graph& g) {
  std::vector<bool> seen(g.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == g.size();
}

std::vector<Wedge> enumerate_wedges(const Graph& g) {
  std::vector<Wedge> out;
  out.reserve(two_path_count(g));
  for (std::size_t c = 0; c < g.size(); ++c) {
    const auto nb = g.neighbors(c);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) out.push_back({c, nb[a], nb[b]});
  }
  return out;
}

}  // namespace gjw
