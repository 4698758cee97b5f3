#include "gjw/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gjw/errors.hpp"

namespace gjw {

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

void write_dot(std::ostream& out, const Graph& g) {
  out << "graph G {\n";
  for (std::size_t i = 0; i < g.size(); ++i) out << "  " << i << ";\n";
  for (const Edge& e : g.edges()) {
    out << "  " << e.i << " -- " << e.j;
    if (e.weight != 1.0) out << " [weight=" << format_number(e.weight) << "]";
    out << ";\n";
  }
  out << "}\n";
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.size() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.i << " " << e.j;
    if (e.weight != 1.0) out << " " << format_number(e.weight);
    out << "\n";
  }
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t offset = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<double> w;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      long long count = -1;
      if (!(fields >> tag >> count) || tag != "n" || count < 1)
        throw ParseError(line_offset, "edge list must start with 'n <N>' (N >= 1)");
      n = static_cast<std::size_t>(count);
      w.assign(n * n, 0.0);
      have_header = true;
      continue;
    }
    long long i = -1, j = -1;
    if (!(fields >> i >> j)) throw ParseError(line_offset, "expected 'i j [weight]'");
    double weight = 1.0;
    std::string token;
    if (fields >> token) {
      std::size_t used = 0;
      try {
        weight = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError(line_offset, "bad weight '" + token + "'");
      if (!std::isfinite(weight) || weight == 0.0) throw ParseError(line_offset, "weight must be finite and nonzero");
    }
    if (fields >> token) throw ParseError(line_offset, "trailing tokens in edge line");
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n)
      throw ParseError(line_offset, "edge endpoint out of range");
    if (i == j) throw ParseError(line_offset, "self-edges are not allowed");
    if (w[i * n + j] != 0.0) throw ParseError(line_offset, "repeated edge");
    w[i * n + j] = w[j * n + i] = weight;
  }
  if (!have_header) throw ParseError(offset, "empty edge list (missing 'n <N>' header)");
  return Graph::from_weights(n, std::move(w));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

}  // namespace gjw
