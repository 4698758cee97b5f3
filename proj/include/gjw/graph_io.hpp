#pragma once

#include <iosfwd>
#include <string>

#include "gjw/graph.hpp"

namespace gjw {

// Graphviz DOT, undirected. Vertices 0-based, one `  i;` line per vertex then
// one `  i -- j;` line per edge (i < j, lexicographic). Non-unit weights are
// written as `  i -- j [weight=w];`.
void write_dot(std::ostream& out, const Graph& g);

// Plain edge list: header `n <N>`, then `i j` per edge (i < j, lexicographic),
// with a third column only for non-unit weights. Lines starting with '#' and
// blank lines are ignored on input.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace gjw
