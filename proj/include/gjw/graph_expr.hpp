#pragma once

#include <string_view>

#include "gjw/graph.hpp"

namespace gjw {

// Parses a graph expression such as "cartesian(path(7),path(2))".
//
// Families: empty(n) complete(n) path(n) cycle(n) circulant(n,r) banded(n,r)
//           star(n) wheel(n) bipartite(m,n) ladder(n) prism(n) creutz(n) hypercube(d)
// Operations: cartesian tensor strong lexicographic corona join union (binary),
//             complement (unary).
Graph parse_graph_expression(std::string_view text);

}  // namespace gjw
