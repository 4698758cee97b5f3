#pragma once

#include <optional>
#include <string>

#include "gjw/model.hpp"

namespace gjw {

enum class TableFamily { Complete, Path, Cycle, Star, Banded };

// A (graph family, built-in pair) combination with published closed forms.
// Constants are in units of hbar^2/m.
struct TableRow {
  TableFamily family;
  PairKind pair;
  std::size_t n = 0;
  std::size_t r = 1;  // band range for Banded
  Sector sector = Sector::Free;
  double v2c = 0.0;
  double v3c = 0.0;
  std::string name;
};

/// D = 1, simple graph entrywise equal to one of the families, built-in pair.
/// Star uses vertex 0 as the hub; Banded is the open 2r-regular band with 2 <= r <= N-2.
std::optional<TableRow> match_table_row(const ModelSpec& model);

struct TableTerms {
  double v2 = 0.0;
  double v3 = 0.0;
};

/// The closed-form table expressions at `cfg`, written out term by term.
/// Exponential rows on paths and cycles hold in the extremal sector only.
TableTerms tabulated_potentials(const TableRow& row, const ModelSpec& model, const Configuration& cfg);

/// Three-body term of the open band of range r, triple-indexed form.
double banded_three_body(const ModelSpec& model, std::size_t r, const Configuration& cfg);

// Per-species terms of the ladder P_N x P_2 with vertex (i, a) at index 2i + a.
struct LadderTerms {
  double v_int = 0.0;  // rung pairs, summed over both species
  double v2 = 0.0;     // leg pairs
  double v2l = 0.0;    // rung-leg wedges
  double v3 = 0.0;     // leg-leg wedges
  double total() const noexcept { return v_int + v2 + v2l + v3; }
};
LadderTerms ladder_decomposition(const ModelSpec& model, std::size_t rungs, const Configuration& cfg);

/// True when `cfg` lies in the sector (D = 1 only).
bool in_sector(Sector s, const Graph& g, const Configuration& cfg);

}  // namespace gjw
