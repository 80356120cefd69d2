#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace eqlab {

/// Partial-equilibrium view of a two-good economy with the numeraire price
/// fixed at one.
struct CurveTable {
  std::vector<double> grid;
  std::vector<double> demand;  // sum_i (u_i')^{-1}(p)
  /// Aggregate endowment of good 1 plus aggregate producer netput of good 1.
  std::vector<double> supply;
  std::vector<double> excess;  // zeta_1(p, 1)
  /// First adjacent grid pair where demand - supply changes sign.
  std::optional<std::pair<double, double>> bracket;
  /// Crossing refined by bisection inside the bracket.
  std::optional<double> crossing;

  /// Writes `p,D,S,excess` rows with 17 significant digits.
  void write_csv(std::ostream& out) const;
};

/// Throws DomainError("partial-equilibrium view requires two goods") if
/// L != 2, and DomainError if the grid is not strictly increasing and
/// positive.
CurveTable partial_eq_curves(const Economy& economy,
                             const std::vector<double>& grid);

}  // namespace eqlab
