#include "eqlab/analysis.hpp"

#include "eqlab/consumer.hpp"
#include "eqlab/error.hpp"
#include "eqlab/excess.hpp"
#include "eqlab/producer.hpp"

#include <cmath>
#include <iomanip>

namespace eqlab {

namespace {

constexpr int kBisectionIterations = 200;

struct Curves {
  const Economy& economy;

  double demand(double price) const {
    double total = 0.0;
    for (const auto& c : economy.consumers) {
      total += inverse_marginal_utility(c.utility, make_vector({price}))(0);
    }
    return total;
  }

  double supply(double price) const {
    const PriceVector p{price, 1.0};
    double total = economy.aggregate_endowment()(0);
    for (const auto& pr : economy.producers) total += eqlab::supply(pr, p).netput(0);
    return total;
  }

  double gap(double price) const { return demand(price) - supply(price); }
};

}  // namespace

CurveTable partial_eq_curves(const Economy& e, const std::vector<double>& grid) {
  if (e.goods != 2) {
    throw DomainError("partial-equilibrium view requires two goods");
  }
  if (grid.empty()) throw DomainError("empty price grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k]) ||
        (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw DomainError("price grid must be positive and strictly increasing");
    }
  }

  const Curves curves{e};
  CurveTable table;
  table.grid = grid;
  for (double price : grid) {
    table.demand.push_back(curves.demand(price));
    table.supply.push_back(curves.supply(price));
    table.excess.push_back(zeta(e, PriceVector{price, 1.0})(0));
  }

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double left = table.demand[k - 1] - table.supply[k - 1];
    const double right = table.demand[k] - table.supply[k];
    if (left == 0.0) {
      table.bracket = {grid[k - 1], grid[k - 1]};
      table.crossing = grid[k - 1];
      break;
    }
    if ((left > 0.0) != (right > 0.0) || right == 0.0) {
      table.bracket = {grid[k - 1], grid[k]};
      break;
    }
  }
  if (table.bracket && !table.crossing) {
    double lo = table.bracket->first;
    double hi = table.bracket->second;
    // Demand minus supply is decreasing, positive at lo.
    for (int k = 0; k < kBisectionIterations && hi - lo > 0.0; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (curves.gap(mid) > 0.0 ? lo : hi) = mid;
    }
    table.crossing = 0.5 * (lo + hi);
  }
  return table;
}

void CurveTable::write_csv(std::ostream& out) const {
  out << "p,D,S,excess\n" << std::setprecision(17);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << grid[k] << ',' << demand[k] << ',' << supply[k] << ',' << excess[k]
        << '\n';
  }
}

}  // namespace eqlab
