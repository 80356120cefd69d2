#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

#include <cstddef>
#include <vector>

namespace eqlab {

struct ExcessResult {
  Vector zeta;                       // aggregate excess demand
  std::vector<Vector> per_consumer;  // X^i = f^i(p, m^i(p)) - omega^i
  std::vector<Vector> supplies;      // y^j(p)
  std::vector<double> wealths;       // m^i(p)
  std::vector<bool> boundary;        // second-type boundary hit per consumer

  /// X(p) = sum_i X^i.
  Vector consumer_excess() const;
  bool any_boundary() const;
};

/// m^i(p) = p . omega^i + sum_j theta_ij pi^j(p).
double wealth(const Economy& economy, std::size_t consumer,
              const PriceVector& prices);

ExcessResult excess_demand(const Economy& economy, const PriceVector& prices);

/// Shorthand for excess_demand(...).zeta.
Vector zeta(const Economy& economy, const PriceVector& prices);

/// Central finite-difference Jacobian of zeta with per-coordinate step
/// `step * p_k`. Requires 0 < step < 0.5.
Matrix excess_jacobian(const Economy& economy, const PriceVector& prices,
                       double step);

/// Same differencing applied to the consumer part X(p) only.
Matrix consumer_excess_jacobian(const Economy& economy,
                                const PriceVector& prices, double step);

/// sum_i S_{f^i}(p, m^i(p)). Throws if any demand is on the boundary.
Matrix slutsky_sum(const Economy& economy, const PriceVector& prices);

/// Analytic prediction of DX(p): sum_i S_{f^i}(p, m^i(p)) with the
/// numeraire row corrected by -(X^i_k - sum_j theta_ij y^j_k) / p_L.
/// At an equilibrium the correction vanishes.
Matrix predicted_consumer_jacobian(const Economy& economy,
                                   const PriceVector& prices);

}  // namespace eqlab
