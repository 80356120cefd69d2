#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

#include <span>
#include <vector>

namespace eqlab {

/// Piecewise-linear path through the open orthant of non-numeraire prices.
class PricePath {
 public:
  /// Throws DomainError unless there are >= 2 waypoints of equal dimension,
  /// every waypoint is strictly positive and consecutive waypoints differ.
  explicit PricePath(std::vector<Vector> waypoints);

  /// Straight segment; a zero-length path is allowed here.
  static PricePath straight(const Vector& from, const Vector& to);

  const std::vector<Vector>& waypoints() const { return waypoints_; }
  const Vector& start() const { return waypoints_.front(); }
  const Vector& end() const { return waypoints_.back(); }
  Eigen::Index dimension() const { return waypoints_.front().size(); }

 private:
  PricePath() = default;
  std::vector<Vector> waypoints_;
};

struct SurplusResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Line integral of x~(c(t)) . c'(t) along the path with the numeraire price
/// fixed at one. `wealth` enters only through the numeraire coordinate of
/// demand, so the result does not depend on it.
SurplusResult surplus_line_integral(const ConsumerSpec& consumer,
                                    const PricePath& path, double wealth);

/// max pairwise |V_a - V_b| over paths sharing endpoints.
double path_independence_gap(const ConsumerSpec& consumer, const Vector& from,
                             const Vector& to,
                             std::span<const PricePath> paths,
                             double wealth = 1.0);

/// Closed-form potential phi with D phi = x~ for the separable power family:
/// phi(p) = sum_l (b_l - 1)/b_l (a_l b_l)^{1/(1-b_l)} p_l^{b_l/(b_l-1)}.
double surplus_potential(const UtilitySpec& utility, const Vector& prices);

struct AggregateSurplus {
  double line_integral = 0.0;       // int D(c) . c' dt
  double expenditure_change = 0.0;  // q~ . D(q~) - p~ . D(p~)
  double lhs = 0.0;                 // line_integral - expenditure_change
  double rhs = 0.0;                 // sum_i U_i(f^i(q, m_i)) - U_i(f^i(p, m_i))
  double gap = 0.0;                 // lhs - rhs
  double subutility_change = 0.0;   // sum_i u_i(x~^i(q~)) - u_i(x~^i(p~))
};

/// Both sides of the aggregate consumer-surplus relation along the straight
/// path from p~ to q~ (numeraire price one). `wealths` holds one fixed m_i per
/// consumer; empty means m_i = 10 for all.
AggregateSurplus aggregate_surplus_identity(
    std::span<const ConsumerSpec> consumers, const Vector& from,
    const Vector& to, std::span<const double> wealths = {});

/// Same relation with the line integral taken along an arbitrary path; the
/// endpoints of the path play the roles of p~ and q~.
AggregateSurplus aggregate_surplus_identity(
    std::span<const ConsumerSpec> consumers, const PricePath& path,
    std::span<const double> wealths = {});

}  // namespace eqlab
