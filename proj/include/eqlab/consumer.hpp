#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

namespace eqlab {

struct DemandResult {
  Vector bundle;
  /// Second type only: the nonnegativity constraint on the numeraire binds.
  bool boundary = false;
  /// Multiplier on the budget in the boundary branch (utils per currency);
  /// zero for interior demand.
  double multiplier = 0.0;
};

/// Solves Du(x) = p componentwise: x_l = (p_l / (a_l b_l))^{1/(b_l - 1)}.
/// Throws DomainError("price out of domain") for non-positive prices and
/// NumericalError("parameter overflow") if the power is not finite.
Vector inverse_marginal_utility(const UtilitySpec& utility,
                                const Vector& prices);

/// Derivative of inverse_marginal_utility, which is diagonal for the
/// separable family: dx_l/dp_l = x_l / ((b_l - 1) p_l).
Vector inverse_marginal_utility_slope(const UtilitySpec& utility,
                                      const Vector& prices);

/// Quasi-linear demand f(p, m). Throws DomainError("nonpositive wealth") for
/// m <= 0.
DemandResult demand(const ConsumerSpec& consumer, Mode mode,
                    const PriceVector& prices, double wealth);

/// Quasi-linear utility U(x) = u(x~) + x_L.
double quasi_linear_utility(const UtilitySpec& utility, const Vector& bundle);

/// Analytic Slutsky matrix s_jk = df_j/dp_k + df_j/dm f_k. Throws
/// NumericalError("Slutsky undefined at boundary") when second-type demand
/// sits on the numeraire boundary.
Matrix slutsky(const ConsumerSpec& consumer, Mode mode,
               const PriceVector& prices, double wealth);

namespace detail {

/// First-type bundle without the wealth-sign check. Only x~ matters to the
/// callers, and x~ does not depend on wealth.
Vector first_type_bundle(const UtilitySpec& utility, const PriceVector& prices,
                         double wealth);

}  // namespace detail

}  // namespace eqlab
