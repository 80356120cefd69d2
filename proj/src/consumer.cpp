#include "eqlab/consumer.hpp"

#include "eqlab/error.hpp"

#include <cmath>

namespace eqlab {

namespace {

constexpr int kBisectionIterations = 200;
constexpr double kBudgetTolerance = 1e-10;

void require_finite(const Vector& v) {
  if (!v.allFinite()) throw NumericalError("parameter overflow");
}

// x~(lambda) for the boundary branch: a_l b_l x_l^{b_l-1} = lambda p_l.
Vector bundle_at_multiplier(const UtilitySpec& u, const Vector& prices,
                            double lambda) {
  return inverse_marginal_utility(u, lambda * prices);
}

DemandResult boundary_demand(const UtilitySpec& u, const Vector& prices,
                             double numeraire_price, double wealth) {
  auto spend = [&](double lambda) {
    return prices.dot(bundle_at_multiplier(u, prices, lambda));
  };
  // Expenditure falls strictly in lambda; at 1/p_L it exceeds the wealth
  // because the unconstrained numeraire demand was negative.
  double lo = 1.0 / numeraire_price;
  double hi = 2.0 * lo;
  for (int k = 0; spend(hi) > wealth; ++k) {
    if (k > 2000) throw NumericalError("parameter overflow");
    lo = hi;
    hi *= 2.0;
  }
  double lambda = std::sqrt(lo * hi);
  for (int k = 0; k < kBisectionIterations; ++k) {
    lambda = std::sqrt(lo * hi);
    const double excess = spend(lambda) - wealth;
    if (std::abs(excess) <= kBudgetTolerance * wealth) break;
    (excess > 0.0 ? lo : hi) = lambda;
  }
  DemandResult result;
  const auto L = prices.size() + 1;
  result.bundle = Vector::Zero(L);
  result.bundle.head(L - 1) = bundle_at_multiplier(u, prices, lambda);
  result.boundary = true;
  result.multiplier = lambda;
  return result;
}

}  // namespace

Vector inverse_marginal_utility(const UtilitySpec& u, const Vector& prices) {
  if (prices.size() != u.goods()) throw DomainError("price dimension mismatch");
  if (!strictly_positive(prices)) throw DomainError("price out of domain");
  Vector x(prices.size());
  for (Eigen::Index l = 0; l < prices.size(); ++l) {
    x(l) = std::pow(prices(l) / (u.a(l) * u.b(l)), 1.0 / (u.b(l) - 1.0));
  }
  require_finite(x);
  if ((x.array() <= 0.0).any()) throw NumericalError("parameter overflow");
  return x;
}

Vector inverse_marginal_utility_slope(const UtilitySpec& u,
                                      const Vector& prices) {
  const Vector x = inverse_marginal_utility(u, prices);
  return x.array() / ((u.b.array() - 1.0) * prices.array());
}

namespace detail {

Vector first_type_bundle(const UtilitySpec& u, const PriceVector& p,
                         double wealth) {
  const Vector q = p.tilde() / p.numeraire();
  Vector bundle(p.size());
  bundle.head(q.size()) = inverse_marginal_utility(u, q);
  bundle(q.size()) = wealth / p.numeraire() - q.dot(bundle.head(q.size()));
  require_finite(bundle);
  return bundle;
}

}  // namespace detail

DemandResult demand(const ConsumerSpec& c, Mode mode, const PriceVector& p,
                    double wealth) {
  if (p.size() != c.utility.goods() + 1) {
    throw DomainError("price dimension mismatch");
  }
  if (!(wealth > 0.0) || !std::isfinite(wealth)) {
    throw DomainError("nonpositive wealth");
  }
  DemandResult result;
  result.bundle = detail::first_type_bundle(c.utility, p, wealth);
  if (mode == Mode::kSecondType && result.bundle(p.size() - 1) < 0.0) {
    return boundary_demand(c.utility, p.tilde(), p.numeraire(), wealth);
  }
  return result;
}

double quasi_linear_utility(const UtilitySpec& u, const Vector& bundle) {
  return u.value(bundle.head(u.goods())) + bundle(u.goods());
}

Matrix slutsky(const ConsumerSpec& c, Mode mode, const PriceVector& p,
               double wealth) {
  const DemandResult f = demand(c, mode, p, wealth);
  if (f.boundary) throw NumericalError("Slutsky undefined at boundary");

  const Eigen::Index L = p.size();
  const Eigen::Index n = L - 1;
  const double pL = p.numeraire();
  const Vector q = p.tilde() / pL;
  const Vector x = f.bundle.head(n);
  const Vector slope = inverse_marginal_utility_slope(c.utility, q);

  // Price Jacobian of f(p, m) = (x~(p~/p_L), m/p_L - (p~/p_L) . x~).
  Matrix dp = Matrix::Zero(L, L);
  for (Eigen::Index j = 0; j < n; ++j) {
    dp(j, j) = slope(j) / pL;
    dp(j, n) = -slope(j) * q(j) / pL;
    dp(n, j) = -(x(j) + q(j) * slope(j)) / pL;
  }
  dp(n, n) = -wealth / (pL * pL) +
             (q.array() * (x.array() + q.array() * slope.array())).sum() / pL;

  // Income derivatives: zero for non-numeraire goods, 1/p_L for good L.
  Vector dm = Vector::Zero(L);
  dm(n) = 1.0 / pL;

  return dp + dm * f.bundle.transpose();
}

}  // namespace eqlab
