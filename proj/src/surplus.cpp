#include "eqlab/surplus.hpp"

#include "eqlab/consumer.hpp"
#include "eqlab/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace eqlab {

namespace {

constexpr unsigned kMaxDepth = 20;
constexpr double kSegmentTolerance = 1e-12;  // relative, per segment
constexpr double kDefaultWealth = 10.0;

PriceVector with_numeraire(const Vector& tilde) {
  Vector p(tilde.size() + 1);
  p.head(tilde.size()) = tilde;
  p(tilde.size()) = 1.0;
  return PriceVector(p);
}

Vector non_numeraire_demand(const UtilitySpec& u, const Vector& tilde,
                            double wealth) {
  return detail::first_type_bundle(u, with_numeraire(tilde), wealth)
      .head(tilde.size());
}

SurplusResult segment_integral(const UtilitySpec& u, const Vector& from,
                               const Vector& to, double wealth) {
  const Vector direction = to - from;
  if (direction.isZero(0.0)) return {};
  auto integrand = [&](double t) {
    return non_numeraire_demand(u, from + t * direction, wealth).dot(direction);
  };
  SurplusResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 1.0, kMaxDepth, kSegmentTolerance, &r.error_estimate);
  return r;
}

void check_dimension(const UtilitySpec& u, const Vector& prices) {
  if (prices.size() != u.goods()) throw DomainError("price dimension mismatch");
}

}  // namespace

PricePath::PricePath(std::vector<Vector> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) throw DomainError("path needs at least two waypoints");
  for (std::size_t k = 0; k < waypoints_.size(); ++k) {
    if (waypoints_[k].size() != waypoints_.front().size() ||
        waypoints_[k].size() == 0) {
      throw DomainError("path waypoints differ in dimension");
    }
    if (!strictly_positive(waypoints_[k])) {
      throw DomainError("path touches the boundary of the price orthant");
    }
    if (k > 0 && waypoints_[k] == waypoints_[k - 1]) {
      throw DomainError("consecutive path waypoints coincide");
    }
  }
}

PricePath PricePath::straight(const Vector& from, const Vector& to) {
  if (from == to) {
    if (!strictly_positive(from)) {
      throw DomainError("path touches the boundary of the price orthant");
    }
    PricePath path;
    path.waypoints_ = {from, to};
    return path;
  }
  return PricePath({from, to});
}

SurplusResult surplus_line_integral(const ConsumerSpec& c, const PricePath& path,
                                    double wealth) {
  check_dimension(c.utility, path.start());
  SurplusResult total;
  const auto& w = path.waypoints();
  for (std::size_t k = 1; k < w.size(); ++k) {
    const auto seg = segment_integral(c.utility, w[k - 1], w[k], wealth);
    total.value += seg.value;
    total.error_estimate += seg.error_estimate;
  }
  return total;
}

double path_independence_gap(const ConsumerSpec& c, const Vector& from,
                             const Vector& to, std::span<const PricePath> paths,
                             double wealth) {
  if (paths.size() < 2) throw DomainError("need at least two paths");
  auto close = [](const Vector& x, const Vector& y) {
    return x.size() == y.size() &&
           (x - y).norm() <= 1e-12 * (1.0 + x.norm());
  };
  std::vector<double> values;
  for (const auto& path : paths) {
    if (!close(path.start(), from) || !close(path.end(), to)) {
      throw DomainError("endpoint mismatch");
    }
    values.push_back(surplus_line_integral(c, path, wealth).value);
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      gap = std::max(gap, std::abs(values[i] - values[j]));
    }
  }
  return gap;
}

double surplus_potential(const UtilitySpec& u, const Vector& prices) {
  check_dimension(u, prices);
  double phi = 0.0;
  for (Eigen::Index l = 0; l < prices.size(); ++l) {
    const double a = u.a(l);
    const double b = u.b(l);
    phi += (b - 1.0) / b * std::pow(a * b, 1.0 / (1.0 - b)) *
           std::pow(prices(l), b / (b - 1.0));
  }
  return phi;
}

AggregateSurplus aggregate_surplus_identity(
    std::span<const ConsumerSpec> consumers, const Vector& from,
    const Vector& to, std::span<const double> wealths) {
  return aggregate_surplus_identity(consumers, PricePath::straight(from, to),
                                    wealths);
}

AggregateSurplus aggregate_surplus_identity(
    std::span<const ConsumerSpec> consumers, const PricePath& path,
    std::span<const double> wealths) {
  if (consumers.empty()) throw DomainError("no consumers");
  if (!wealths.empty() && wealths.size() != consumers.size()) {
    throw DomainError("one wealth per consumer required");
  }
  const Vector& from = path.start();
  const Vector& to = path.end();
  const PriceVector p = with_numeraire(from);
  const PriceVector q = with_numeraire(to);

  AggregateSurplus r;
  Vector demand_p = Vector::Zero(from.size());
  Vector demand_q = Vector::Zero(from.size());
  for (std::size_t i = 0; i < consumers.size(); ++i) {
    const auto& c = consumers[i];
    check_dimension(c.utility, from);
    const double m = wealths.empty() ? kDefaultWealth : wealths[i];
    r.line_integral += surplus_line_integral(c, path, m).value;

    const Vector fp = detail::first_type_bundle(c.utility, p, m);
    const Vector fq = detail::first_type_bundle(c.utility, q, m);
    demand_p += fp.head(from.size());
    demand_q += fq.head(from.size());
    r.rhs += quasi_linear_utility(c.utility, fq) -
             quasi_linear_utility(c.utility, fp);
    r.subutility_change += c.utility.value(fq.head(from.size())) -
                           c.utility.value(fp.head(from.size()));
  }
  r.expenditure_change = to.dot(demand_q) - from.dot(demand_p);
  r.lhs = r.line_integral - r.expenditure_change;
  r.gap = r.lhs - r.rhs;
  return r;
}

}  // namespace eqlab
