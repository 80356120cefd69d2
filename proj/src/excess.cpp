#include "eqlab/excess.hpp"

#include "eqlab/consumer.hpp"
#include "eqlab/error.hpp"
#include "eqlab/producer.hpp"

#include <algorithm>
#include <functional>

namespace eqlab {

namespace {

void check_prices(const Economy& e, const PriceVector& p) {
  if (p.size() != e.goods) throw DomainError("price dimension mismatch");
}

double wealth_from(const ConsumerSpec& c, const PriceVector& p,
                   const std::vector<SupplyResult>& supplies) {
  double m = p.values().dot(c.endowment);
  for (std::size_t j = 0; j < supplies.size(); ++j) {
    m += c.shares(static_cast<Eigen::Index>(j)) * supplies[j].profit;
  }
  return m;
}

std::vector<SupplyResult> all_supplies(const Economy& e, const PriceVector& p) {
  std::vector<SupplyResult> out;
  out.reserve(e.producers.size());
  for (const auto& pr : e.producers) out.push_back(supply(pr, p));
  return out;
}

Matrix central_jacobian(const std::function<Vector(const PriceVector&)>& f,
                        const PriceVector& p, double step) {
  if (!(step > 0.0 && step < 0.5)) throw DomainError("step out of range");
  const Eigen::Index L = p.size();
  Matrix jac(L, L);
  for (Eigen::Index k = 0; k < L; ++k) {
    const double h = step * p[k];
    Vector up = p.values();
    Vector down = p.values();
    up(k) += h;
    down(k) -= h;
    jac.col(k) = (f(PriceVector(up)) - f(PriceVector(down))) / (2.0 * h);
  }
  return jac;
}

void require_interior(const ExcessResult& r) {
  if (r.any_boundary()) throw NumericalError("Slutsky undefined at boundary");
}

}  // namespace

Vector ExcessResult::consumer_excess() const {
  Vector total = Vector::Zero(zeta.size());
  for (const auto& x : per_consumer) total += x;
  return total;
}

bool ExcessResult::any_boundary() const {
  return std::find(boundary.begin(), boundary.end(), true) != boundary.end();
}

double wealth(const Economy& e, std::size_t consumer, const PriceVector& p) {
  if (consumer >= e.consumers.size()) {
    throw DomainError("consumer index out of range");
  }
  check_prices(e, p);
  return wealth_from(e.consumers[consumer], p, all_supplies(e, p));
}

ExcessResult excess_demand(const Economy& e, const PriceVector& p) {
  check_prices(e, p);
  ExcessResult r;
  const auto supplies = all_supplies(e, p);
  r.zeta = Vector::Zero(e.goods);
  for (const auto& c : e.consumers) {
    const double m = wealth_from(c, p, supplies);
    const DemandResult f = demand(c, e.mode, p, m);
    r.wealths.push_back(m);
    r.boundary.push_back(f.boundary);
    r.per_consumer.push_back(f.bundle - c.endowment);
    r.zeta += r.per_consumer.back();
  }
  for (const auto& s : supplies) {
    r.supplies.push_back(s.netput);
    r.zeta -= s.netput;
  }
  return r;
}

Vector zeta(const Economy& e, const PriceVector& p) {
  return excess_demand(e, p).zeta;
}

Matrix excess_jacobian(const Economy& e, const PriceVector& p, double step) {
  require_interior(excess_demand(e, p));
  return central_jacobian([&](const PriceVector& x) { return zeta(e, x); }, p,
                          step);
}

Matrix consumer_excess_jacobian(const Economy& e, const PriceVector& p,
                                double step) {
  require_interior(excess_demand(e, p));
  return central_jacobian(
      [&](const PriceVector& x) { return excess_demand(e, x).consumer_excess(); },
      p, step);
}

Matrix slutsky_sum(const Economy& e, const PriceVector& p) {
  const ExcessResult r = excess_demand(e, p);
  Matrix total = Matrix::Zero(e.goods, e.goods);
  for (std::size_t i = 0; i < e.consumers.size(); ++i) {
    total += slutsky(e.consumers[i], e.mode, p, r.wealths[i]);
  }
  return total;
}

Matrix predicted_consumer_jacobian(const Economy& e, const PriceVector& p) {
  const ExcessResult r = excess_demand(e, p);
  const Eigen::Index L = e.goods;
  Matrix total = Matrix::Zero(L, L);
  for (std::size_t i = 0; i < e.consumers.size(); ++i) {
    const auto& c = e.consumers[i];
    total += slutsky(c, e.mode, p, r.wealths[i]);
    // Income flowing back through the endowment and profit shares only
    // moves the numeraire row.
    Vector owned_supply = Vector::Zero(L);
    for (std::size_t j = 0; j < r.supplies.size(); ++j) {
      owned_supply += c.shares(static_cast<Eigen::Index>(j)) * r.supplies[j];
    }
    total.row(L - 1) -=
        ((r.per_consumer[i] - owned_supply) / p.numeraire()).transpose();
  }
  return total;
}

}  // namespace eqlab
