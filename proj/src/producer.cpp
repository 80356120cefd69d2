#include "eqlab/producer.hpp"

#include "eqlab/error.hpp"

#include <cmath>

namespace eqlab {

SupplyResult supply(const ProducerSpec& pr, const PriceVector& p) {
  const double po = p[pr.output];
  const double s = pr.returns_to_scale();

  // Work in logs: (1 - s) log Q = log A + sum_k alpha_k log(alpha_k p_o / p_k).
  double log_q = std::log(pr.scale);
  for (std::size_t k = 0; k < pr.inputs.size(); ++k) {
    const double alpha = pr.alpha(static_cast<Eigen::Index>(k));
    log_q += alpha * std::log(alpha * po / p[pr.inputs[k]]);
  }
  log_q /= 1.0 - s;
  const double output = std::exp(log_q);

  SupplyResult r;
  r.netput = Vector::Zero(p.size());
  r.netput(pr.output) = output;
  for (std::size_t k = 0; k < pr.inputs.size(); ++k) {
    const double alpha = pr.alpha(static_cast<Eigen::Index>(k));
    r.netput(pr.inputs[k]) = -alpha * po * output / p[pr.inputs[k]];
  }
  r.profit = (1.0 - s) * po * output;
  if (!r.netput.allFinite() || !std::isfinite(r.profit)) {
    throw NumericalError("parameter overflow");
  }
  return r;
}

double hotelling_residual(const ProducerSpec& pr, const PriceVector& p,
                          double step) {
  if (!(step > 0.0) || !(step < p.values().minCoeff() / 2.0)) {
    throw DomainError("step out of range");
  }
  const Vector y = supply(pr, p).netput;
  double worst = 0.0;
  for (Eigen::Index l = 0; l < p.size(); ++l) {
    Vector up = p.values();
    Vector down = p.values();
    up(l) += step;
    down(l) -= step;
    const double grad = (supply(pr, PriceVector(up)).profit -
                         supply(pr, PriceVector(down)).profit) /
                        (2.0 * step);
    worst = std::max(worst, std::abs(grad - y(l)));
  }
  return worst;
}

}  // namespace eqlab
