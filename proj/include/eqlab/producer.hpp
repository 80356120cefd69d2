#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

namespace eqlab {

struct SupplyResult {
  Vector netput;  // output positive, inputs negative
  double profit = 0.0;
};

/// Profit-maximizing netput of a decreasing-returns Cobb-Douglas producer.
/// With s = sum(alpha) < 1 the optimum is interior:
///   Q = [A prod_k (alpha_k p_o / p_k)^{alpha_k}]^{1/(1-s)},
///   z_k = alpha_k p_o Q / p_k,  profit = (1 - s) p_o Q.
SupplyResult supply(const ProducerSpec& producer, const PriceVector& prices);

/// max_l |central difference of profit in p_l - y_l(p)|. Requires
/// 0 < step < min_l p_l / 2.
double hotelling_residual(const ProducerSpec& producer,
                          const PriceVector& prices, double step);

}  // namespace eqlab
