#pragma once

#include "eqlab/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eqlab {

/// Additively separable power sub-utility u(x) = sum_l a_l x_l^{b_l} over the
/// non-numeraire goods. Coefficients a_l > 0, exponents b_l in (0, 1).
struct UtilitySpec {
  Vector a;
  Vector b;

  Eigen::Index goods() const { return a.size(); }
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

struct ConsumerSpec {
  UtilitySpec utility;
  Vector endowment;  // omega, length L
  Vector shares;     // theta, one entry per producer
};

/// Single-output Cobb-Douglas technology y_o <= A prod_k z_k^{alpha_k}.
/// Good indices are 0-based in memory; the JSON format is 1-based.
struct ProducerSpec {
  int output = 0;
  std::vector<int> inputs;
  double scale = 1.0;
  Vector alpha;

  double returns_to_scale() const { return alpha.sum(); }
};

/// First type admits negative numeraire consumption; second type requires
/// the whole bundle to be nonnegative.
enum class Mode { kFirstType, kSecondType };

struct Economy {
  int goods = 2;  // L; the last good is the numeraire
  Mode mode = Mode::kFirstType;
  std::vector<ConsumerSpec> consumers;
  std::vector<ProducerSpec> producers;

  Vector aggregate_endowment() const;
};

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& rule) const;
};

/// Checks every structural assumption of a quasi-linear economy of its
/// declared mode. Never throws; each problem becomes a Violation.
ValidationReport validate_economy(const Economy& economy);

/// Throws DomainError listing the violations when the economy is invalid.
void require_valid(const Economy& economy);

/// Deterministic random economy (first type). Ranges: a in [0.5, 4],
/// b in [0.2, 0.8], omega_l in [0, 5] for l < L, omega_L in [5, 20], shares
/// drawn from the simplex, sum(alpha) in [0.2, 0.8].
Economy generate_random_economy(std::uint64_t seed, int goods, int consumers,
                                int producers);

/// The two-good desk economy used throughout the tests: one consumer with
/// u(x) = 2 sqrt(x), omega = (0, 10), owning one producer that turns good 2
/// into good 1 with y_1 = sqrt(z).
Economy desk_economy();

/// Single consumer with u(x) = 2 sqrt(x), omega = (1, 5), no producers.
Economy no_trade_economy();

const char* to_string(Mode mode);

}  // namespace eqlab
