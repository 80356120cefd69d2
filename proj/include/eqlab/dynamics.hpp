#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace eqlab {

struct TatonnementConfig {
  Vector speeds;             // a_l > 0
  double t_max = 200.0;
  double initial_step = 1e-3;
  double tolerance = 1e-12;  // absolute + relative per-step error target
  int sample_stride = 1;     // record every n-th accepted step
  /// Converged once ||zeta(p)|| <= this. Non-positive means the default
  /// 1e-9 * (1 + ||p0||).
  double convergence = 0.0;
  /// Rescale p back onto h(p) = h(p0) after each step. Off by default so
  /// that h drift stays an honest integrator diagnostic.
  bool renormalize = false;

  /// Throws DomainError if any field is out of range for an L-good economy.
  void validate(int goods) const;
};

enum class Verdict { kConverged, kMaxTime, kBoundaryEscape, kStepFailure };

const char* to_string(Verdict verdict);

struct TraceSample {
  double t = 0.0;
  Vector p;
  Vector zeta;
  double h = 0.0;
  double V = 0.0;
};

struct TatonnementTrace {
  std::vector<TraceSample> samples;
  Verdict verdict = Verdict::kMaxTime;
  std::optional<Vector> limit;  // present iff converged
  double max_h_drift = 0.0;     // max_t |h(p_t) - h(p0)| / h(p0)
  /// Reference equilibrium used for V (scaled to ||.|| = 1).
  Vector reference;
  long accepted_steps = 0;
  long rejected_steps = 0;

  /// Writes `t,p_1..p_L,zeta_1..zeta_L,h,V` with 17 significant digits.
  void write_csv(std::ostream& out) const;
};

/// h(p) = sqrt(sum_l p_l^2 / a_l), conserved along the tatonnement flow.
double norm_h(const Vector& prices, const Vector& speeds);

/// V(p) = h(p - (h(p)/h(p*)) p*)^2. Zero exactly on the ray through p*.
double lyapunov_V(const Vector& prices, const Vector& reference,
                  const Vector& speeds);

/// Integrates dp_l/dt = a_l zeta_l(p) with an embedded Dormand-Prince 5(4)
/// pair. `reference` is the equilibrium used to evaluate V along the trace;
/// when omitted, V is evaluated against the final state.
TatonnementTrace integrate_tatonnement(
    const Economy& economy, const PriceVector& p0,
    const TatonnementConfig& config,
    const std::optional<PriceVector>& reference = std::nullopt);

}  // namespace eqlab
