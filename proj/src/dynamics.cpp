#include "eqlab/dynamics.hpp"

#include "eqlab/error.hpp"
#include "eqlab/excess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>

namespace eqlab {

namespace {

constexpr double kMinStep = 1e-14;
constexpr double kBoundaryFraction = 1e-8;
constexpr double kSafety = 0.9;
constexpr double kMinShrink = 0.2;
constexpr double kMaxGrow = 5.0;

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384,     0.0,           500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84,     0.0};
constexpr std::array<double, 7> kB4{5179.0 / 57600,    0.0,           7571.0 / 16695,
                                    393.0 / 640,       -92097.0 / 339200, 187.0 / 2100,
                                    1.0 / 40};

struct Rhs {
  const Economy& economy;
  const Vector& speeds;

  // Returns false when p leaves the open orthant or zeta cannot be
  // evaluated there; the caller shrinks the step.
  bool operator()(const Vector& p, Vector& out) const {
    if (!strictly_positive(p)) return false;
    try {
      out = speeds.cwiseProduct(zeta(economy, PriceVector(p)));
    } catch (const Error&) {
      return false;
    }
    return out.allFinite();
  }
};

double error_norm(const Vector& err, const Vector& y0, const Vector& y1,
                  double tol) {
  const Vector scale =
      (tol + tol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
  return std::sqrt(err.cwiseQuotient(scale).squaredNorm() /
                   static_cast<double>(err.size()));
}

}  // namespace

void TatonnementConfig::validate(int goods) const {
  if (speeds.size() != goods || !strictly_positive(speeds)) {
    throw DomainError("speeds must be positive, one per good");
  }
  if (!(t_max > 0.0) || !(initial_step > 0.0) || !(tolerance > 0.0) ||
      sample_stride < 1) {
    throw DomainError("invalid tatonnement configuration");
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kConverged: return "converged";
    case Verdict::kMaxTime: return "max-time";
    case Verdict::kBoundaryEscape: return "boundary-escape";
    case Verdict::kStepFailure: return "step-failure";
  }
  return "unknown";
}

double norm_h(const Vector& p, const Vector& a) {
  return std::sqrt((p.array().square() / a.array()).sum());
}

double lyapunov_V(const Vector& p, const Vector& p_star, const Vector& a) {
  const Vector gap = p - (norm_h(p, a) / norm_h(p_star, a)) * p_star;
  const double h = norm_h(gap, a);
  return h * h;
}

void TatonnementTrace::write_csv(std::ostream& out) const {
  if (samples.empty()) return;
  const auto L = samples.front().p.size();
  out << "t";
  for (Eigen::Index l = 1; l <= L; ++l) out << ",p_" << l;
  for (Eigen::Index l = 1; l <= L; ++l) out << ",zeta_" << l;
  out << ",h,V\n";
  out << std::setprecision(17);
  for (const auto& s : samples) {
    out << s.t;
    for (double x : s.p) out << ',' << x;
    for (double x : s.zeta) out << ',' << x;
    out << ',' << s.h << ',' << s.V << '\n';
  }
}

TatonnementTrace integrate_tatonnement(
    const Economy& economy, const PriceVector& p0,
    const TatonnementConfig& cfg,
    const std::optional<PriceVector>& reference) {
  cfg.validate(economy.goods);
  if (p0.size() != economy.goods) throw DomainError("price dimension mismatch");

  const Vector& a = cfg.speeds;
  const Rhs rhs{economy, a};
  const double h0 = norm_h(p0.values(), a);
  const double eps_conv =
      cfg.convergence > 0.0 ? cfg.convergence : 1e-9 * (1.0 + p0.values().norm());
  const double floor = kBoundaryFraction * h0;

  TatonnementTrace trace;
  Vector p = p0.values();
  Vector k1;
  if (!rhs(p, k1)) throw NumericalError("excess demand undefined at p0");
  double t = 0.0;
  double step = cfg.initial_step;

  auto record = [&](const Vector& dp) {
    trace.samples.push_back(
        {t, p, dp.cwiseQuotient(a), norm_h(p, a), 0.0});
  };
  record(k1);

  std::array<Vector, 7> k;
  long since_sample = 0;
  while (true) {
    if ((k1.cwiseQuotient(a)).norm() <= eps_conv) {
      trace.verdict = Verdict::kConverged;
      break;
    }
    if (t >= cfg.t_max) {
      trace.verdict = Verdict::kMaxTime;
      break;
    }
    if (step < kMinStep) {
      trace.verdict = Verdict::kStepFailure;
      break;
    }
    step = std::min(step, cfg.t_max - t);

    k[0] = k1;
    bool ok = true;
    for (int s = 1; s < 7 && ok; ++s) {
      Vector stage = p;
      for (int r = 0; r < s; ++r) {
        if (kA[s][r] != 0.0) stage += step * kA[s][r] * k[r];
      }
      ok = rhs(stage, k[s]);
    }
    if (!ok) {
      // Positivity guard: a stage left the orthant.
      step *= 0.5;
      ++trace.rejected_steps;
      continue;
    }
    Vector next = p;
    Vector err = Vector::Zero(p.size());
    for (int s = 0; s < 7; ++s) {
      next += step * kB5[s] * k[s];
      err += step * (kB5[s] - kB4[s]) * k[s];
    }
    const double en = error_norm(err, p, next, cfg.tolerance);
    if (!(en <= 1.0)) {
      step *= std::clamp(kSafety * std::pow(en, -0.2), kMinShrink, 1.0);
      ++trace.rejected_steps;
      continue;
    }

    t += step;
    p = next;
    k1 = k[6];  // FSAL: the last stage is the derivative at the new point
    if (cfg.renormalize) {
      p *= h0 / norm_h(p, a);
      if (!rhs(p, k1)) throw NumericalError("excess demand undefined");
    }
    ++trace.accepted_steps;
    trace.max_h_drift =
        std::max(trace.max_h_drift, std::abs(norm_h(p, a) - h0) / h0);
    step *= en > 0.0 ? std::clamp(kSafety * std::pow(en, -0.2), kMinShrink, kMaxGrow)
                     : kMaxGrow;

    if (p.minCoeff() < floor) {
      record(k1);
      trace.verdict = Verdict::kBoundaryEscape;
      break;
    }
    if (++since_sample >= cfg.sample_stride) {
      record(k1);
      since_sample = 0;
    }
  }
  if (trace.samples.back().t != t) record(k1);

  if (trace.verdict == Verdict::kConverged) trace.limit = p;
  trace.reference = reference ? reference->unit().values() : p / p.norm();
  for (auto& s : trace.samples) s.V = lyapunov_V(s.p, trace.reference, a);
  return trace;
}

}  // namespace eqlab
