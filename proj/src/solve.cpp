#include "eqlab/solve.hpp"

#include "eqlab/error.hpp"
#include "eqlab/excess.hpp"
#include "eqlab/linalg.hpp"
#include "eqlab/random.hpp"

#include <cmath>
#include <optional>

namespace eqlab {

namespace {

constexpr double kClusterRadius = 1e-6;
constexpr double kStartFloor = 0.05;
constexpr double kIndexResidual = 1e-8;
constexpr double kDegenerateChi = 1e-12;
constexpr int kMaxHalvings = 60;

// zeta at (p~, 1), or nullopt where it cannot be evaluated.
std::optional<Vector> reduced_zeta(const Economy& e, const Vector& tilde) {
  if (!strictly_positive(tilde)) return std::nullopt;
  Vector p(tilde.size() + 1);
  p.head(tilde.size()) = tilde;
  p(tilde.size()) = 1.0;
  try {
    Vector z = zeta(e, PriceVector(p));
    if (!z.allFinite()) return std::nullopt;
    return z;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Matrix reduced_jacobian(const Economy& e, const Vector& tilde, double step) {
  const Eigen::Index n = tilde.size();
  Matrix jac(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double h = step * tilde(k);
    Vector up = tilde;
    Vector down = tilde;
    up(k) += h;
    down(k) -= h;
    const auto zu = reduced_zeta(e, up);
    const auto zd = reduced_zeta(e, down);
    if (!zu || !zd) throw NumericalError("excess demand undefined near iterate");
    jac.col(k) = (zu->head(n) - zd->head(n)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

EquilibriumReport find_equilibrium(const Economy& e, const PriceVector& p0,
                                   const SolverOptions& opt) {
  if (p0.size() != e.goods) throw DomainError("price dimension mismatch");
  const Eigen::Index n = e.goods - 1;

  EquilibriumReport report;
  Vector tilde = p0.tilde() / p0.numeraire();
  auto z = reduced_zeta(e, tilde);
  if (!z) throw NumericalError("excess demand undefined at p0");

  int iter = 0;
  // One extra step after reaching the tolerance buys margin against it.
  bool polished = false;
  while (iter < opt.max_iterations) {
    if (z->norm() <= opt.tolerance) {
      if (polished) break;
      polished = true;
    }
    ++iter;
    const Matrix jac = reduced_jacobian(e, tilde, opt.fd_step);
    Eigen::FullPivLU<Matrix> lu(jac);
    if (!lu.isInvertible()) throw NumericalError("singular Jacobian");
    const Vector direction = lu.solve(-z->head(n));

    // Backtrack until the iterate stays positive and the residual falls.
    const double current = z->norm();
    double lambda = 1.0;
    std::optional<Vector> accepted;
    Vector trial;
    for (int k = 0; k < kMaxHalvings; ++k, lambda *= 0.5) {
      trial = tilde + lambda * direction;
      if (!strictly_positive(trial)) continue;
      auto zt = reduced_zeta(e, trial);
      if (zt && zt->norm() <= (1.0 - 1e-4 * lambda) * current) {
        accepted = std::move(zt);
        break;
      }
    }
    if (!accepted) break;  // stalled; polishing steps end here too
    tilde = trial;
    z = std::move(accepted);
  }

  Vector p(n + 1);
  p.head(n) = tilde;
  p(n) = 1.0;
  report.p_star = p / p.norm();
  report.residual = zeta(e, PriceVector(report.p_star)).norm();
  report.iterations = iter;
  report.converged = report.residual <= opt.tolerance;
  if (report.converged) {
    try {
      report.index = equilibrium_index(e, PriceVector(report.p_star));
    } catch (const NumericalError&) {
      report.index = 0;  // degenerate: chi vanishes
    }
  }
  return report;
}

std::vector<PriceVector> sample_starts(int goods, int starts,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PriceVector> out;
  out.reserve(static_cast<std::size_t>(starts));
  Vector v(goods);
  while (static_cast<int>(out.size()) < starts) {
    for (int l = 0; l < goods; ++l) v(l) = std::abs(rng.normal());
    const double norm = v.norm();
    if (norm == 0.0) continue;
    v /= norm;
    if (v.minCoeff() >= kStartFloor) out.emplace_back(v);
  }
  return out;
}

UniquenessReport verify_uniqueness(const Economy& e, int starts,
                                   std::uint64_t seed,
                                   const SolverOptions& opt) {
  if (starts < 2) throw DomainError("need at least two starts");
  UniquenessReport report;
  report.starts = starts;
  std::vector<std::vector<Vector>> members;

  for (const auto& p0 : sample_starts(e.goods, starts, seed)) {
    EquilibriumReport r;
    try {
      r = find_equilibrium(e, p0, opt);
    } catch (const NumericalError&) {
      continue;
    }
    if (!r.converged) continue;
    ++report.converged;
    bool placed = false;
    for (std::size_t c = 0; c < report.clusters.size(); ++c) {
      if ((report.clusters[c].representative - r.p_star).norm() <= kClusterRadius) {
        ++report.clusters[c].members;
        members[c].push_back(r.p_star);
        placed = true;
        break;
      }
    }
    if (!placed) {
      report.clusters.push_back({r.p_star, 1});
      members.push_back({r.p_star});
    }
  }
  if (report.converged == 0) throw NumericalError("no equilibrium found");

  for (const auto& group : members) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        report.max_intra_distance =
            std::max(report.max_intra_distance, (group[i] - group[j]).norm());
      }
    }
  }
  for (std::size_t i = 0; i < report.clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < report.clusters.size(); ++j) {
      report.max_inter_distance = std::max(
          report.max_inter_distance, (report.clusters[i].representative -
                                      report.clusters[j].representative)
                                         .norm());
    }
  }
  return report;
}

double bordered_determinant(const Economy& e, const PriceVector& p_star,
                            double step) {
  const Eigen::Index L = e.goods;
  Matrix bordered = Matrix::Zero(L + 1, L + 1);
  bordered.topLeftCorner(L, L) = excess_jacobian(e, p_star, step);
  bordered.col(L).head(L) = p_star.values();
  bordered.row(L).head(L) = p_star.values().transpose();
  return bordered.determinant();
}

int equilibrium_index(const Economy& e, const PriceVector& p_star) {
  if (zeta(e, p_star).norm() > kIndexResidual) {
    throw DomainError("price is not an equilibrium");
  }
  const double chi = bordered_determinant(e, p_star, 1e-5);
  if (std::abs(chi) < kDegenerateChi) {
    throw NumericalError("degenerate equilibrium (chi=0)");
  }
  const double sign = (e.goods % 2 == 0) ? 1.0 : -1.0;
  return sign * chi > 0.0 ? +1 : -1;
}

Eigen::VectorXcd tangent_spectrum(const Matrix& jacobian, const Vector& p) {
  const Matrix basis = orthogonal_complement(p);
  const Matrix restricted = basis.transpose() * jacobian * basis;
  Eigen::EigenSolver<Matrix> solver(restricted, false);
  return solver.eigenvalues();
}

}  // namespace eqlab
