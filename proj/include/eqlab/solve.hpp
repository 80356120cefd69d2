#pragma once

#include "eqlab/economy.hpp"
#include "eqlab/types.hpp"

#include <cstdint>
#include <vector>

namespace eqlab {

struct SolverOptions {
  double tolerance = 1e-10;  // on ||zeta||_2
  int max_iterations = 100;
  double fd_step = 1e-6;     // relative central-difference step
};

struct EquilibriumReport {
  Vector p_star;  // ||p_star||_2 = 1
  double residual = 0.0;
  int index = 0;  // +1 / -1, zero if not computed
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton on zeta~(p~, 1) = 0 with the numeraire pinned at one.
/// Throws NumericalError("singular Jacobian") when the reduced Jacobian is
/// singular to working precision.
EquilibriumReport find_equilibrium(const Economy& economy,
                                   const PriceVector& p0,
                                   const SolverOptions& options = {});

struct Cluster {
  Vector representative;  // unit norm
  int members = 0;
};

struct UniquenessReport {
  int starts = 0;
  int converged = 0;
  std::vector<Cluster> clusters;
  double max_intra_distance = 0.0;
  double max_inter_distance = 0.0;

  bool unique() const { return clusters.size() == 1; }
};

/// Runs find_equilibrium from `starts` seeded points on
/// {p : ||p|| = 1, p_l >= 0.05} and clusters the results with radius 1e-6.
/// Throws NumericalError("no equilibrium found") if every start fails.
UniquenessReport verify_uniqueness(const Economy& economy, int starts,
                                   std::uint64_t seed,
                                   const SolverOptions& options = {});

/// The deterministic start points used by verify_uniqueness.
std::vector<PriceVector> sample_starts(int goods, int starts,
                                       std::uint64_t seed);

/// Bordered determinant det([[Dzeta(p), p], [p^T, 0]]).
double bordered_determinant(const Economy& economy, const PriceVector& p_star,
                            double step = 1e-6);

/// +1 if (-1)^L chi > 0, else -1. Throws DomainError if p_star is not an
/// equilibrium (||zeta|| > 1e-8) and NumericalError("degenerate equilibrium
/// (chi=0)") if |chi| < 1e-12.
int equilibrium_index(const Economy& economy, const PriceVector& p_star);

/// Eigenvalues of P^T Dzeta(p) P where the columns of P span p-perp.
Eigen::VectorXcd tangent_spectrum(const Matrix& jacobian, const Vector& p);

}  // namespace eqlab
