#include "eqlab/linalg.hpp"

namespace eqlab {

Matrix orthogonal_complement(const Vector& p) {
  // The last L-1 columns of a full QR of p are orthonormal and orthogonal
  // to p.
  Eigen::HouseholderQR<Matrix> qr(p);
  const Matrix q = qr.householderQ() * Matrix::Identity(p.size(), p.size());
  return q.rightCols(p.size() - 1);
}

Vector symmetric_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace eqlab
