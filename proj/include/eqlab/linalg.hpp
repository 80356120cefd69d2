#pragma once

#include "eqlab/types.hpp"

namespace eqlab {

/// L x (L-1) matrix whose orthonormal columns span {v : p . v = 0}.
Matrix orthogonal_complement(const Vector& p);

/// Eigenvalues of a symmetric matrix in ascending order.
Vector symmetric_eigenvalues(const Matrix& m);

/// Largest absolute entry.
double max_abs(const Matrix& m);

}  // namespace eqlab
