#pragma once

#include <vector>

#include "ossfem/sparse.hpp"

namespace ossfem {

/// Smallest Dirichlet eigenvalue of -Laplace on the unit square with scalar
/// P`order` elements; end-to-end mesh+assembly+eigensolver oracle that never
/// touches the Stokes assemblies. Converges to 2*pi^2 from above.
double laplacian_oracle(int n, int order);

/// All finite eigenvalues of the pencil A x = lambda M x by dense reduction:
/// the nullspace of the symmetrized M is deflated and the reduced problem is
/// solved densely. Ascending; at most the first k are returned. Dimension
/// capped at 600.
std::vector<double> dense_cross_check(const CsrMatrix& a, const CsrMatrix& m, int k);

}  // namespace ossfem
