#pragma once

#include <vector>

namespace aquakern::linalg {

// Eigenvalues of a dense real symmetric n x n matrix (row-major), ascending.
// Cyclic Jacobi; intended for the small matrices this library produces.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

double min_symmetric_eigenvalue(const std::vector<double>& a, int n);

}  // namespace aquakern::linalg
