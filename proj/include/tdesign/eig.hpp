#pragma once

#include <vector>

#include "tdesign/linalg.hpp"

namespace tdesign {

// Eigenvalues (ascending) of a real symmetric row-major n x n matrix.
std::vector<double> sym_eigvals(std::vector<double> a, int n);

// Eigen-decomposition of a real symmetric matrix. On return `a` holds the
// eigenvectors (column j of the row-major layout is the j-th eigenvector);
// eigenvalues come back ascending.
std::vector<double> sym_eig(std::vector<double>& a, int n);

// Eigenvalues (ascending) of a complex Hermitian row-major n x n matrix.
std::vector<double> herm_eigvals(const ComplexMatrix& a);

}  // namespace tdesign
