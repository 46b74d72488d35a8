#pragma once

#include <vector>

#include "tdesign/linalg.hpp"

namespace tdesign {

// Three-site compression of the two-term chain P12 + P23 onto the product
// of single-site fixed-space bases (dimension rs per site, rs = 2 for t=2
// and 5 for t=3, so the matrix is 8x8 or 125x125). Its spectrum certifies
// the amplification step: top eigenvalue 2, next distinct value 1.4.
struct XMatrixResult {
  int t = 0;
  int dim = 0;                      // rs^3
  ComplexMatrix x;                  // real symmetric, stored dense
  std::vector<double> eigenvalues;  // descending
  std::vector<double> distinct;     // descending, merged within 1e-8
  std::vector<int> multiplicity;    // aligned with distinct
  double second_distinct = 0.0;
};

XMatrixResult x_matrix(int t);  // t in {2,3}

}  // namespace tdesign
