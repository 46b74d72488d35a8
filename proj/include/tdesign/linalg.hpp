#pragma once

#include <complex>
#include <vector>

namespace tdesign {

using cd = std::complex<double>;
using ComplexVector = std::vector<cd>;

// Dense row-major complex matrix.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cd> data;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * std::size_t(c)) {}

  cd& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const cd& at(int r, int c) const { return data[std::size_t(r) * cols + c]; }

  static ComplexMatrix identity(int n);
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);

double max_abs_entry(const ComplexMatrix& a);
// max_ij |(A^dagger A - I)_ij|
double unitarity_defect(const ComplexMatrix& a);

}  // namespace tdesign
