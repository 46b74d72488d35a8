#include "tdesign/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace tdesign {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const cd aik = a.at(i, k);
      if (aik == cd{}) continue;
      const cd* brow = &b.data[std::size_t(k) * b.cols];
      cd* crow = &c.data[std::size_t(i) * c.cols];
      for (int j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) c.at(j, i) = std::conj(a.at(i, j));
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const cd aij = a.at(i, j);
      if (aij == cd{}) continue;
      for (int p = 0; p < b.rows; ++p)
        for (int q = 0; q < b.cols; ++q) c.at(i * b.rows + p, j * b.cols + q) = aij * b.at(p, q);
    }
  return c;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (std::size_t(a.cols) != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  ComplexVector y(a.rows);
  for (int i = 0; i < a.rows; ++i) {
    const cd* row = &a.data[std::size_t(i) * a.cols];
    cd acc{};
    for (int j = 0; j < a.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cd& v : a.data) m = std::max(m, std::abs(v));
  return m;
}

double unitarity_defect(const ComplexMatrix& a) {
  if (a.rows != a.cols) return 1.0;
  const int n = a.rows;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cd acc{};
      for (int k = 0; k < n; ++k) acc += std::conj(a.at(k, i)) * a.at(k, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace tdesign
