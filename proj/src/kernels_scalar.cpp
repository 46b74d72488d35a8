#include <cstddef>

#include "tdesign/kernels.hpp"

namespace tdesign::kernels {

namespace {

void dot_fast_scalar(const double* x, double* t, const double* rt, long rows, int k_dim, int r) {
  for (long m = 0; m < rows; ++m) {
    const double* xrow = x + m * k_dim;
    double* trow = t + m * r;
    for (int k = 0; k < r; ++k) {
      const double* rrow = rt + std::size_t(k) * k_dim;
      double acc = 0.0;
      for (int u = 0; u < k_dim; ++u) acc += xrow[u] * rrow[u];
      trow[k] += acc;
    }
  }
}

void expand_fast_scalar(const double* t, double* y, const double* rt, long rows, int k_dim, int r,
                        double w) {
  for (long m = 0; m < rows; ++m) {
    const double* trow = t + m * r;
    double* yrow = y + m * k_dim;
    for (int k = 0; k < r; ++k) {
      const double c = w * trow[k];
      const double* rrow = rt + std::size_t(k) * k_dim;
      for (int u = 0; u < k_dim; ++u) yrow[u] += c * rrow[u];
    }
  }
}

void dot_slow_scalar(const double* x, double* t, const double* r_, int k_dim, int b_dim, int r) {
  for (int p = 0; p < k_dim; ++p) {
    const double* xrow = x + std::size_t(p) * b_dim;
    const double* rrow = r_ + std::size_t(p) * r;
    for (int k = 0; k < r; ++k) {
      const double c = rrow[k];
      double* trow = t + std::size_t(k) * b_dim;
      for (int b = 0; b < b_dim; ++b) trow[b] += c * xrow[b];
    }
  }
}

void expand_slow_scalar(const double* t, double* y, const double* r_, int k_dim, int b_dim, int r,
                        double w) {
  for (int p = 0; p < k_dim; ++p) {
    double* yrow = y + std::size_t(p) * b_dim;
    const double* rrow = r_ + std::size_t(p) * r;
    for (int k = 0; k < r; ++k) {
      const double c = w * rrow[k];
      const double* trow = t + std::size_t(k) * b_dim;
      for (int b = 0; b < b_dim; ++b) yrow[b] += c * trow[b];
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{dot_fast_scalar, expand_fast_scalar, dot_slow_scalar, expand_slow_scalar,
                       "scalar"};
  return ops;
}

}  // namespace tdesign::kernels
