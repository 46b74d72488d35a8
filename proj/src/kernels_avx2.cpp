#include <immintrin.h>

#include <cstddef>

#include "tdesign/kernels.hpp"

// Compiled with -mavx2 -mfma; only ever invoked through the runtime dispatch,
// which checks cpu support first. Summation order differs from the scalar
// reference, so agreement is to rounding, not bitwise.

namespace tdesign::kernels {

namespace {

constexpr int kMaxRank = 8;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void dot_fast_avx2(const double* x, double* t, const double* rt, long rows, int k_dim, int r) {
  for (long m = 0; m < rows; ++m) {
    const double* xrow = x + std::size_t(m) * k_dim;
    double* trow = t + std::size_t(m) * r;
    for (int k = 0; k < r; ++k) {
      const double* rrow = rt + std::size_t(k) * k_dim;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      int u = 0;
      for (; u + 8 <= k_dim; u += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(xrow + u), _mm256_loadu_pd(rrow + u), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(xrow + u + 4), _mm256_loadu_pd(rrow + u + 4), acc1);
      }
      for (; u + 4 <= k_dim; u += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(xrow + u), _mm256_loadu_pd(rrow + u), acc0);
      double acc = hsum(_mm256_add_pd(acc0, acc1));
      for (; u < k_dim; ++u) acc += xrow[u] * rrow[u];
      trow[k] += acc;
    }
  }
}

void expand_fast_avx2(const double* t, double* y, const double* rt, long rows, int k_dim, int r,
                      double w) {
  for (long m = 0; m < rows; ++m) {
    const double* trow = t + std::size_t(m) * r;
    double* yrow = y + std::size_t(m) * k_dim;
    int u = 0;
    for (; u + 4 <= k_dim; u += 4) {
      __m256d acc = _mm256_loadu_pd(yrow + u);
      for (int k = 0; k < r; ++k) {
        const __m256d c = _mm256_set1_pd(w * trow[k]);
        acc = _mm256_fmadd_pd(c, _mm256_loadu_pd(rt + std::size_t(k) * k_dim + u), acc);
      }
      _mm256_storeu_pd(yrow + u, acc);
    }
    for (; u < k_dim; ++u) {
      double acc = yrow[u];
      for (int k = 0; k < r; ++k) acc += w * trow[k] * rt[std::size_t(k) * k_dim + u];
      yrow[u] = acc;
    }
  }
}

void dot_slow_avx2(const double* x, double* t, const double* r_, int k_dim, int b_dim, int r) {
  if (r > kMaxRank) {
    scalar_ops().dot_slow(x, t, r_, k_dim, b_dim, r);
    return;
  }
  int b = 0;
  for (; b + 4 <= b_dim; b += 4) {
    __m256d acc[kMaxRank];
    for (int k = 0; k < r; ++k) acc[k] = _mm256_loadu_pd(t + std::size_t(k) * b_dim + b);
    for (int p = 0; p < k_dim; ++p) {
      const __m256d xv = _mm256_loadu_pd(x + std::size_t(p) * b_dim + b);
      const double* rrow = r_ + std::size_t(p) * r;
      for (int k = 0; k < r; ++k)
        acc[k] = _mm256_fmadd_pd(_mm256_broadcast_sd(rrow + k), xv, acc[k]);
    }
    for (int k = 0; k < r; ++k) _mm256_storeu_pd(t + std::size_t(k) * b_dim + b, acc[k]);
  }
  for (; b < b_dim; ++b) {
    for (int p = 0; p < k_dim; ++p) {
      const double xv = x[std::size_t(p) * b_dim + b];
      const double* rrow = r_ + std::size_t(p) * r;
      for (int k = 0; k < r; ++k) t[std::size_t(k) * b_dim + b] += rrow[k] * xv;
    }
  }
}

void expand_slow_avx2(const double* t, double* y, const double* r_, int k_dim, int b_dim, int r,
                      double w) {
  if (r > kMaxRank) {
    scalar_ops().expand_slow(t, y, r_, k_dim, b_dim, r, w);
    return;
  }
  const __m256d wv = _mm256_set1_pd(w);
  int b = 0;
  for (; b + 4 <= b_dim; b += 4) {
    __m256d tv[kMaxRank];
    for (int k = 0; k < r; ++k)
      tv[k] = _mm256_mul_pd(wv, _mm256_loadu_pd(t + std::size_t(k) * b_dim + b));
    for (int p = 0; p < k_dim; ++p) {
      __m256d acc = _mm256_loadu_pd(y + std::size_t(p) * b_dim + b);
      const double* rrow = r_ + std::size_t(p) * r;
      for (int k = 0; k < r; ++k) acc = _mm256_fmadd_pd(_mm256_broadcast_sd(rrow + k), tv[k], acc);
      _mm256_storeu_pd(y + std::size_t(p) * b_dim + b, acc);
    }
  }
  for (; b < b_dim; ++b) {
    for (int p = 0; p < k_dim; ++p) {
      const double* rrow = r_ + std::size_t(p) * r;
      double acc = y[std::size_t(p) * b_dim + b];
      for (int k = 0; k < r; ++k) acc += w * rrow[k] * t[std::size_t(k) * b_dim + b];
      y[std::size_t(p) * b_dim + b] = acc;
    }
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{dot_fast_avx2, expand_fast_avx2, dot_slow_avx2, expand_slow_avx2, "avx2"};
  return &ops;
}

}  // namespace tdesign::kernels
