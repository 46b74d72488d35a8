#pragma once

namespace tdesign::kernels {

// Rank-factor contraction primitives behind the moment-operator matvec.
// R is the projector factor, stored both row-major K x r (`r_`) and
// transposed r x K (`rt`) so each variant can stream contiguously.
//
//   dot_fast     T[m,k] += sum_u X[m,u]  * Rt[k,u]      X: rows x K (row-major)
//   expand_fast  Y[m,u] += w * sum_k T[m,k] * Rt[k,u]
//   dot_slow     T[k,b] += sum_p R[p,k] * X[p,b]        X: K x B (row-major)
//   expand_slow  Y[p,b] += w * sum_k R[p,k] * T[k,b]
struct Ops {
  void (*dot_fast)(const double* x, double* t, const double* rt, long rows, int k_dim, int r);
  void (*expand_fast)(const double* t, double* y, const double* rt, long rows, int k_dim, int r,
                      double w);
  void (*dot_slow)(const double* x, double* t, const double* r_, int k_dim, int b_dim, int r);
  void (*expand_slow)(const double* t, double* y, const double* r_, int k_dim, int b_dim, int r,
                      double w);
  const char* name;
};

const Ops& scalar_ops();
// nullptr when the CPU lacks AVX2/FMA.
const Ops* avx2_ops();
// Chosen once per process; TDESIGN_KERNEL=scalar|avx2 overrides.
const Ops& active_ops();

}  // namespace tdesign::kernels
