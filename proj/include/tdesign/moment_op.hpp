#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/model.hpp"

namespace tdesign {

// Averaged moment operator of one random-circuit step on n qubit sites,
// applied matrix-free. Layout: site-major, each site carrying the t forward
// then t conjugate qubit copies (site dimension 4^t, site 0 most significant).
//
// local  : nearest-neighbour pairs. n == 3 is the two-term open chain
//          (P01 + P12)/2; n >= 4 is the circle (i, i+1 mod n), weight 1/n.
// uniform: every unordered pair, weight 2/(n(n-1)).
//
// Each pair term is the rank-t! projector P = R R^T, so apply() reduces to
// skinny contractions against the factor; this is the SIMD hot path.
class MomentOperator {
 public:
  MomentOperator(int t, int n, Model model);

  int t() const { return t_; }
  int n() const { return n_; }
  Model model() const { return model_; }
  std::size_t dim() const { return dim_; }
  std::size_t site_dim() const { return ds_; }
  int pair_rank() const { return r_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  const std::vector<double>& weights() const { return weights_; }

  // y = M x on the real site-major space; y is overwritten. Pair terms are
  // accumulated in stored (ascending) order so results are reproducible.
  void apply(const double* x, double* y) const;

  // Dense row-major assembly (symmetric); guarded to dim() <= 2^13.
  std::vector<double> dense() const;

  // Orthonormal basis of the guaranteed eigenvalue-1 subspace: the t!
  // orthonormalized global product vectors, stored as t! consecutive
  // columns of length dim() (Gram entries (2^n)^{#cycles}).
  std::vector<double> fixed_space() const;

 private:
  void apply_pair(int i, int j, double w, const double* x, double* y) const;

  int t_;
  int n_;
  Model model_;
  int r_;           // pair projector rank t!
  std::size_t ds_;  // per-site dimension 4^t
  std::size_t dim_; // ds_^n
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> weights_;
  std::vector<double> rp_;   // pair factor, K x r row-major, K = ds_^2
  std::vector<double> rpt_;  // transposed factor, r x K
  std::vector<std::vector<double>> rvt_;  // per leading-site value v: r x ds_ slice
  mutable std::vector<double> tbuf_;      // contraction workspace, r * dim / ds_^2
};

// y = op x for complex vectors (the operator is real, so real and imaginary
// parts are pushed through separately). Size mismatch throws.
ComplexVector moment_matvec(const MomentOperator& op, const ComplexVector& x);

}  // namespace tdesign
