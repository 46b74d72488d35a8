#pragma once

#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/permutations.hpp"

namespace tdesign {

struct PermutationBasis {
  int t = 0;
  int d = 0;
  std::vector<Perm> perms;           // all t! permutations, lexicographic
  std::vector<double> gram;          // t! x t! row-major, entry d^{#cycles(pi sigma^-1)}
  std::vector<double> ortho_coeffs;  // rank x t! row-major; row k gives R_k over the V_pi
  int rank = 0;                      // dim span{|V_pi>}
};

// Tensor-factor permutation operator on (C^d)^{x t}: coordinate j of the
// output multi-index equals coordinate pi^{-1}(j) of the input.
ComplexMatrix permutation_operator(const Perm& pi, int d);

// Row-major vectorization of permutation_operator: dim d^{2t}, 0/1 entries,
// the t forward copies then the t conjugate copies, factor 0 most significant.
std::vector<double> permutation_vector(const Perm& pi, int d);

// Coefficients expanding an orthonormal basis of span{v_i} over the v_i
// themselves, given their Gram matrix (f x f row-major). Returns rank x f
// row-major C with C G C^T = I; eigendirections below 1e-10 of the largest
// eigenvalue are dropped as null vectors.
std::vector<double> gram_orthonormal_coeffs(std::vector<double> gram, int f, int* rank_out);

// Gram-based orthonormalization of span{|V_pi>}. t in {1,2,3}, d in {2,4}.
PermutationBasis build_permutation_basis(int t, int d);

// Dense two-qubit moment projector on the 4^{2t}-dimensional pair space, in
// the copy-major layout of build_permutation_basis(t, 4). Exact rank-t!
// orthogonal projector; no sampling involved.
ComplexMatrix pair_projector(int t);

// Rank factor of the same projector in site-major layout: per site the t
// forward then t conjugate copies, first site's block most significant.
// Returns K x r row-major with K = 4^{2t}, r = t!, columns orthonormal,
// P = R R^T. The factor is symmetric under swapping the two site slots.
std::vector<double> pair_projector_factor(int t, int* rank_out);

}  // namespace tdesign
