#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

// Row-compressed complex matrix; row entries sorted by column index.
struct SparseMatrix {
  int dim = 0;
  std::vector<std::vector<std::pair<int, cd>>> rows;
};

struct SparseApproximation {
  SparseMatrix matrix;
  int keep_per_row = 0;
  int max_row_nnz = 0;
  int max_col_nnz = 0;
  double spectral_error = 0.0;        // ||U - Utilde||_2, power iteration
  bool approximately_sparse = false;  // spectral_error <= 0.03
};

// Keeps the keep_per_row largest-modulus nonzeros of each row, unioned with
// the same selection per column. dim <= 2^14.
SparseApproximation sparse_approximate(const ComplexMatrix& u, int keep_per_row);

struct SparseOverlapEstimate {
  cd estimate;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  long samples = 0;
  int sparsity = 0;  // max column nonzeros; bounds each sample term
};

// Monte-Carlo <g|Ut|f> for +-1 state vectors f, g: samples x uniformly,
// averages f_x * sum_y g_y Ut_{yx} (one column scan per sample). Sample
// count is Hoeffding-chosen so each component lands within `accuracy` with
// probability 1 - delta; throws a budget error above sample_cap.
SparseOverlapEstimate sparse_overlap_estimate(const SparseMatrix& ut, const std::vector<int>& f,
                                              const std::vector<int>& g, double accuracy,
                                              double delta, RandomSource& rng,
                                              long sample_cap = 50000000L);

ComplexMatrix sparse_to_dense(const SparseMatrix& m);

// dim = n_blocks * block_dim with independent Haar blocks on the diagonal;
// the canonical approximately-sparse test family.
ComplexMatrix block_diagonal_haar(int n_blocks, int block_dim, RandomSource& rng);

void save_sparse(const SparseMatrix& m, const std::string& path);
SparseMatrix load_sparse(const std::string& path);

}  // namespace tdesign
