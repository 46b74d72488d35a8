#pragma once

#include <cstdint>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

// A conjunction of k literals over the length-2N sign string
// omega = (f, g) = (sgn(v), sgn(Re(Uv))): positions < N address f,
// positions >= N address g at index position - N.
struct KTerm {
  std::vector<int> positions;  // distinct, < 2N, at most 8
  std::vector<int> signs;      // +-1, aligned with positions
};

struct KTermEstimate {
  KTerm term;
  long samples = 0;
  double probability = 0.0;  // Pr[omega matches the term]
  double stderr_p = 0.0;
};

// epsilon = 6 k^3 2^{-c/2}: the almost-k-wise-independence radius.
double kwise_bound(int k, double c_value);

// Monte-Carlo Pr over fresh Gaussian v. samples >= 1e4.
KTermEstimate kterm_probability(const ComplexMatrix& u, const KTerm& term, long samples,
                                RandomSource& rng);

// Same estimator evaluating many terms on one shared sample batch (each
// term still sees all `samples` draws; terms are bound individually, so
// cross-term independence is never used).
std::vector<KTermEstimate> kterm_probabilities(const ComplexMatrix& u,
                                               const std::vector<KTerm>& terms, long samples,
                                               RandomSource& rng);

// Uniformly random k-term (distinct positions, random signs).
KTerm random_kterm(int k, std::size_t dim, RandomSource& rng);

// Covariance of the Gaussian vector behind a k-term: z_i = v_{s(i)} for the
// m f-side coordinates, z_{m+j} = Re(Uv)_{r(j)} / sqrt(q_j) for the g side,
// all scaled by the term signs. Built exactly from U, then compared against
// the 1 +- k^2 2^{-C(U)/2} eigenvalue sandwich.
struct CovarianceSpec {
  int m = 0;                    // f-side count
  std::vector<int> s;           // f-side indices (injective)
  std::vector<int> r;           // g-side indices (injective)
  std::vector<int> a;           // k signs
  std::vector<double> sigma;    // k x k row-major
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double sandwich_low = 0.0;    // 1 - k^2 2^{-c/2}
  double sandwich_high = 0.0;   // 1 + k^2 2^{-c/2}
  bool sandwich_ok = false;
};

// The sandwich uses C(U) measured from U itself.
CovarianceSpec covariance_matrix(const ComplexMatrix& u, int m, const std::vector<int>& s,
                                 const std::vector<int>& r, const std::vector<int>& a);

}  // namespace tdesign
