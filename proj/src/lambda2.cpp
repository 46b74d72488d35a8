#include "tdesign/lambda2.hpp"

#include <cmath>
#include <vector>

#include "tdesign/eig.hpp"
#include "tdesign/moment_op.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// project out the fixed-space columns (orthonormal, r of them)
void deflate(const std::vector<double>& fixed, int r, double* x, std::size_t dim) {
  for (int k = 0; k < r; ++k) {
    const double* col = fixed.data() + std::size_t(k) * dim;
    axpy(-dot(col, x, dim), col, x, dim);
  }
}

}  // namespace

GapCertificate lambda2_moment(int t, int n, Model model, double tol, std::uint64_t seed,
                              long max_iterations) {
  const MomentOperator op(t, n, model);
  const std::size_t dim = op.dim();

  GapCertificate cert;
  cert.t = t;
  cert.n = n;
  cert.model = model;
  cert.tolerance = tol;
  cert.seed = seed;

  const int r = op.pair_rank();  // t!: multiplicity of the top eigenvalue

  if (dim <= (std::size_t(1) << 13)) {
    std::vector<double> a = op.dense();
    const std::vector<double> w = sym_eigvals(std::move(a), int(dim));  // ascending
    int ones = 0;
    for (std::size_t i = dim; i-- > 0 && w[i] > 1.0 - 1e-6;) ++ones;
    if (ones != r)
      throw std::runtime_error("lambda2_moment: eigenvalue-1 multiplicity != t!");
    cert.lambda2 = w[dim - std::size_t(r) - 1];
    cert.method = "dense";
    return cert;
  }
  if (dim > (std::size_t(1) << 24))
    throw std::invalid_argument("lambda2_moment: dimension exceeds 2^24 matrix-free limit");

  const std::vector<double> fixed = op.fixed_space();
  std::vector<double> x(dim), y(dim);

  RandomSource rng(seed);
  for (std::size_t i = 0; i < dim; ++i) x[i] = rng.gaussian();
  deflate(fixed, r, x.data(), dim);
  double nrm = std::sqrt(dot(x.data(), x.data(), dim));
  for (std::size_t i = 0; i < dim; ++i) x[i] /= nrm;

  cert.method = "deflated-power";
  double theta = 0.0, res = 0.0;
  for (long it = 1; it <= max_iterations; ++it) {
    op.apply(x.data(), y.data());
    deflate(fixed, r, y.data(), dim);
    theta = dot(x.data(), y.data(), dim);
    double rs = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = y[i] - theta * x[i];
      rs += d * d;
    }
    res = std::sqrt(rs);
    cert.iterations = it;
    cert.lambda2 = theta;
    cert.residual = res;
    if (res <= tol) return cert;
    nrm = std::sqrt(dot(y.data(), y.data(), dim));
    if (nrm == 0.0)
      throw std::runtime_error("lambda2_moment: iterate collapsed to the fixed space");
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / nrm;
  }
  throw ConvergenceError("lambda2_moment: power iteration hit the iteration cap", cert);
}

}  // namespace tdesign
