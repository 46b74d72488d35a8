#include "tdesign/gap_checks.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tdesign/haar.hpp"
#include "tdesign/moment_op.hpp"

namespace tdesign {

namespace {

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

GapAmplificationReport gap_amplification_check(int t, int n, int sample_vectors,
                                               std::uint64_t seed) {
  GapAmplificationReport rep;
  rep.t = t;
  rep.n = n;
  rep.chain = lambda2_moment(t, n, Model::local);
  rep.three_site = (n == 3) ? rep.chain : lambda2_moment(t, 3, Model::local);

  rep.gap_full = n * (1.0 - rep.chain.lambda2);
  rep.gap_three = 2.0 * (1.0 - rep.three_site.lambda2);
  rep.subchain_ok = rep.gap_full >= 2.0 * rep.gap_three - 1.0 - 1e-9;

  rep.chain_bound = 1.0 - (3.0 - 4.0 * rep.three_site.lambda2) / n;
  rep.bound_ok = rep.chain.lambda2 <= rep.chain_bound + 1e-9;

  const MomentOperator op(t, n, Model::local);
  const std::size_t dim = op.dim();
  const std::vector<double> fixed = op.fixed_space();
  const int r = op.pair_rank();

  RandomSource rng(seed, 1);
  std::vector<double> v(dim), mv(dim);
  rep.sampled_vectors = sample_vectors;
  for (int s = 0; s < sample_vectors; ++s) {
    for (std::size_t i = 0; i < dim; ++i) v[i] = rng.gaussian();
    for (int k = 0; k < r; ++k) {
      const double* col = fixed.data() + std::size_t(k) * dim;
      double p = 0.0;
      for (std::size_t i = 0; i < dim; ++i) p += col[i] * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= p * col[i];
    }
    op.apply(v.data(), mv.data());
    const double vv = vdot(v, v);
    const double vmv = vdot(v, mv);
    const double vmmv = vdot(mv, mv);  // <v, M^2 v> for symmetric M
    if (vv > 0.0 && vmv / vv > rep.max_rayleigh) rep.max_rayleigh = vmv / vv;
    if (vmv > 1e-12 && vmmv / vmv > rep.max_square_ratio) rep.max_square_ratio = vmmv / vmv;
  }
  rep.rayleigh_ok = rep.max_rayleigh <= rep.chain.lambda2 + 1e-9 &&
                    rep.max_square_ratio <= rep.chain.lambda2 + 1e-9;
  rep.pass = rep.subchain_ok && rep.bound_ok && rep.rayleigh_ok;
  return rep;
}

double design_distance_from(double lambda2, long k) {
  if (k < 0) throw std::invalid_argument("design_distance: k >= 0");
  return std::pow(lambda2, double(k));
}

double design_distance(int t, int n, Model model, long k) {
  return design_distance_from(lambda2_moment(t, n, model).lambda2, k);
}

DesignConversions design_conversions(double distance, int t, int n) {
  DesignConversions c;
  c.distance = distance;
  const double bigd = std::pow(2.0, double(n));
  c.diamond_bound = distance * std::pow(bigd, double(t));
  c.monomial_bound = distance * std::pow(bigd, 2.0 * double(t));
  return c;
}

DesignSteps design_steps(double lambda2, int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("design_steps: eps in (0,1)");
  DesignSteps s;
  s.eps = eps;
  s.k_ln = long(std::ceil(5.0 * n * std::log(1.0 / eps)));
  s.k_log2 = long(std::ceil(5.0 * n * std::log2(1.0 / eps)));
  s.k_exact = 0;
  double dist = 1.0;
  while (dist > eps && s.k_exact < 1000000) {
    dist *= lambda2;
    ++s.k_exact;
  }
  s.ln_ok = design_distance_from(lambda2, s.k_ln) <= eps;
  s.log2_ok = design_distance_from(lambda2, s.k_log2) <= eps;
  return s;
}

MonomialReport monomial_moment_check(int t, int d, long samples, RandomSource& rng) {
  if (d != 2 && d != 4) throw std::invalid_argument("monomial_moment_check: d in {2,4}");
  if (samples < 10000) throw std::invalid_argument("monomial_moment_check: samples >= 1e4");

  MonomialReport rep;
  rep.t = t;
  rep.d = d;
  rep.samples = samples;

  // 1/binom(d+t-1, t)
  double binom = 1.0;
  for (int i = 1; i <= t; ++i) binom = binom * (d + t - i) / i;
  rep.diag_exact = 1.0 / binom;
  rep.offdiag_exact = -1.0 / (double(d) * (double(d) * d - 1));

  double s1 = 0.0, s2 = 0.0;
  double ore = 0.0, oim = 0.0, ore2 = 0.0, oim2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const double m = std::pow(std::norm(u.at(0, 0)), double(t));
    s1 += m;
    s2 += m * m;
    const cd w = u.at(0, 0) * u.at(1, 1) * std::conj(u.at(0, 1)) * std::conj(u.at(1, 0));
    ore += w.real();
    oim += w.imag();
    ore2 += w.real() * w.real();
    oim2 += w.imag() * w.imag();
  }
  const double ns = double(samples);
  rep.diag_mean = s1 / ns;
  rep.diag_stderr = std::sqrt(std::max(0.0, s2 / ns - rep.diag_mean * rep.diag_mean) / ns);
  rep.offdiag_mean_re = ore / ns;
  rep.offdiag_mean_im = oim / ns;
  const double vre = std::max(0.0, ore2 / ns - rep.offdiag_mean_re * rep.offdiag_mean_re);
  const double vim = std::max(0.0, oim2 / ns - rep.offdiag_mean_im * rep.offdiag_mean_im);
  rep.offdiag_stderr = std::sqrt(std::max(vre, vim) / ns);

  rep.pass = std::abs(rep.diag_mean - rep.diag_exact) <= 3.0 * rep.diag_stderr &&
             std::abs(rep.offdiag_mean_re - rep.offdiag_exact) <= 3.0 * rep.offdiag_stderr &&
             std::abs(rep.offdiag_mean_im) <= 3.0 * rep.offdiag_stderr;
  return rep;
}

}  // namespace tdesign
