#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tdesign/eig.hpp"
#include "tdesign/gap_checks.hpp"
#include "tdesign/lambda2.hpp"
#include "tdesign/linalg.hpp"
#include "tdesign/model.hpp"
#include "tdesign/moment_op.hpp"
#include "tdesign/perm_basis.hpp"
#include "tdesign/permutations.hpp"
#include "tdesign/rng.hpp"
#include "tdesign/x_matrix.hpp"

using namespace tdesign;

TEST_CASE("all_permutations order and count") {
  auto p1 = all_permutations(1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == Perm{0});
  auto p3 = all_permutations(3);
  REQUIRE(p3.size() == 6);
  CHECK(p3[0] == Perm{0, 1, 2});  // identity first
  CHECK(p3[1] == Perm{0, 2, 1});
  CHECK(p3[5] == Perm{2, 1, 0});
  for (std::size_t i = 1; i < p3.size(); ++i) CHECK(p3[i - 1] < p3[i]);  // lexicographic
}

TEST_CASE("compose, inverse, cycle_count") {
  Perm a = {1, 2, 0};  // 3-cycle
  Perm b = {1, 0, 2};  // transposition
  Perm ab = compose(a, b);
  for (int i = 0; i < 3; ++i) CHECK(ab[i] == a[b[i]]);
  Perm ai = inverse(a);
  CHECK(compose(a, ai) == Perm{0, 1, 2});
  CHECK(compose(ai, a) == Perm{0, 1, 2});
  CHECK(cycle_count(Perm{0, 1, 2}) == 3);
  CHECK(cycle_count(b) == 2);
  CHECK(cycle_count(a) == 1);
}

TEST_CASE("permutation_operator swap and identity") {
  ComplexMatrix id = permutation_operator(Perm{0, 1}, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(id.at(i, j) == cd(i == j ? 1.0 : 0.0));

  // swap on (C^2)^{x2}: |cd> -> |dc>
  ComplexMatrix sw = permutation_operator(Perm{1, 0}, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          CHECK(sw.at(a * 2 + b, c * 2 + d) == cd((a == d && b == c) ? 1.0 : 0.0));
}

TEST_CASE("permutation_vector is the flattened operator") {
  for (int d : {2, 4}) {
    for (const auto& pi : all_permutations(2)) {
      ComplexMatrix w = permutation_operator(pi, d);
      auto v = permutation_vector(pi, d);
      int dt = w.rows;
      REQUIRE((int)v.size() == dt * dt);
      for (int r = 0; r < dt; ++r)
        for (int c = 0; c < dt; ++c) CHECK(v[std::size_t(r) * dt + c] == w.at(r, c).real());
    }
  }
}

TEST_CASE("gram matches overlap formula") {
  const int t = 3, d = 2;
  auto basis = build_permutation_basis(t, d);
  auto perms = basis.perms;
  REQUIRE(perms.size() == 6);
  std::vector<std::vector<double>> vecs;
  for (const auto& pi : perms) vecs.push_back(permutation_vector(pi, d));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < vecs[i].size(); ++k) dot += vecs[i][k] * vecs[j][k];
      double formula = std::pow(double(d), cycle_count(compose(perms[i], inverse(perms[j]))));
      CHECK(dot == formula);
      CHECK(basis.gram[std::size_t(i) * 6 + j] == formula);
    }
}

TEST_CASE("gram for two copies of a qubit") {
  auto basis = build_permutation_basis(2, 2);
  REQUIRE(basis.gram.size() == 4);
  CHECK(basis.gram[0] == 4.0);
  CHECK(basis.gram[1] == 2.0);
  CHECK(basis.gram[2] == 2.0);
  CHECK(basis.gram[3] == 4.0);
}

TEST_CASE("basis ranks across t and d") {
  CHECK(build_permutation_basis(2, 2).rank == 2);
  CHECK(build_permutation_basis(2, 4).rank == 2);
  CHECK(build_permutation_basis(3, 2).rank == 5);  // d < t loses one direction
  CHECK(build_permutation_basis(3, 4).rank == 6);
}

TEST_CASE("ortho_coeffs orthonormalize the gram") {
  for (int t : {1, 2, 3}) {
    for (int d : {2, 4}) {
      auto b = build_permutation_basis(t, d);
      int f = (int)b.perms.size();
      REQUIRE((int)b.ortho_coeffs.size() == b.rank * f);
      // C G C^T = I
      for (int i = 0; i < b.rank; ++i)
        for (int j = 0; j < b.rank; ++j) {
          double s = 0;
          for (int p = 0; p < f; ++p)
            for (int q = 0; q < f; ++q)
              s += b.ortho_coeffs[std::size_t(i) * f + p] * b.gram[std::size_t(p) * f + q] *
                   b.ortho_coeffs[std::size_t(j) * f + q];
          CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
  }
}

TEST_CASE("ortho_coeffs rows for two qubit copies") {
  auto b = build_permutation_basis(2, 2);
  REQUIRE(b.rank == 2);
  // rows are [1/(2 sqrt 3), 1/(2 sqrt 3)] and [1/2, -1/2], up to sign and order
  const double rc = 1.0 / (2.0 * std::sqrt(3.0));
  auto matches = [&](int row, double a0, double a1) {
    double c0 = b.ortho_coeffs[std::size_t(row) * 2];
    double c1 = b.ortho_coeffs[std::size_t(row) * 2 + 1];
    return (std::abs(c0 - a0) < 1e-12 && std::abs(c1 - a1) < 1e-12) ||
           (std::abs(c0 + a0) < 1e-12 && std::abs(c1 + a1) < 1e-12);
  };
  const bool order_a = matches(0, rc, rc) && matches(1, 0.5, -0.5);
  const bool order_b = matches(0, 0.5, -0.5) && matches(1, rc, rc);
  CHECK((order_a || order_b));
}

TEST_CASE("basis argument guards") {
  CHECK_THROWS_AS(build_permutation_basis(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_permutation_basis(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(pair_projector(1), std::invalid_argument);
  int r = 0;
  CHECK_THROWS_AS(pair_projector_factor(0, &r), std::invalid_argument);
}

TEST_CASE("pair projector is an exact rank-2 projector") {
  ComplexMatrix p = pair_projector(2);
  const int k = 256;
  REQUIRE(p.rows == k);
  REQUIRE(p.cols == k);
  double tr = 0;
  for (int i = 0; i < k; ++i) tr += p.at(i, i).real();
  CHECK(std::abs(tr - 2.0) < 1e-10);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      CHECK(p.at(i, j).imag() == 0.0);
      CHECK(std::abs(p.at(i, j) - std::conj(p.at(j, i))) < 1e-12);
    }
  ComplexMatrix p2 = matmul(p, p);
  double dev = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) dev = std::max(dev, std::abs(p2.at(i, j) - p.at(i, j)));
  CHECK(dev < 1e-12);
}

TEST_CASE("pair projector fixes the copy-major permutation vectors") {
  ComplexMatrix p = pair_projector(2);
  for (const auto& pi : all_permutations(2)) {
    auto v = permutation_vector(pi, 4);  // two qubits as one 4-level site
    REQUIRE(v.size() == 256);
    for (int i = 0; i < 256; ++i) {
      cd y = 0;
      for (int j = 0; j < 256; ++j) y += p.at(i, j) * v[j];
      CHECK(std::abs(y - cd(v[i])) < 1e-10);
    }
  }
}

static std::vector<double> dense_from_factor(const std::vector<double>& rf, int k, int r) {
  std::vector<double> p(std::size_t(k) * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0;
      for (int c = 0; c < r; ++c) s += rf[std::size_t(i) * r + c] * rf[std::size_t(j) * r + c];
      p[std::size_t(i) * k + j] = s;
    }
  return p;
}

TEST_CASE("pair projector factor columns are orthonormal") {
  for (int t : {1, 2, 3}) {
    int r = 0;
    auto rf = pair_projector_factor(t, &r);
    int fact = 1;
    for (int i = 2; i <= t; ++i) fact *= i;
    CHECK(r == fact);
    const std::size_t k = std::size_t(1) << (4 * t);
    REQUIRE(rf.size() == k * r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        double s = 0;
        for (std::size_t p = 0; p < k; ++p) s += rf[p * r + a] * rf[p * r + b];
        CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("pair projector factor fixes site-major products and swaps sites") {
  const int t = 2;
  int r = 0;
  auto rf = pair_projector_factor(t, &r);
  const int ds = 16, k = 256;
  for (const auto& pi : all_permutations(t)) {
    auto site = permutation_vector(pi, 2);  // one site: t copies of a qubit
    REQUIRE((int)site.size() == ds);
    std::vector<double> v(k);
    for (int a = 0; a < ds; ++a)
      for (int b = 0; b < ds; ++b) v[std::size_t(a) * ds + b] = site[a] * site[b];
    // P v = v via the factor
    std::vector<double> w(r, 0.0);
    for (int c = 0; c < r; ++c)
      for (int p = 0; p < k; ++p) w[c] += rf[std::size_t(p) * r + c] * v[p];
    for (int p = 0; p < k; ++p) {
      double y = 0;
      for (int c = 0; c < r; ++c) y += rf[std::size_t(p) * r + c] * w[c];
      CHECK(std::abs(y - v[p]) < 1e-10);
    }
  }
  // swapping the two site slots leaves the projector invariant
  auto pd = dense_from_factor(rf, k, r);
  for (int a = 0; a < ds; ++a)
    for (int b = 0; b < ds; ++b)
      for (int c = 0; c < ds; ++c)
        for (int d = 0; d < ds; ++d) {
          double lhs = pd[std::size_t(a * ds + b) * k + (c * ds + d)];
          double rhs = pd[std::size_t(b * ds + a) * k + (d * ds + c)];
          CHECK(std::abs(lhs - rhs) < 1e-12);
        }
}

TEST_CASE("moment operator bookkeeping") {
  MomentOperator m3(2, 3, Model::local);
  CHECK(m3.dim() == 4096);
  CHECK(m3.site_dim() == 16);
  CHECK(m3.pair_rank() == 2);
  REQUIRE(m3.pairs().size() == 2);  // open chain at n = 3
  CHECK(m3.pairs()[0] == std::pair{0, 1});
  CHECK(m3.pairs()[1] == std::pair{1, 2});
  CHECK(m3.weights()[0] == 0.5);
  CHECK(m3.weights()[1] == 0.5);

  MomentOperator m4(2, 4, Model::local);
  REQUIRE(m4.pairs().size() == 4);  // circle from n = 4 on
  for (double w : m4.weights()) CHECK(w == 0.25);

  MomentOperator u4(2, 4, Model::uniform);
  REQUIRE(u4.pairs().size() == 6);
  for (double w : u4.weights()) CHECK(std::abs(w - 1.0 / 6.0) < 1e-15);

  CHECK_THROWS_AS(MomentOperator(2, 2, Model::local), std::invalid_argument);
  CHECK_THROWS_AS(MomentOperator(4, 3, Model::local), std::invalid_argument);
}

TEST_CASE("moment operator apply matches the two-term oracle") {
  const int t = 2, ds = 16, k = 256;
  MomentOperator op(t, 3, Model::local);
  int r = 0;
  auto rf = pair_projector_factor(t, &r);
  auto pd = dense_from_factor(rf, k, r);

  RandomSource rng(4321, 0);
  const std::size_t dim = op.dim();
  std::vector<double> x(dim);
  for (auto& v : x) v = rng.gaussian();

  // independent application: pair (0,1) acts on the leading K block index,
  // pair (1,2) on the trailing one
  std::vector<double> want(dim, 0.0);
  for (int p = 0; p < k; ++p)
    for (int b = 0; b < ds; ++b) {
      double s = 0;
      for (int q = 0; q < k; ++q) s += pd[std::size_t(p) * k + q] * x[std::size_t(q) * ds + b];
      want[std::size_t(p) * ds + b] += 0.5 * s;
    }
  for (int a = 0; a < ds; ++a)
    for (int u = 0; u < k; ++u) {
      double s = 0;
      for (int v = 0; v < k; ++v) s += pd[std::size_t(u) * k + v] * x[std::size_t(a) * k + v];
      want[std::size_t(a) * k + u] += 0.5 * s;
    }

  std::vector<double> y(dim, 0.0);
  op.apply(x.data(), y.data());
  double dev = 0;
  for (std::size_t i = 0; i < dim; ++i) dev = std::max(dev, std::abs(y[i] - want[i]));
  CHECK(dev < 1e-10);
}

TEST_CASE("fixed space is orthonormal and fixed") {
  MomentOperator op(2, 3, Model::local);
  auto fs = op.fixed_space();
  const std::size_t dim = op.dim();
  const int r = op.pair_rank();
  REQUIRE(fs.size() == dim * std::size_t(r));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += fs[std::size_t(a) * dim + i] * fs[std::size_t(b) * dim + i];
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
  std::vector<double> y(dim);
  for (int a = 0; a < r; ++a) {
    op.apply(fs.data() + std::size_t(a) * dim, y.data());
    double dev = 0;
    for (std::size_t i = 0; i < dim; ++i) dev = std::max(dev, std::abs(y[i] - fs[std::size_t(a) * dim + i]));
    CHECK(dev < 1e-9);
  }
}

TEST_CASE("rayleigh quotients stay in the unit interval") {
  MomentOperator op(2, 4, Model::local);
  const std::size_t dim = op.dim();
  RandomSource rng(99, 1);
  std::vector<double> x(dim), y(dim);
  for (int s = 0; s < 5; ++s) {
    for (auto& v : x) v = rng.gaussian();
    op.apply(x.data(), y.data());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      num += x[i] * y[i];
      den += x[i] * x[i];
    }
    double q = num / den;
    CHECK(q > -1e-12);
    CHECK(q < 1.0 + 1e-12);
  }
}

TEST_CASE("moment_matvec pushes real and imaginary parts") {
  MomentOperator op(2, 3, Model::local);
  const std::size_t dim = op.dim();
  RandomSource rng(55, 0);
  ComplexVector x(dim);
  std::vector<double> re(dim), im(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    re[i] = rng.gaussian();
    im[i] = rng.gaussian();
    x[i] = cd(re[i], im[i]);
  }
  ComplexVector y = moment_matvec(op, x);
  std::vector<double> yr(dim), yi(dim);
  op.apply(re.data(), yr.data());
  op.apply(im.data(), yi.data());
  for (std::size_t i = 0; i < dim; ++i) {
    CHECK(std::abs(y[i].real() - yr[i]) < 1e-12);
    CHECK(std::abs(y[i].imag() - yi[i]) < 1e-12);
  }
  ComplexVector bad(dim + 1);
  CHECK_THROWS_AS(moment_matvec(op, bad), std::invalid_argument);
}

TEST_CASE("lambda2 dense anchors at three sites") {
  GapCertificate local = lambda2_moment(2, 3, Model::local);
  CHECK(local.method == "dense");
  CHECK(local.iterations == 0);
  CHECK(std::abs(local.lambda2 - 0.7) < 1e-9);

  GapCertificate unif = lambda2_moment(2, 3, Model::uniform);
  CHECK(unif.method == "dense");
  CHECK(std::abs(unif.lambda2 - 0.6) < 1e-9);
}

TEST_CASE("lambda2 power iteration on four sites") {
  GapCertificate c = lambda2_moment(2, 4, Model::local, 1e-10);
  CHECK(c.method == "deflated-power");
  CHECK(c.iterations > 0);
  CHECK(c.residual <= 1e-10);
  const double exact = 0.5 + std::sqrt(2.0) / 5.0;
  CHECK(std::abs(c.lambda2 - exact) < 1e-9);

  GapCertificate u = lambda2_moment(2, 4, Model::uniform, 1e-10);
  CHECK(std::abs(u.lambda2 - 0.753729140269) < 1e-8);
}

TEST_CASE("power iteration cap raises with best estimate attached") {
  try {
    lambda2_moment(2, 4, Model::local, 1e-10, 20260818ULL, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best.lambda2 > 0.0);
    CHECK(e.best.iterations == 2);
    CHECK(e.best.method == "deflated-power");
  }
}

TEST_CASE("x matrix spectra") {
  XMatrixResult x2 = x_matrix(2);
  CHECK(x2.dim == 8);
  REQUIRE(x2.distinct.size() == 4);
  CHECK(std::abs(x2.distinct[0] - 2.0) < 1e-10);
  CHECK(std::abs(x2.distinct[1] - 1.4) < 1e-10);
  CHECK(std::abs(x2.distinct[2] - 0.6) < 1e-10);
  CHECK(std::abs(x2.distinct[3]) < 1e-10);
  CHECK(x2.multiplicity == std::vector<int>{2, 2, 2, 2});
  CHECK(std::abs(x2.second_distinct - 1.4) < 1e-10);

  XMatrixResult x3 = x_matrix(3);
  CHECK(x3.dim == 125);
  CHECK(std::abs(x3.distinct[0] - 2.0) < 1e-10);
  CHECK(x3.multiplicity[0] == 6);
  CHECK(std::abs(x3.second_distinct - 1.4) < 1e-10);
  CHECK(x3.multiplicity[1] == 18);

  CHECK_THROWS_AS(x_matrix(1), std::invalid_argument);
}

TEST_CASE("x matrix is symmetric and matches its spectrum") {
  XMatrixResult x = x_matrix(2);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) {
      CHECK(x.x.at(i, j).imag() == 0.0);
      CHECK(std::abs(x.x.at(i, j) - x.x.at(j, i)) < 1e-12);
    }
  auto w = herm_eigvals(x.x);
  REQUIRE((int)w.size() == x.dim);
  for (int i = 0; i < x.dim; ++i)
    CHECK(std::abs(w[i] - x.eigenvalues[std::size_t(x.dim) - 1 - i]) < 1e-10);
}

TEST_CASE("design distance and conversions") {
  CHECK(design_distance_from(0.7, 0) == 1.0);
  CHECK(std::abs(design_distance_from(0.7, 10) - 0.0282475249) < 1e-12);
  CHECK(std::abs(design_distance_from(0.7, 3) - 0.343) < 1e-15);
  CHECK_THROWS_AS(design_distance_from(0.7, -1), std::invalid_argument);

  DesignConversions c = design_conversions(0.01, 2, 3);
  CHECK(std::abs(c.distance - 0.01) < 1e-15);
  CHECK(std::abs(c.diamond_bound - 0.01 * 64.0) < 1e-12);    // D^t, D = 8
  CHECK(std::abs(c.monomial_bound - 0.01 * 4096.0) < 1e-10); // D^{2t}
}

TEST_CASE("design steps in both log bases") {
  DesignSteps s = design_steps(0.7, 3, 0.05);
  CHECK(s.k_ln == (long)std::ceil(15.0 * std::log(20.0)));
  CHECK(s.k_log2 == (long)std::ceil(15.0 * std::log2(20.0)));
  CHECK(s.k_exact == 9);  // smallest k with 0.7^k <= 0.05
  CHECK(s.ln_ok);
  CHECK(s.log2_ok);
  CHECK_THROWS_AS(design_steps(0.7, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(design_steps(0.7, 3, 1.0), std::invalid_argument);
}

TEST_CASE("haar monomial moments against exact values") {
  for (int t : {1, 2, 3}) {
    RandomSource rng(777, std::uint64_t(t));
    MonomialReport r = monomial_moment_check(t, 2, 20000, rng);
    int binom = t + 1;  // binom(2 + t - 1, t)
    CHECK(std::abs(r.diag_exact - 1.0 / binom) < 1e-15);
    CHECK(std::abs(r.offdiag_exact - (-1.0 / 6.0)) < 1e-15);
    CHECK(std::abs(r.diag_mean - r.diag_exact) < 3 * r.diag_stderr);
    CHECK(std::abs(r.offdiag_mean_re - r.offdiag_exact) < 3 * r.offdiag_stderr);
    CHECK(std::abs(r.offdiag_mean_im) < 3 * r.offdiag_stderr);
    CHECK(r.pass);
  }
  RandomSource rng(777, 9);
  MonomialReport r4 = monomial_moment_check(2, 4, 20000, rng);
  CHECK(std::abs(r4.diag_exact - 0.1) < 1e-15);  // 1/binom(5,2)
  CHECK(std::abs(r4.offdiag_exact - (-1.0 / 60.0)) < 1e-15);
  CHECK(r4.pass);
  RandomSource bad(1, 0);
  CHECK_THROWS_AS(monomial_moment_check(2, 3, 20000, bad), std::invalid_argument);
  CHECK_THROWS_AS(monomial_moment_check(2, 2, 100, bad), std::invalid_argument);
}

TEST_CASE("gap amplification holds at four sites") {
  GapAmplificationReport r = gap_amplification_check(2, 4, 25);
  CHECK(r.t == 2);
  CHECK(r.n == 4);
  CHECK(std::abs(r.three_site.lambda2 - 0.7) < 1e-7);
  const double exact4 = 0.5 + std::sqrt(2.0) / 5.0;
  CHECK(std::abs(r.chain.lambda2 - exact4) < 1e-6);
  CHECK(std::abs(r.gap_full - 4.0 * (1.0 - r.chain.lambda2)) < 1e-12);
  CHECK(std::abs(r.gap_three - 2.0 * (1.0 - r.three_site.lambda2)) < 1e-12);
  CHECK(r.subchain_ok);
  CHECK(std::abs(r.chain_bound - (1.0 - (3.0 - 4.0 * r.three_site.lambda2) / 4.0)) < 1e-12);
  CHECK(r.bound_ok);
  CHECK(r.sampled_vectors == 25);
  CHECK(r.max_rayleigh <= r.chain.lambda2 + 1e-9);
  CHECK(r.max_square_ratio <= r.chain.lambda2 + 1e-9);
  CHECK(r.rayleigh_ok);
  CHECK(r.pass);
}
