#include "tdesign/perm_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "tdesign/eig.hpp"

namespace tdesign {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

}  // namespace

ComplexMatrix permutation_operator(const Perm& pi, int d) {
  if (d < 2) throw std::invalid_argument("permutation_operator: d must be >= 2");
  const int t = int(pi.size());
  const std::size_t dim = ipow(d, t);
  const Perm inv = inverse(pi);
  ComplexMatrix v{int(dim), int(dim)};
  std::vector<int> digits(t);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int j = t - 1; j >= 0; --j) {
      digits[j] = int(rest % d);
      rest /= d;
    }
    // output coordinate j takes input coordinate pi^{-1}(j)
    std::size_t row = 0;
    for (int j = 0; j < t; ++j) row = row * d + std::size_t(digits[std::size_t(inv[j])]);
    v.at(int(row), int(col)) = 1.0;
  }
  return v;
}

std::vector<double> permutation_vector(const Perm& pi, int d) {
  const int t = int(pi.size());
  const std::size_t dt = ipow(d, t);
  const ComplexMatrix op = permutation_operator(pi, d);
  std::vector<double> v(dt * dt, 0.0);
  for (std::size_t a = 0; a < dt; ++a)
    for (std::size_t i = 0; i < dt; ++i) v[a * dt + i] = op.at(int(a), int(i)).real();
  return v;
}

std::vector<double> gram_orthonormal_coeffs(std::vector<double> gram, int f, int* rank_out) {
  // G = S W S^T; columns with w > cutoff give R_k = sum_i S[i,k]/sqrt(w_k) v_i.
  const std::vector<double> w = sym_eig(gram, f);
  const double cutoff = 1e-10 * w.back();
  int rank = 0;
  for (double wj : w)
    if (wj > cutoff) ++rank;
  std::vector<double> coeffs(std::size_t(rank) * f, 0.0);
  int k = 0;
  for (int j = 0; j < f; ++j) {
    if (w[j] <= cutoff) continue;
    const double s = 1.0 / std::sqrt(w[j]);
    for (int i = 0; i < f; ++i) coeffs[std::size_t(k) * f + i] = gram[std::size_t(i) * f + j] * s;
    ++k;
  }
  if (rank_out != nullptr) *rank_out = rank;
  return coeffs;
}

PermutationBasis build_permutation_basis(int t, int d) {
  if (t < 1 || t > 3)
    throw std::invalid_argument("build_permutation_basis: unsupported t (t in {1,2,3})");
  if (d != 2 && d != 4)
    throw std::invalid_argument("build_permutation_basis: unsupported d (d in {2,4})");

  PermutationBasis b;
  b.t = t;
  b.d = d;
  b.perms = all_permutations(t);
  const int f = int(b.perms.size());

  b.gram.assign(std::size_t(f) * f, 0.0);
  for (int i = 0; i < f; ++i) {
    const Perm inv_i = inverse(b.perms[i]);
    for (int j = 0; j < f; ++j) {
      const int c = cycle_count(compose(inv_i, b.perms[j]));
      b.gram[std::size_t(i) * f + j] = std::pow(double(d), c);
    }
  }
  b.ortho_coeffs = gram_orthonormal_coeffs(b.gram, f, &b.rank);
  return b;
}

std::vector<double> pair_projector_factor(int t, int* rank_out) {
  if (t < 1 || t > 3) throw std::invalid_argument("pair_projector_factor: t in {1,2,3}");
  const PermutationBasis basis = build_permutation_basis(t, 4);
  const int f = int(basis.perms.size());
  const int r = basis.rank;
  const std::size_t ds = ipow(4, t);  // per-site moment dimension
  const std::size_t K = ds * ds;

  // site-major pair vector for pi is kron(v_pi, v_pi) with v_pi at d = 2
  std::vector<std::vector<double>> site(f);
  for (int p = 0; p < f; ++p) site[p] = permutation_vector(basis.perms[p], 2);

  std::vector<double> rmat(K * std::size_t(r), 0.0);
  for (int k = 0; k < r; ++k) {
    for (int p = 0; p < f; ++p) {
      const double c = basis.ortho_coeffs[std::size_t(k) * f + p];
      if (c == 0.0) continue;
      const std::vector<double>& v = site[p];
      for (std::size_t a = 0; a < ds; ++a) {
        if (v[a] == 0.0) continue;
        const double ca = c * v[a];
        for (std::size_t bidx = 0; bidx < ds; ++bidx) {
          if (v[bidx] == 0.0) continue;
          rmat[(a * ds + bidx) * std::size_t(r) + k] += ca * v[bidx];
        }
      }
    }
  }
  if (rank_out != nullptr) *rank_out = r;
  return rmat;
}

ComplexMatrix pair_projector(int t) {
  if (t != 2 && t != 3) throw std::invalid_argument("pair_projector: t in {2,3}");
  const PermutationBasis basis = build_permutation_basis(t, 4);
  const int f = int(basis.perms.size());
  const int r = basis.rank;
  const std::size_t dim = ipow(4, 2 * t);

  // columns of R in the copy-major d=4 layout
  std::vector<std::vector<double>> cols(r, std::vector<double>(dim, 0.0));
  for (int p = 0; p < f; ++p) {
    const std::vector<double> v = permutation_vector(basis.perms[p], 4);
    for (int k = 0; k < r; ++k) {
      const double c = basis.ortho_coeffs[std::size_t(k) * f + p];
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < dim; ++i)
        if (v[i] != 0.0) cols[k][i] += c * v[i];
    }
  }

  ComplexMatrix proj{int(dim), int(dim)};
  for (int k = 0; k < r; ++k) {
    const std::vector<double>& col = cols[k];
    for (std::size_t i = 0; i < dim; ++i) {
      if (col[i] == 0.0) continue;
      const double ci = col[i];
      cd* row = &proj.data[i * dim];
      for (std::size_t j = 0; j < dim; ++j) row[j] += ci * col[j];
    }
  }
  return proj;
}

}  // namespace tdesign
