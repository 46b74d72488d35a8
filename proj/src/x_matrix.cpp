#include "tdesign/x_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdesign/eig.hpp"
#include "tdesign/perm_basis.hpp"

namespace tdesign {

XMatrixResult x_matrix(int t) {
  if (t != 2 && t != 3) throw std::invalid_argument("x_matrix: t in {2,3}");

  // single-site orthonormal fixed-space basis at d=2
  const PermutationBasis site_basis = build_permutation_basis(t, 2);
  const int f = int(site_basis.perms.size());
  const int rs = site_basis.rank;
  std::size_t ds = 1;
  for (int i = 0; i < 2 * t; ++i) ds *= 2;  // 4^t

  std::vector<std::vector<double>> site(rs, std::vector<double>(ds, 0.0));
  for (int k = 0; k < rs; ++k)
    for (int p = 0; p < f; ++p) {
      const double c = site_basis.ortho_coeffs[std::size_t(k) * f + p];
      if (c == 0.0) continue;
      const std::vector<double> v = permutation_vector(site_basis.perms[p], 2);
      for (std::size_t i = 0; i < ds; ++i)
        if (v[i] != 0.0) site[k][i] += c * v[i];
    }

  int r = 0;
  const std::vector<double> rp = pair_projector_factor(t, &r);

  // O[(k,u), m] = <site_k (x) site_u, pair column m>
  std::vector<double> o(std::size_t(rs) * rs * r, 0.0);
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < rs; ++k)
      for (int u = 0; u < rs; ++u) {
        double s = 0.0;
        for (std::size_t a = 0; a < ds; ++a) {
          if (site[k][a] == 0.0) continue;
          double inner = 0.0;
          for (std::size_t b = 0; b < ds; ++b)
            if (site[u][b] != 0.0) inner += site[u][b] * rp[(a * ds + b) * std::size_t(r) + m];
          s += site[k][a] * inner;
        }
        o[(std::size_t(k) * rs + u) * r + m] = s;
      }

  // A = O O^T is the pair projector compressed to the two-site product basis
  const int rs2 = rs * rs;
  std::vector<double> a(std::size_t(rs2) * rs2, 0.0);
  for (int i = 0; i < rs2; ++i)
    for (int j = 0; j < rs2; ++j) {
      double s = 0.0;
      for (int m = 0; m < r; ++m) s += o[std::size_t(i) * r + m] * o[std::size_t(j) * r + m];
      a[std::size_t(i) * rs2 + j] = s;
    }

  XMatrixResult res;
  res.t = t;
  res.dim = rs * rs * rs;
  const int dim = res.dim;
  res.x = ComplexMatrix(dim, dim);
  std::vector<double> xr(std::size_t(dim) * dim, 0.0);
  // X = A (x) I  +  I (x) A  on the three-site product basis; the two terms
  // share the middle site and do not commute.
  for (int i = 0; i < rs2; ++i)
    for (int j = 0; j < rs2; ++j) {
      const double aij = a[std::size_t(i) * rs2 + j];
      if (aij == 0.0) continue;
      for (int v = 0; v < rs; ++v) xr[std::size_t(i * rs + v) * dim + (j * rs + v)] += aij;
      for (int v = 0; v < rs; ++v) xr[std::size_t(v * rs2 + i) * dim + (v * rs2 + j)] += aij;
    }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) res.x.at(i, j) = xr[std::size_t(i) * dim + j];

  std::vector<double> w = sym_eigvals(std::move(xr), dim);
  std::reverse(w.begin(), w.end());
  res.eigenvalues = w;
  for (double e : w) {
    if (!res.distinct.empty() && std::abs(res.distinct.back() - e) <= 1e-8) {
      ++res.multiplicity.back();
    } else {
      res.distinct.push_back(e);
      res.multiplicity.push_back(1);
    }
  }
  if (res.distinct.size() < 2) throw std::runtime_error("x_matrix: degenerate spectrum");
  res.second_distinct = res.distinct[1];
  return res;
}

}  // namespace tdesign
