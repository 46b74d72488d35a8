#include "tdesign/kwise.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tdesign/dispersion.hpp"
#include "tdesign/eig.hpp"

namespace tdesign {

double kwise_bound(int k, double c_value) {
  if (k < 1) throw std::invalid_argument("kwise_bound: k >= 1");
  if (c_value < 0.0) throw std::invalid_argument("kwise_bound: c >= 0");
  return 6.0 * double(k) * k * k * std::pow(2.0, -0.5 * c_value);
}

namespace {

void validate_term(const KTerm& term, std::size_t dim) {
  const std::size_t k = term.positions.size();
  if (k < 1 || k > 8) throw std::invalid_argument("k-term: 1 <= k <= 8");
  if (term.signs.size() != k) throw std::invalid_argument("k-term: signs/positions mismatch");
  std::set<int> seen;
  for (std::size_t i = 0; i < k; ++i) {
    const int p = term.positions[i];
    if (p < 0 || std::size_t(p) >= 2 * dim)
      throw std::invalid_argument("k-term: position out of range");
    if (!seen.insert(p).second) throw std::invalid_argument("k-term: repeated position");
    if (term.signs[i] != 1 && term.signs[i] != -1)
      throw std::invalid_argument("k-term: signs are +-1");
  }
}

}  // namespace

std::vector<KTermEstimate> kterm_probabilities(const ComplexMatrix& u,
                                               const std::vector<KTerm>& terms, long samples,
                                               RandomSource& rng) {
  if (samples < 10000) throw std::invalid_argument("kterm_probability: samples >= 1e4");
  if (u.rows != u.cols) throw std::invalid_argument("kterm_probability: U must be square");
  const std::size_t dim = std::size_t(u.rows);
  for (const KTerm& t : terms) validate_term(t, dim);

  // rows of Re(U) that any term's g side touches, extracted dense
  std::vector<int> rows;
  for (const KTerm& t : terms)
    for (int p : t.positions)
      if (std::size_t(p) >= dim) rows.push_back(int(std::size_t(p) - dim));
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<int> row_slot(dim, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_slot[rows[i]] = int(i);
  std::vector<double> re_rows(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t x = 0; x < dim; ++x)
      re_rows[i * dim + x] = u.data[std::size_t(rows[i]) * dim + x].real();

  std::vector<long> hits(terms.size(), 0);
  std::vector<double> v(dim), gdot(rows.size());
  for (long sample = 0; sample < samples; ++sample) {
    for (std::size_t x = 0; x < dim; ++x) v[x] = rng.gaussian();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double* row = &re_rows[i * dim];
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      std::size_t x = 0;
      for (; x + 4 <= dim; x += 4) {
        s0 += row[x] * v[x];
        s1 += row[x + 1] * v[x + 1];
        s2 += row[x + 2] * v[x + 2];
        s3 += row[x + 3] * v[x + 3];
      }
      for (; x < dim; ++x) s0 += row[x] * v[x];
      gdot[i] = (s0 + s1) + (s2 + s3);
    }
    for (std::size_t t = 0; t < terms.size(); ++t) {
      bool match = true;
      for (std::size_t i = 0; match && i < terms[t].positions.size(); ++i) {
        const int p = terms[t].positions[i];
        const double val = std::size_t(p) < dim ? v[p] : gdot[row_slot[std::size_t(p) - dim]];
        const int sign = (val < 0.0) ? -1 : 1;
        match = sign == terms[t].signs[i];
      }
      if (match) ++hits[t];
    }
  }

  std::vector<KTermEstimate> out(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    out[t].term = terms[t];
    out[t].samples = samples;
    const double p = double(hits[t]) / double(samples);
    out[t].probability = p;
    out[t].stderr_p = std::sqrt(std::max(0.0, p * (1.0 - p)) / double(samples));
  }
  return out;
}

KTermEstimate kterm_probability(const ComplexMatrix& u, const KTerm& term, long samples,
                                RandomSource& rng) {
  return kterm_probabilities(u, {term}, samples, rng)[0];
}

KTerm random_kterm(int k, std::size_t dim, RandomSource& rng) {
  if (k < 1 || k > 8) throw std::invalid_argument("random_kterm: 1 <= k <= 8");
  if (std::size_t(k) > 2 * dim) throw std::invalid_argument("random_kterm: k > 2N");
  KTerm term;
  std::set<int> used;
  while (term.positions.size() < std::size_t(k)) {
    const int p = int(uniform_below(rng, 2 * dim));
    if (used.insert(p).second) {
      term.positions.push_back(p);
      term.signs.push_back((rng.next_u64() & 1) ? 1 : -1);
    }
  }
  return term;
}

CovarianceSpec covariance_matrix(const ComplexMatrix& u, int m, const std::vector<int>& s,
                                 const std::vector<int>& r, const std::vector<int>& a) {
  if (u.rows != u.cols) throw std::invalid_argument("covariance_matrix: U must be square");
  const std::size_t dim = std::size_t(u.rows);
  const int k = int(s.size() + r.size());
  if (m != int(s.size())) throw std::invalid_argument("covariance_matrix: m must equal |s|");
  if (k < 1 || k > 8) throw std::invalid_argument("covariance_matrix: 1 <= k <= 8");
  if (int(a.size()) != k) throw std::invalid_argument("covariance_matrix: |a| must be k");
  if (std::set<int>(s.begin(), s.end()).size() != s.size() ||
      std::set<int>(r.begin(), r.end()).size() != r.size())
    throw std::invalid_argument("covariance_matrix: invalid spec, index maps must be injective");
  for (int i : s)
    if (i < 0 || std::size_t(i) >= dim) throw std::invalid_argument("covariance_matrix: s range");
  for (int j : r)
    if (j < 0 || std::size_t(j) >= dim) throw std::invalid_argument("covariance_matrix: r range");

  CovarianceSpec spec;
  spec.m = m;
  spec.s = s;
  spec.r = r;
  spec.a = a;
  spec.sigma.assign(std::size_t(k) * k, 0.0);

  // var(Re(Uv)_p) and the Re(Uv) cross-covariances come from
  // cov(Re(Uv)_p, Re(Uv)_q) = (delta_pq + Re[(U U^T)_pq]) / 2
  const int gk = int(r.size());
  std::vector<double> q(gk);
  std::vector<double> gg(std::size_t(gk) * gk);
  for (int i = 0; i < gk; ++i)
    for (int j = 0; j < gk; ++j) {
      cd uut{};
      const cd* ri = &u.data[std::size_t(r[i]) * dim];
      const cd* rj = &u.data[std::size_t(r[j]) * dim];
      for (std::size_t x = 0; x < dim; ++x) uut += ri[x] * rj[x];
      gg[std::size_t(i) * gk + j] = 0.5 * ((i == j ? 1.0 : 0.0) + uut.real());
    }
  for (int i = 0; i < gk; ++i) {
    q[i] = gg[std::size_t(i) * gk + i];
    if (q[i] <= 0.0)
      throw std::invalid_argument("covariance_matrix: degenerate g coordinate (zero variance)");
  }

  for (int i = 0; i < m; ++i) spec.sigma[std::size_t(i) * k + i] = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < gk; ++j) {
      const double cross =
          a[i] * a[m + j] * u.data[std::size_t(r[j]) * dim + std::size_t(s[i])].real() /
          std::sqrt(q[j]);
      spec.sigma[std::size_t(i) * k + (m + j)] = cross;
      spec.sigma[std::size_t(m + j) * k + i] = cross;
    }
  for (int i = 0; i < gk; ++i)
    for (int j = 0; j < gk; ++j)
      spec.sigma[std::size_t(m + i) * k + (m + j)] =
          a[m + i] * a[m + j] * gg[std::size_t(i) * gk + j] / std::sqrt(q[i] * q[j]);

  std::vector<double> w = sym_eigvals(spec.sigma, k);
  spec.min_eigenvalue = w.front();
  spec.max_eigenvalue = w.back();
  const double eps = double(k) * k * std::pow(2.0, -0.5 * dispersiveness(u).c_value);
  spec.sandwich_low = 1.0 - eps;
  spec.sandwich_high = 1.0 + eps;
  spec.sandwich_ok = spec.min_eigenvalue >= spec.sandwich_low - 1e-9 &&
                     spec.max_eigenvalue <= spec.sandwich_high + 1e-9;
  return spec;
}

}  // namespace tdesign
