#include "tdesign/moment_op.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "tdesign/kernels.hpp"
#include "tdesign/perm_basis.hpp"

namespace tdesign {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

}  // namespace

MomentOperator::MomentOperator(int t, int n, Model model)
    : t_(t), n_(n), model_(model) {
  if (t < 1 || t > 3) throw std::invalid_argument("MomentOperator: t in {1,2,3}");
  if (n < 3) throw std::invalid_argument("MomentOperator: n >= 3");
  if (std::size_t(2 * t * n) > 50) throw std::invalid_argument("MomentOperator: state too large");

  ds_ = ipow(4, t);
  dim_ = ipow(ds_, n);

  if (model == Model::local) {
    if (n == 3) {
      // two-term open chain: the base case whose gap is amplified to the ring
      pairs_ = {{0, 1}, {1, 2}};
      weights_.assign(2, 0.5);
    } else {
      for (int i = 0; i + 1 < n; ++i) pairs_.push_back({i, i + 1});
      pairs_.push_back({0, n - 1});  // wrap pair of the circle
      std::sort(pairs_.begin(), pairs_.end());
      weights_.assign(pairs_.size(), 1.0 / n);
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs_.push_back({i, j});
    weights_.assign(pairs_.size(), 2.0 / (double(n) * (n - 1)));
  }

  rp_ = pair_projector_factor(t, &r_);
  const std::size_t K = ds_ * ds_;
  rpt_.assign(std::size_t(r_) * K, 0.0);
  for (std::size_t p = 0; p < K; ++p)
    for (int k = 0; k < r_; ++k) rpt_[std::size_t(k) * K + p] = rp_[p * r_ + k];
  rvt_.resize(ds_);
  for (std::size_t v = 0; v < ds_; ++v) {
    rvt_[v].assign(std::size_t(r_) * ds_, 0.0);
    for (std::size_t u = 0; u < ds_; ++u)
      for (int k = 0; k < r_; ++k)
        rvt_[v][std::size_t(k) * ds_ + u] = rp_[(v * ds_ + u) * r_ + k];
  }
  tbuf_.assign(std::size_t(r_) * (dim_ / K), 0.0);
}

void MomentOperator::apply(const double* x, double* y) const {
  std::memset(y, 0, dim_ * sizeof(double));
  for (std::size_t p = 0; p < pairs_.size(); ++p)
    apply_pair(pairs_[p].first, pairs_[p].second, weights_[p], x, y);
}

// Index split for pair (i, j), i < j:  x[a, s_i, m, s_j, b] with
// a in Ds^i, m in Ds^{j-i-1}, b in Ds^{n-1-j}; the projector contracts
// (s_i, s_j) against the K x r factor.
void MomentOperator::apply_pair(int i, int j, double w, const double* x, double* y) const {
  const kernels::Ops& ops = kernels::active_ops();
  const std::size_t Ds = ds_;
  const std::size_t K = Ds * Ds;
  const std::size_t A = ipow(Ds, i);
  const std::size_t Mid = ipow(Ds, j - i - 1);
  const std::size_t Btail = ipow(Ds, n_ - 1 - j);
  double* T = tbuf_.data();

  if (j == i + 1 && Btail == 1) {
    // trailing adjacent pair: whole array is rows x K with the pair fastest
    const long rows = long(dim_ / K);
    std::memset(T, 0, std::size_t(rows) * r_ * sizeof(double));
    ops.dot_fast(x, T, rpt_.data(), rows, int(K), r_);
    ops.expand_fast(T, y, rpt_.data(), rows, int(K), r_, w);
    return;
  }
  if (j == i + 1) {
    // adjacent pair: per a-block the pair index is the slow axis of a K x B slab
    const std::size_t B = Btail;  // = Ds^{n-2-i}
    std::memset(T, 0, A * r_ * B * sizeof(double));
    for (std::size_t a = 0; a < A; ++a)
      ops.dot_slow(x + a * K * B, T + a * r_ * B, rp_.data(), int(K), int(B), r_);
    for (std::size_t a = 0; a < A; ++a)
      ops.expand_slow(T + a * r_ * B, y + a * K * B, rp_.data(), int(K), int(B), r_, w);
    return;
  }
  if (Btail == 1) {
    // split pair ending at the last site: for fixed s_i = v the trailing
    // site is the fast axis; accumulate the shared T over v
    std::memset(T, 0, A * Mid * r_ * sizeof(double));
    for (std::size_t v = 0; v < Ds; ++v) {
      const double* rvt = rvt_[v].data();
      for (std::size_t a = 0; a < A; ++a)
        ops.dot_fast(x + ((a * Ds + v) * Mid) * Ds, T + a * Mid * r_, rvt, long(Mid), int(Ds), r_);
    }
    for (std::size_t v = 0; v < Ds; ++v) {
      const double* rvt = rvt_[v].data();
      for (std::size_t a = 0; a < A; ++a)
        ops.expand_fast(T + a * Mid * r_, y + ((a * Ds + v) * Mid) * Ds, rvt, long(Mid), int(Ds), r_, w);
    }
    return;
  }
  // general split pair: for fixed s_i = v, each (a, m) slab is Ds x Btail
  // with s_j slow; R restricted to s_i = v is a contiguous Ds x r block
  std::memset(T, 0, A * Mid * r_ * Btail * sizeof(double));
  for (std::size_t v = 0; v < Ds; ++v) {
    const double* rv = rp_.data() + v * Ds * r_;
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t m = 0; m < Mid; ++m)
        ops.dot_slow(x + (((a * Ds + v) * Mid + m) * Ds) * Btail,
                     T + (a * Mid + m) * r_ * Btail, rv, int(Ds), int(Btail), r_);
  }
  for (std::size_t v = 0; v < Ds; ++v) {
    const double* rv = rp_.data() + v * Ds * r_;
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t m = 0; m < Mid; ++m)
        ops.expand_slow(T + (a * Mid + m) * r_ * Btail,
                        y + (((a * Ds + v) * Mid + m) * Ds) * Btail, rv, int(Ds), int(Btail), r_, w);
  }
}

std::vector<double> MomentOperator::dense() const {
  if (dim_ > (std::size_t(1) << 13))
    throw std::invalid_argument("MomentOperator::dense: dimension exceeds 2^13");
  std::vector<double> out(dim_ * dim_);
  std::vector<double> e(dim_, 0.0), col(dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    e[c] = 1.0;
    apply(e.data(), col.data());
    e[c] = 0.0;
    // symmetric, so column c doubles as row c
    std::memcpy(out.data() + c * dim_, col.data(), dim_ * sizeof(double));
  }
  return out;
}

std::vector<double> MomentOperator::fixed_space() const {
  const std::vector<Perm> perms = all_permutations(t_);
  const int f = int(perms.size());

  std::vector<double> gram(std::size_t(f) * f);
  const double deff = double(std::size_t(1) << n_);  // <V_pi, V_sigma> = (2^n)^{#cycles}
  for (int i = 0; i < f; ++i) {
    const Perm inv_i = inverse(perms[i]);
    for (int j = 0; j < f; ++j)
      gram[std::size_t(i) * f + j] = std::pow(deff, cycle_count(compose(inv_i, perms[j])));
  }
  int rank = 0;
  const std::vector<double> coeffs = gram_orthonormal_coeffs(gram, f, &rank);
  if (rank != f)
    throw std::runtime_error("MomentOperator::fixed_space: degenerate global Gram");

  std::vector<double> out(dim_ * std::size_t(f), 0.0);
  std::vector<double> vp, next;
  for (int p = 0; p < f; ++p) {
    const std::vector<double> site = permutation_vector(perms[p], 2);
    vp = site;
    for (int s = 1; s < n_; ++s) {
      next.assign(vp.size() * ds_, 0.0);
      for (std::size_t a = 0; a < vp.size(); ++a) {
        if (vp[a] == 0.0) continue;
        const double va = vp[a];
        for (std::size_t b = 0; b < ds_; ++b)
          if (site[b] != 0.0) next[a * ds_ + b] = va * site[b];
      }
      vp.swap(next);
    }
    for (int k = 0; k < f; ++k) {
      const double c = coeffs[std::size_t(k) * f + p];
      if (c == 0.0) continue;
      double* col = out.data() + std::size_t(k) * dim_;
      for (std::size_t g = 0; g < dim_; ++g)
        if (vp[g] != 0.0) col[g] += c * vp[g];
    }
  }
  return out;
}

ComplexVector moment_matvec(const MomentOperator& op, const ComplexVector& x) {
  if (x.size() != op.dim())
    throw std::invalid_argument("moment_matvec: vector length does not match operator dimension");
  const std::size_t dim = op.dim();
  std::vector<double> re(dim), im(dim), yre(dim), yim(dim);
  bool has_im = false;
  for (std::size_t i = 0; i < dim; ++i) {
    re[i] = x[i].real();
    im[i] = x[i].imag();
    has_im = has_im || im[i] != 0.0;
  }
  op.apply(re.data(), yre.data());
  if (has_im)
    op.apply(im.data(), yim.data());
  else
    std::fill(yim.begin(), yim.end(), 0.0);
  ComplexVector y(dim);
  for (std::size_t i = 0; i < dim; ++i) y[i] = cd(yre[i], yim[i]);
  return y;
}

}  // namespace tdesign
