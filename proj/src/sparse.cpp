#include "tdesign/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "tdesign/haar.hpp"

namespace tdesign {

namespace {

// indices of the `keep` largest-modulus nonzeros (ties: lower index)
void select_top(const std::vector<std::pair<double, int>>& entries, int keep,
                std::vector<int>& out) {
  out.clear();
  std::vector<std::pair<double, int>> scratch;
  scratch.reserve(entries.size());
  for (const auto& e : entries)
    if (e.first > 0.0) scratch.push_back(e);
  const auto cmp = [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  if ((int)scratch.size() > keep) {
    std::nth_element(scratch.begin(), scratch.begin() + keep, scratch.end(), cmp);
    scratch.resize(keep);
  }
  for (const auto& e : scratch) out.push_back(e.second);
}

double norm2(const ComplexVector& v) {
  double s = 0.0;
  for (const cd& z : v) s += std::norm(z);
  return s;
}

}  // namespace

SparseApproximation sparse_approximate(const ComplexMatrix& u, int keep_per_row) {
  if (u.rows != u.cols || u.rows < 1)
    throw std::invalid_argument("sparse_approximate: square matrix required");
  if (u.rows > (1 << 14)) throw std::invalid_argument("sparse_approximate: dimension above 2^14");
  if (keep_per_row < 1) throw std::invalid_argument("sparse_approximate: keep_per_row must be >= 1");
  const int dim = u.rows;

  std::vector<bool> kept(std::size_t(dim) * dim, false);
  std::vector<std::pair<double, int>> line(dim);
  std::vector<int> top;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) line[c] = {std::abs(u.at(r, c)), c};
    select_top(line, keep_per_row, top);
    for (int c : top) kept[std::size_t(r) * dim + c] = true;
  }
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) line[r] = {std::abs(u.at(r, c)), r};
    select_top(line, keep_per_row, top);
    for (int r : top) kept[std::size_t(r) * dim + c] = true;
  }

  SparseApproximation ap;
  ap.keep_per_row = keep_per_row;
  ap.matrix.dim = dim;
  ap.matrix.rows.resize(dim);
  std::vector<int> col_nnz(dim, 0);
  for (int r = 0; r < dim; ++r) {
    auto& row = ap.matrix.rows[r];
    for (int c = 0; c < dim; ++c)
      if (kept[std::size_t(r) * dim + c]) {
        row.emplace_back(c, u.at(r, c));
        ++col_nnz[c];
      }
    ap.max_row_nnz = std::max(ap.max_row_nnz, (int)row.size());
  }
  ap.max_col_nnz = *std::max_element(col_nnz.begin(), col_nnz.end());

  // ||D||_2 with D = U - Ut, via power iteration on D^dagger D; D is applied
  // as dense-minus-sparse so it is never materialized.
  const auto apply_d = [&](const ComplexVector& x, ComplexVector& y) {
    for (int r = 0; r < dim; ++r) {
      cd acc = 0.0;
      const cd* urow = &u.data[std::size_t(r) * dim];
      for (int c = 0; c < dim; ++c) acc += urow[c] * x[c];
      for (const auto& [c, v] : ap.matrix.rows[r]) acc -= v * x[c];
      y[r] = acc;
    }
  };
  const auto apply_dt = [&](const ComplexVector& x, ComplexVector& y) {
    std::fill(y.begin(), y.end(), cd(0.0));
    for (int r = 0; r < dim; ++r) {
      const cd* urow = &u.data[std::size_t(r) * dim];
      const cd xr = x[r];
      for (int c = 0; c < dim; ++c) y[c] += std::conj(urow[c]) * xr;
      for (const auto& [c, v] : ap.matrix.rows[r]) y[c] -= std::conj(v) * xr;
    }
  };

  RandomSource prng(20260818ULL, 7);
  ComplexVector z(dim), dz(dim), w(dim);
  for (cd& e : z) e = cd(prng.gaussian(), prng.gaussian());
  double zn = std::sqrt(norm2(z));
  for (cd& e : z) e /= zn;

  double lam = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    apply_d(z, dz);
    const double rho = norm2(dz);  // = ||D z||^2 for unit z
    if (rho == 0.0) {
      lam = 0.0;
      break;
    }
    const bool settled = iter > 0 && std::abs(rho - lam) <= 1e-10 * std::max(rho, 1e-300);
    lam = rho;
    if (settled) break;
    apply_dt(dz, w);
    const double wn = std::sqrt(norm2(w));
    if (wn == 0.0) break;
    for (int i = 0; i < dim; ++i) z[i] = w[i] / wn;
  }
  ap.spectral_error = std::sqrt(lam);
  ap.approximately_sparse = ap.spectral_error <= 0.03;
  return ap;
}

SparseOverlapEstimate sparse_overlap_estimate(const SparseMatrix& ut, const std::vector<int>& f,
                                              const std::vector<int>& g, double accuracy,
                                              double delta, RandomSource& rng, long sample_cap) {
  const int dim = ut.dim;
  if (dim < 1 || (int)ut.rows.size() != dim)
    throw std::invalid_argument("sparse_overlap_estimate: malformed matrix");
  if ((int)f.size() != dim || (int)g.size() != dim)
    throw std::invalid_argument("sparse_overlap_estimate: state dimension mismatch");
  for (int v : f)
    if (v != 1 && v != -1) throw std::invalid_argument("sparse_overlap_estimate: f must be +-1");
  for (int v : g)
    if (v != 1 && v != -1) throw std::invalid_argument("sparse_overlap_estimate: g must be +-1");
  if (!(accuracy > 0.0))
    throw std::invalid_argument("sparse_overlap_estimate: accuracy must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("sparse_overlap_estimate: delta must be in (0, 1)");

  std::vector<std::vector<std::pair<int, cd>>> cols(dim);
  for (int r = 0; r < dim; ++r)
    for (const auto& [c, v] : ut.rows[r]) {
      if (c < 0 || c >= dim) throw std::invalid_argument("sparse_overlap_estimate: column out of range");
      cols[c].emplace_back(r, v);
    }
  int s = 0;
  for (const auto& col : cols) s = std::max(s, (int)col.size());

  // |term| <= s, so Hoeffding gives per-component accuracy at confidence 1-delta
  const double sd = std::ceil(2.0 * double(s) * double(s) * std::log(2.0 / delta) /
                              (accuracy * accuracy));
  if (sd > double(sample_cap))
    throw std::runtime_error("sparse_overlap_estimate: sample budget exceeded (need " +
                             std::to_string((long long)sd) + ")");
  const long samples = sd < 1.0 ? 1 : (long)sd;

  double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
  for (long i = 0; i < samples; ++i) {
    const int x = (int)uniform_below(rng, (std::uint64_t)dim);
    cd t = 0.0;
    for (const auto& [r, v] : cols[x]) t += double(g[r]) * v;
    t *= double(f[x]);
    sum_re += t.real();
    sum_im += t.imag();
    sq_re += t.real() * t.real();
    sq_im += t.imag() * t.imag();
  }
  SparseOverlapEstimate out;
  out.samples = samples;
  out.sparsity = s;
  const double mre = sum_re / double(samples);
  const double mim = sum_im / double(samples);
  out.estimate = cd(mre, mim);
  if (samples > 1) {
    const double vr = std::max(0.0, (sq_re - double(samples) * mre * mre) / double(samples - 1));
    const double vi = std::max(0.0, (sq_im - double(samples) * mim * mim) / double(samples - 1));
    out.stderr_re = std::sqrt(vr / double(samples));
    out.stderr_im = std::sqrt(vi / double(samples));
  }
  return out;
}

ComplexMatrix sparse_to_dense(const SparseMatrix& m) {
  ComplexMatrix d(m.dim, m.dim);
  for (int r = 0; r < (int)m.rows.size(); ++r)
    for (const auto& [c, v] : m.rows[r]) d.at(r, c) = v;
  return d;
}

ComplexMatrix block_diagonal_haar(int n_blocks, int block_dim, RandomSource& rng) {
  if (n_blocks < 1 || block_dim < 1)
    throw std::invalid_argument("block_diagonal_haar: positive block count and size required");
  const int dim = n_blocks * block_dim;
  ComplexMatrix u(dim, dim);
  for (int b = 0; b < n_blocks; ++b) {
    const ComplexMatrix blk = haar_unitary(block_dim, rng);
    const int off = b * block_dim;
    for (int r = 0; r < block_dim; ++r)
      for (int c = 0; c < block_dim; ++c) u.at(off + r, off + c) = blk.at(r, c);
  }
  return u;
}

void save_sparse(const SparseMatrix& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["dim"] = m.dim;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : m.rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& [c, v] : row) jr.push_back({c, v.real(), v.imag()});
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_sparse: cannot write " + path);
  out << j.dump(2) << '\n';
}

SparseMatrix load_sparse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sparse: cannot read " + path);
  const auto j = nlohmann::json::parse(in);
  if (!j.contains("version") || j["version"].get<int>() != 1)
    throw std::runtime_error("load_sparse: unsupported version");
  SparseMatrix m;
  m.dim = j.at("dim").get<int>();
  if (m.dim < 1) throw std::runtime_error("load_sparse: invalid dimension");
  const auto& rows = j.at("rows");
  if (!rows.is_array() || (int)rows.size() != m.dim)
    throw std::runtime_error("load_sparse: row count mismatch");
  m.rows.resize(m.dim);
  for (int r = 0; r < m.dim; ++r) {
    for (const auto& e : rows[r]) {
      if (!e.is_array() || e.size() != 3) throw std::runtime_error("load_sparse: malformed entry");
      const int c = e[0].get<int>();
      if (c < 0 || c >= m.dim) throw std::runtime_error("load_sparse: column out of range");
      m.rows[r].emplace_back(c, cd(e[1].get<double>(), e[2].get<double>()));
    }
    auto& row = m.rows[r];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        throw std::runtime_error("load_sparse: duplicate column index");
  }
  return m;
}

}  // namespace tdesign
