#include "tdesign/distinguish.hpp"

#include <cmath>
#include <stdexcept>

namespace tdesign {

namespace {

inline int sign_of(double x) { return x >= 0.0 ? 1 : -1; }  // sgn(0) = +1

}  // namespace

GeneratedStream::GeneratedStream(const ComplexMatrix& u, OracleMode mode, std::uint64_t seed,
                                 long max_queries)
    : u_(u), mode_(mode), seed_(seed), remaining_(max_queries) {
  if (u.rows != u.cols || u.rows < 1)
    throw std::invalid_argument("generated stream: square matrix required");
  if (mode == OracleMode::correlated && unitarity_defect(u) > 1e-8)
    throw std::invalid_argument("generated stream: matrix is not unitary");
}

bool GeneratedStream::next(int i, int j, int* f_out, int* g_out) {
  if (remaining_ == 0) return false;
  if (remaining_ > 0) --remaining_;
  const int dim = u_.rows;
  if (i < 0 || i >= dim || j < 0 || j >= dim)
    throw std::out_of_range("generated stream: query position out of range");
  RandomSource rs(seed_, counter_++);  // fresh realization per query
  if (mode_ == OracleMode::independent) {
    *f_out = (rs.next_u64() & 1) ? 1 : -1;
    *g_out = (rs.next_u64() & 1) ? 1 : -1;
    return true;
  }
  double vi = 0.0;
  double w = 0.0;
  for (int x = 0; x < dim; ++x) {
    const double vx = rs.gaussian();
    if (x == i) vi = vx;
    w += u_.at(j, x).real() * vx;
  }
  *f_out = sign_of(vi);
  *g_out = sign_of(w);
  return true;
}

bool RecordedStream::next(int /*i*/, int /*j*/, int* f_out, int* g_out) {
  if (pos_ >= values_.size()) return false;
  *f_out = values_[pos_].first;
  *g_out = values_[pos_].second;
  ++pos_;
  return true;
}

DistinguishResult independent_query_distinguish(const ComplexMatrix& u, InstanceStream& stream,
                                                double eps) {
  if (u.rows != u.cols || u.rows < 1)
    throw std::invalid_argument("independent_query_distinguish: square matrix required");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("independent_query_distinguish: eps must be in (0, 1)");

  int br = 0, bc = 0;
  double best = -1.0;
  for (int r = 0; r < u.rows; ++r)
    for (int c = 0; c < u.cols; ++c) {
      const double m = std::abs(u.at(r, c));
      if (m > best) {
        best = m;
        br = r;
        bc = c;
      }
    }
  if (best <= 0.0) throw std::invalid_argument("independent_query_distinguish: zero matrix");

  DistinguishResult res;
  res.row = br;
  res.col = bc;
  const cd z = u.at(br, bc);
  double re = z.real();
  if (std::abs(z.imag()) > std::abs(z.real())) {
    // statistic targets sqrt(-1)*U; the stream must be correlated w.r.t. it
    res.rotated = true;
    re = -z.imag();
  }
  if (re < 0.0) {
    res.negated = true;
    re = -re;
  }
  res.re_effective = re;
  res.threshold = re / 4.0;

  // Hoeffding: exp(-N (re/4)^2 / 2) <= eps on both promise branches
  const double nd = std::ceil(32.0 * std::log(1.0 / eps) / (re * re));
  if (nd > 9e15) throw std::runtime_error("independent_query_distinguish: query count overflow");
  const long n_queries = nd < 1.0 ? 1 : static_cast<long>(nd);
  res.queries = n_queries;

  double sum = 0.0;
  for (long q = 0; q < n_queries; ++q) {
    int fv = 0, gv = 0;
    if (!stream.next(bc, br, &fv, &gv))
      throw std::runtime_error("independent_query_distinguish: stream exhausted before " +
                               std::to_string(n_queries) + " queries");
    sum += double(fv) * double(gv);
  }
  double stat = sum / double(n_queries);
  if (res.negated) stat = -stat;
  res.statistic = stat;
  res.decision = stat >= res.threshold ? OracleMode::correlated : OracleMode::independent;
  return res;
}

SignCorrelation sign_correlation(const ComplexMatrix& u, int i, int j, long trials,
                                 RandomSource& rng) {
  if (u.rows != u.cols || u.rows < 1)
    throw std::invalid_argument("sign_correlation: square matrix required");
  const int dim = u.rows;
  if (i < 0 || i >= dim || j < 0 || j >= dim)
    throw std::out_of_range("sign_correlation: position out of range");
  if (trials < 10000) throw std::invalid_argument("sign_correlation: trials must be >= 10000");

  std::vector<double> row(dim);
  for (int x = 0; x < dim; ++x) row[x] = u.at(j, x).real();

  double sum = 0.0;
  for (long s = 0; s < trials; ++s) {
    double vi = 0.0;
    double w = 0.0;
    for (int x = 0; x < dim; ++x) {
      const double vx = rng.gaussian();
      if (x == i) vi = vx;
      w += row[x] * vx;
    }
    sum += double(sign_of(vi) * sign_of(w));
  }
  SignCorrelation out;
  out.trials = trials;
  out.estimate = sum / double(trials);
  const double var = 1.0 - out.estimate * out.estimate;
  out.stderr_e = std::sqrt((var > 0.0 ? var : 0.0) / double(trials));
  return out;
}

}  // namespace tdesign
