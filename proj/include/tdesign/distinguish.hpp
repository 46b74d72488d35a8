#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/oracle.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

// Independent-query oracle: every next() call sees a fresh realization of
// the instance and reports f(i), g(j) as +-1. Returns false once exhausted.
class InstanceStream {
 public:
  virtual ~InstanceStream() = default;
  virtual bool next(int i, int j, int* f_out, int* g_out) = 0;
};

// Draws realizations on demand; only row j of U is touched per query.
class GeneratedStream final : public InstanceStream {
 public:
  GeneratedStream(const ComplexMatrix& u, OracleMode mode, std::uint64_t seed,
                  long max_queries = -1);  // -1: unbounded
  bool next(int i, int j, int* f_out, int* g_out) override;

 private:
  const ComplexMatrix& u_;
  OracleMode mode_;
  std::uint64_t seed_;
  long remaining_;
  std::uint64_t counter_ = 0;
};

// Replays a fixed list of (f(i), g(j)) pairs; exhausts when it runs out.
class RecordedStream final : public InstanceStream {
 public:
  explicit RecordedStream(std::vector<std::pair<int, int>> values)
      : values_(std::move(values)) {}
  bool next(int i, int j, int* f_out, int* g_out) override;

 private:
  std::vector<std::pair<int, int>> values_;
  std::size_t pos_ = 0;
};

struct DistinguishResult {
  OracleMode decision = OracleMode::independent;
  long queries = 0;
  double statistic = 0.0;  // phase-adjusted mean of f(i) g(j)
  double threshold = 0.0;  // re/4
  int row = 0, col = 0;    // argmax |U_ij| (lexicographic ties)
  double re_effective = 0.0;
  bool rotated = false;    // multiplied U by i to make Re dominate
  bool negated = false;    // flipped the statistic for negative Re
};

// Locates the largest-modulus entry, queries N = ceil(32 Re^-2 ln(1/eps))
// fresh (f(i), g(j)) pairs from the stream, and thresholds the adjusted
// mean at Re/4. Throws on stream exhaustion.
DistinguishResult independent_query_distinguish(const ComplexMatrix& u, InstanceStream& stream,
                                                double eps);

struct SignCorrelation {
  double estimate = 0.0;
  double stderr_e = 0.0;
  long trials = 0;
};

// Monte-Carlo E[f(i) g(j)] under correlated generation. trials >= 1e4.
SignCorrelation sign_correlation(const ComplexMatrix& u, int i, int j, long trials,
                                 RandomSource& rng);

}  // namespace tdesign
