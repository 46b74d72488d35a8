#include "tdesign/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdesign/circuits.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

DispersivenessReport dispersiveness(const ComplexMatrix& u) {
  if (u.rows != u.cols || u.rows < 1) throw std::invalid_argument("dispersiveness: square matrix");
  DispersivenessReport rep;
  // moduli within 1e-14 relative are numerical ties; the lowest (row, col)
  // wins, so e.g. the phase-free (0,0) entry represents a flat matrix
  double best = -1.0;
  for (int i = 0; i < u.rows; ++i)
    for (int j = 0; j < u.cols; ++j) {
      const double m = std::abs(u.at(i, j));
      if (m > best * (1.0 + 1e-14)) {
        best = m;
        rep.argmax_row = i;
        rep.argmax_col = j;
      }
    }
  if (best <= 0.0) throw std::invalid_argument("dispersiveness: zero matrix has no measure");
  rep.modulus = std::abs(u.at(rep.argmax_row, rep.argmax_col));
  const double c = -std::log2(rep.modulus * rep.modulus);
  rep.c_value = (c == 0.0) ? 0.0 : c;  // normalize -0
  return rep;
}

HHDispersingReport hh_dispersing_check(const ComplexMatrix& u, double alpha, double beta) {
  if (u.rows != u.cols) throw std::invalid_argument("hh_dispersing_check: square matrix");
  int n = 0;
  while ((1 << n) < u.rows) ++n;
  if ((1 << n) != u.rows) throw std::invalid_argument("hh_dispersing_check: dimension not 2^n");

  HHDispersingReport rep;
  rep.threshold = beta * std::pow(2.0, 0.5 * n);
  rep.required_rows = std::pow(2.0, alpha * n);
  for (int i = 0; i < u.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < u.cols; ++j) s += std::abs(u.at(i, j));
    if (s >= rep.threshold - 1e-12) ++rep.qualifying_rows;
  }
  rep.dispersing = double(rep.qualifying_rows) >= rep.required_rows - 1e-9;
  return rep;
}

DispersionTail dispersiveness_tail_experiment(int n, int length, int trials,
                                              std::uint64_t seed) {
  if (n < 2 || n > 10) throw std::invalid_argument("dispersiveness_tail_experiment: n in 2..10");
  if (trials < 1) throw std::invalid_argument("dispersiveness_tail_experiment: trials >= 1");

  DispersionTail tail;
  tail.n = n;
  tail.length = length;
  tail.c_values.reserve(trials);
  for (int trial = 0; trial < trials; ++trial) {
    RandomSource trial_rng(seed, std::uint64_t(trial));
    const Circuit c = sample_circuit(n, length, CircuitModel::local, trial_rng);
    const double cv = dispersiveness(compile(c)).c_value;
    tail.c_values.push_back(cv);
    if (cv < 1.0) ++tail.below_one;
  }
  std::vector<double> sorted = tail.c_values;
  std::sort(sorted.begin(), sorted.end());
  tail.min_c = sorted.front();
  tail.max_c = sorted.back();
  tail.median_c = sorted[sorted.size() / 2];
  return tail;
}

}  // namespace tdesign
