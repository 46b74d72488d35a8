#pragma once

#include <cstdint>
#include <vector>

#include "tdesign/linalg.hpp"

namespace tdesign {

// C(U) = -log2(max_{i,j} |U_ij|^2): how flat the flattest-spreading basis
// column is, in bits. Argmax ties break to the lowest (row, col).
struct DispersivenessReport {
  double c_value = 0.0;
  int argmax_row = 0;
  int argmax_col = 0;
  double modulus = 0.0;
};

DispersivenessReport dispersiveness(const ComplexMatrix& u);

// Counts rows whose entry 1-norm reaches beta * 2^{n/2}; dispersing when at
// least 2^{alpha n} rows qualify.
struct HHDispersingReport {
  bool dispersing = false;
  long qualifying_rows = 0;
  double required_rows = 0.0;  // 2^{alpha n}
  double threshold = 0.0;      // beta * 2^{n/2}
};

HHDispersingReport hh_dispersing_check(const ComplexMatrix& u, double alpha, double beta);

// Samples `trials` circuits, compiles each, and records C(U).
struct DispersionTail {
  int n = 0;
  int length = 0;
  std::vector<double> c_values;  // by trial index
  double min_c = 0.0, median_c = 0.0, max_c = 0.0;
  long below_one = 0;  // trials with C(U) < 1
};

DispersionTail dispersiveness_tail_experiment(int n, int length, int trials,
                                              std::uint64_t seed);

}  // namespace tdesign
