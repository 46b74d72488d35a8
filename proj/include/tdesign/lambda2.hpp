#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tdesign/model.hpp"

namespace tdesign {

// Second-largest eigenvalue of a moment operator, with enough context to
// audit how it was obtained.
struct GapCertificate {
  int t = 0;
  int n = 0;
  Model model = Model::local;
  double lambda2 = 0.0;
  std::string method;      // "dense" or "deflated-power"
  long iterations = 0;     // 0 for the dense path
  double residual = 0.0;   // ||Mv - lambda2 v|| at acceptance (0 for dense)
  double tolerance = 0.0;
  std::uint64_t seed = 0;  // start-vector seed (unused by the dense path)
};

// Thrown when power iteration hits the cap; carries the best estimate.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, GapCertificate best_in)
      : std::runtime_error(what), best(std::move(best_in)) {}
  GapCertificate best;
};

// Computes lambda2 of MomentOperator(t, n, model). Dense symmetric
// eigensolve when dim <= 2^13, otherwise power iteration after deflating
// the t!-dimensional eigenvalue-1 space (re-deflated every step). The
// matrix-free path is guarded to dim <= 2^24.
GapCertificate lambda2_moment(int t, int n, Model model, double tol = 1e-8,
                              std::uint64_t seed = 20260818ULL,
                              long max_iterations = 100000);

}  // namespace tdesign
