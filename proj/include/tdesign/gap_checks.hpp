#pragma once

#include <cstdint>

#include "tdesign/lambda2.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

// Numerical verification that the three-site gap amplifies to the n-site
// chain: (i) the subchain recursion Delta_n >= 2*Delta_3 - 1, (ii) the
// derived bound lambda2(M_{t,n}) <= 1 - (3 - 4*lambda2(M_{t,3}))/n, and
// (iii) sampled Rayleigh quotients on the complement of the fixed space
// stay at or below lambda2.
struct GapAmplificationReport {
  int t = 0;
  int n = 0;
  GapCertificate chain;        // lambda2(M_{t,n}), local model
  GapCertificate three_site;   // lambda2(M_{t,3})
  double gap_full = 0.0;       // n (1 - lambda2(M_{t,n}))
  double gap_three = 0.0;      // 2 (1 - lambda2(M_{t,3}))
  bool subchain_ok = false;    // gap_full >= 2 gap_three - 1
  double chain_bound = 0.0;    // 1 - (3 - 4 lambda2(M_{t,3}))/n
  bool bound_ok = false;       // lambda2(M_{t,n}) <= chain_bound
  int sampled_vectors = 0;
  double max_rayleigh = 0.0;      // max <v,Mv>/<v,v> over deflated samples
  double max_square_ratio = 0.0;  // max <v,M^2 v>/<v,Mv>
  bool rayleigh_ok = false;       // both maxima <= lambda2 + 1e-9
  bool pass = false;
};

GapAmplificationReport gap_amplification_check(int t, int n, int sample_vectors = 100,
                                               std::uint64_t seed = 20260818ULL);

// ||G_mu*k - G_Haar|| decays as lambda2^k; conversions to the diamond-norm
// and balanced-monomial bounds multiply by D^t and D^{2t}, D = 2^n.
double design_distance_from(double lambda2, long k);
double design_distance(int t, int n, Model model, long k);

struct DesignConversions {
  double distance = 0.0;
  double diamond_bound = 0.0;   // distance * D^t
  double monomial_bound = 0.0;  // distance * D^{2t}
};
DesignConversions design_conversions(double distance, int t, int n);

// Step counts prescribed as 5 n log(1/eps), in both readings of the log,
// next to the exact minimal k for the measured lambda2.
struct DesignSteps {
  double eps = 0.0;
  long k_ln = 0;      // ceil(5 n ln(1/eps))
  long k_log2 = 0;    // ceil(5 n log2(1/eps))
  long k_exact = 0;   // smallest k with lambda2^k <= eps
  bool ln_ok = false;     // lambda2^{k_ln} <= eps
  bool log2_ok = false;   // lambda2^{k_log2} <= eps
};
DesignSteps design_steps(double lambda2, int n, double eps);

// Monte-Carlo moments of Haar unitaries against exact values: the diagonal
// moment |U_00|^{2t} vs 1/binom(d+t-1, t) and the degree-2 balanced monomial
// U_00 U_11 conj(U_01) conj(U_10) vs -1/(d(d^2-1)).
struct MonomialReport {
  int t = 0;
  int d = 0;
  long samples = 0;
  double diag_mean = 0.0;
  double diag_exact = 0.0;
  double diag_stderr = 0.0;
  double offdiag_mean_re = 0.0;
  double offdiag_mean_im = 0.0;
  double offdiag_exact = 0.0;
  double offdiag_stderr = 0.0;  // componentwise
  bool pass = false;            // every comparison within 3 standard errors
};
MonomialReport monomial_moment_check(int t, int d, long samples, RandomSource& rng);

}  // namespace tdesign
