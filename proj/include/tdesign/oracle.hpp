#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

enum class OracleMode { independent, correlated };

std::string oracle_mode_name(OracleMode m);
OracleMode parse_oracle_mode(const std::string& s);

// One realization of the checking promise problem on N = 2^n points:
// independent draws f, g as independent uniform +-1 strings; correlated
// draws a real Gaussian v and sets f = sgn(v), g = sgn(Re(Uv)), sgn(0) = +1.
struct OracleInstance {
  int n = 0;
  OracleMode mode = OracleMode::independent;
  std::uint64_t seed = 0;  // regenerates the instance
  std::vector<int> f;      // +-1, length 2^n
  std::vector<int> g;
};

// Correlated mode needs U (checked unitary to 1e-8); independent mode
// ignores it. The instance records seed = rng.next_u64().
OracleInstance make_instance(const ComplexMatrix& u, OracleMode mode, RandomSource& rng);
OracleInstance make_instance_seeded(const ComplexMatrix& u, OracleMode mode, std::uint64_t seed);

// p_U(f, g) = |<g|U|f>|^2 for the normalized +-1 states. Guarded to n <= 14.
double accept_probability(const ComplexMatrix& u, const OracleInstance& inst);

struct AcceptanceStats {
  OracleMode mode = OracleMode::independent;
  long trials = 0;
  double mean_p = 0.0;
  double stderr_p = 0.0;
};

// Runs `trials` fresh instances per mode; returns (independent, correlated).
std::pair<AcceptanceStats, AcceptanceStats> checking_experiment(const ComplexMatrix& u,
                                                                long trials, RandomSource& rng);

// Instance file: {version, n, mode, seed, f, g} with f and g packed as
// little-endian hex bitstrings by index, bit 1 <=> +1.
void save_instance(const OracleInstance& inst, const std::string& path);
OracleInstance load_instance(const std::string& path);

}  // namespace tdesign
