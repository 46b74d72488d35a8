#pragma once

#include <cstdint>
#include <vector>

namespace tdesign {

// Counter-based deterministic generator. A (master_seed, stream_index) pair
// fixes the whole sequence, so per-trial / per-sample streams stay
// reproducible no matter how work is scheduled.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64();
  double uniform();   // [0, 1), 53-bit mantissa
  double gaussian();  // standard normal, Marsaglia polar

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// i.i.d. standard normals.
std::vector<double> gaussian_vector(int dim, RandomSource& rng);

// Uniform integer in [0, bound), bias-free via rejection.
std::uint64_t uniform_below(RandomSource& rng, std::uint64_t bound);

}  // namespace tdesign
