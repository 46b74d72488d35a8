#include "tdesign/rng.hpp"

#include <cmath>

namespace tdesign {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 output mix
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t stream_index)
    : state_(mix64(master_seed + kGolden * (stream_index + 1))) {}

std::uint64_t RandomSource::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomSource::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

std::vector<double> gaussian_vector(int dim, RandomSource& rng) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.gaussian();
  return v;
}

std::uint64_t uniform_below(RandomSource& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * ((~std::uint64_t(0)) / bound);
  std::uint64_t x;
  do {
    x = rng.next_u64();
  } while (x >= limit);
  return x % bound;
}

}  // namespace tdesign
