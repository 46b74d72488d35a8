#include "tdesign/apply_local.hpp"

#include <stdexcept>

namespace tdesign {

void apply_local(const ComplexMatrix& gate, std::span<const int> targets, std::span<cd> state,
                 int n) {
  const int k = int(targets.size());
  if (k < 1 || k > 12) throw std::invalid_argument("apply_local: 1..12 targets supported");
  const int gdim = 1 << k;
  if (gate.rows != gdim || gate.cols != gdim)
    throw std::invalid_argument("apply_local: gate dimension does not match target count");
  if (state.size() != (std::size_t(1) << n))
    throw std::invalid_argument("apply_local: state dimension is not 2^n");

  std::size_t target_mask = 0;
  std::vector<std::size_t> stride(k);
  for (int j = 0; j < k; ++j) {
    const int q = targets[j];
    if (q < 0 || q >= n) throw std::invalid_argument("apply_local: target out of range");
    stride[j] = std::size_t(1) << (n - 1 - q);
    if (target_mask & stride[j]) throw std::invalid_argument("apply_local: repeated target");
    target_mask |= stride[j];
  }

  // offset[s]: basis offset of gate index s (targets[0] = most significant bit)
  std::vector<std::size_t> offset(gdim, 0);
  for (int s = 0; s < gdim; ++s)
    for (int j = 0; j < k; ++j)
      if (s & (1 << (k - 1 - j))) offset[s] += stride[j];

  const std::size_t dim = state.size();
  std::vector<cd> amp(gdim), out(gdim);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    for (int s = 0; s < gdim; ++s) amp[s] = state[base + offset[s]];
    for (int r = 0; r < gdim; ++r) {
      const cd* grow = &gate.data[std::size_t(r) * gdim];
      cd acc{};
      for (int s = 0; s < gdim; ++s) acc += grow[s] * amp[s];
      out[r] = acc;
    }
    for (int s = 0; s < gdim; ++s) state[base + offset[s]] = out[s];
  }
}

void apply_local(const ComplexMatrix& gate, std::span<const int> targets, ComplexVector& state,
                 int n) {
  apply_local(gate, targets, std::span<cd>(state.data(), state.size()), n);
}

}  // namespace tdesign
