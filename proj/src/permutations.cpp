#include "tdesign/permutations.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tdesign {

std::vector<Perm> all_permutations(int t) {
  if (t < 1) throw std::invalid_argument("all_permutations: t must be positive");
  Perm p(t);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse(const Perm& a) {
  Perm inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = int(i);
  return inv;
}

int cycle_count(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = std::size_t(a[j])) seen[j] = true;
  }
  return cycles;
}

}  // namespace tdesign
