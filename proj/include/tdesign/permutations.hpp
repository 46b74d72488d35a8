#pragma once

#include <vector>

namespace tdesign {

// Permutation as image list: pi[i] is the image of i.
using Perm = std::vector<int>;

// S_t in lexicographic order of the image lists; identity first.
std::vector<Perm> all_permutations(int t);

Perm compose(const Perm& a, const Perm& b);  // (a*b)(i) = a[b[i]]
Perm inverse(const Perm& a);
int cycle_count(const Perm& a);

}  // namespace tdesign
