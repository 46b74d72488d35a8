#include "tdesign/haar.hpp"

#include <cmath>
#include <stdexcept>

#include "lapack_shim.hpp"

namespace tdesign {

ComplexMatrix haar_unitary(int d, RandomSource& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: d must be positive");
  ComplexMatrix a(d, d);
  // Fixed draw order (row-major, re then im) keeps samples seed-stable.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      a.at(i, j) = cd(re, im);
    }

  std::vector<cd> tau(d);
  if (LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, d, d, a.data.data(), d, tau.data()) != 0)
    throw std::runtime_error("zgeqrf failed");

  // Column phases from the R diagonal, saved before zungqr overwrites it.
  std::vector<cd> phase(d);
  for (int j = 0; j < d; ++j) {
    const cd rjj = a.at(j, j);
    const double m = std::abs(rjj);
    phase[j] = (m > 0.0) ? rjj / m : cd(1.0, 0.0);
  }

  if (LAPACKE_zungqr(LAPACK_ROW_MAJOR, d, d, d, a.data.data(), d, tau.data()) != 0)
    throw std::runtime_error("zungqr failed");

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a.at(i, j) *= phase[j];
  return a;
}

}  // namespace tdesign
