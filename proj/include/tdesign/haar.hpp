#pragma once

#include "tdesign/linalg.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

// Haar-distributed d x d unitary: complex Gaussian matrix, QR, then each
// column rotated by the phase of the corresponding R diagonal entry so the
// distribution is exactly Haar rather than QR-convention biased.
ComplexMatrix haar_unitary(int d, RandomSource& rng);

}  // namespace tdesign
