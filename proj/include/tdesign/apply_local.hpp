#pragma once

#include <span>

#include "tdesign/linalg.hpp"

namespace tdesign {

// Applies a 2^k x 2^k gate to the given qubits of an n-qubit state without
// materializing the embedded operator. Qubit 0 is the most significant bit
// of the basis index; targets[0] is the most significant gate-index bit, so
// a gate on adjacent qubits (q, q+1) equals the kron-embedded operator.
void apply_local(const ComplexMatrix& gate, std::span<const int> targets, ComplexVector& state,
                 int n);

// Same, on a raw 2^n-length slice (used when states are rows of a matrix).
void apply_local(const ComplexMatrix& gate, std::span<const int> targets, std::span<cd> state,
                 int n);

}  // namespace tdesign
