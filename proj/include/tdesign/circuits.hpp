#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdesign/linalg.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

struct GateStep {
  int targets[2] = {0, 1};  // distinct qubit indices; targets[0] = high gate bit
  ComplexMatrix gate;       // 4x4 unitary
};

enum class CircuitModel { local, uniform, explicit_gates };

std::string circuit_model_name(CircuitModel m);
CircuitModel parse_circuit_model(const std::string& s);

struct Circuit {
  int n = 0;
  CircuitModel model = CircuitModel::explicit_gates;
  std::vector<GateStep> steps;
  std::optional<std::uint64_t> seed;  // present when steps are regenerable
};

// Draws `length` Haar-U(4) two-qubit steps. local: position i uniform with
// targets (i, (i+1) mod n); uniform: an ordered draw of a distinct pair.
// Positions come from stream (seed, 0), the step-k gate from (seed, k+1),
// with seed = rng.next_u64() recorded on the circuit for regeneration.
Circuit sample_circuit(int n, int length, CircuitModel model, RandomSource& rng);
Circuit sample_circuit_seeded(int n, int length, CircuitModel model, std::uint64_t seed);

// Dense 2^n x 2^n product of the embedded steps, in step order (step 0
// applied first). Guarded to n <= 14.
ComplexMatrix compile(const Circuit& circuit);

// Exact transforms: (-1)^{x.y}/2^{n/2} and omega^{jk}/sqrt(N).
ComplexMatrix hadamard_transform(int n);
ComplexMatrix fourier_unitary(std::size_t modulus);

// JSON round-trip. Explicit gates are stored as full-precision re/im pairs;
// seeded circuits store only {model, seed, length, targets} and re-derive
// the gates on load (stored targets are verified against the regeneration).
void save_circuit(const Circuit& circuit, const std::string& path);
Circuit load_circuit(const std::string& path);

}  // namespace tdesign
