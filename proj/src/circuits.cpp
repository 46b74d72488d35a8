#include "tdesign/circuits.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "tdesign/apply_local.hpp"
#include "tdesign/haar.hpp"

namespace tdesign {

std::string circuit_model_name(CircuitModel m) {
  switch (m) {
    case CircuitModel::local: return "local";
    case CircuitModel::uniform: return "uniform";
    default: return "explicit";
  }
}

CircuitModel parse_circuit_model(const std::string& s) {
  if (s == "local") return CircuitModel::local;
  if (s == "uniform") return CircuitModel::uniform;
  if (s == "explicit") return CircuitModel::explicit_gates;
  throw std::invalid_argument("unknown circuit model: " + s);
}

Circuit sample_circuit_seeded(int n, int length, CircuitModel model, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_circuit: n >= 2");
  if (length < 0) throw std::invalid_argument("sample_circuit: length >= 0");
  if (model == CircuitModel::explicit_gates)
    throw std::invalid_argument("sample_circuit: model must be local or uniform");

  Circuit c;
  c.n = n;
  c.model = model;
  c.seed = seed;
  c.steps.reserve(length);
  RandomSource pos(seed, 0);
  for (int k = 0; k < length; ++k) {
    GateStep step;
    if (model == CircuitModel::local) {
      const int i = int(uniform_below(pos, std::uint64_t(n)));
      step.targets[0] = i;
      step.targets[1] = (i + 1) % n;
    } else {
      const int i = int(uniform_below(pos, std::uint64_t(n)));
      int j = int(uniform_below(pos, std::uint64_t(n - 1)));
      if (j >= i) ++j;
      step.targets[0] = i;
      step.targets[1] = j;
    }
    RandomSource gate_rng(seed, std::uint64_t(k) + 1);
    step.gate = haar_unitary(4, gate_rng);
    c.steps.push_back(std::move(step));
  }
  return c;
}

Circuit sample_circuit(int n, int length, CircuitModel model, RandomSource& rng) {
  return sample_circuit_seeded(n, length, model, rng.next_u64());
}

ComplexMatrix compile(const Circuit& circuit) {
  const int n = circuit.n;
  if (n < 1 || n > 14) throw std::invalid_argument("compile: n in 1..14 (dense bound)");
  const std::size_t dim = std::size_t(1) << n;

  // rows evolve as states: after all steps row r holds U e_r, i.e. U^T
  ComplexMatrix u = ComplexMatrix::identity(int(dim));
  for (const GateStep& s : circuit.steps) {
    const std::span<const int> targets(s.targets, 2);
    for (std::size_t r = 0; r < dim; ++r)
      apply_local(s.gate, targets, std::span<cd>(u.data.data() + r * dim, dim), n);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) std::swap(u.data[i * dim + j], u.data[j * dim + i]);
  return u;
}

ComplexMatrix hadamard_transform(int n) {
  if (n < 1 || n > 14) throw std::invalid_argument("hadamard_transform: n in 1..14");
  const std::size_t dim = std::size_t(1) << n;
  const double scale = 1.0 / std::sqrt(double(dim));
  ComplexMatrix h{int(dim), int(dim)};
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      h.data[x * dim + y] = (std::popcount(x & y) & 1) ? -scale : scale;
  return h;
}

ComplexMatrix fourier_unitary(std::size_t modulus) {
  if (modulus < 2 || modulus > (std::size_t(1) << 14))
    throw std::invalid_argument("fourier_unitary: modulus in 2..2^14");
  const double scale = 1.0 / std::sqrt(double(modulus));
  ComplexMatrix f{int(modulus), int(modulus)};
  for (std::size_t j = 0; j < modulus; ++j)
    for (std::size_t k = 0; k < modulus; ++k) {
      const double angle = 2.0 * std::numbers::pi * double((j * k) % modulus) / double(modulus);
      f.data[j * modulus + k] = std::polar(scale, angle);
    }
  return f;
}

void save_circuit(const Circuit& circuit, const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = circuit.n;
  j["model"] = circuit_model_name(circuit.model);
  const bool regenerable = circuit.seed.has_value() && circuit.model != CircuitModel::explicit_gates;
  if (circuit.seed.has_value()) j["seed"] = *circuit.seed;
  j["length"] = circuit.steps.size();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < circuit.steps.size(); ++k) {
    const GateStep& s = circuit.steps[k];
    nlohmann::ordered_json rec;
    rec["index"] = k;
    rec["targets"] = {s.targets[0], s.targets[1]};
    if (!regenerable) {
      nlohmann::ordered_json gate = nlohmann::ordered_json::array();
      for (const cd& z : s.gate.data) gate.push_back({z.real(), z.imag()});
      rec["gate"] = std::move(gate);
    }
    steps.push_back(std::move(rec));
  }
  j["steps"] = std::move(steps);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_circuit: cannot open " + path);
  out << j.dump(1) << '\n';
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_circuit: cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("load_circuit: unsupported version");

  Circuit c;
  c.n = j.at("n").get<int>();
  c.model = parse_circuit_model(j.at("model").get<std::string>());
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  const auto& steps = j.at("steps");

  const bool has_gates = !steps.empty() && steps.front().contains("gate");
  if (!has_gates) {
    if (!c.seed.has_value() || c.model == CircuitModel::explicit_gates)
      throw std::runtime_error("load_circuit: steps lack gates and are not regenerable");
    Circuit regen = sample_circuit_seeded(c.n, int(steps.size()), c.model, *c.seed);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const auto& t = steps[k].at("targets");
      if (t.at(0).get<int>() != regen.steps[k].targets[0] ||
          t.at(1).get<int>() != regen.steps[k].targets[1])
        throw std::runtime_error("load_circuit: stored targets disagree with regeneration");
    }
    return regen;
  }

  for (const auto& rec : steps) {
    GateStep s;
    s.targets[0] = rec.at("targets").at(0).get<int>();
    s.targets[1] = rec.at("targets").at(1).get<int>();
    if (s.targets[0] == s.targets[1] || s.targets[0] < 0 || s.targets[1] < 0 ||
        s.targets[0] >= c.n || s.targets[1] >= c.n)
      throw std::runtime_error("load_circuit: bad targets");
    const auto& g = rec.at("gate");
    if (g.size() != 16) throw std::runtime_error("load_circuit: gate must be 4x4");
    s.gate = ComplexMatrix(4, 4);
    for (int i = 0; i < 16; ++i)
      s.gate.data[i] = cd(g.at(i).at(0).get<double>(), g.at(i).at(1).get<double>());
    if (unitarity_defect(s.gate) > 1e-10)
      throw std::runtime_error("load_circuit: gate is not unitary");
    c.steps.push_back(std::move(s));
  }
  return c;
}

}  // namespace tdesign
