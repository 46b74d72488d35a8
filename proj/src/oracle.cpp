#include "tdesign/oracle.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tdesign {

namespace {

int log2_dim(std::size_t dim, const char* who) {
  int n = 0;
  while ((std::size_t(1) << n) < dim) ++n;
  if ((std::size_t(1) << n) != dim) throw std::invalid_argument(std::string(who) + ": dimension not 2^n");
  return n;
}

std::vector<int> random_signs(std::size_t count, RandomSource& rng) {
  std::vector<int> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = (rng.next_u64() & 1) ? 1 : -1;
  return s;
}

OracleInstance generate(const ComplexMatrix* u, int n, OracleMode mode, std::uint64_t seed) {
  OracleInstance inst;
  inst.n = n;
  inst.mode = mode;
  inst.seed = seed;
  const std::size_t dim = std::size_t(1) << n;
  RandomSource rng(seed, 0);
  if (mode == OracleMode::independent) {
    inst.f = random_signs(dim, rng);
    inst.g = random_signs(dim, rng);
    return inst;
  }
  const std::vector<double> v = gaussian_vector(int(dim), rng);
  inst.f.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) inst.f[i] = (v[i] < 0.0) ? -1 : 1;
  inst.g.resize(dim);
  for (std::size_t y = 0; y < dim; ++y) {
    const cd* row = &u->data[y * dim];
    double re = 0.0;
    for (std::size_t x = 0; x < dim; ++x) re += row[x].real() * v[x];
    inst.g[y] = (re < 0.0) ? -1 : 1;
  }
  return inst;
}

}  // namespace

std::string oracle_mode_name(OracleMode m) {
  return m == OracleMode::independent ? "independent" : "correlated";
}

OracleMode parse_oracle_mode(const std::string& s) {
  if (s == "independent") return OracleMode::independent;
  if (s == "correlated") return OracleMode::correlated;
  throw std::invalid_argument("unknown oracle mode: " + s);
}

OracleInstance make_instance_seeded(const ComplexMatrix& u, OracleMode mode, std::uint64_t seed) {
  const int n = log2_dim(std::size_t(u.rows), "make_instance");
  if (mode == OracleMode::correlated) {
    if (u.rows != u.cols) throw std::invalid_argument("make_instance: U must be square");
    if (unitarity_defect(u) > 1e-8)
      throw std::invalid_argument("make_instance: invalid oracle, U deviates from unitarity");
  }
  return generate(&u, n, mode, seed);
}

OracleInstance make_instance(const ComplexMatrix& u, OracleMode mode, RandomSource& rng) {
  return make_instance_seeded(u, mode, rng.next_u64());
}

double accept_probability(const ComplexMatrix& u, const OracleInstance& inst) {
  const std::size_t dim = std::size_t(1) << inst.n;
  if (inst.n > 14) throw std::invalid_argument("accept_probability: n <= 14");
  if (std::size_t(u.rows) != dim || std::size_t(u.cols) != dim)
    throw std::invalid_argument("accept_probability: U dimension does not match instance");
  cd amp{};
  for (std::size_t y = 0; y < dim; ++y) {
    const cd* row = &u.data[y * dim];
    cd uf{};
    for (std::size_t x = 0; x < dim; ++x) uf += row[x] * double(inst.f[x]);
    amp += double(inst.g[y]) * uf;
  }
  return std::norm(amp) / (double(dim) * double(dim));
}

std::pair<AcceptanceStats, AcceptanceStats> checking_experiment(const ComplexMatrix& u,
                                                                long trials, RandomSource& rng) {
  if (trials < 100) throw std::invalid_argument("checking_experiment: trials >= 100");
  const int n = log2_dim(std::size_t(u.rows), "checking_experiment");
  if (unitarity_defect(u) > 1e-8)
    throw std::invalid_argument("checking_experiment: invalid oracle, U deviates from unitarity");

  std::pair<AcceptanceStats, AcceptanceStats> out;
  AcceptanceStats* stats[2] = {&out.first, &out.second};
  const OracleMode modes[2] = {OracleMode::independent, OracleMode::correlated};
  for (int m = 0; m < 2; ++m) {
    stats[m]->mode = modes[m];
    stats[m]->trials = trials;
    double s1 = 0.0, s2 = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
      const OracleInstance inst = generate(&u, n, modes[m], rng.next_u64());
      const double p = accept_probability(u, inst);
      s1 += p;
      s2 += p * p;
    }
    stats[m]->mean_p = s1 / double(trials);
    stats[m]->stderr_p =
        std::sqrt(std::max(0.0, s2 / double(trials) - stats[m]->mean_p * stats[m]->mean_p) /
                  double(trials));
  }
  return out;
}

namespace {

std::string pack_signs(const std::vector<int>& s) {
  // little-endian by index: bit i of the stream is sign i, 1 <=> +1
  std::string hex;
  for (std::size_t byte = 0; byte * 8 < s.size(); ++byte) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 8 && byte * 8 + b < s.size(); ++b)
      if (s[byte * 8 + b] > 0) v |= 1u << b;
    const char* digits = "0123456789abcdef";
    hex.push_back(digits[v >> 4]);
    hex.push_back(digits[v & 0xf]);
  }
  return hex;
}

std::vector<int> unpack_signs(const std::string& hex, std::size_t count) {
  if (hex.size() != 2 * ((count + 7) / 8))
    throw std::runtime_error("instance file: sign string has wrong length");
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return unsigned(c - '0');
    if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
    throw std::runtime_error("instance file: bad hex digit");
  };
  std::vector<int> s(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = (nibble(hex[2 * (i / 8)]) << 4) | nibble(hex[2 * (i / 8) + 1]);
    s[i] = (v >> (i % 8)) & 1 ? 1 : -1;
  }
  return s;
}

}  // namespace

void save_instance(const OracleInstance& inst, const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = inst.n;
  j["mode"] = oracle_mode_name(inst.mode);
  j["seed"] = inst.seed;
  j["f"] = pack_signs(inst.f);
  j["g"] = pack_signs(inst.g);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_instance: cannot open " + path);
  out << j.dump(1) << '\n';
}

OracleInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_instance: cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("load_instance: unsupported version");
  OracleInstance inst;
  inst.n = j.at("n").get<int>();
  inst.mode = parse_oracle_mode(j.at("mode").get<std::string>());
  inst.seed = j.at("seed").get<std::uint64_t>();
  const std::size_t dim = std::size_t(1) << inst.n;
  inst.f = unpack_signs(j.at("f").get<std::string>(), dim);
  inst.g = unpack_signs(j.at("g").get<std::string>(), dim);
  return inst;
}

}  // namespace tdesign
