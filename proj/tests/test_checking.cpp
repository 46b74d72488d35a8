#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdesign/apply_local.hpp"
#include "tdesign/circuits.hpp"
#include "tdesign/haar.hpp"
#include "tdesign/linalg.hpp"
#include "tdesign/oracle.hpp"
#include "tdesign/rng.hpp"

using namespace tdesign;

namespace {

std::string temp_path(const char* stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

}  // namespace

TEST_CASE("oracle mode names round-trip") {
  CHECK(parse_oracle_mode(oracle_mode_name(OracleMode::independent)) == OracleMode::independent);
  CHECK(parse_oracle_mode(oracle_mode_name(OracleMode::correlated)) == OracleMode::correlated);
  CHECK_THROWS_AS(parse_oracle_mode("bogus"), std::invalid_argument);
}

TEST_CASE("instances are valid sign strings") {
  ComplexMatrix u = hadamard_transform(4);
  RandomSource rng(81, 0);
  for (auto mode : {OracleMode::independent, OracleMode::correlated}) {
    OracleInstance inst = make_instance(u, mode, rng);
    CHECK(inst.n == 4);
    CHECK(inst.mode == mode);
    REQUIRE(inst.f.size() == 16);
    REQUIRE(inst.g.size() == 16);
    for (int v : inst.f) CHECK(std::abs(v) == 1);
    for (int v : inst.g) CHECK(std::abs(v) == 1);
  }
}

TEST_CASE("identity with equal strings accepts with certainty") {
  ComplexMatrix id = ComplexMatrix::identity(16);
  RandomSource rng(82, 0);
  OracleInstance inst = make_instance(id, OracleMode::independent, rng);
  inst.g = inst.f;
  CHECK(accept_probability(id, inst) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single sign flip costs the known amount") {
  // <g|f> with one flipped position is (N-2)/N
  const int n = 5, dim = 32;
  ComplexMatrix id = ComplexMatrix::identity(dim);
  RandomSource rng(83, 0);
  OracleInstance inst = make_instance(id, OracleMode::independent, rng);
  inst.g = inst.f;
  inst.g[7] = -inst.g[7];
  (void)n;
  const double want = std::pow(double(dim - 2) / dim, 2);
  CHECK(accept_probability(id, inst) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("accept probability matches a direct contraction") {
  RandomSource rng(84, 0);
  const int n = 3, dim = 8;
  ComplexMatrix u = haar_unitary(dim, rng);
  OracleInstance inst = make_instance(u, OracleMode::correlated, rng);
  cd amp = 0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) amp += double(inst.g[r]) * u.at(r, c) * double(inst.f[c]);
  amp /= double(dim);
  CHECK(accept_probability(u, inst) == doctest::Approx(std::norm(amp)).epsilon(1e-12));
  (void)n;
}

TEST_CASE("adjoint swaps the roles of f and g") {
  RandomSource rng(85, 0);
  const int dim = 16;
  ComplexMatrix u = haar_unitary(dim, rng);
  OracleInstance inst = make_instance(u, OracleMode::correlated, rng);
  OracleInstance swapped = inst;
  std::swap(swapped.f, swapped.g);
  CHECK(accept_probability(u, inst) ==
        doctest::Approx(accept_probability(adjoint(u), swapped)).epsilon(1e-12));
}

TEST_CASE("gate-level pipeline agrees with the compiled matrix") {
  RandomSource rng(86, 0);
  Circuit c = sample_circuit(5, 40, CircuitModel::local, rng);
  ComplexMatrix u = compile(c);
  OracleInstance inst = make_instance(u, OracleMode::correlated, rng);
  // apply the circuit step by step to the normalized f state
  const int dim = 32;
  ComplexVector state(dim);
  const double nrm = 1.0 / std::sqrt(double(dim));
  for (int i = 0; i < dim; ++i) state[i] = cd(inst.f[i] * nrm, 0.0);
  for (const auto& s : c.steps) {
    std::vector<int> tgt = {s.targets[0], s.targets[1]};
    apply_local(s.gate, tgt, state, 5);
  }
  cd amp = 0;
  for (int i = 0; i < dim; ++i) amp += double(inst.g[i]) * nrm * state[i];
  CHECK(std::abs(std::norm(amp) - accept_probability(u, inst)) < 1e-12);
}

TEST_CASE("independent acceptance averages to 2^-n") {
  const int n = 6, dim = 64;
  ComplexMatrix u = hadamard_transform(n);
  RandomSource rng(87, 0);
  const long trials = 3000;
  double sum = 0, sum2 = 0;
  for (long i = 0; i < trials; ++i) {
    OracleInstance inst = make_instance(u, OracleMode::independent, rng);
    double p = accept_probability(u, inst);
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 1.0 / dim) < 4 * se);
}

TEST_CASE("checking experiment separates the two modes") {
  const int n = 6;
  ComplexMatrix u = hadamard_transform(n);
  RandomSource rng(88, 0);
  auto [ind, cor] = checking_experiment(u, 400, rng);
  CHECK(ind.mode == OracleMode::independent);
  CHECK(cor.mode == OracleMode::correlated);
  CHECK(ind.trials == 400);
  CHECK(cor.trials == 400);
  CHECK(std::abs(ind.mean_p - std::pow(2.0, -n)) < 4 * ind.stderr_p);
  CHECK(cor.mean_p - 3 * cor.stderr_p > 0.07);  // well-dispersing target
  CHECK(cor.mean_p > ind.mean_p + 10 * ind.stderr_p);
}

TEST_CASE("instances regenerate from their seed") {
  ComplexMatrix u = hadamard_transform(5);
  RandomSource rng(89, 0);
  OracleInstance a = make_instance(u, OracleMode::correlated, rng);
  OracleInstance b = make_instance_seeded(u, OracleMode::correlated, a.seed);
  CHECK(a.f == b.f);
  CHECK(a.g == b.g);
  // and differ across fresh draws
  OracleInstance c = make_instance(u, OracleMode::correlated, rng);
  CHECK(c.f != a.f);
}

TEST_CASE("instance file round-trip") {
  ComplexMatrix u = hadamard_transform(4);
  RandomSource rng(90, 0);
  for (auto mode : {OracleMode::independent, OracleMode::correlated}) {
    OracleInstance inst = make_instance(u, mode, rng);
    const std::string path = temp_path("tdesign_test_instance.json");
    save_instance(inst, path);
    OracleInstance back = load_instance(path);
    CHECK(back.n == inst.n);
    CHECK(back.mode == inst.mode);
    CHECK(back.seed == inst.seed);
    CHECK(back.f == inst.f);
    CHECK(back.g == inst.g);
    std::remove(path.c_str());
  }
}

TEST_CASE("instance packing survives adversarial sign patterns") {
  OracleInstance inst;
  inst.n = 3;
  inst.mode = OracleMode::independent;
  inst.seed = 123;
  inst.f = {1, -1, -1, 1, 1, 1, -1, 1};
  inst.g = {-1, -1, -1, -1, 1, 1, 1, 1};
  const std::string path = temp_path("tdesign_test_instance_pack.json");
  save_instance(inst, path);
  OracleInstance back = load_instance(path);
  CHECK(back.f == inst.f);
  CHECK(back.g == inst.g);
  std::remove(path.c_str());
}

TEST_CASE("oracle argument guards") {
  RandomSource rng(91, 0);
  ComplexMatrix bad = ComplexMatrix::identity(8);
  bad.at(0, 0) = cd(1.5, 0.0);  // not unitary
  CHECK_THROWS_AS(make_instance(bad, OracleMode::correlated, rng), std::invalid_argument);
  // independent mode never touches U
  CHECK_NOTHROW(make_instance(bad, OracleMode::independent, rng));

  ComplexMatrix rect{4, 2};
  CHECK_THROWS_AS(make_instance(rect, OracleMode::correlated, rng), std::invalid_argument);

  ComplexMatrix u = hadamard_transform(3);
  CHECK_THROWS_AS(checking_experiment(u, 50, rng), std::invalid_argument);

  OracleInstance inst = make_instance(u, OracleMode::independent, rng);
  ComplexMatrix mismatched = hadamard_transform(4);
  CHECK_THROWS_AS(accept_probability(mismatched, inst), std::invalid_argument);

  ComplexMatrix odd{6, 6};  // not a power of two
  for (int i = 0; i < 6; ++i) odd.at(i, i) = 1;
  CHECK_THROWS_AS(make_instance(odd, OracleMode::correlated, rng), std::invalid_argument);
}

TEST_CASE("correlated mode tracks the unitary") {
  // for U = I the correlated draw gives g = f exactly: Re(v) = v
  ComplexMatrix id = ComplexMatrix::identity(32);
  RandomSource rng(92, 0);
  OracleInstance inst = make_instance(id, OracleMode::correlated, rng);
  CHECK(inst.f == inst.g);
  CHECK(accept_probability(id, inst) == doctest::Approx(1.0));
}
