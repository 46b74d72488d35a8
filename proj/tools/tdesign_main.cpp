#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tdesign/circuits.hpp"
#include "tdesign/dispersion.hpp"
#include "tdesign/distinguish.hpp"
#include "tdesign/gap_checks.hpp"
#include "tdesign/kwise.hpp"
#include "tdesign/lambda2.hpp"
#include "tdesign/linalg.hpp"
#include "tdesign/oracle.hpp"
#include "tdesign/report.hpp"
#include "tdesign/sparse.hpp"
#include "tdesign/x_matrix.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tdesign;

struct GlobalOpts {
  std::uint64_t seed = 20260818ULL;
  std::string out;
  std::string format = "csv";
  std::string table_path;
  std::string plot_path;
  std::string plot_kind = "auto";
};

TargetCheck equality_target(const std::string& name, double value, double target,
                            double tolerance) {
  TargetCheck t;
  t.name = name;
  t.value = value;
  t.target = target;
  t.tolerance = tolerance;
  t.has_target = true;
  t.pass = std::abs(value - target) <= tolerance;
  return t;
}

TargetCheck upper_bound_target(const std::string& name, double value, double bound,
                               double slack = 0.0) {
  TargetCheck t;
  t.name = name;
  t.value = value;
  t.target = bound;
  t.tolerance = slack;
  t.has_target = true;
  t.pass = value <= bound + slack;
  return t;
}

TargetCheck lower_bound_target(const std::string& name, double value, double bound,
                               double slack = 0.0) {
  TargetCheck t;
  t.name = name;
  t.value = value;
  t.target = bound;
  t.tolerance = slack;
  t.has_target = true;
  t.pass = value >= bound - slack;
  return t;
}

// identity|hadamard|fourier|sample|blockdiag or a circuit-file path
ComplexMatrix make_named_unitary(const std::string& name, int n, int length,
                                 std::uint64_t seed) {
  const bool named = name == "identity" || name == "hadamard" || name == "fourier" ||
                     name == "sample" || name == "blockdiag";
  if (named && (n < 1 || n > 14))
    throw std::invalid_argument("--n must be in 1..14 for unitary '" + name + "'");
  if (name == "identity") return ComplexMatrix::identity(1 << n);
  if (name == "hadamard") return hadamard_transform(n);
  if (name == "fourier") return fourier_unitary(std::size_t(1) << n);
  if (name == "sample") return compile(sample_circuit_seeded(n, length, CircuitModel::local, seed));
  if (name == "blockdiag") {
    if ((1 << n) % 4 != 0) throw std::invalid_argument("blockdiag needs n >= 2");
    RandomSource rng(seed, 11);
    return block_diagonal_haar((1 << n) / 4, 4, rng);
  }
  const Circuit c = load_circuit(name);
  if (n != 0 && c.n != n)
    throw std::invalid_argument("circuit file acts on " + std::to_string(c.n) +
                                " qubits but --n is " + std::to_string(n));
  return compile(c);
}

int finalize(const GlobalOpts& g, ExperimentReport& rep) {
  rep.provenance.version = tdesign_version();
  rep.provenance.timestamp = iso_timestamp();
  rep.provenance.seed = g.seed;
  std::string out = g.out;
  if (out.empty()) {
    std::string dir = ".";
    if (const char* e = std::getenv("TDESIGN_OUT_DIR")) dir = e;
    out = dir + "/" + rep.command + "_report.json";
  }
  write_report(rep, out);
  if (!g.table_path.empty()) emit_table(rep, g.format, g.table_path);
  if (!g.plot_path.empty()) {
    std::string kind = g.plot_kind;
    if (kind == "auto") {
      if (rep.results.contains("lambda2"))
        kind = "decay";
      else if (rep.results.contains("c_values"))
        kind = "histogram";
      else
        throw std::invalid_argument("cannot infer --plot-kind for this report");
    }
    emit_plotdata(rep, kind, g.plot_path);
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral gaps of random-circuit moment operators and the classical side of "
               "circuit checking"};
  app.set_config("--config", "", "INI config file; command-line flags win");
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "report path (default <outdir>/<command>_report.json)");
  app.add_option("--format", g.format, "table format for --table")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--table", g.table_path, "emit the flat target table to this path");
  app.add_option("--plot", g.plot_path, "emit two-column plot data to this path");
  app.add_option("--plot-kind", g.plot_kind, "decay|histogram|auto")
      ->check(CLI::IsMember({"auto", "decay", "histogram"}))
      ->capture_default_str();

  struct {
    int t = 2;
    int n = 3;
    std::string model = "local";
    double tol = 1e-8;
  } gap_o;
  auto* gap_cmd = app.add_subcommand("gap", "lambda2 of the moment operator M_{t,n}");
  gap_cmd->add_option("--t", gap_o.t, "moment order (1..3)")->capture_default_str();
  gap_cmd->add_option("--n", gap_o.n, "sites")->capture_default_str();
  gap_cmd->add_option("--model", gap_o.model, "local|uniform")
      ->check(CLI::IsMember({"local", "uniform"}))
      ->capture_default_str();
  gap_cmd->add_option("--tol", gap_o.tol, "power-iteration residual tolerance")
      ->capture_default_str();

  struct {
    int t = 2;
  } xm_o;
  auto* xm_cmd = app.add_subcommand("xmatrix", "three-site compressed chain spectrum");
  xm_cmd->add_option("--t", xm_o.t, "moment order (2 or 3)")->capture_default_str();

  struct {
    std::string unitary;
    int n = 0;
    int length = 200;
    int trials = 0;
  } disp_o;
  auto* disp_cmd = app.add_subcommand("dispersion", "dispersiveness C(U) or its tail over "
                                                    "sampled circuits");
  disp_cmd->add_option("--unitary", disp_o.unitary,
                       "identity|hadamard|fourier|sample|blockdiag|circuit-file")
      ->required();
  disp_cmd->add_option("--n", disp_o.n, "qubits")->capture_default_str();
  disp_cmd->add_option("--length", disp_o.length, "gates per sampled circuit")
      ->capture_default_str();
  disp_cmd->add_option("--trials", disp_o.trials, "sampled circuits (0 = single-unitary mode)")
      ->capture_default_str();

  struct {
    std::string unitary;
    int n = 0;
    long trials = 1000;
    std::string mode = "both";
  } chk_o;
  auto* chk_cmd = app.add_subcommand("checking", "acceptance probability of the checking "
                                                 "experiment");
  chk_cmd->add_option("--unitary", chk_o.unitary, "unitary name or circuit file")->required();
  chk_cmd->add_option("--n", chk_o.n, "qubits")->capture_default_str();
  chk_cmd->add_option("--trials", chk_o.trials, "instances per mode")->capture_default_str();
  chk_cmd->add_option("--mode", chk_o.mode, "both|independent|correlated")
      ->check(CLI::IsMember({"both", "independent", "correlated"}))
      ->capture_default_str();

  struct {
    std::string unitary;
    int n = 0;
    int k = 2;
    int terms = 20;
    long samples = 100000;
  } kw_o;
  auto* kw_cmd = app.add_subcommand("kwise", "k-term probabilities of the sign string vs the "
                                             "almost-k-wise bound");
  kw_cmd->add_option("--unitary", kw_o.unitary, "unitary name or circuit file")->required();
  kw_cmd->add_option("--n", kw_o.n, "qubits")->capture_default_str();
  kw_cmd->add_option("--k", kw_o.k, "literals per term (1..8)")->capture_default_str();
  kw_cmd->add_option("--terms", kw_o.terms, "random terms to test")->capture_default_str();
  kw_cmd->add_option("--samples", kw_o.samples, "Gaussian draws per estimate")
      ->capture_default_str();

  auto* cls_cmd = app.add_subcommand("classical", "classical upper-bound algorithms");
  cls_cmd->require_subcommand(1);

  struct {
    std::string unitary = "hadamard";
    int n = 6;
    double eps = 0.05;
    int reps = 1000;
    long trials = 10000;
  } dis_o;
  auto* dis_cmd = cls_cmd->add_subcommand("distinguish", "independent-query distinguisher "
                                                         "error rates");
  dis_cmd->add_option("--unitary", dis_o.unitary, "unitary name or circuit file")
      ->capture_default_str();
  dis_cmd->add_option("--n", dis_o.n, "qubits")->capture_default_str();
  dis_cmd->add_option("--eps", dis_o.eps, "failure budget per decision")->capture_default_str();
  dis_cmd->add_option("--reps", dis_o.reps, "repetitions per mode")->capture_default_str();
  dis_cmd->add_option("--trials", dis_o.trials, "Monte-Carlo trials for the pair correlation")
      ->capture_default_str();

  struct {
    std::string unitary = "blockdiag";
    int n = 10;
    int keep = 4;
    double accuracy = 0.01;
    double delta = 0.01;
    std::string mode = "correlated";
  } sp_o;
  auto* sp_cmd = cls_cmd->add_subcommand("sparse", "sparse approximation and Monte-Carlo "
                                                   "overlap against the statevector decision");
  sp_cmd->add_option("--unitary", sp_o.unitary, "unitary name or circuit file")
      ->capture_default_str();
  sp_cmd->add_option("--n", sp_o.n, "qubits")->capture_default_str();
  sp_cmd->add_option("--keep", sp_o.keep, "entries kept per row/column")->capture_default_str();
  sp_cmd->add_option("--accuracy", sp_o.accuracy, "additive accuracy per component")
      ->capture_default_str();
  sp_cmd->add_option("--delta", sp_o.delta, "confidence budget")->capture_default_str();
  sp_cmd->add_option("--mode", sp_o.mode, "instance mode: independent|correlated")
      ->check(CLI::IsMember({"independent", "correlated"}))
      ->capture_default_str();

  struct {
    int d = 2;
    int t = 2;
    long samples = 100000;
  } hs_o;
  auto* hs_cmd = app.add_subcommand("haar-stats", "Monte-Carlo Haar moments vs exact values");
  hs_cmd->add_option("--d", hs_o.d, "unitary dimension")->capture_default_str();
  hs_cmd->add_option("--t", hs_o.t, "moment order")->capture_default_str();
  hs_cmd->add_option("--samples", hs_o.samples, "Haar draws")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    ExperimentReport rep;

    if (gap_cmd->parsed()) {
      rep.command = "gap";
      rep.config = {{"t", gap_o.t},     {"n", gap_o.n},       {"model", gap_o.model},
                    {"tol", gap_o.tol}, {"seed", g.seed}};
      const Model model = parse_model(gap_o.model);
      const GapCertificate cert = lambda2_moment(gap_o.t, gap_o.n, model, gap_o.tol, g.seed);
      rep.results = certificate_json(cert);
      if (model == Model::local && gap_o.n == 3)
        rep.targets.push_back(equality_target("lambda2", cert.lambda2, 0.7,
                                              cert.method == "dense" ? 1e-9 : 1e-6));
      const double bound = model == Model::local
                               ? 1.0 - 1.0 / (5.0 * gap_o.n)
                               : 1.0 - 1.0 / (5.0 * gap_o.n * gap_o.n);
      rep.targets.push_back(upper_bound_target("lambda2_bound", cert.lambda2, bound));
    } else if (xm_cmd->parsed()) {
      rep.command = "xmatrix";
      rep.config = {{"t", xm_o.t}, {"seed", g.seed}};
      const XMatrixResult x = x_matrix(xm_o.t);
      rep.results["t"] = x.t;
      rep.results["dim"] = x.dim;
      rep.results["second_distinct"] = x.second_distinct;
      rep.results["distinct"] = x.distinct;
      rep.results["multiplicity"] = x.multiplicity;
      rep.results["eigenvalues"] = x.eigenvalues;
      rep.targets.push_back(equality_target("second_distinct", x.second_distinct, 1.4, 1e-10));
    } else if (disp_cmd->parsed()) {
      rep.command = "dispersion";
      rep.config = {{"unitary", disp_o.unitary}, {"n", disp_o.n},      {"length", disp_o.length},
                    {"trials", disp_o.trials},   {"seed", g.seed}};
      if (disp_o.trials > 0) {
        if (disp_o.unitary != "sample")
          throw std::invalid_argument("--trials requires --unitary sample");
        const DispersionTail tail =
            dispersiveness_tail_experiment(disp_o.n, disp_o.length, disp_o.trials, g.seed);
        rep.results["n"] = tail.n;
        rep.results["length"] = tail.length;
        rep.results["trials"] = disp_o.trials;
        rep.results["c_values"] = tail.c_values;
        rep.results["min_c"] = tail.min_c;
        rep.results["median_c"] = tail.median_c;
        rep.results["max_c"] = tail.max_c;
        rep.results["below_one"] = tail.below_one;
        const double frac = double(tail.below_one) / double(disp_o.trials);
        const double target = std::pow(2.0, -0.5 * disp_o.n + 1.0);
        const double sigma = std::sqrt(target * (1.0 - target) / double(disp_o.trials));
        rep.targets.push_back(
            upper_bound_target("fraction_c_below_1", frac, target, 3.0 * sigma));
      } else {
        const ComplexMatrix u =
            make_named_unitary(disp_o.unitary, disp_o.n, disp_o.length, g.seed);
        const DispersivenessReport r = dispersiveness(u);
        rep.results["c_value"] = r.c_value;
        rep.results["argmax_row"] = r.argmax_row;
        rep.results["argmax_col"] = r.argmax_col;
        rep.results["modulus"] = r.modulus;
        if (disp_o.unitary == "identity")
          rep.targets.push_back(equality_target("c_value", r.c_value, 0.0, 0.0));
        else if (disp_o.unitary == "hadamard" || disp_o.unitary == "fourier")
          rep.targets.push_back(equality_target("c_value", r.c_value, double(disp_o.n), 0.0));
      }
    } else if (chk_cmd->parsed()) {
      rep.command = "checking";
      rep.config = {{"unitary", chk_o.unitary}, {"n", chk_o.n},   {"trials", chk_o.trials},
                    {"mode", chk_o.mode},       {"seed", g.seed}};
      const ComplexMatrix u = make_named_unitary(chk_o.unitary, chk_o.n, 200, g.seed);
      RandomSource rng(g.seed, 2);
      const auto [ind, corr] = checking_experiment(u, chk_o.trials, rng);
      const int n_qubits = [&] {
        int b = 0;
        while ((1 << b) < u.rows) ++b;
        return b;
      }();
      rep.results["n"] = n_qubits;
      rep.results["trials"] = chk_o.trials;
      if (chk_o.mode != "correlated") {
        rep.results["independent"] = {{"mean_p", ind.mean_p}, {"stderr", ind.stderr_p}};
        TargetCheck t = equality_target("independent_mean_p", ind.mean_p,
                                        std::pow(2.0, -n_qubits), 4.0 * ind.stderr_p);
        t.stderr_e = ind.stderr_p;
        t.has_stderr = true;
        rep.targets.push_back(t);
      }
      if (chk_o.mode != "independent") {
        rep.results["correlated"] = {{"mean_p", corr.mean_p}, {"stderr", corr.stderr_p}};
        TargetCheck t =
            lower_bound_target("correlated_mean_p", corr.mean_p, 0.07, 3.0 * corr.stderr_p);
        t.stderr_e = corr.stderr_p;
        t.has_stderr = true;
        rep.targets.push_back(t);
      }
    } else if (kw_cmd->parsed()) {
      rep.command = "kwise";
      rep.config = {{"unitary", kw_o.unitary}, {"n", kw_o.n},       {"k", kw_o.k},
                    {"terms", kw_o.terms},     {"samples", kw_o.samples}, {"seed", g.seed}};
      if (kw_o.terms < 1) throw std::invalid_argument("--terms must be >= 1");
      const ComplexMatrix u = make_named_unitary(kw_o.unitary, kw_o.n, 200, g.seed);
      const double c_value = dispersiveness(u).c_value;
      const double bound = kwise_bound(kw_o.k, c_value);
      RandomSource term_rng(g.seed, 1);
      std::vector<KTerm> terms;
      terms.reserve(kw_o.terms);
      for (int i = 0; i < kw_o.terms; ++i)
        terms.push_back(random_kterm(kw_o.k, std::size_t(u.rows), term_rng));
      RandomSource est_rng(g.seed, 2);
      const auto estimates = kterm_probabilities(u, terms, kw_o.samples, est_rng);
      rep.results["c_value"] = c_value;
      rep.results["k"] = kw_o.k;
      rep.results["bound"] = bound;
      rep.results["samples"] = kw_o.samples;
      auto arr = ordered_json::array();
      const double scale = std::pow(2.0, kw_o.k);
      for (std::size_t i = 0; i < estimates.size(); ++i) {
        const auto& e = estimates[i];
        const double dev = std::abs(scale * e.probability - 1.0);
        arr.push_back({{"positions", e.term.positions},
                       {"signs", e.term.signs},
                       {"probability", e.probability},
                       {"stderr", e.stderr_p},
                       {"deviation", dev}});
        std::string name = "k" + std::to_string(kw_o.k) + "_term" + std::to_string(i) + "_pos=";
        for (std::size_t p = 0; p < e.term.positions.size(); ++p) {
          if (p) name += '|';
          name += std::to_string(e.term.positions[p]);
        }
        TargetCheck t =
            upper_bound_target(name, dev, bound, 5.0 * scale * e.stderr_p);
        t.stderr_e = scale * e.stderr_p;
        t.has_stderr = true;
        rep.targets.push_back(t);
      }
      rep.results["terms"] = std::move(arr);
    } else if (dis_cmd->parsed()) {
      rep.command = "classical-distinguish";
      rep.config = {{"unitary", dis_o.unitary}, {"n", dis_o.n},         {"eps", dis_o.eps},
                    {"reps", dis_o.reps},       {"trials", dis_o.trials}, {"seed", g.seed}};
      if (dis_o.reps < 1) throw std::invalid_argument("--reps must be >= 1");
      const ComplexMatrix u = make_named_unitary(dis_o.unitary, dis_o.n, 200, g.seed);
      RandomSource seeder(g.seed, 3);
      long ind_errors = 0, corr_errors = 0;
      DistinguishResult last;
      for (int rep_i = 0; rep_i < dis_o.reps; ++rep_i) {
        GeneratedStream si(u, OracleMode::independent, seeder.next_u64());
        if (independent_query_distinguish(u, si, dis_o.eps).decision !=
            OracleMode::independent)
          ++ind_errors;
        GeneratedStream sc(u, OracleMode::correlated, seeder.next_u64());
        last = independent_query_distinguish(u, sc, dis_o.eps);
        if (last.decision != OracleMode::correlated) ++corr_errors;
      }
      RandomSource corr_rng(g.seed, 4);
      const SignCorrelation sc = sign_correlation(u, last.col, last.row, dis_o.trials, corr_rng);
      const double budget = dis_o.eps + 0.02;
      const double ind_rate = double(ind_errors) / double(dis_o.reps);
      const double corr_rate = double(corr_errors) / double(dis_o.reps);
      rep.results["row"] = last.row;
      rep.results["col"] = last.col;
      rep.results["re_effective"] = last.re_effective;
      rep.results["rotated"] = last.rotated;
      rep.results["negated"] = last.negated;
      rep.results["queries"] = last.queries;
      rep.results["threshold"] = last.threshold;
      rep.results["reps"] = dis_o.reps;
      rep.results["independent_errors"] = ind_errors;
      rep.results["correlated_errors"] = corr_errors;
      rep.results["sign_correlation"] = {{"estimate", sc.estimate},
                                         {"stderr", sc.stderr_e},
                                         {"trials", sc.trials}};
      rep.targets.push_back(upper_bound_target("independent_error_rate", ind_rate, budget));
      rep.targets.push_back(upper_bound_target("correlated_error_rate", corr_rate, budget));
      TargetCheck t = lower_bound_target("pair_correlation", sc.estimate,
                                         last.re_effective / 2.0, 3.0 * sc.stderr_e);
      t.stderr_e = sc.stderr_e;
      t.has_stderr = true;
      rep.targets.push_back(t);
    } else if (sp_cmd->parsed()) {
      rep.command = "classical-sparse";
      rep.config = {{"unitary", sp_o.unitary},   {"n", sp_o.n},
                    {"keep", sp_o.keep},         {"accuracy", sp_o.accuracy},
                    {"delta", sp_o.delta},       {"mode", sp_o.mode},
                    {"seed", g.seed}};
      const ComplexMatrix u = make_named_unitary(sp_o.unitary, sp_o.n, 200, g.seed);
      const SparseApproximation ap = sparse_approximate(u, sp_o.keep);
      RandomSource rng(g.seed, 5);
      const OracleInstance inst = make_instance(u, parse_oracle_mode(sp_o.mode), rng);
      RandomSource est_rng(g.seed, 6);
      const SparseOverlapEstimate est = sparse_overlap_estimate(
          ap.matrix, inst.f, inst.g, sp_o.accuracy, sp_o.delta, est_rng);
      // exact <g|Ut|f> straight off the sparse structure
      cd exact = 0.0;
      for (int r = 0; r < ap.matrix.dim; ++r) {
        cd acc = 0.0;
        for (const auto& [c, v] : ap.matrix.rows[r]) acc += v * double(inst.f[c]);
        exact += double(inst.g[r]) * acc;
      }
      exact /= double(ap.matrix.dim);
      const double p_sv = accept_probability(u, inst);
      const double p_sparse = std::norm(est.estimate);
      const bool dec_sv = p_sv >= 0.07;
      const bool dec_sparse = p_sparse >= 0.07;
      rep.results["spectral_error"] = ap.spectral_error;
      rep.results["approximately_sparse"] = ap.approximately_sparse;
      rep.results["max_row_nnz"] = ap.max_row_nnz;
      rep.results["max_col_nnz"] = ap.max_col_nnz;
      rep.results["samples"] = est.samples;
      rep.results["estimate_re"] = est.estimate.real();
      rep.results["estimate_im"] = est.estimate.imag();
      rep.results["stderr_re"] = est.stderr_re;
      rep.results["stderr_im"] = est.stderr_im;
      rep.results["exact_re"] = exact.real();
      rep.results["exact_im"] = exact.imag();
      rep.results["p_statevector"] = p_sv;
      rep.results["p_sparse"] = p_sparse;
      rep.results["decision_statevector"] = dec_sv;
      rep.results["decision_sparse"] = dec_sparse;
      const double dev = std::max(std::abs(est.estimate.real() - exact.real()),
                                  std::abs(est.estimate.imag() - exact.imag()));
      rep.targets.push_back(upper_bound_target("overlap_component_dev", dev, sp_o.accuracy));
      rep.targets.push_back(
          equality_target("decisions_agree", dec_sparse == dec_sv ? 1.0 : 0.0, 1.0, 0.0));
    } else if (hs_cmd->parsed()) {
      rep.command = "haar-stats";
      rep.config = {{"d", hs_o.d}, {"t", hs_o.t}, {"samples", hs_o.samples}, {"seed", g.seed}};
      RandomSource rng(g.seed, 8);
      const MonomialReport r = monomial_moment_check(hs_o.t, hs_o.d, hs_o.samples, rng);
      rep.results["d"] = r.d;
      rep.results["t"] = r.t;
      rep.results["samples"] = r.samples;
      rep.results["diag_mean"] = r.diag_mean;
      rep.results["diag_exact"] = r.diag_exact;
      rep.results["diag_stderr"] = r.diag_stderr;
      rep.results["offdiag_mean_re"] = r.offdiag_mean_re;
      rep.results["offdiag_mean_im"] = r.offdiag_mean_im;
      rep.results["offdiag_exact"] = r.offdiag_exact;
      rep.results["offdiag_stderr"] = r.offdiag_stderr;
      TargetCheck td = equality_target("diag_moment", r.diag_mean, r.diag_exact,
                                       3.0 * r.diag_stderr);
      td.stderr_e = r.diag_stderr;
      td.has_stderr = true;
      rep.targets.push_back(td);
      TargetCheck tr = equality_target("offdiag_re", r.offdiag_mean_re, r.offdiag_exact,
                                       3.0 * r.offdiag_stderr);
      tr.stderr_e = r.offdiag_stderr;
      tr.has_stderr = true;
      rep.targets.push_back(tr);
      TargetCheck ti =
          equality_target("offdiag_im", r.offdiag_mean_im, 0.0, 3.0 * r.offdiag_stderr);
      ti.stderr_e = r.offdiag_stderr;
      ti.has_stderr = true;
      rep.targets.push_back(ti);
    } else {
      std::cerr << "usage error: no subcommand\n";
      return 2;
    }

    return finalize(g, rep);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best lambda2 " << e.best.lambda2 << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
