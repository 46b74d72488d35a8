#include "tdesign/report.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace tdesign {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double x) { return nlohmann::json(x).dump(); }  // shortest round-trip

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

ordered_json target_json(const TargetCheck& t) {
  ordered_json j;
  j["name"] = t.name;
  j["value"] = t.value;
  if (t.has_stderr) j["stderr"] = t.stderr_e;
  if (t.has_target) {
    j["target"] = t.target;
    j["tolerance"] = t.tolerance;
  }
  j["pass"] = t.pass;
  return j;
}

}  // namespace

const char* tdesign_version() { return "0.1.0"; }

std::string iso_timestamp() {
  std::time_t t = 0;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
  else
    t = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

bool ExperimentReport::all_pass() const {
  for (const auto& t : targets)
    if (!t.pass) return false;
  return true;
}

ordered_json ExperimentReport::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["config"] = config;
  j["results"] = results;
  auto arr = ordered_json::array();
  for (const auto& t : targets) arr.push_back(target_json(t));
  j["targets"] = std::move(arr);
  j["provenance"] = {{"version", provenance.version},
                     {"timestamp", provenance.timestamp},
                     {"seed", provenance.seed}};
  return j;
}

void write_report(const ExperimentReport& report, const std::string& path) {
  auto out = open_out(path);
  out << report.to_json().dump(2) << '\n';
}

void emit_table(const ExperimentReport& report, const std::string& format,
                const std::string& path) {
  if (format == "csv") {
    auto out = open_out(path);
    out << "name,value,stderr,target,tolerance,pass\n";
    for (const auto& t : report.targets) {
      out << t.name << ',' << num(t.value) << ',';
      if (t.has_stderr) out << num(t.stderr_e);
      out << ',';
      if (t.has_target) out << num(t.target);
      out << ',';
      if (t.has_target) out << num(t.tolerance);
      out << ',' << (t.pass ? "true" : "false") << '\n';
    }
    return;
  }
  if (format == "json") {
    auto out = open_out(path);
    auto arr = ordered_json::array();
    for (const auto& t : report.targets) arr.push_back(target_json(t));
    out << arr.dump(2) << '\n';
    return;
  }
  throw std::invalid_argument("emit_table: unknown format '" + format + "' (csv|json)");
}

void emit_plotdata(const ExperimentReport& report, const std::string& kind,
                   const std::string& path) {
  if (kind == "decay") {
    if (!report.results.contains("lambda2"))
      throw std::invalid_argument("emit_plotdata: decay needs a gap report with lambda2");
    const double lambda2 = report.results["lambda2"].get<double>();
    auto out = open_out(path);
    double d = 1.0;
    for (int k = 0; k <= 20; ++k) {
      out << k << ' ' << num(d) << '\n';
      d *= lambda2;
    }
    return;
  }
  if (kind == "histogram") {
    if (!report.results.contains("c_values"))
      throw std::invalid_argument("emit_plotdata: histogram needs a report with c_values");
    const auto vals = report.results["c_values"].get<std::vector<double>>();
    int max_bin = 0;
    std::vector<long> counts(1, 0);
    for (double c : vals) {
      int b = c <= 0.0 ? 0 : static_cast<int>(std::floor(2.0 * c));
      if (b > max_bin) {
        max_bin = b;
        counts.resize(max_bin + 1, 0);
      }
      ++counts[b];
    }
    auto out = open_out(path);
    for (int b = 0; b <= max_bin; ++b) out << num(0.5 * b) << ' ' << counts[b] << '\n';
    return;
  }
  throw std::invalid_argument("emit_plotdata: unknown kind '" + kind + "' (decay|histogram)");
}

nlohmann::ordered_json certificate_json(const GapCertificate& cert) {
  ordered_json j;
  j["t"] = cert.t;
  j["n"] = cert.n;
  j["model"] = model_name(cert.model);
  j["lambda2"] = cert.lambda2;
  j["method"] = cert.method;
  j["iterations"] = cert.iterations;
  j["residual"] = cert.residual;
  j["tolerance"] = cert.tolerance;
  j["seed"] = cert.seed;
  return j;
}

}  // namespace tdesign
