#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tdesign/lambda2.hpp"

namespace tdesign {

// One measured quantity, optionally checked against a target. `pass` is
// decided by the producer (equality-within-tolerance or one-sided bounds);
// the table just records it.
struct TargetCheck {
  std::string name;
  double value = 0.0;
  double stderr_e = 0.0;
  bool has_stderr = false;
  double target = 0.0;
  double tolerance = 0.0;
  bool has_target = false;
  bool pass = true;
};

struct Provenance {
  std::string version;
  std::string timestamp;
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<TargetCheck> targets;
  Provenance provenance;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

const char* tdesign_version();

// ISO-8601 UTC. SOURCE_DATE_EPOCH overrides the clock so identical configs
// reproduce byte-identical reports.
std::string iso_timestamp();

void write_report(const ExperimentReport& report, const std::string& path);

// Flat table, one row per target check: name,value,stderr,target,tolerance,
// pass. format: "csv" or "json". No targets -> header-only / empty array.
void emit_table(const ExperimentReport& report, const std::string& format,
                const std::string& path);

// Two-column numeric text. "decay": (k, lambda2^k) for k = 0..20 from a gap
// report; "histogram": (bin, count) in 0.5-wide bins from a report carrying
// c_values. Incompatible report -> usage error.
void emit_plotdata(const ExperimentReport& report, const std::string& kind,
                   const std::string& path);

nlohmann::ordered_json certificate_json(const GapCertificate& cert);

}  // namespace tdesign
