#pragma once

#include <optional>

#include "qoper/instance_io.hpp"

namespace qoper {

struct CheckRecord {
  std::string name;
  std::string k_or_word;
  int i = 0;  // 1-based node, 0 when not applicable
  double sup_residual = 0;
  bool pass = true;
  bool counts = true;  // false: informational, excluded from the exit code
  std::vector<std::string> witnesses;
};

struct Report {
  std::string command;
  nlohmann::json instance;
  std::vector<CheckRecord> checks;
  nlohmann::json body = nlohmann::json::object();
  std::vector<std::string> diagnostics;
  std::vector<std::pair<std::string, double>> timings;
  int exit_code = 0;

  void add(CheckRecord c);
  void finish();  // sets exit_code from the counting checks (0 or 1)
};

struct RunOptions {
  std::optional<double> tol;
  int seeds = 32;
  std::optional<std::uint64_t> seed;
  std::string word;
  bool exact = false;
  bool parallel = true;
};

Report run_solve(const InstanceFile& f, const RunOptions& opt);
Report run_verify(const InstanceFile& f, const RunOptions& opt);
Report run_backlund(const InstanceFile& f, const RunOptions& opt);
Report run_wronskian(const InstanceFile& f, const RunOptions& opt);
Report run_identities(const std::optional<InstanceFile>& f, const RunOptions& opt);

nlohmann::json report_json(const Report& r, bool with_timings = true);
std::string report_csv(const Report& r);
std::string report_digest(const Report& r);  // SHA-256 of the report without timings
std::string sha256_hex(const std::string& s);

// Entry point shared by the executable and the tests; returns the exit code.
int cli_main(int argc, char** argv);

}  // namespace qoper
