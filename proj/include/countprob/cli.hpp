#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "countprob/model.hpp"

namespace countprob::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInadmissible = 2,
  kInvalidInput = 3,
  kToleranceViolation = 4,
};

/// One job, either from flags or from a --config JSON file with the same keys.
struct JobConfig {
  std::string command;  // limit-pmf | finite-pmf | oracle-pmf | cf | sample | estimate | verify
  std::optional<CorrelationModel> model;
  std::string output_format = "csv";  // csv | json
  std::optional<std::uint64_t> seed;
  double mass_tolerance = 1e-12;

  std::optional<std::int64_t> n;
  std::string mixture;  // p:w,p:w
  std::string u_grid;   // start:stop:count
  std::int64_t count = 0;
  std::string input;    // counts file, "-" for stdin
  int l_max = 2;
  int trials = 50;
  int bootstrap = 200;
};

JobConfig job_from_json(const nlohmann::json& j);

/// Runs a parsed job; returns the process exit code.
int execute(const JobConfig& job, std::ostream& out, std::ostream& err);

/// Parses argv (without the program name) and executes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace countprob::cli
