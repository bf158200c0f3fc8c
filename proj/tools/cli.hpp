#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavebound/estimator.hpp"

namespace wavebound::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidArguments = 2,
  kRegimeViolation = 3,
  kInsufficientData = 4,
};

struct RunConfig {
  std::string command;
  double p = 2.0;
  double kappa = 1.0;
  double gamma = 0.01;
  double flux = 1e3;
  std::optional<double> period;
  int trials = 200;
  std::uint64_t seed = 1;
  Mode mode = Mode::periodic;
  int truncation = 512;
  Taper taper = Taper::tukey;
  int oversample = 64;
  int intervals = 64;
  std::optional<std::size_t> pulses;
  std::vector<double> fluxes;
  std::optional<std::string> only;
  std::string output_format = "json";
  std::optional<std::string> output_path;
  int jobs = 1;
};

// Keys mirror the RunConfig field names. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

// Effective configuration as echoed in reports. `jobs` and the output
// destination are left out so reports do not depend on them.
nlohmann::json to_json(const RunConfig& cfg);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavebound::cli
