#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qwork/qubit_example.hpp"
#include "qwork/work_stats.hpp"

namespace qwork::cli {

/// Malformed or invalid configuration; the message names the field or line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::vector<double>> q;
  std::optional<std::vector<double>> u;
  std::optional<double> beta;
};

struct CliConfig {
  std::string schedule_type;
  Process process;
  DensityMatrix rho0;
  // set when the schedule is the qubit example
  std::optional<qubit::QubitProcessParams> qubit;
  double beta = 1.0;
  std::vector<double> q_grid;
  std::vector<double> q_prime_grid;
  std::vector<double> u_grid;
  std::vector<double> tau_grid;
  PropagatorOptions propagator;
};

/// Parses a JSON document (comments allowed). `source` labels diagnostics.
CliConfig parse_config(const std::string& text, const std::string& source, const Overrides& overrides = {});
CliConfig load_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides = {});

/// Complex matrix as row-major nested arrays of [re, im] pairs.
nlohmann::ordered_json matrix_to_json(const Matrix& m);

/// Config that re-creates the resolved process and state exactly.
nlohmann::ordered_json resolved_config(const CliConfig& cfg);

}  // namespace qwork::cli
