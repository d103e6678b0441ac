#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "judrs/geometry.hpp"
#include "judrs/outage_dmt.hpp"
#include "judrs/region_analysis.hpp"
#include "judrs/system_params.hpp"

namespace judrs {

// Experiment orchestration: configuration ingestion, deterministic
// Monte-Carlo runs behind the CLI subcommands, and text export with a
// provenance header so any output can be reproduced from its own metadata.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind {
  select,
  region,
  optimal_location,
  relay_sweep,
  traffic_sweep,
  dmt,
};

std::string to_string(ExperimentKind kind);

struct SweepScenario {
  double d_ms_bs_m = 450.0;
  bool direct_link = true;  // false models the blocked-direct-path case
};

struct DmtSettings {
  std::size_t relay_count = 1;
  std::optional<double> multiplexing_r;
  std::optional<double> fixed_rate;
  std::vector<double> snr_db = {10.0, 15.0, 20.0, 25.0};
  std::vector<std::uint64_t> trials_per_point = {100000};
  ThresholdMode thresholds = ThresholdMode::capacity;
  std::vector<Vec2> relay_positions;  // empty: all relays at the midpoint
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::select;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t trials = 10000;
  double rate_r = 3.0;
  std::vector<double> zeta_list = {0.5};
  SystemParams params = SystemParams::defaults();
  double d_ms_bs_m = 500.0;                  // select/region/optimal-location
  std::vector<SweepScenario> sweep_scenarios = {{450.0, true}, {1200.0, false}};
  std::vector<std::size_t> relay_counts = {1, 2, 4, 8};
  double placement_diameter_factor = 1.2;    // relay disc diameter in units of D
  std::optional<GridSpec> grid;              // default: 201x201 over [-0.6D, 1.6D]^2
  std::vector<double> contour_levels = {0.0};
  DmtSettings dmt;
  std::vector<Vec2> select_relays;
  bool select_fading = true;

  void validate() const;
};

// Parses and validates a JSON configuration document. Unknown keys are
// rejected with their field path; defaults follow the standard parameter
// table. Stochastic experiments must carry an explicit seed.
ExperimentConfig parse_config(const std::string& document);

// Canonical JSON of the effective (defaults-applied) configuration; its
// FNV-1a hash is embedded in every output.
std::string effective_config_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;  // unit-annotated names
  std::vector<std::vector<std::string>> rows;
};

struct RunResult {
  std::vector<ResultTable> tables;
  std::string config_hash_hex;
  std::uint64_t seed = 0;
};

enum class OutputFormat { table, document };

std::string render(const RunResult& result, OutputFormat format);

// Experiment drivers. All are deterministic in (config, config.seed) and
// independent of config.workers.
RunResult run_select(const ExperimentConfig& config);
RunResult run_region(const ExperimentConfig& config);
RunResult run_optimal_location(const ExperimentConfig& config);
RunResult run_relay_sweep(const ExperimentConfig& config);
RunResult run_traffic_sweep(const ExperimentConfig& config);
RunResult run_dmt(const ExperimentConfig& config);

RunResult run_experiment(const ExperimentConfig& config);

std::string format_number(double v);

} // namespace judrs
