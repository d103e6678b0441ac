// Command-line front end: one subcommand per experiment family, JSON config
// files with per-field flag overrides, text-table or JSON document output.
//
// Examples:
//   judrs select --seed 7 --distance 500 --relay 250,0 --relay 150,80
//   judrs region --zeta 0.3,0.5,0.8 --rate 1 --distance 2000 --out region.tsv
//   judrs relay-sweep --seed 42 --trials 10000 --out sweep.tsv
//   judrs dmt --seed 1 --dmt-relays 1 --fixed-rate 1 --trials-per-point 1000000

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "judrs/experiments.hpp"

namespace {

using nlohmann::json;

struct CliOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "table";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> workers;
  std::optional<double> rate;
  std::optional<double> distance;
  std::vector<double> zetas;
  std::vector<std::string> relays;        // "x,y" pairs
  std::vector<std::size_t> relay_counts;
  std::vector<double> contour_levels;
  std::optional<bool> fading;
  // dmt
  std::optional<std::size_t> dmt_relays;
  std::optional<double> multiplexing_r;
  std::optional<double> fixed_rate;
  std::vector<double> snr_db;
  std::vector<std::uint64_t> trials_per_point;
  std::optional<std::string> thresholds;
  // grid
  std::optional<std::size_t> grid_n;
};

json parse_relay_flag(const std::vector<std::string>& flags) {
  json arr = json::array();
  for (const std::string& s : flags) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw judrs::ConfigError("config: --relay: expected x,y (got '" + s + "')");
    try {
      arr.push_back({std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))});
    } catch (const std::exception&) {
      throw judrs::ConfigError("config: --relay: expected numeric x,y (got '" + s + "')");
    }
  }
  return arr;
}

// Layer the file config (if any) under the flag overrides and hand the merged
// document to the library's validating parser.
judrs::ExperimentConfig build_config(const std::string& experiment, const CliOptions& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw judrs::ConfigError("config: cannot open '" + o.config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw judrs::ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw judrs::ConfigError("config: top level must be an object");
  }
  doc["experiment"] = experiment;
  if (o.seed) doc["seed"] = *o.seed;
  if (o.trials) doc["trials"] = *o.trials;
  if (o.workers) doc["workers"] = *o.workers;
  if (o.rate) doc["rate_r"] = *o.rate;
  if (o.distance) doc["d_ms_bs_m"] = *o.distance;
  if (!o.zetas.empty()) doc["zeta"] = o.zetas;
  if (!o.relays.empty()) doc["relays"] = parse_relay_flag(o.relays);
  if (!o.relay_counts.empty()) doc["relay_counts"] = o.relay_counts;
  if (!o.contour_levels.empty()) doc["contour_levels"] = o.contour_levels;
  if (o.fading) doc["fading"] = *o.fading;
  if (o.grid_n) {
    const double d = doc.value("d_ms_bs_m", 500.0);
    doc["grid"] = {{"x_min_m", -0.6 * d}, {"x_max_m", 1.6 * d},
                   {"y_min_m", -0.6 * d}, {"y_max_m", 1.6 * d},
                   {"nx", *o.grid_n},     {"ny", *o.grid_n}};
  }
  json dmt = doc.contains("dmt") ? doc["dmt"] : json::object();
  if (o.dmt_relays) dmt["relay_count"] = *o.dmt_relays;
  if (o.multiplexing_r) dmt["multiplexing_r"] = *o.multiplexing_r;
  if (o.fixed_rate) dmt["fixed_rate"] = *o.fixed_rate;
  if (!o.snr_db.empty()) dmt["snr_db"] = o.snr_db;
  if (!o.trials_per_point.empty()) dmt["trials_per_point"] = o.trials_per_point;
  if (o.thresholds) dmt["thresholds"] = *o.thresholds;
  if (!dmt.empty()) doc["dmt"] = dmt;

  return judrs::parse_config(doc.dump());
}

int emit(const judrs::RunResult& result, const CliOptions& o) {
  const judrs::OutputFormat fmt = o.format == "document"
                                      ? judrs::OutputFormat::document
                                      : judrs::OutputFormat::table;
  const std::string text = judrs::render(result, fmt);
  if (o.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << o.out_path << "'\n";
    return 3;
  }
  out << text;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient joint uplink/downlink relay-selection simulator"};
  app.require_subcommand(1);

  CliOptions o;
  const std::vector<std::string> experiments = {"select",      "region",
                                                "optimal-location", "relay-sweep",
                                                "traffic-sweep", "dmt"};
  std::string chosen;
  for (const std::string& name : experiments) {
    CLI::App* sub = app.add_subcommand(name);
    sub->callback([&chosen, name] { chosen = name; });
    sub->add_option("--config", o.config_path, "JSON configuration file");
    sub->add_option("--out", o.out_path, "output path (default: stdout)");
    sub->add_option("--format", o.format, "table|document")
        ->check(CLI::IsMember({"table", "document"}));
    sub->add_option("--seed", o.seed, "RNG seed (required for stochastic runs)");
    sub->add_option("--trials", o.trials, "Monte-Carlo trials");
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--rate", o.rate, "end-to-end spectral efficiency R, bits/s/Hz");
    sub->add_option("--distance", o.distance, "MS-BS distance, m");
    sub->add_option("--zeta", o.zetas, "uplink traffic share(s)")->delimiter(',');
    sub->add_option("--relay", o.relays, "relay position x,y in meters (repeatable)");
    sub->add_option("--relay-counts", o.relay_counts, "relay population sizes")
        ->delimiter(',');
    sub->add_option("--levels", o.contour_levels, "contour levels")->delimiter(',');
    sub->add_flag("--fading,!--no-fading", o.fading, "Rayleigh fading on/off");
    sub->add_option("--grid-n", o.grid_n, "grid resolution (n x n)");
    sub->add_option("--dmt-relays", o.dmt_relays, "relay count for dmt runs");
    sub->add_option("--multiplexing-r", o.multiplexing_r, "multiplexing gain r");
    sub->add_option("--fixed-rate", o.fixed_rate, "fixed rate instead of r*log2(rho)");
    sub->add_option("--snr-db", o.snr_db, "SNR grid in dB")->delimiter(',');
    sub->add_option("--trials-per-point", o.trials_per_point, "trials per SNR point")
        ->delimiter(',');
    sub->add_option("--thresholds", o.thresholds, "capacity|mqam")
        ->check(CLI::IsMember({"capacity", "mqam"}));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const judrs::ExperimentConfig config = build_config(chosen, o);
    const judrs::RunResult result = judrs::run_experiment(config);
    return emit(result, o);
  } catch (const judrs::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
