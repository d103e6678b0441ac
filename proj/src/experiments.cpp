#include "judrs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "judrs/channel.hpp"
#include "judrs/link_budget.hpp"
#include "judrs/parallel.hpp"
#include "judrs/protocol.hpp"
#include "judrs/relay_selection.hpp"
#include "judrs/rng.hpp"
#include "judrs/units.hpp"

namespace judrs {

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void check_known_keys(const json& obj, const std::string& path,
                      std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + key, "expected a number");
  return obj[key].get<double>();
}

} // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::select: return "select";
    case ExperimentKind::region: return "region";
    case ExperimentKind::optimal_location: return "optimal-location";
    case ExperimentKind::relay_sweep: return "relay-sweep";
    case ExperimentKind::traffic_sweep: return "traffic-sweep";
    case ExperimentKind::dmt: return "dmt";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void ExperimentConfig::validate() const {
  params.validate();
  if (!(rate_r > 0.0)) throw ConfigError("config: rate_r: must be positive");
  if (zeta_list.empty()) throw ConfigError("config: zeta: at least one value required");
  for (double z : zeta_list)
    if (!(z >= 0.0 && z <= 1.0)) throw ConfigError("config: zeta: must be in [0, 1]");
  if (!(d_ms_bs_m > 0.0)) throw ConfigError("config: d_ms_bs_m: must be positive");
  if (trials < 1) throw ConfigError("config: trials: must be at least 1");
  if (workers < 1) throw ConfigError("config: workers: must be at least 1");
  if (!(placement_diameter_factor > 0.0))
    throw ConfigError("config: placement_diameter_factor: must be positive");
  if (relay_counts.empty())
    throw ConfigError("config: relay_counts: at least one value required");
  for (std::size_t n : relay_counts)
    if (n < 1) throw ConfigError("config: relay_counts: counts must be at least 1");
  if (sweep_scenarios.empty())
    throw ConfigError("config: scenarios: at least one scenario required");
  for (const SweepScenario& s : sweep_scenarios)
    if (!(s.d_ms_bs_m > 0.0))
      throw ConfigError("config: scenarios.d_ms_bs_m: must be positive");
  if (grid) grid->validate();
}

namespace {

SystemParams parse_params(const json& obj, const std::string& path) {
  check_known_keys(obj, "params",
                   {"p_max_dbm", "p_c_dbm", "k_db", "bandwidth_hz", "carrier_hz",
                    "n0_dbm_per_hz", "pathloss_exp", "coding_gain_db", "code_rate",
                    "target_ber"});
  SystemParams p = SystemParams::defaults();
  const double p_max_dbm = get_number(obj, path, "p_max_dbm", units::watt_to_dbm(p.p_max_w));
  const double p_c_dbm = get_number(obj, path, "p_c_dbm", units::watt_to_dbm(p.p_c_w));
  p.p_max_w = units::dbm_to_watt(p_max_dbm);
  p.p_c_w = units::dbm_to_watt(p_c_dbm);
  p.k_gain = units::db_to_linear(get_number(obj, path, "k_db", units::linear_to_db(p.k_gain)));
  p.bandwidth_hz = get_number(obj, path, "bandwidth_hz", p.bandwidth_hz);
  p.carrier_hz = get_number(obj, path, "carrier_hz", p.carrier_hz);
  p.noise_n0_w_per_hz = units::dbm_to_watt(
      get_number(obj, path, "n0_dbm_per_hz", units::watt_to_dbm(p.noise_n0_w_per_hz)));
  p.pathloss_exp = get_number(obj, path, "pathloss_exp", p.pathloss_exp);
  p.coding_gain = units::db_to_linear(
      get_number(obj, path, "coding_gain_db", units::linear_to_db(p.coding_gain)));
  p.code_rate = get_number(obj, path, "code_rate", p.code_rate);
  p.target_ber = get_number(obj, path, "target_ber", p.target_ber);
  if (p.p_c_w >= p.p_max_w)
    fail(path + "p_c_dbm", "circuit power must be below the power budget (p_c_dbm=" +
                               format_number(p_c_dbm) + ", p_max_dbm=" +
                               format_number(p_max_dbm) + ")");
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    fail("params", e.what());
  }
  return p;
}

std::vector<Vec2> parse_positions(const json& arr, const std::string& path) {
  if (!arr.is_array()) fail(path, "expected an array of [x_m, y_m] pairs");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& pt = arr[i];
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
      fail(path + "[" + std::to_string(i) + "]", "expected [x_m, y_m]");
    out.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }
  return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  check_known_keys(root, "",
                   {"experiment", "seed", "workers", "trials", "rate_r", "zeta",
                    "params", "d_ms_bs_m", "scenarios", "relay_counts",
                    "placement_diameter_factor", "grid", "contour_levels", "dmt",
                    "relays", "fading"});

  ExperimentConfig c;

  if (!root.contains("experiment") || !root["experiment"].is_string())
    fail("experiment", "required string: select|region|optimal-location|relay-sweep|"
                       "traffic-sweep|dmt");
  const std::string kind = root["experiment"].get<std::string>();
  if (kind == "select") c.kind = ExperimentKind::select;
  else if (kind == "region") c.kind = ExperimentKind::region;
  else if (kind == "optimal-location") c.kind = ExperimentKind::optimal_location;
  else if (kind == "relay-sweep") c.kind = ExperimentKind::relay_sweep;
  else if (kind == "traffic-sweep") c.kind = ExperimentKind::traffic_sweep;
  else if (kind == "dmt") c.kind = ExperimentKind::dmt;
  else fail("experiment", "unknown experiment '" + kind + "'");

  if (root.contains("params")) {
    if (!root["params"].is_object()) fail("params", "expected an object");
    c.params = parse_params(root["params"], "params.");
  }

  c.rate_r = get_number(root, "", "rate_r", c.rate_r);
  if (!(c.rate_r > 0.0)) fail("rate_r", "must be positive");

  if (root.contains("zeta")) {
    const json& z = root["zeta"];
    c.zeta_list.clear();
    if (z.is_number()) {
      c.zeta_list.push_back(z.get<double>());
    } else if (z.is_array()) {
      for (const json& v : z) {
        if (!v.is_number()) fail("zeta", "entries must be numbers");
        c.zeta_list.push_back(v.get<double>());
      }
    } else {
      fail("zeta", "expected a number or an array");
    }
  }
  for (double z : c.zeta_list)
    if (!(z >= 0.0 && z <= 1.0)) fail("zeta", "must be in [0, 1]");

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  } else {
    const bool stochastic = c.kind == ExperimentKind::relay_sweep ||
                            c.kind == ExperimentKind::traffic_sweep ||
                            c.kind == ExperimentKind::dmt ||
                            c.kind == ExperimentKind::select;
    if (stochastic) fail("seed", "required for stochastic experiments");
  }

  if (root.contains("workers")) {
    if (!root["workers"].is_number_unsigned()) fail("workers", "expected a positive integer");
    c.workers = root["workers"].get<unsigned>();
  }
  if (root.contains("trials")) {
    if (!root["trials"].is_number_unsigned()) fail("trials", "expected a positive integer");
    c.trials = root["trials"].get<std::uint64_t>();
  }

  c.d_ms_bs_m = get_number(root, "", "d_ms_bs_m", c.d_ms_bs_m);

  if (root.contains("scenarios")) {
    if (!root["scenarios"].is_array()) fail("scenarios", "expected an array");
    c.sweep_scenarios.clear();
    std::size_t i = 0;
    for (const json& s : root["scenarios"]) {
      const std::string path = "scenarios[" + std::to_string(i++) + "]";
      if (!s.is_object()) fail(path, "expected an object");
      check_known_keys(s, path, {"d_ms_bs_m", "direct_link"});
      SweepScenario sc;
      sc.d_ms_bs_m = get_number(s, path + ".", "d_ms_bs_m", 450.0);
      if (s.contains("direct_link")) {
        if (!s["direct_link"].is_boolean()) fail(path + ".direct_link", "expected a boolean");
        sc.direct_link = s["direct_link"].get<bool>();
      }
      c.sweep_scenarios.push_back(sc);
    }
  }

  if (root.contains("relay_counts")) {
    if (!root["relay_counts"].is_array()) fail("relay_counts", "expected an array");
    c.relay_counts.clear();
    for (const json& v : root["relay_counts"]) {
      if (!v.is_number_unsigned()) fail("relay_counts", "entries must be positive integers");
      c.relay_counts.push_back(v.get<std::size_t>());
    }
  }

  c.placement_diameter_factor =
      get_number(root, "", "placement_diameter_factor", c.placement_diameter_factor);

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) fail("grid", "expected an object");
    check_known_keys(g, "grid", {"x_min_m", "x_max_m", "y_min_m", "y_max_m", "nx", "ny"});
    GridSpec spec;
    spec.x_min = get_number(g, "grid.", "x_min_m", -0.6 * c.d_ms_bs_m);
    spec.x_max = get_number(g, "grid.", "x_max_m", 1.6 * c.d_ms_bs_m);
    spec.y_min = get_number(g, "grid.", "y_min_m", -0.6 * c.d_ms_bs_m);
    spec.y_max = get_number(g, "grid.", "y_max_m", 1.6 * c.d_ms_bs_m);
    spec.nx = static_cast<std::size_t>(get_number(g, "grid.", "nx", 201));
    spec.ny = static_cast<std::size_t>(get_number(g, "grid.", "ny", 201));
    try {
      spec.validate();
    } catch (const std::domain_error& e) {
      fail("grid", e.what());
    }
    c.grid = spec;
  }

  if (root.contains("contour_levels")) {
    if (!root["contour_levels"].is_array()) fail("contour_levels", "expected an array");
    c.contour_levels.clear();
    for (const json& v : root["contour_levels"]) {
      if (!v.is_number()) fail("contour_levels", "entries must be numbers");
      c.contour_levels.push_back(v.get<double>());
    }
  }

  if (root.contains("dmt")) {
    const json& d = root["dmt"];
    if (!d.is_object()) fail("dmt", "expected an object");
    check_known_keys(d, "dmt",
                     {"relay_count", "multiplexing_r", "fixed_rate", "snr_db",
                      "trials_per_point", "thresholds", "relay_positions"});
    if (d.contains("relay_count")) {
      if (!d["relay_count"].is_number_unsigned())
        fail("dmt.relay_count", "expected a nonnegative integer");
      c.dmt.relay_count = d["relay_count"].get<std::size_t>();
    }
    if (d.contains("multiplexing_r"))
      c.dmt.multiplexing_r = get_number(d, "dmt.", "multiplexing_r", 0.5);
    if (d.contains("fixed_rate"))
      c.dmt.fixed_rate = get_number(d, "dmt.", "fixed_rate", 1.0);
    if (c.dmt.multiplexing_r && c.dmt.fixed_rate)
      fail("dmt", "multiplexing_r and fixed_rate are mutually exclusive");
    if (d.contains("snr_db")) {
      if (!d["snr_db"].is_array()) fail("dmt.snr_db", "expected an array");
      c.dmt.snr_db.clear();
      for (const json& v : d["snr_db"]) {
        if (!v.is_number()) fail("dmt.snr_db", "entries must be numbers");
        c.dmt.snr_db.push_back(v.get<double>());
      }
    }
    if (d.contains("trials_per_point")) {
      c.dmt.trials_per_point.clear();
      if (d["trials_per_point"].is_number_unsigned()) {
        c.dmt.trials_per_point.push_back(d["trials_per_point"].get<std::uint64_t>());
      } else if (d["trials_per_point"].is_array()) {
        for (const json& v : d["trials_per_point"]) {
          if (!v.is_number_unsigned())
            fail("dmt.trials_per_point", "entries must be positive integers");
          c.dmt.trials_per_point.push_back(v.get<std::uint64_t>());
        }
      } else {
        fail("dmt.trials_per_point", "expected an integer or an array");
      }
    }
    if (d.contains("thresholds")) {
      if (!d["thresholds"].is_string()) fail("dmt.thresholds", "expected capacity|mqam");
      const std::string m = d["thresholds"].get<std::string>();
      if (m == "capacity") c.dmt.thresholds = ThresholdMode::capacity;
      else if (m == "mqam") c.dmt.thresholds = ThresholdMode::mqam;
      else fail("dmt.thresholds", "expected capacity|mqam");
    }
    if (d.contains("relay_positions"))
      c.dmt.relay_positions = parse_positions(d["relay_positions"], "dmt.relay_positions");
  }

  if (root.contains("relays")) c.select_relays = parse_positions(root["relays"], "relays");
  if (root.contains("fading")) {
    if (!root["fading"].is_boolean()) fail("fading", "expected a boolean");
    c.select_fading = root["fading"].get<bool>();
  }

  c.validate();
  return c;
}

std::string effective_config_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.kind);
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["trials"] = c.trials;
  j["rate_r"] = c.rate_r;
  j["zeta"] = c.zeta_list;
  json p;
  p["p_max_dbm"] = units::watt_to_dbm(c.params.p_max_w);
  p["p_c_dbm"] = units::watt_to_dbm(c.params.p_c_w);
  p["k_db"] = units::linear_to_db(c.params.k_gain);
  p["bandwidth_hz"] = c.params.bandwidth_hz;
  p["carrier_hz"] = c.params.carrier_hz;
  p["n0_dbm_per_hz"] = units::watt_to_dbm(c.params.noise_n0_w_per_hz);
  p["pathloss_exp"] = c.params.pathloss_exp;
  p["coding_gain_db"] = units::linear_to_db(c.params.coding_gain);
  p["code_rate"] = c.params.code_rate;
  p["target_ber"] = c.params.target_ber;
  j["params"] = p;
  j["d_ms_bs_m"] = c.d_ms_bs_m;
  json scen = json::array();
  for (const SweepScenario& s : c.sweep_scenarios)
    scen.push_back({{"d_ms_bs_m", s.d_ms_bs_m}, {"direct_link", s.direct_link}});
  j["scenarios"] = scen;
  j["relay_counts"] = c.relay_counts;
  j["placement_diameter_factor"] = c.placement_diameter_factor;
  if (c.grid)
    j["grid"] = {{"x_min_m", c.grid->x_min}, {"x_max_m", c.grid->x_max},
                 {"y_min_m", c.grid->y_min}, {"y_max_m", c.grid->y_max},
                 {"nx", c.grid->nx},         {"ny", c.grid->ny}};
  j["contour_levels"] = c.contour_levels;
  json d;
  d["relay_count"] = c.dmt.relay_count;
  if (c.dmt.multiplexing_r) d["multiplexing_r"] = *c.dmt.multiplexing_r;
  if (c.dmt.fixed_rate) d["fixed_rate"] = *c.dmt.fixed_rate;
  d["snr_db"] = c.dmt.snr_db;
  d["trials_per_point"] = c.dmt.trials_per_point;
  d["thresholds"] = c.dmt.thresholds == ThresholdMode::capacity ? "capacity" : "mqam";
  json rp = json::array();
  for (const Vec2& v : c.dmt.relay_positions) rp.push_back({v.x, v.y});
  d["relay_positions"] = rp;
  j["dmt"] = d;
  json sr = json::array();
  for (const Vec2& v : c.select_relays) sr.push_back({v.x, v.y});
  j["relays"] = sr;
  j["fading"] = c.select_fading;
  return j.dump();
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  // workers must not change the output bytes, so it stays out of the hash
  ExperimentConfig c = config;
  c.workers = 1;
  return fnv1a64(effective_config_json(c));
}

std::string render(const RunResult& result, OutputFormat format) {
  if (format == OutputFormat::table) {
    std::ostringstream os;
    os << "# artifact judrs " << kArtifactVersion << "\n";
    os << "# config_hash " << result.config_hash_hex << "\n";
    os << "# seed " << result.seed << "\n";
    for (const ResultTable& t : result.tables) {
      os << "\n## table " << t.name << "\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "\t" : "") << t.columns[i];
      os << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
        os << "\n";
      }
    }
    return os.str();
  }
  nlohmann::ordered_json doc;
  doc["artifact"] = "judrs";
  doc["version"] = kArtifactVersion;
  doc["config_hash"] = result.config_hash_hex;
  doc["seed"] = result.seed;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const ResultTable& t : result.tables) {
    nlohmann::ordered_json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = t.rows;
    tables.push_back(jt);
  }
  doc["tables"] = tables;
  return doc.dump(2) + "\n";
}

namespace {

RunResult make_result(const ExperimentConfig& c) {
  RunResult r;
  r.config_hash_hex = hex64(config_hash(c));
  r.seed = c.seed;
  return r;
}

// ---- sweep machinery -------------------------------------------------------

enum Scheme { kJudrs = 0, kBestWorst = 1, kBestHarmonic = 2 };
constexpr const char* kSchemeNames[] = {"judrs", "best-worst", "best-harmonic"};

struct EnergySplit {
  double ms = 0.0, relay_ul = 0.0, relay_dl = 0.0;
  double total() const { return ms + relay_ul + relay_dl; }
};

EnergySplit split_coop(const LinkPowers& pw, double zeta, double rate,
                       const SystemParams& p) {
  const double two_rb = 2.0 * rate * p.bandwidth_hz;
  EnergySplit e;
  e.ms = zeta * (pw.p_ms_uplink_w + p.p_c_w) / two_rb;
  e.relay_ul = zeta * (pw.p_relay_uplink_w + p.p_c_w) / two_rb;
  e.relay_dl = (1.0 - zeta) * (pw.p_relay_downlink_w + p.p_c_w) / two_rb;
  return e;
}

EnergySplit split_direct(double h_d, double zeta, double rate, const SystemParams& p) {
  EnergySplit e;
  e.ms = zeta * (coded_power(rate, p.target_ber, h_d, p) + p.p_c_w) /
         (rate * p.bandwidth_hz);
  return e;
}

struct SchemeAccum {
  double sum_ms = 0.0, sum_rul = 0.0, sum_rdl = 0.0;
  double sum_total = 0.0, sum_total_sq = 0.0;
  std::uint64_t usable = 0, coop = 0;

  void add(const EnergySplit& e, bool cooperative) {
    sum_ms += e.ms;
    sum_rul += e.relay_ul;
    sum_rdl += e.relay_dl;
    const double t = e.total();
    sum_total += t;
    sum_total_sq += t * t;
    ++usable;
    coop += cooperative;
  }
  void merge(const SchemeAccum& o) {
    sum_ms += o.sum_ms;
    sum_rul += o.sum_rul;
    sum_rdl += o.sum_rdl;
    sum_total += o.sum_total;
    sum_total_sq += o.sum_total_sq;
    usable += o.usable;
    coop += o.coop;
  }
  double mean_total() const { return sum_total / static_cast<double>(usable); }
  double se_total() const {
    if (usable < 2) return 0.0;
    const double n = static_cast<double>(usable);
    const double var = std::max(0.0, (sum_total_sq - sum_total * sum_total / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

// One realized comparison instance: common relay placement and fading shared
// by every scheme, relay count and zeta evaluated on it.
struct SweepDraw {
  std::vector<double> h1, h2;
  double h_direct = 0.0;
};

SweepDraw draw_instance(SplitMix64& g, std::size_t max_relays, double d_ms_bs,
                        double disc_radius, double direct_scale,
                        const SystemParams& params) {
  SweepDraw s;
  s.h1.resize(max_relays);
  s.h2.resize(max_relays);
  const double cx = 0.5 * d_ms_bs;
  for (std::size_t j = 0; j < max_relays; ++j) {
    double d1 = 0.0, d2 = 0.0;
    do {
      const double ang = 2.0 * 3.14159265358979323846 * uniform01(g);
      const double rad = disc_radius * std::sqrt(uniform01(g));
      const double x = cx + rad * std::cos(ang);
      const double y = rad * std::sin(ang);
      d1 = std::hypot(x, y);
      d2 = std::hypot(x - d_ms_bs, y);
    } while (!(d1 > 0.0) || !(d2 > 0.0));
    s.h1[j] = pathloss_gain(d1, params);
    s.h2[j] = pathloss_gain(d2, params);
  }
  for (std::size_t j = 0; j < max_relays; ++j) s.h1[j] *= sample_fading(g);
  for (std::size_t j = 0; j < max_relays; ++j) s.h2[j] *= sample_fading(g);
  s.h_direct = pathloss_gain(d_ms_bs, params) * direct_scale * sample_fading(g);
  return s;
}

// Evaluates the three schemes on one instance at one relay count / zeta.
// Returns false when no scheme can transmit at all (outage trial).
bool evaluate_schemes(const SweepDraw& s, std::size_t n, double zeta, double rate,
                      const SystemParams& params, EnergySplit out[3], bool coop[3]) {
  std::vector<CandidateRelay> candidates;
  candidates.reserve(n);
  for (std::size_t j = 0; j < n; ++j) candidates.push_back({j, s.h1[j], s.h2[j]});

  const SelectionDecision d =
      min_energy_select(candidates, s.h_direct, zeta, rate, params);

  std::vector<CandidateRelay> feasible;
  for (const CandidateRelay& c : candidates)
    if (relay_feasible(c, s.h_direct, rate, params)) feasible.push_back(c);

  if (feasible.empty()) {
    // nothing to select from: every scheme transmits directly if it can
    if (d.mode != TransmissionMode::direct) return false;
    const EnergySplit e = split_direct(s.h_direct, zeta, rate, params);
    for (int k = 0; k < 3; ++k) {
      out[k] = e;
      coop[k] = false;
    }
    return true;
  }

  if (d.mode == TransmissionMode::cooperative) {
    out[kJudrs] = split_coop(*d.energy.link_powers, zeta, rate, params);
    coop[kJudrs] = true;
  } else {
    out[kJudrs] = split_direct(s.h_direct, zeta, rate, params);
    coop[kJudrs] = false;
  }

  const CandidateRelay& bw = feasible[best_worst_channel_select(feasible)];
  out[kBestWorst] = split_coop(
      relay_link_powers(bw.h1, bw.h2, s.h_direct, rate, params), zeta, rate, params);
  coop[kBestWorst] = true;

  const CandidateRelay& bh = feasible[best_harmonic_mean_select(feasible)];
  out[kBestHarmonic] = split_coop(
      relay_link_powers(bh.h1, bh.h2, s.h_direct, rate, params), zeta, rate, params);
  coop[kBestHarmonic] = true;
  return true;
}

constexpr std::uint64_t kSweepChunk = 4096;

} // namespace

RunResult run_relay_sweep(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);
  ResultTable table;
  table.name = "relay_sweep";
  table.columns = {"d_ms_bs_m",  "direct_link", "n_relays",
                   "scheme",     "trials",      "usable_trials",
                   "coop_trials", "mean_energy_j_per_bit", "se_energy_j_per_bit"};

  const std::size_t max_n =
      *std::max_element(c.relay_counts.begin(), c.relay_counts.end());
  const double zeta = c.zeta_list.front();

  for (std::size_t si = 0; si < c.sweep_scenarios.size(); ++si) {
    const SweepScenario& sc = c.sweep_scenarios[si];
    const double disc_radius = 0.5 * c.placement_diameter_factor * sc.d_ms_bs_m;
    // "no direct link": gain scaled far below any relay link, kept nonzero
    const double direct_scale = sc.direct_link ? 1.0 : 1e-6;

    const std::size_t cells = c.relay_counts.size() * 3;
    std::vector<std::vector<SchemeAccum>> chunks(
        (c.trials + kSweepChunk - 1) / kSweepChunk,
        std::vector<SchemeAccum>(cells));

    parallel_chunks(c.trials, c.workers, kSweepChunk,
                    [&](std::uint64_t ci, std::uint64_t begin, std::uint64_t end) {
                      std::vector<SchemeAccum>& acc = chunks[ci];
                      for (std::uint64_t t = begin; t < end; ++t) {
                        SplitMix64 g(derive_seed(c.seed, si, t));
                        const SweepDraw s = draw_instance(
                            g, max_n, sc.d_ms_bs_m, disc_radius, direct_scale, c.params);
                        for (std::size_t ni = 0; ni < c.relay_counts.size(); ++ni) {
                          EnergySplit e[3];
                          bool coop[3];
                          if (!evaluate_schemes(s, c.relay_counts[ni], zeta, c.rate_r,
                                                c.params, e, coop))
                            continue;
                          for (int k = 0; k < 3; ++k) acc[ni * 3 + k].add(e[k], coop[k]);
                        }
                      }
                    });

    for (std::size_t ni = 0; ni < c.relay_counts.size(); ++ni) {
      for (int k = 0; k < 3; ++k) {
        SchemeAccum total;
        for (const auto& ch : chunks) total.merge(ch[ni * 3 + k]);
        table.rows.push_back({format_number(sc.d_ms_bs_m),
                              sc.direct_link ? "1" : "0",
                              std::to_string(c.relay_counts[ni]), kSchemeNames[k],
                              std::to_string(c.trials), std::to_string(total.usable),
                              std::to_string(total.coop),
                              format_number(total.mean_total()),
                              format_number(total.se_total())});
      }
    }
  }
  result.tables.push_back(std::move(table));
  return result;
}

RunResult run_traffic_sweep(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);
  ResultTable table;
  table.name = "traffic_sweep";
  table.columns = {"zeta",
                   "scheme",
                   "trials",
                   "usable_trials",
                   "coop_trials",
                   "mean_ms_energy_j_per_bit",
                   "mean_relay_ul_energy_j_per_bit",
                   "mean_relay_dl_energy_j_per_bit",
                   "mean_total_energy_j_per_bit",
                   "se_total_energy_j_per_bit"};

  // one fixed scenario, the largest configured relay population
  const SweepScenario& sc = c.sweep_scenarios.front();
  const std::size_t n_relays =
      *std::max_element(c.relay_counts.begin(), c.relay_counts.end());
  const double disc_radius = 0.5 * c.placement_diameter_factor * sc.d_ms_bs_m;
  const double direct_scale = sc.direct_link ? 1.0 : 1e-6;

  for (double zeta : c.zeta_list) {
    const std::size_t cells = 3;
    std::vector<std::vector<SchemeAccum>> chunks(
        (c.trials + kSweepChunk - 1) / kSweepChunk, std::vector<SchemeAccum>(cells));
    // draws derive from the trial index only: common random numbers across zeta
    parallel_chunks(c.trials, c.workers, kSweepChunk,
                    [&](std::uint64_t ci, std::uint64_t begin, std::uint64_t end) {
                      std::vector<SchemeAccum>& acc = chunks[ci];
                      for (std::uint64_t t = begin; t < end; ++t) {
                        SplitMix64 g(derive_seed(c.seed, 0, t));
                        const SweepDraw s = draw_instance(
                            g, n_relays, sc.d_ms_bs_m, disc_radius, direct_scale, c.params);
                        EnergySplit e[3];
                        bool coop[3];
                        if (!evaluate_schemes(s, n_relays, zeta, c.rate_r, c.params, e,
                                              coop))
                          continue;
                        for (int k = 0; k < 3; ++k) acc[k].add(e[k], coop[k]);
                      }
                    });
    for (int k = 0; k < 3; ++k) {
      SchemeAccum total;
      for (const auto& ch : chunks) total.merge(ch[k]);
      const double n = static_cast<double>(total.usable);
      table.rows.push_back({format_number(zeta), kSchemeNames[k],
                            std::to_string(c.trials), std::to_string(total.usable),
                            std::to_string(total.coop),
                            format_number(total.sum_ms / n),
                            format_number(total.sum_rul / n),
                            format_number(total.sum_rdl / n),
                            format_number(total.mean_total()),
                            format_number(total.se_total())});
    }
  }
  result.tables.push_back(std::move(table));
  return result;
}

RunResult run_region(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);
  const GridSpec spec = c.grid ? *c.grid : GridSpec::default_region(c.d_ms_bs_m);

  ResultTable areas;
  areas.name = "region_area";
  areas.columns = {"zeta", "cells_positive", "cell_area_m2", "region_area_m2"};

  std::vector<std::pair<double, RegionGrid>> grids;
  for (double zeta : c.zeta_list) {
    RegionGrid grid = compute_region_grid(spec, c.d_ms_bs_m, zeta, c.rate_r, c.params);
    const std::size_t cells = grid.positive_cell_count();
    const double cell_area = spec.cell_dx() * spec.cell_dy();
    areas.rows.push_back({format_number(zeta), std::to_string(cells),
                          format_number(cell_area),
                          format_number(cell_area * static_cast<double>(cells))});
    grids.emplace_back(zeta, std::move(grid));
  }
  result.tables.push_back(std::move(areas));

  for (const auto& [zeta, grid] : grids) {
    ResultTable gt;
    gt.name = "grid zeta=" + format_number(zeta);
    gt.columns = {"x_m", "y_m", "e_saving_frac"};
    for (std::size_t i = 0; i < spec.nx; ++i)
      for (std::size_t j = 0; j < spec.ny; ++j)
        gt.rows.push_back({format_number(spec.x_center(i)),
                           format_number(spec.y_center(j)),
                           format_number(grid.at(i, j))});
    result.tables.push_back(std::move(gt));

    const std::vector<ContourLine> lines = extract_contours(grid, c.contour_levels);
    ResultTable ct;
    ct.name = "contours zeta=" + format_number(zeta);
    ct.columns = {"level_frac", "polyline_id", "vertex_id", "x_m", "y_m"};
    for (std::size_t k = 0; k < lines.size(); ++k)
      for (std::size_t v = 0; v < lines[k].points.size(); ++v)
        ct.rows.push_back({format_number(lines[k].level), std::to_string(k),
                           std::to_string(v), format_number(lines[k].points[v].x),
                           format_number(lines[k].points[v].y)});
    result.tables.push_back(std::move(ct));
  }
  return result;
}

RunResult run_optimal_location(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);
  ResultTable t;
  t.name = "optimal_location";
  t.columns = {"zeta", "x_m", "y_m", "d1_norm", "d2_norm", "e_saving_frac"};
  for (double zeta : c.zeta_list) {
    const OptimalLocation loc =
        optimal_relay_location(c.d_ms_bs_m, zeta, c.rate_r, c.params);
    t.rows.push_back({format_number(zeta), format_number(loc.position.x),
                      format_number(loc.position.y), format_number(loc.d1_norm),
                      format_number(loc.d2_norm), format_number(loc.e_saving)});
  }
  result.tables.push_back(std::move(t));
  return result;
}

RunResult run_dmt(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);

  DmtConfig dc;
  dc.relay_count = c.dmt.relay_count;
  if (c.dmt.fixed_rate) {
    dc.fixed_rate = *c.dmt.fixed_rate;
  } else {
    dc.multiplexing_r = c.dmt.multiplexing_r.value_or(0.5);
  }
  for (double db : c.dmt.snr_db) dc.snr_rho.push_back(units::db_to_linear(db));
  dc.trials_per_point = c.dmt.trials_per_point;
  dc.zeta = c.zeta_list.front();
  dc.thresholds = c.dmt.thresholds;
  dc.params = c.params;
  dc.workers = c.workers;
  std::vector<Vec2> relays = c.dmt.relay_positions;
  if (relays.empty())
    relays.assign(std::max<std::size_t>(dc.relay_count, 1), {0.5 * c.d_ms_bs_m, 0.0});
  dc.geometry = Geometry::line(c.d_ms_bs_m, std::move(relays));

  const OutageCurve curve = estimate_outage_curve(dc, c.seed);

  ResultTable pts;
  pts.name = "outage_curve";
  pts.columns = {"rho_db",  "rate_bits_per_s_per_hz",  "p_out", "trials",
                 "outage_events_weighted", "ci_low", "ci_high"};
  for (const OutagePoint& p : curve.points)
    pts.rows.push_back({format_number(10.0 * std::log10(p.rho)), format_number(p.rate),
                        format_number(p.p_out), std::to_string(p.trials),
                        format_number(p.outage_weighted), format_number(p.ci_low),
                        format_number(p.ci_high)});
  result.tables.push_back(std::move(pts));

  ResultTable sum;
  sum.name = "dmt_summary";
  sum.columns = {"key", "value"};
  sum.rows.push_back({"relay_count", std::to_string(curve.relay_count)});
  sum.rows.push_back({"multiplexing_r", format_number(curve.multiplexing_r)});
  if (dc.fixed_rate) sum.rows.push_back({"fixed_rate", format_number(*dc.fixed_rate)});
  sum.rows.push_back({"zeta", format_number(curve.zeta)});
  sum.rows.push_back({"fitted_slope", curve.fitted_slope
                                          ? format_number(*curve.fitted_slope)
                                          : "unavailable"});
  sum.rows.push_back({"slope_ci95_low", curve.slope_ci
                                            ? format_number(curve.slope_ci->first)
                                            : "unavailable"});
  sum.rows.push_back({"slope_ci95_high", curve.slope_ci
                                             ? format_number(curve.slope_ci->second)
                                             : "unavailable"});
  sum.rows.push_back(
      {"theoretical_d",
       format_number(theoretical_dmt(curve.relay_count, curve.multiplexing_r))});
  sum.rows.push_back({"admission_violations", std::to_string(curve.admission_violations)});
  result.tables.push_back(std::move(sum));
  return result;
}

RunResult run_select(const ExperimentConfig& c) {
  c.validate();
  RunResult result = make_result(c);

  Scenario sc;
  sc.geometry = Geometry::line(c.d_ms_bs_m, c.select_relays);
  sc.traffic = TrafficProfile::from_zeta(c.zeta_list.front());
  sc.rate_r = c.rate_r;
  sc.params = c.params;
  sc.fading = c.select_fading;

  SplitMix64 g(derive_seed(c.seed, 0, 0));
  const ProtocolTrace trace = run_judrs(sc, g);

  ResultTable dec;
  dec.name = "decision";
  dec.columns = {"mode", "relay_index", "metric", "energy_j_per_bit",
                 "p_ms_ul_w", "p_relay_ul_w", "p_relay_dl_w"};
  std::vector<std::string> row;
  switch (trace.decision.mode) {
    case TransmissionMode::cooperative: row.push_back("cooperative"); break;
    case TransmissionMode::direct: row.push_back("direct"); break;
    case TransmissionMode::infeasible: row.push_back("infeasible"); break;
  }
  row.push_back(trace.decision.relay_index ? std::to_string(*trace.decision.relay_index)
                                           : "-");
  row.push_back(std::isnan(trace.decision.metric_value)
                    ? "-"
                    : format_number(trace.decision.metric_value));
  row.push_back(trace.decision.mode == TransmissionMode::infeasible
                    ? "-"
                    : format_number(trace.decision.energy.energy_per_bit));
  if (trace.decision.energy.link_powers) {
    const LinkPowers& pw = *trace.decision.energy.link_powers;
    row.push_back(format_number(pw.p_ms_uplink_w));
    row.push_back(format_number(pw.p_relay_uplink_w));
    row.push_back(format_number(pw.p_relay_downlink_w));
  } else {
    row.insert(row.end(), {"-", "-", "-"});
  }
  dec.rows.push_back(std::move(row));
  result.tables.push_back(std::move(dec));

  ResultTable sets;
  sets.name = "admission";
  sets.columns = {"relay", "h1", "h2", "in_gamma", "in_sigma", "g_th2_w"};
  for (std::size_t i = 0; i < trace.links.relay_count(); ++i) {
    const bool in_g = std::find(trace.gamma_set.begin(), trace.gamma_set.end(), i) !=
                      trace.gamma_set.end();
    const bool in_s = std::find(trace.sigma_set.begin(), trace.sigma_set.end(), i) !=
                      trace.sigma_set.end();
    sets.rows.push_back({std::to_string(i), format_number(trace.links.h1[i]),
                         format_number(trace.links.h2[i]), in_g ? "1" : "0",
                         in_s ? "1" : "0", format_number(trace.threshold_gth2[i])});
  }
  result.tables.push_back(std::move(sets));

  ResultTable msgs;
  msgs.name = "messages";
  msgs.columns = {"step", "sender", "receivers", "payload"};
  for (const ProtocolMessage& m : trace.message_log)
    msgs.rows.push_back({std::to_string(m.step), m.sender, m.receivers, m.payload});
  result.tables.push_back(std::move(msgs));
  return result;
}

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::select: return run_select(config);
    case ExperimentKind::region: return run_region(config);
    case ExperimentKind::optimal_location: return run_optimal_location(config);
    case ExperimentKind::relay_sweep: return run_relay_sweep(config);
    case ExperimentKind::traffic_sweep: return run_traffic_sweep(config);
    case ExperimentKind::dmt: return run_dmt(config);
  }
  throw std::logic_error("run_experiment: unhandled experiment kind");
}

} // namespace judrs
