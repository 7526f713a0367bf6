#pragma once

// Configuration parsing (flat key=value text) and output emission: CSV time
// series, JSON run summaries, and SVG convenience plots.

#include <map>
#include <string>
#include <vector>

#include "ryflow/diagnostics.hpp"
#include "ryflow/flow.hpp"

namespace ryflow {

// A configuration file problem: unknown key, bad value, missing file.
// The message always names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind { kFlat, kCosine, kProduct, kCustomFile };

struct RunConfig {
  std::string geometry = "conformal2d";  // or "warped"
  int grid_n = 32;
  FlowParams params;
  IntegratorConfig integ;
  InitialKind initial = InitialKind::kFlat;
  double amplitude = 0.0;
  int mode = 1;
  double r0 = 1.0;
  double phi0 = 1.0;
  std::string initial_path;
  std::vector<std::string> monitors;  // subset of the known monitor names
  double c_disc = 25.0;               // discretization tolerance constant
  std::string csv_path;               // empty = skip that output
  std::string json_path;
  std::string svg_path;
};

// Known monitor names, in canonical order.
const std::vector<std::string>& known_monitors();

// Parse flat key=value text ('#' comments, blank lines ignored).  Throws
// ConfigError on syntax errors and duplicate keys.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Build a RunConfig, rejecting unknown keys and malformed values.
RunConfig run_config_from_map(const std::map<std::string, std::string>& kv);

// Construct the initial state a config describes.  Reads initial.path for
// custom-file initial data.
GeometryState build_initial_state(const RunConfig& cfg);

// %.17g formatting (shortest representation that round-trips a double).
std::string format_g17(double v);

// CSV with the fixed header
// t,dt,R_min,R_max,volume,f_max,res_R_evol,res_Ric_evol,decay_k1,decay_k2.
void write_csv(const std::string& path, const std::vector<FlowRecord>& records);

struct RunSummary {
  RunConfig config;
  RunOutcome outcome;               // records already residual-annotated
  std::vector<MonitorReport> monitor_reports;
  double sup_ric_plus_hess_R = 0.0;
};

// Hand-written JSON ("schema_version": 1).  Non-finite numbers are emitted
// as null.
void write_json_summary(const std::string& path, const RunSummary& summary);

// Standalone SVG with line plots of R_min(t), volume(t), f_max(t).
void write_svg_plots(const std::string& path,
                     const std::vector<FlowRecord>& records);

}  // namespace ryflow
