// Command-line front end: run flows from config files, inspect the principal
// symbol, execute built-in verification scenarios, and print closed-form
// reference values.
//
// Exit codes: 0 success, 2 finite-time blowup or metric collapse during a
// run (expected for shrinking data), 3 monitor or verification failure,
// 4 invalid configuration or usage.  When several apply, the highest wins.
//
// The environment variable RYFLOW_SEED is reserved for future stochastic
// features; it is currently read by nothing and documented only so that
// scripts may set it today without breaking later.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ryflow/diagnostics.hpp"
#include "ryflow/flow.hpp"
#include "ryflow/io.hpp"
#include "ryflow/oracles.hpp"
#include "ryflow/scenarios.hpp"
#include "ryflow/symbol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStoppedEarly = 2;
constexpr int kExitMonitorFail = 3;
constexpr int kExitBadConfig = 4;

struct SimulateArgs {
  std::string config_path;
  std::string out_dir = ".";
  bool serial = false;  // accepted for interface stability; runs are always
                        // single-threaded and deterministic
  bool allow_degenerate = false;
};

int cmd_simulate(const SimulateArgs& args) {
  using namespace ryflow;
  RunConfig cfg;
  try {
    cfg = run_config_from_map(parse_config_file(args.config_path));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  if (args.allow_degenerate) cfg.params.allow_degenerate = true;
  if (cfg.csv_path.empty()) cfg.csv_path = "run.csv";
  if (cfg.json_path.empty()) cfg.json_path = "summary.json";

  GeometryState initial = make_flat_torus(8);
  try {
    validate_params(cfg.params);
    initial = build_initial_state(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const InvalidStateError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  }

  RunOutcome outcome;
  try {
    outcome = run(initial, cfg.params, cfg.integ);
  } catch (const InvalidStateError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  annotate_residuals(outcome, cfg.params);

  std::printf("status: %s (t_final = %s, steps = %ld)\n",
              to_string(outcome.status), format_g17(outcome.t_final).c_str(),
              outcome.steps);
  if (!outcome.stop_detail.empty()) {
    std::printf("detail: %s\n", outcome.stop_detail.c_str());
  }

  // Monitors requested by the config, evaluated on the recorded series.
  std::vector<MonitorReport> reports;
  const double h = grid_spacing(outcome.final_state);
  const double tol = monitor_tolerance(outcome, h, cfg.c_disc);
  for (const auto& name : cfg.monitors) {
    if (name == "scalar-min") {
      reports.push_back(scalar_min_monitor(
          outcome.records, outcome.records.front().r_min, cfg.params, tol));
    } else if (name == "volume-rate") {
      reports.push_back(volume_rate_monitor(outcome.snapshots, cfg.params,
                                            tol));
      if (cfg.geometry == "conformal2d") {
        reports.push_back(torus_volume_conservation(outcome.snapshots));
      }
    } else if (name == "pinching") {
      PinchingContext ctx;
      ctx.b = pinching_offset(outcome.snapshots.front().curv);
      reports.push_back(pinching_monitor(outcome.snapshots, ctx).report);
    } else if (name == "derivative-decay") {
      reports.push_back(derivative_decay_monitor(outcome.snapshots).report);
    }
  }

  bool monitors_ok = true;
  for (const auto& r : reports) {
    if (!r.applicable) {
      std::printf("monitor %s: not applicable (%s)\n", r.name.c_str(),
                  r.detail.c_str());
      continue;
    }
    if (!r.pass) monitors_ok = false;
    std::printf("monitor %s: %s (worst margin %s at t = %s)\n",
                r.name.c_str(), r.pass ? "PASS" : "FAIL",
                format_g17(r.worst_margin).c_str(),
                format_g17(r.worst_t).c_str());
  }

  double sup_rh = 0.0;
  for (const auto& s : outcome.snapshots) {
    sup_rh = std::max(sup_rh, sup_ric_plus_hess_r(s));
  }

  try {
    const std::filesystem::path out_dir(args.out_dir);
    std::filesystem::create_directories(out_dir);
    const std::string csv = (out_dir / cfg.csv_path).string();
    write_csv(csv, outcome.records);
    std::printf("wrote %s\n", csv.c_str());

    RunSummary summary;
    summary.config = cfg;
    summary.outcome = outcome;
    summary.monitor_reports = reports;
    summary.sup_ric_plus_hess_R = sup_rh;
    const std::string json = (out_dir / cfg.json_path).string();
    write_json_summary(json, summary);
    std::printf("wrote %s\n", json.c_str());

    if (!cfg.svg_path.empty()) {
      const std::string svg = (out_dir / cfg.svg_path).string();
      write_svg_plots(svg, outcome.records);
      std::printf("wrote %s\n", svg.c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitBadConfig;
  }

  if (!monitors_ok) return kExitMonitorFail;
  if (outcome.status == RunStatus::kBlowupDetected ||
      outcome.status == RunStatus::kDegenerateMetric) {
    return kExitStoppedEarly;
  }
  return kExitOk;
}

int cmd_analyze_symbol(int dim, double alpha, double beta, bool sweep,
                       const std::string& out_path) {
  using namespace ryflow;
  if (sweep) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot open '" << out_path << "'\n";
      return kExitBadConfig;
    }
    out << "dim,alpha,beta,beta_floor,min_eigenvalue,elliptic\n";
    for (int n = 2; n <= 16; ++n) {
      for (int k = 0; k <= 90; ++k) {
        FlowParams p;
        p.dim = n;
        p.alpha = 1.0;
        p.beta = -1.2 + 0.03 * k;  // spans both sides of the regime floor
        const EllipticityVerdict e = is_strongly_elliptic(p);
        out << n << ',' << format_g17(p.alpha) << ',' << format_g17(p.beta)
            << ',' << format_g17(regime_beta_floor(p)) << ','
            << format_g17(e.min_eigenvalue) << ','
            << (e.verdict == Ellipticity::kElliptic ? 1 : 0) << '\n';
      }
    }
    std::printf("wrote %s\n", out_path.c_str());
    return kExitOk;
  }

  FlowParams p;
  p.dim = dim;
  p.alpha = alpha;
  p.beta = beta;
  const std::vector<double> spec = symbol_spectrum(build_symbol_matrix(p));
  std::printf("dim = %d, alpha = %s, beta = %s\n", dim,
              format_g17(alpha).c_str(), format_g17(beta).c_str());
  std::printf("symbol size = %zu x %zu\n", spec.size(), spec.size());
  std::printf("eigenvalues (ascending):");
  for (const double ev : spec) std::printf(" %s", format_g17(ev).c_str());
  std::printf("\n");
  const EllipticityVerdict e = is_strongly_elliptic(p);
  std::printf("parabolic regime floor: beta > %s\n",
              format_g17(regime_beta_floor(p)).c_str());
  const char* verdict = e.verdict == Ellipticity::kElliptic ? "yes"
                        : e.verdict == Ellipticity::kBoundary ? "boundary"
                                                              : "no";
  std::printf("strongly elliptic: %s (min eigenvalue %s)\n", verdict,
              format_g17(e.min_eigenvalue).c_str());
  return kExitOk;
}

int cmd_verify(std::vector<std::string> names) {
  using namespace ryflow;
  if (names.empty()) names = scenario_names();
  bool all_ok = true;
  for (const auto& name : names) {
    ScenarioReport rep;
    try {
      rep = run_scenario(name);
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitBadConfig;
    }
    for (const auto& c : rep.checks) {
      std::printf("[%s] %s: %s (value %s, bound %s)%s%s\n",
                  c.pass ? "PASS" : "FAIL", rep.scenario.c_str(),
                  c.name.c_str(), format_g17(c.value).c_str(),
                  format_g17(c.threshold).c_str(),
                  c.detail.empty() ? "" : " -- ", c.detail.c_str());
      if (!c.pass) all_ok = false;
    }
  }
  return all_ok ? kExitOk : kExitMonitorFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ryflow: numerical Ricci-Yamabe-type curvature flows on a 2-torus and "
      "on warped circle-sphere products, with symbol analysis, closed-form "
      "oracles and verification scenarios"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "run a flow described by a key=value config file");
  sim->add_option("--config", sim_args.config_path, "config file path")
      ->required();
  sim->add_option("--out-dir", sim_args.out_dir,
                  "directory for CSV/JSON/SVG outputs (created if missing)");
  sim->add_flag("--serial", sim_args.serial,
                "force deterministic serial execution (the default and only "
                "mode; accepted for interface stability)");
  sim->add_flag("--allow-degenerate", sim_args.allow_degenerate,
                "override the parabolic-regime parameter check");

  int sym_dim = 3;
  double sym_alpha = 1.0;
  double sym_beta = 0.0;
  bool sym_sweep = false;
  std::string sym_out = "symbol_sweep.csv";
  CLI::App* sym = app.add_subcommand(
      "analyze-symbol",
      "principal symbol spectrum and ellipticity of the linearized flow");
  sym->add_option("--dim", sym_dim, "manifold dimension")
      ->check(CLI::Range(2, 16));
  sym->add_option("--alpha", sym_alpha, "Ricci coefficient");
  sym->add_option("--beta", sym_beta, "scalar-curvature coefficient");
  sym->add_flag("--sweep", sym_sweep,
                "write a CSV regime map over dim = 2..16 instead of a single "
                "report");
  sym->add_option("--out", sym_out, "CSV path for --sweep");

  std::vector<std::string> verify_names;
  CLI::App* ver = app.add_subcommand(
      "verify", "run built-in verification scenarios (default: all)");
  ver->add_option("scenarios", verify_names,
                  "scenario names: sphere-ode, torus-gaussbonnet, "
                  "symbol-sweep");

  CLI::App* exact = app.add_subcommand(
      "exact", "print closed-form reference values");
  exact->require_subcommand(1);
  int ex_dim = 3;
  double ex_alpha = 1.0, ex_beta = 0.0, ex_lambda = 2.0, ex_c0 = 1.0;
  double ex_t = 0.0, ex_r0 = 1.0, ex_phi0 = 1.0, ex_a = 1.0;

  CLI::App* ex_ein = exact->add_subcommand(
      "einstein", "evolving Einstein metric: scale factor and curvature");
  ex_ein->add_option("--dim", ex_dim)->check(CLI::Range(2, 64));
  ex_ein->add_option("--alpha", ex_alpha);
  ex_ein->add_option("--beta", ex_beta);
  ex_ein->add_option("--lambda", ex_lambda, "Einstein constant, Ric = lambda g");
  ex_ein->add_option("--c0", ex_c0, "initial scale factor");
  ex_ein->add_option("--t", ex_t);

  CLI::App* ex_prod = exact->add_subcommand(
      "product", "shrinking circle-sphere product metric");
  ex_prod->add_option("--dim", ex_dim)->check(CLI::Range(3, 64));
  ex_prod->add_option("--alpha", ex_alpha);
  ex_prod->add_option("--beta", ex_beta);
  ex_prod->add_option("--r0", ex_r0, "initial sphere radius");
  ex_prod->add_option("--phi0", ex_phi0, "initial circle factor");
  ex_prod->add_option("--t", ex_t);

  CLI::App* ex_bound = exact->add_subcommand(
      "bound", "upper bound on the lifetime given min scalar curvature");
  ex_bound->add_option("--dim", ex_dim)->check(CLI::Range(3, 64));
  ex_bound->add_option("--alpha", ex_alpha);
  ex_bound->add_option("--a", ex_a, "initial minimum of scalar curvature");

  CLI::App* ex_cmp = exact->add_subcommand(
      "comparison", "lower comparison curve for the scalar-curvature minimum");
  ex_cmp->add_option("--dim", ex_dim)->check(CLI::Range(3, 64));
  ex_cmp->add_option("--alpha", ex_alpha);
  ex_cmp->add_option("--a", ex_a, "initial minimum of scalar curvature");
  ex_cmp->add_option("--t", ex_t);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  using namespace ryflow;
  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (sym->parsed()) {
      return cmd_analyze_symbol(sym_dim, sym_alpha, sym_beta, sym_sweep,
                                sym_out);
    }
    if (ver->parsed()) return cmd_verify(verify_names);
    if (exact->parsed()) {
      FlowParams p;
      p.dim = ex_dim;
      p.alpha = ex_alpha;
      p.beta = ex_beta;
      p.allow_degenerate = true;  // oracle printing has no regime gate
      if (ex_ein->parsed()) {
        const EinsteinScale s = einstein_scale(p, ex_lambda, ex_c0, ex_t);
        std::printf("c(t) = %s\n", format_g17(s.c).c_str());
        std::printf("extinction_time = %s\n",
                    format_g17(einstein_extinction_time(p, ex_lambda, ex_c0))
                        .c_str());
        std::printf("past_extinction = %s\n",
                    s.past_extinction ? "true" : "false");
        if (!s.past_extinction) {
          std::printf("R(t) = %s\n",
                      format_g17(einstein_scalar(p, ex_lambda, ex_c0, ex_t))
                          .c_str());
        }
        return kExitOk;
      }
      if (ex_prod->parsed()) {
        const ProductSolution s =
            product_metric_solution(p, ex_r0, ex_phi0, ex_t);
        std::printf("phi(t) = %s\n", format_g17(s.phi).c_str());
        std::printf("psi(t) = %s\n", format_g17(s.psi).c_str());
        std::printf("extinction_time = %s\n",
                    format_g17(product_extinction_time(p, ex_r0, ex_phi0))
                        .c_str());
        std::printf("past_extinction = %s\n",
                    s.past_extinction ? "true" : "false");
        return kExitOk;
      }
      if (ex_bound->parsed()) {
        std::printf("blow_up_bound = %s\n",
                    format_g17(blow_up_bound(p, ex_a)).c_str());
        return kExitOk;
      }
      if (ex_cmp->parsed()) {
        const ComparisonValue v = scalar_min_comparison(p, ex_a, ex_t);
        std::printf("comparison = %s\n", format_g17(v.value).c_str());
        std::printf("past_bound = %s\n", v.past_bound ? "true" : "false");
        return kExitOk;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
