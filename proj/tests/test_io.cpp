// Config parsing, initial-state construction, and the three output writers
// (CSV, JSON summary, SVG plots).  JSON output is validated with a real
// parser; CSV numbers must round-trip bit-exactly.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ryflow/curvature.hpp"
#include "ryflow/diagnostics.hpp"
#include "ryflow/flow.hpp"
#include "ryflow/io.hpp"
#include "ryflow/states.hpp"

using namespace ryflow;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ryflow_io_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs f, which must throw ConfigError, and returns the message.
template <typename F>
std::string config_error_message(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected ConfigError");
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

RunConfig config_from_text(const std::string& text) {
  return run_config_from_map(parse_config_text(text));
}

}  // namespace

TEST_CASE("config text parsing") {
  SUBCASE("comments, blank lines, and whitespace are ignored") {
    const auto kv = parse_config_text(
        "# leading comment\n"
        "alpha = 1.5   # trailing comment\n"
        "\n"
        "  beta=-0.25\n"
        "geometry = warped\n");
    REQUIRE(kv.size() == 3);
    CHECK(kv.at("alpha") == "1.5");
    CHECK(kv.at("beta") == "-0.25");
    CHECK(kv.at("geometry") == "warped");
  }

  SUBCASE("missing separator reports the line number") {
    const std::string msg = config_error_message(
        [] { parse_config_text("alpha = 1\nnonsense\n"); });
    CHECK(contains(msg, "config line 2"));
    CHECK(contains(msg, "nonsense"));
  }

  SUBCASE("empty keys and duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("= 3\n"), ConfigError);
    const std::string msg = config_error_message(
        [] { parse_config_text("alpha = 1\nalpha = 2\n"); });
    CHECK(contains(msg, "duplicate config key 'alpha'"));
  }

  SUBCASE("values may contain later equals signs") {
    const auto kv = parse_config_text("output.csv = runs/a=b.csv\n");
    CHECK(kv.at("output.csv") == "runs/a=b.csv");
  }
}

TEST_CASE("full config maps onto every field") {
  const RunConfig cfg = config_from_text(
      "geometry = warped\n"
      "dim = 4\n"
      "grid_n = 48\n"
      "alpha = 1.25\n"
      "beta = -0.25\n"
      "allow_degenerate = false\n"
      "t_end = 0.4\n"
      "cfl_safety = 0.1\n"
      "max_steps = 5000\n"
      "record_every = 2\n"
      "blowup_r_cap = 1e7\n"
      "scheme = euler\n"
      "initial = cosine\n"
      "initial.amplitude = 0.2\n"
      "initial.mode = 3\n"
      "initial.r0 = 2.5\n"
      "initial.phi0 = 0.75\n"
      "monitors = scalar-min,pinching\n"
      "c_disc = 10\n"
      "output.csv = out.csv\n"
      "output.json = out.json\n"
      "output.svg = out.svg\n");
  CHECK(cfg.geometry == "warped");
  CHECK(cfg.params.dim == 4);
  CHECK(cfg.grid_n == 48);
  CHECK(cfg.params.alpha == 1.25);
  CHECK(cfg.params.beta == -0.25);
  CHECK_FALSE(cfg.params.allow_degenerate);
  CHECK(cfg.integ.t_end == 0.4);
  CHECK(cfg.integ.cfl_safety == 0.1);
  CHECK(cfg.integ.max_steps == 5000);
  CHECK(cfg.integ.record_every == 2);
  CHECK(cfg.integ.blowup_r_cap == 1e7);
  CHECK(cfg.integ.scheme == TimeScheme::kEuler);
  CHECK(cfg.initial == InitialKind::kCosine);
  CHECK(cfg.amplitude == 0.2);
  CHECK(cfg.mode == 3);
  CHECK(cfg.r0 == 2.5);
  CHECK(cfg.phi0 == 0.75);
  REQUIRE(cfg.monitors.size() == 2);
  CHECK(cfg.monitors[0] == "scalar-min");
  CHECK(cfg.monitors[1] == "pinching");
  CHECK(cfg.c_disc == 10.0);
  CHECK(cfg.csv_path == "out.csv");
  CHECK(cfg.json_path == "out.json");
  CHECK(cfg.svg_path == "out.svg");
}

TEST_CASE("config defaults") {
  const RunConfig cfg = config_from_text("");
  CHECK(cfg.geometry == "conformal2d");
  CHECK(cfg.params.dim == 2);
  CHECK(cfg.grid_n == 32);
  CHECK(cfg.initial == InitialKind::kFlat);
  CHECK(cfg.integ.scheme == TimeScheme::kRk4);
  CHECK(cfg.monitors.empty());
  CHECK(cfg.c_disc == 25.0);
  CHECK(cfg.csv_path.empty());
}

TEST_CASE("monitor list handling") {
  CHECK(config_from_text("monitors = all\n").monitors == known_monitors());
  CHECK(config_from_text("monitors = none\n").monitors.empty());
  const std::string msg = config_error_message(
      [] { config_from_text("monitors = scalar-min, bogus\n"); });
  CHECK(contains(msg, "unknown monitor 'bogus'"));
}

TEST_CASE("malformed values name the offending key") {
  CHECK(contains(
      config_error_message([] { config_from_text("alpha = abc\n"); }),
      "config key 'alpha'"));
  CHECK(contains(
      config_error_message([] { config_from_text("alpha = 1.5x\n"); }),
      "trailing junk"));
  CHECK(contains(
      config_error_message([] { config_from_text("grid_n = 2.5\n"); }),
      "config key 'grid_n'"));
  CHECK(contains(config_error_message(
                     [] { config_from_text("allow_degenerate = maybe\n"); }),
                 "expected a boolean"));
  CHECK(contains(
      config_error_message([] { config_from_text("scheme = leapfrog\n"); }),
      "expected rk4 or euler"));
  CHECK(contains(
      config_error_message([] { config_from_text("initial = bump\n"); }),
      "config key 'initial'"));
  CHECK(contains(
      config_error_message([] { config_from_text("geometry = minkowski\n"); }),
      "expected conformal2d or warped"));
  CHECK(contains(
      config_error_message([] { config_from_text("c_disc = 0\n"); }),
      "must be positive"));
  CHECK(contains(
      config_error_message([] { config_from_text("tea_end = 1\n"); }),
      "unknown config key 'tea_end'"));
}

TEST_CASE("geometry cross-checks") {
  CHECK(contains(config_error_message(
                     [] { config_from_text("geometry = conformal2d\ndim = 3\n"); }),
                 "conformal2d geometry is 2D"));
  CHECK(contains(
      config_error_message([] { config_from_text("initial = product\n"); }),
      "needs warped geometry"));
  CHECK(contains(
      config_error_message([] { config_from_text("geometry = warped\n"); }),
      "'dim' is required"));
  CHECK(contains(config_error_message(
                     [] { config_from_text("geometry = warped\ndim = 2\n"); }),
                 "needs dim >= 3"));
  CHECK(contains(
      config_error_message(
          [] {
            config_from_text("geometry = warped\ndim = 3\ninitial = flat\n");
          }),
      "no flat metric on this topology"));
  // dim = 2 stated explicitly for the torus is accepted.
  CHECK(config_from_text("dim = 2\n").params.dim == 2);
}

TEST_CASE("initial state construction from configs") {
  SUBCASE("flat torus") {
    const RunConfig cfg = config_from_text("grid_n = 8\n");
    const GeometryState s = build_initial_state(cfg);
    const auto& torus = std::get<ConformalTorusState>(s);
    CHECK(torus.u.rows() == 8);
    CHECK(torus.u.abs().maxCoeff() == 0.0);
  }

  SUBCASE("cosine torus matches the factory") {
    const RunConfig cfg = config_from_text(
        "grid_n = 16\ninitial = cosine\ninitial.amplitude = 0.3\n"
        "initial.mode = 2\n");
    const GeometryState s = build_initial_state(cfg);
    const auto& built = std::get<ConformalTorusState>(s);
    const ConformalTorusState direct = make_cosine_torus(16, 0.3, 2);
    CHECK((built.u == direct.u).all());
  }

  SUBCASE("warped factories") {
    const RunConfig cfg = config_from_text(
        "geometry = warped\ndim = 4\ngrid_n = 24\ninitial = cosine\n"
        "initial.amplitude = 0.4\ninitial.mode = 2\ninitial.r0 = 2\n"
        "initial.phi0 = 1.5\n");
    const GeometryState s = build_initial_state(cfg);
    const auto& built = std::get<WarpedProductState>(s);
    const WarpedProductState direct = make_cosine_warped(24, 4, 2.0, 1.5, 0.4, 2);
    CHECK((built.phi == direct.phi).all());
    CHECK((built.psi == direct.psi).all());

    const RunConfig prod = config_from_text(
        "geometry = warped\ndim = 5\ngrid_n = 12\ninitial = product\n"
        "initial.r0 = 3\n");
    const GeometryState sp = build_initial_state(prod);
    const auto& ps = std::get<WarpedProductState>(sp);
    CHECK(ps.dim == 5);
    CHECK((ps.psi == 3.0).all());
    CHECK((ps.phi == 1.0).all());
  }
}

TEST_CASE("custom-file initial data") {
  SUBCASE("conformal grid round-trips") {
    const auto path = temp_file("u_grid.txt");
    std::ostringstream data;
    std::vector<double> vals;
    for (int k = 0; k < 64; ++k) {
      const double v = std::sin(0.7 * k) / 3.0 - 0.1;
      vals.push_back(v);
      data << format_g17(v) << (k % 8 == 7 ? "\n" : " ");
    }
    write_text(path, data.str());

    const RunConfig cfg = config_from_text(
        "grid_n = 8\ninitial = custom-file\ninitial.path = " + path.string() +
        "\n");
    const GeometryState s = build_initial_state(cfg);
    const auto& torus = std::get<ConformalTorusState>(s);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        CHECK(torus.u(i, j) == vals[static_cast<std::size_t>(i) * 8 + j]);
    std::filesystem::remove(path);
  }

  SUBCASE("warped phi/psi rows round-trip") {
    const auto path = temp_file("phipsi.txt");
    std::ostringstream data;
    for (int i = 0; i < 8; ++i) {
      data << format_g17(1.0 + 0.01 * i) << ' ' << format_g17(2.0 - 0.05 * i)
           << '\n';
    }
    write_text(path, data.str());

    const RunConfig cfg = config_from_text(
        "geometry = warped\ndim = 3\ngrid_n = 8\ninitial = custom-file\n"
        "initial.path = " + path.string() + "\n");
    const GeometryState s = build_initial_state(cfg);
    const auto& w = std::get<WarpedProductState>(s);
    for (int i = 0; i < 8; ++i) {
      CHECK(w.phi(i) == 1.0 + 0.01 * i);
      CHECK(w.psi(i) == 2.0 - 0.05 * i);
    }
    std::filesystem::remove(path);
  }

  SUBCASE("failure modes") {
    RunConfig cfg = config_from_text("grid_n = 8\ninitial = custom-file\n");
    CHECK(contains(
        config_error_message([&] { build_initial_state(cfg); }),
        "'initial.path' is required"));

    cfg.initial_path = temp_file("missing.txt").string();
    CHECK(contains(config_error_message([&] { build_initial_state(cfg); }),
                   "cannot open"));

    const auto bad = temp_file("bad.txt");
    write_text(bad, "1 2 three 4\n");
    cfg.initial_path = bad.string();
    CHECK(contains(config_error_message([&] { build_initial_state(cfg); }),
                   "non-numeric"));

    write_text(bad, "1 2 3\n");
    CHECK(contains(config_error_message([&] { build_initial_state(cfg); }),
                   "expected 64 values, got 3"));

    // A warped file with a nonpositive radius is structurally valid but
    // geometrically inadmissible.
    std::ostringstream data;
    for (int i = 0; i < 8; ++i) data << "1.0 " << (i == 2 ? -2.0 : 2.0) << '\n';
    write_text(bad, data.str());
    const RunConfig wcfg = config_from_text(
        "geometry = warped\ndim = 3\ngrid_n = 8\ninitial = custom-file\n"
        "initial.path = " + bad.string() + "\n");
    CHECK(contains(config_error_message([&] { build_initial_state(wcfg); }),
                   "invalid state"));
    std::filesystem::remove(bad);
  }
}

TEST_CASE("numbers round-trip through %.17g formatting") {
  const double values[] = {0.0,
                           1.0,
                           -2.5,
                           1.0 / 3.0,
                           0.1,
                           1.0e-17,
                           6.02214076e23,
                           -3.14159265358979312,
                           1.0e308,
                           std::numeric_limits<double>::denorm_min(),
                           -0.0};
  for (const double v : values) {
    CAPTURE(v);
    const std::string s = format_g17(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
    CHECK(std::signbit(back) == std::signbit(v));
  }
}

TEST_CASE("CSV output: fixed header and bit-exact numbers") {
  FlowRecord r1;
  r1.t = 0.0;
  r1.dt = 0.0;
  r1.r_min = -1.0 / 3.0;
  r1.r_max = 0.7;
  r1.volume = 39.478417604357434;
  FlowRecord r2;
  r2.t = 0.0125;
  r2.dt = 0.0125;
  r2.r_min = -0.3301;
  r2.r_max = 0.69;
  r2.volume = 39.478417604357434;
  r2.f_max = 1.25e-3;
  r2.res_r_evol = 4.0e-5;
  r2.res_ric_evol = 2.0e-13;
  r2.decay_k1 = 0.11;
  r2.decay_k2 = 0.02;

  const auto path = temp_file("records.csv");
  write_csv(path.string(), {r1, r2});
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,dt,R_min,R_max,volume,f_max,res_R_evol,res_Ric_evol,decay_k1,"
        "decay_k2");

  std::string row;
  std::getline(in, row);  // first data row
  std::getline(in, row);  // second data row
  std::vector<double> fields;
  std::istringstream split(row);
  std::string cell;
  while (std::getline(split, cell, ',')) {
    fields.push_back(std::strtod(cell.c_str(), nullptr));
  }
  REQUIRE(fields.size() == 10);
  CHECK(fields[0] == r2.t);
  CHECK(fields[1] == r2.dt);
  CHECK(fields[2] == r2.r_min);
  CHECK(fields[3] == r2.r_max);
  CHECK(fields[4] == r2.volume);
  CHECK(fields[5] == r2.f_max);
  CHECK(fields[6] == r2.res_r_evol);
  CHECK(fields[7] == r2.res_ric_evol);
  CHECK(fields[8] == r2.decay_k1);
  CHECK(fields[9] == r2.decay_k2);

  std::string extra;
  CHECK_FALSE(std::getline(in, extra));  // exactly header + one row per record
  std::filesystem::remove(path);
}

TEST_CASE("JSON summary parses and carries the run facts") {
  FlowParams p;
  p.dim = 2;
  p.alpha = 1.0;
  p.beta = 0.5;
  IntegratorConfig ic;
  ic.t_end = 0.02;
  RunSummary summary;
  summary.config = config_from_text(
      "grid_n = 16\ninitial = cosine\ninitial.amplitude = 0.2\n"
      "alpha = 1\nbeta = 0.5\nt_end = 0.02\n");
  summary.outcome = run(make_cosine_torus(16, 0.2, 1), p, ic);
  REQUIRE(summary.outcome.status == RunStatus::kReachedTEnd);

  MonitorReport ok;
  ok.name = "scalar-min";
  ok.pass = true;
  MonitorReport na;
  na.name = "pinching";
  na.applicable = false;
  na.pass = false;
  na.detail = "requires dim >= 3";
  summary.monitor_reports = {ok, na};
  summary.sup_ric_plus_hess_R = 12.5;

  const auto path = temp_file("summary.json");
  write_json_summary(path.string(), summary);
  std::ifstream in(path);
  const nlohmann::json j = nlohmann::json::parse(in);

  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("status").get<std::string>() == "reached_t_end");
  CHECK(j.at("geometry").get<std::string>() == "conformal2d");
  CHECK(j.at("grid_n").get<int>() == 16);
  CHECK(j.at("dim").get<int>() == 2);
  CHECK(j.at("alpha").get<double>() == 1.0);
  CHECK(j.at("beta").get<double>() == 0.5);
  CHECK(j.at("scheme").get<std::string>() == "rk4");
  CHECK(j.at("steps").get<long long>() ==
        static_cast<long long>(summary.outcome.steps));
  CHECK(j.at("t_final").get<double>() == summary.outcome.t_final);
  CHECK(j.at("volume_initial").get<double>() ==
        summary.outcome.records.front().volume);
  CHECK(j.at("volume_final").get<double>() ==
        summary.outcome.records.back().volume);
  CHECK(j.at("sup_ric_plus_hess_R").get<double>() == 12.5);

  REQUIRE(j.at("monitors").size() == 2);
  CHECK(j["monitors"][0].at("name").get<std::string>() == "scalar-min");
  CHECK(j["monitors"][0].at("pass").get<bool>());
  CHECK_FALSE(j["monitors"][1].at("applicable").get<bool>());
  // A failing report that is not applicable must not poison the verdict.
  CHECK(j.at("monitors_pass").get<bool>());
  std::filesystem::remove(path);
}

TEST_CASE("JSON summary: failing applicable monitor and non-finite values") {
  RunSummary summary;
  summary.config = config_from_text("");
  FlowRecord r;
  r.t = 0.0;
  r.volume = 1.0;
  summary.outcome.records = {r};
  MonitorReport bad;
  bad.name = "volume-rate";
  bad.pass = false;
  bad.worst_margin = -0.25;
  bad.detail = "volume-rate identity violated";
  summary.monitor_reports = {bad};
  summary.sup_ric_plus_hess_R = std::numeric_limits<double>::quiet_NaN();

  const auto path = temp_file("summary_fail.json");
  write_json_summary(path.string(), summary);
  std::ifstream in(path);
  const nlohmann::json j = nlohmann::json::parse(in);
  CHECK_FALSE(j.at("monitors_pass").get<bool>());
  CHECK(j.at("sup_ric_plus_hess_R").is_null());
  CHECK(j["monitors"][0].at("worst_margin").get<double>() == -0.25);
  std::filesystem::remove(path);
}

TEST_CASE("SVG plot output is a standalone picture of the three series") {
  std::vector<FlowRecord> records;
  for (int k = 0; k <= 20; ++k) {
    FlowRecord r;
    r.t = 0.01 * k;
    r.r_min = -1.0 + 0.01 * k;
    r.r_max = 1.0;
    r.volume = 39.5 - 0.1 * k;
    r.f_max = 0.5 / (1.0 + k);
    records.push_back(r);
  }
  records[3].f_max = std::numeric_limits<double>::quiet_NaN();  // skipped

  const auto path = temp_file("plots.svg");
  write_svg_plots(path.string(), records);
  const std::string svg = read_text(path);
  CHECK(contains(svg, "<svg"));
  CHECK(contains(svg, "</svg>"));
  CHECK(contains(svg, "polyline"));
  CHECK(contains(svg, "R_min"));
  CHECK(contains(svg, "volume"));
  CHECK(contains(svg, "f_max"));
  CHECK_FALSE(contains(svg, "nan"));
  std::filesystem::remove(path);
}
