#include "ryflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ryflow/curvature.hpp"

namespace ryflow {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + value +
                      "'");
  }
  if (consumed != value.size()) {
    throw ConfigError("config key '" + key + "': trailing junk in '" + value +
                      "'");
  }
  return v;
}

long parse_int(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  long v = 0;
  try {
    v = std::stol(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: '" + value +
                      "'");
  }
  if (consumed != value.size()) {
    throw ConfigError("config key '" + key + "': trailing junk in '" + value +
                      "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" +
                    value + "'");
}

std::vector<std::string> split_csv_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

// JSON number or null for non-finite values (JSON has no inf/nan).
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_g17(v);
}

}  // namespace

const std::vector<std::string>& known_monitors() {
  static const std::vector<std::string> names = {
      "scalar-min", "volume-rate", "pinching", "derivative-decay"};
  return names;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    }
    if (kv.count(key) != 0) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig run_config_from_map(const std::map<std::string, std::string>& kv) {
  RunConfig cfg;
  bool dim_given = false;
  for (const auto& [key, value] : kv) {
    if (key == "geometry") {
      if (value != "conformal2d" && value != "warped") {
        throw ConfigError(
            "config key 'geometry': expected conformal2d or warped, got '" +
            value + "'");
      }
      cfg.geometry = value;
    } else if (key == "grid_n") {
      cfg.grid_n = static_cast<int>(parse_int(key, value));
    } else if (key == "dim") {
      cfg.params.dim = static_cast<int>(parse_int(key, value));
      dim_given = true;
    } else if (key == "alpha") {
      cfg.params.alpha = parse_double(key, value);
    } else if (key == "beta") {
      cfg.params.beta = parse_double(key, value);
    } else if (key == "allow_degenerate") {
      cfg.params.allow_degenerate = parse_bool(key, value);
    } else if (key == "t_end") {
      cfg.integ.t_end = parse_double(key, value);
    } else if (key == "cfl_safety") {
      cfg.integ.cfl_safety = parse_double(key, value);
    } else if (key == "max_steps") {
      cfg.integ.max_steps = parse_int(key, value);
    } else if (key == "record_every") {
      cfg.integ.record_every = parse_int(key, value);
    } else if (key == "blowup_r_cap") {
      cfg.integ.blowup_r_cap = parse_double(key, value);
    } else if (key == "scheme") {
      if (value == "rk4") {
        cfg.integ.scheme = TimeScheme::kRk4;
      } else if (value == "euler") {
        cfg.integ.scheme = TimeScheme::kEuler;
      } else {
        throw ConfigError("config key 'scheme': expected rk4 or euler, got '" +
                          value + "'");
      }
    } else if (key == "initial") {
      if (value == "flat") {
        cfg.initial = InitialKind::kFlat;
      } else if (value == "cosine") {
        cfg.initial = InitialKind::kCosine;
      } else if (value == "product") {
        cfg.initial = InitialKind::kProduct;
      } else if (value == "custom-file") {
        cfg.initial = InitialKind::kCustomFile;
      } else {
        throw ConfigError(
            "config key 'initial': expected flat, cosine, product or "
            "custom-file, got '" +
            value + "'");
      }
    } else if (key == "initial.amplitude") {
      cfg.amplitude = parse_double(key, value);
    } else if (key == "initial.mode") {
      cfg.mode = static_cast<int>(parse_int(key, value));
    } else if (key == "initial.r0") {
      cfg.r0 = parse_double(key, value);
    } else if (key == "initial.phi0") {
      cfg.phi0 = parse_double(key, value);
    } else if (key == "initial.path") {
      cfg.initial_path = value;
    } else if (key == "monitors") {
      if (value == "all") {
        cfg.monitors = known_monitors();
      } else if (value == "none") {
        cfg.monitors.clear();
      } else {
        cfg.monitors = split_csv_list(value);
        for (const auto& m : cfg.monitors) {
          const auto& known = known_monitors();
          if (std::find(known.begin(), known.end(), m) == known.end()) {
            throw ConfigError("config key 'monitors': unknown monitor '" + m +
                              "'");
          }
        }
      }
    } else if (key == "c_disc") {
      cfg.c_disc = parse_double(key, value);
      if (!(cfg.c_disc > 0.0)) {
        throw ConfigError("config key 'c_disc': must be positive");
      }
    } else if (key == "output.csv") {
      cfg.csv_path = value;
    } else if (key == "output.json") {
      cfg.json_path = value;
    } else if (key == "output.svg") {
      cfg.svg_path = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (cfg.geometry == "conformal2d") {
    if (dim_given && cfg.params.dim != 2) {
      throw ConfigError("config key 'dim': conformal2d geometry is 2D");
    }
    cfg.params.dim = 2;
    if (cfg.initial == InitialKind::kProduct) {
      throw ConfigError(
          "config key 'initial': product initial data needs warped geometry");
    }
  } else {
    if (!dim_given) {
      throw ConfigError("config key 'dim' is required for warped geometry");
    }
    if (cfg.params.dim < 3) {
      throw ConfigError("config key 'dim': warped geometry needs dim >= 3");
    }
    if (cfg.initial == InitialKind::kFlat) {
      throw ConfigError(
          "config key 'initial': no flat metric on this topology; use "
          "product or cosine");
    }
  }
  return cfg;
}

GeometryState build_initial_state(const RunConfig& cfg) {
  if (cfg.initial == InitialKind::kCustomFile) {
    if (cfg.initial_path.empty()) {
      throw ConfigError("config key 'initial.path' is required with "
                        "initial = custom-file");
    }
    std::ifstream in(cfg.initial_path);
    if (!in) {
      throw ConfigError("config key 'initial.path': cannot open '" +
                        cfg.initial_path + "'");
    }
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
      throw ConfigError("config key 'initial.path': non-numeric data in '" +
                        cfg.initial_path + "'");
    }
    const int n = cfg.grid_n;
    try {
      if (cfg.geometry == "conformal2d") {
        if (values.size() != static_cast<std::size_t>(n) * n) {
          throw ConfigError("config key 'initial.path': expected " +
                            std::to_string(n * n) + " values, got " +
                            std::to_string(values.size()));
        }
        ConformalTorusState s = make_flat_torus(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            s.u(i, j) = values[static_cast<std::size_t>(i) * n + j];
        validate_state(s);
        return s;
      }
      if (values.size() != 2 * static_cast<std::size_t>(n)) {
        throw ConfigError("config key 'initial.path': expected " +
                          std::to_string(2 * n) +
                          " values (phi psi per row), got " +
                          std::to_string(values.size()));
      }
      WarpedProductState s = make_product_state(n, cfg.params.dim, 1.0, 1.0);
      for (int i = 0; i < n; ++i) {
        s.phi(i) = values[2 * static_cast<std::size_t>(i)];
        s.psi(i) = values[2 * static_cast<std::size_t>(i) + 1];
      }
      validate_state(s);
      return s;
    } catch (const InvalidStateError& e) {
      throw ConfigError("config key 'initial.path': invalid state: " +
                        std::string(e.what()));
    }
  }

  try {
    if (cfg.geometry == "conformal2d") {
      if (cfg.initial == InitialKind::kFlat) return make_flat_torus(cfg.grid_n);
      return make_cosine_torus(cfg.grid_n, cfg.amplitude, cfg.mode);
    }
    if (cfg.initial == InitialKind::kProduct) {
      return make_product_state(cfg.grid_n, cfg.params.dim, cfg.r0, cfg.phi0);
    }
    return make_cosine_warped(cfg.grid_n, cfg.params.dim, cfg.r0, cfg.phi0,
                              cfg.amplitude, cfg.mode);
  } catch (const InvalidStateError& e) {
    throw ConfigError("invalid initial state: " + std::string(e.what()));
  }
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path,
               const std::vector<FlowRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open CSV output path '" + path + "'");
  }
  out << "t,dt,R_min,R_max,volume,f_max,res_R_evol,res_Ric_evol,decay_k1,"
         "decay_k2\n";
  for (const auto& r : records) {
    out << format_g17(r.t) << ',' << format_g17(r.dt) << ','
        << format_g17(r.r_min) << ',' << format_g17(r.r_max) << ','
        << format_g17(r.volume) << ',' << format_g17(r.f_max) << ','
        << format_g17(r.res_r_evol) << ',' << format_g17(r.res_ric_evol)
        << ',' << format_g17(r.decay_k1) << ',' << format_g17(r.decay_k2)
        << '\n';
  }
}

void write_json_summary(const std::string& path, const RunSummary& summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open JSON output path '" + path + "'");
  }
  const RunOutcome& o = summary.outcome;
  const RunConfig& c = summary.config;

  bool monitors_pass = true;
  for (const auto& m : summary.monitor_reports) {
    if (m.applicable && !m.pass) monitors_pass = false;
  }

  out << "{\n";
  out << "  \"schema_version\": 1,\n";
  out << "  \"status\": \"" << to_string(o.status) << "\",\n";
  out << "  \"stop_detail\": \"" << json_escape(o.stop_detail) << "\",\n";
  out << "  \"t_final\": " << json_number(o.t_final) << ",\n";
  out << "  \"steps\": " << o.steps << ",\n";
  out << "  \"geometry\": \"" << c.geometry << "\",\n";
  out << "  \"grid_n\": " << c.grid_n << ",\n";
  out << "  \"dim\": " << c.params.dim << ",\n";
  out << "  \"alpha\": " << json_number(c.params.alpha) << ",\n";
  out << "  \"beta\": " << json_number(c.params.beta) << ",\n";
  out << "  \"scheme\": \""
      << (c.integ.scheme == TimeScheme::kRk4 ? "rk4" : "euler") << "\",\n";
  out << "  \"t_end\": " << json_number(c.integ.t_end) << ",\n";
  out << "  \"c_disc\": " << json_number(c.c_disc) << ",\n";

  if (!o.records.empty()) {
    const FlowRecord& first = o.records.front();
    const FlowRecord& last = o.records.back();
    out << "  \"volume_initial\": " << json_number(first.volume) << ",\n";
    out << "  \"volume_final\": " << json_number(last.volume) << ",\n";
    out << "  \"r_min_final\": " << json_number(last.r_min) << ",\n";
    out << "  \"r_max_final\": " << json_number(last.r_max) << ",\n";
  }
  out << "  \"sup_ric_plus_hess_R\": "
      << json_number(summary.sup_ric_plus_hess_R) << ",\n";

  out << "  \"monitors\": [";
  for (std::size_t i = 0; i < summary.monitor_reports.size(); ++i) {
    const MonitorReport& m = summary.monitor_reports[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"name\": \"" << json_escape(m.name) << "\", "
        << "\"applicable\": " << (m.applicable ? "true" : "false") << ", "
        << "\"pass\": " << (m.pass ? "true" : "false") << ", "
        << "\"worst_margin\": " << json_number(m.worst_margin) << ", "
        << "\"worst_t\": " << json_number(m.worst_t) << ", "
        << "\"detail\": \"" << json_escape(m.detail) << "\"}";
  }
  out << "\n  ],\n";
  out << "  \"monitors_pass\": " << (monitors_pass ? "true" : "false")
      << "\n";
  out << "}\n";
}

namespace {

struct PlotSeries {
  const char* label;
  std::vector<double> t;
  std::vector<double> y;
};

void append_plot(std::ostream& out, const PlotSeries& series, double y_off) {
  constexpr double kW = 640.0, kH = 150.0, kLeft = 70.0, kTop = 10.0;
  double t_min = 0.0, t_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool have = false;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    if (!std::isfinite(series.t[i]) || !std::isfinite(series.y[i])) continue;
    if (!have) {
      t_min = t_max = series.t[i];
      y_min = y_max = series.y[i];
      have = true;
    } else {
      t_min = std::min(t_min, series.t[i]);
      t_max = std::max(t_max, series.t[i]);
      y_min = std::min(y_min, series.y[i]);
      y_max = std::max(y_max, series.y[i]);
    }
  }
  if (!have) return;
  if (t_max - t_min <= 0.0) t_max = t_min + 1.0;
  if (y_max - y_min <= 0.0) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const auto x_of = [&](double t) {
    return kLeft + (t - t_min) / (t_max - t_min) * kW;
  };
  const auto y_of = [&](double y) {
    return y_off + kTop + kH - (y - y_min) / (y_max - y_min) * kH;
  };
  char buf[64];
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << y_off + kTop << "\" width=\""
      << kW << "\" height=\"" << kH
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  out << "<text x=\"" << kLeft + 4 << "\" y=\"" << y_off + kTop + 14
      << "\">" << series.label << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.6g", y_max);
  out << "<text x=\"4\" y=\"" << y_off + kTop + 12 << "\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.6g", y_min);
  out << "<text x=\"4\" y=\"" << y_off + kTop + kH << "\">" << buf
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    if (!std::isfinite(series.t[i]) || !std::isfinite(series.y[i])) continue;
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x_of(series.t[i]),
                  y_of(series.y[i]));
    out << buf;
  }
  out << "\"/>\n</g>\n";
}

}  // namespace

void write_svg_plots(const std::string& path,
                     const std::vector<FlowRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open SVG output path '" + path + "'");
  }
  PlotSeries r_min{"R_min", {}, {}};
  PlotSeries volume{"volume", {}, {}};
  PlotSeries f_max{"f_max", {}, {}};
  for (const auto& r : records) {
    r_min.t.push_back(r.t);
    r_min.y.push_back(r.r_min);
    volume.t.push_back(r.t);
    volume.y.push_back(r.volume);
    f_max.t.push_back(r.t);
    f_max.y.push_back(r.f_max);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
         "height=\"540\" viewBox=\"0 0 720 540\">\n";
  out << "<rect width=\"720\" height=\"540\" fill=\"white\"/>\n";
  append_plot(out, r_min, 0.0);
  append_plot(out, volume, 180.0);
  append_plot(out, f_max, 360.0);
  out << "</svg>\n";
}

}  // namespace ryflow
