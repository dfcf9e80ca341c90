// Command-line front end. run() parses arguments, executes one subcommand and
// returns the process exit code: 0 success, 1 numeric/verification failure,
// 2 usage or input error.
#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "halfosc/hilbert.hpp"
#include "halfosc/spectrum.hpp"
#include "halfosc/table1.hpp"

namespace halfosc::cli {

using nlohmann::json;

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::optional<double> xi;
  std::optional<double> eta;
  std::optional<double> sigma;
  int levels = 11;
  int m = 1;
  double x_max = 30.0;
  double panel_width = 1.0;
  int nodes_per_panel = 24;
  double tol = 1e-10;
  double grid_step = 0.05;
  double grid_max = 10.0;
  Format format = Format::Csv;
  std::string output_path;  // empty: standard output
  std::string input_path;
};

inline constexpr double kGramThreshold = 1e-5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// A command's output: metadata, one main table, and extra JSON-only structure.
struct Report {
  std::vector<std::pair<std::string, json>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json extra = json::object();
  json diagnostics = json::object();
};

inline std::string meta_text(const json& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += meta_text(v[i]);
    }
    return s;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["xi"] = c.xi ? json(*c.xi) : json(nullptr);
  j["eta"] = c.eta ? json(*c.eta) : json(nullptr);
  if (c.sigma) j["sigma"] = *c.sigma;
  j["levels"] = c.levels;
  j["x_max"] = c.x_max;
  j["panel_width"] = c.panel_width;
  j["nodes_per_panel"] = c.nodes_per_panel;
  j["tol"] = c.tol;
  j["format"] = c.format == Format::Csv ? "csv" : "json";
  return j;
}

inline void write_report(const RunConfig& c, const Report& r, std::ostream& out) {
  if (c.format == Format::Json) {
    json results = json::object();
    for (const auto& [k, v] : r.meta) results[k] = v;
    json rows = json::array();
    for (const auto& row : r.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i) o[r.columns[i]] = row[i];
      rows.push_back(std::move(o));
    }
    results["rows"] = std::move(rows);
    for (const auto& [k, v] : r.extra.items()) results[k] = v;
    json doc;
    doc["config"] = config_json(c);
    doc["results"] = std::move(results);
    doc["diagnostics"] = r.diagnostics;
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : r.meta) out << "# " << k << '=' << meta_text(v) << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
    out << '\n';
  }
}

inline ExtensionParameter parameter_of(const RunConfig& c) {
  if (c.xi && c.eta) throw UsageError("--xi and --eta are mutually exclusive");
  if (!c.xi && !c.eta) throw UsageError("one of --xi or --eta is required");
  try {
    return c.xi ? xi_to_eta(*c.xi) : eta_to_parameter(*c.eta);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

inline QuadratureRule rule_of(const RunConfig& c) {
  try {
    return quadrature_rule(c.x_max, c.panel_width, c.nodes_per_panel);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

inline void check_levels(const RunConfig& c, int max_levels) {
  if (c.levels < 1 || c.levels > max_levels)
    throw UsageError("--levels must lie in [1, " + std::to_string(max_levels) + "]");
}

inline void add_parameter_meta(Report& r, const ExtensionParameter& p) {
  r.meta.emplace_back("xi", p.xi);
  r.meta.emplace_back("eta", p.eta ? json(*p.eta) : json("inf"));
}

// Commands return the exit status they want on success of the computation.

inline int cmd_spectrum(const RunConfig& c, Report& r) {
  check_levels(c, kMaxLevels);
  const auto p = parameter_of(c);
  const auto spec = spectrum(p, c.levels, c.tol);
  add_parameter_meta(r, p);
  r.columns = {"M", "nu", "energy", "c", "boundary_residual"};
  for (const auto& l : spec.levels)
    r.rows.push_back({static_cast<double>(l.level), l.nu, l.energy, l.c,
                      boundary_residual(l.nu, p.xi)});
  return 0;
}

inline int cmd_eigfun(const RunConfig& c, Report& r) {
  check_levels(c, kMaxLevels);
  if (c.m < 1 || c.m > c.levels) throw UsageError("--m must lie in [1, levels]");
  if (!(c.grid_step > 0.0) || !(c.grid_max > 0.0) || c.grid_max > kPcfXMax)
    throw UsageError("grid needs 0 < --grid-step and 0 < --grid-max <= 60");
  const auto p = parameter_of(c);
  const auto spec = spectrum(p, c.m, c.tol);
  const auto& level = spec.levels.back();
  const Eigenfunction e(level);
  add_parameter_meta(r, p);
  r.meta.emplace_back("M", level.level);
  r.meta.emplace_back("nu", level.nu);
  r.meta.emplace_back("energy", level.energy);
  r.meta.emplace_back("c", level.c);
  r.columns = {"x", "value"};
  const auto n = static_cast<long>(std::floor(c.grid_max / c.grid_step + 1e-9));
  for (long i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) * c.grid_step;
    r.rows.push_back({x, e(x)});
  }
  return 0;
}

inline int cmd_table1(const RunConfig& c, Report& r, std::ostream& err) {
  const auto grid = table1::table1_grid(c.tol);
  const auto cells = table1::compare(grid);
  r.columns = {"eta_label", "xi", "M", "computed", "published", "abs_deviation", "tolerance", "pass"};
  double worst = 0.0;
  std::size_t passed = 0;
  json failures = json::array();
  for (const auto& cell : cells) {
    const auto p = table1::column_parameter(cell.col);
    r.rows.push_back({table1::kEtaLabels[cell.col], p.xi, static_cast<double>(cell.row + 1),
                      cell.computed, cell.published, cell.deviation, cell.tolerance,
                      cell.pass() ? 1.0 : 0.0});
    worst = std::max(worst, cell.deviation);
    if (cell.pass()) {
      ++passed;
    } else {
      failures.push_back({{"eta_label", table1::kEtaLabels[cell.col]},
                          {"M", cell.row + 1},
                          {"deviation", cell.deviation},
                          {"tolerance", cell.tolerance}});
    }
  }
  r.meta.emplace_back("cells", static_cast<int>(cells.size()));
  r.meta.emplace_back("passed", static_cast<int>(passed));
  r.meta.emplace_back("max_abs_deviation", worst);
  r.meta.emplace_back("status", passed == cells.size() ? "PASS" : "FAIL");
  r.diagnostics["failures"] = failures;
  err << "table1: " << passed << "/" << cells.size() << " cells within tolerance, max |dev| "
      << human(worst) << '\n';
  for (const auto& f : failures)
    err << "table1: FAIL eta=" << human(f["eta_label"].get<double>()) << " M=" << f["M"]
        << " |dev|=" << human(f["deviation"].get<double>())
        << " tol=" << human(f["tolerance"].get<double>()) << '\n';
  return passed == cells.size() ? 0 : 1;
}

inline int cmd_gram(const RunConfig& c, Report& r, std::ostream& err) {
  check_levels(c, 20);
  const auto p = parameter_of(c);
  const auto rule = rule_of(c);
  const auto spec = spectrum(p, c.levels, c.tol);
  const auto g = gram_matrix(spec, static_cast<std::size_t>(c.levels), rule);
  add_parameter_meta(r, p);
  const double dev = g.max_deviation_from_identity();
  r.meta.emplace_back("max_deviation", dev);
  r.meta.emplace_back("threshold", kGramThreshold);
  for (std::size_t i = 0; i < g.size(); ++i) r.columns.push_back("M" + std::to_string(i + 1));
  json matrix = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> row(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) row[j] = g(i, j);
    matrix.push_back(row);
    r.rows.push_back(std::move(row));
  }
  r.extra["gram"] = matrix;
  err << "gram: max |G - I| = " << human(dev) << '\n';
  return dev <= kGramThreshold ? 0 : 1;
}

inline int cmd_expand(const RunConfig& c, Report& r, std::ostream& err) {
  check_levels(c, kMaxLevels);
  if (c.input_path.empty()) throw UsageError("expand needs an input CSV path");
  std::ifstream in(c.input_path);
  if (!in) throw UsageError("cannot open input file '" + c.input_path + "'");
  GridFunction f;
  try {
    f = read_grid_function_csv(in);
  } catch (const DomainError& e) {
    throw UsageError(c.input_path + ": " + e.what());
  }
  const auto p = parameter_of(c);
  const auto rule = rule_of(c);
  std::vector<double> samples;
  try {
    samples = resample(f, rule);
  } catch (const DomainError& e) {
    throw UsageError(c.input_path + ": " + e.what());
  }
  const auto spec = spectrum(p, c.levels, c.tol);
  const auto n = static_cast<std::size_t>(c.levels);
  const auto a = project_samples(samples, spec, n, rule);
  const double norm2 = inner_product_samples(samples, samples, rule);

  add_parameter_meta(r, p);
  r.meta.emplace_back("norm_squared", norm2);
  r.columns = {"M", "nu", "coefficient", "parseval_partial_sum"};
  double partial = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    partial += a[m] * a[m];
    r.rows.push_back({static_cast<double>(m + 1), spec[m].nu, a[m], partial});
  }
  std::vector<std::size_t> cuts = {std::max<std::size_t>(1, n / 4), std::max<std::size_t>(1, n / 2), n};
  json residuals = json::array();
  std::vector<double> rvals;
  for (auto k : cuts) {
    const double res = projection_residual(samples, a, spec, k, rule);
    residuals.push_back({{"n", k}, {"residual", res}});
    rvals.push_back(res);
    r.meta.emplace_back("residual_n" + std::to_string(k), res);
  }
  r.extra["residuals"] = residuals;
  err << "expand: ||f||^2 = " << human(norm2) << ", residuals";
  for (std::size_t i = 0; i < cuts.size(); ++i) err << " n=" << cuts[i] << ":" << human(rvals[i]);
  err << '\n';
  return 0;
}

inline int cmd_fullline(const RunConfig& c, Report& r, std::ostream& err) {
  if (!c.sigma) throw UsageError("fullline needs --sigma");
  const auto p = parameter_of(c);
  if (!(*c.sigma >= 0.0 && *c.sigma < std::numbers::pi)) throw UsageError("--sigma outside [0, pi)");
  const auto rule = rule_of(c);
  constexpr int kPerFamily = 4;
  const auto basis = fullline_basis(p.xi, *c.sigma, kPerFamily);
  const auto g = fullline_gram(basis, rule);
  double cross = 0.0;
  for (std::size_t i = 0; i < kPerFamily; ++i)
    for (std::size_t j = kPerFamily; j < 2 * kPerFamily; ++j) cross = std::max(cross, std::abs(g(i, j)));
  const double dev = g.max_deviation_from_identity();

  add_parameter_meta(r, p);
  r.meta.emplace_back("sigma", *c.sigma);
  r.meta.emplace_back("gram_max_deviation", dev);
  r.meta.emplace_back("cross_family_max", cross);
  json matrix = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> row(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) row[j] = g(i, j);
    r.meta.emplace_back("gram_row" + std::to_string(i + 1), row);
    matrix.push_back(row);
  }
  r.extra["gram"] = matrix;
  json elements = json::array();
  r.columns = {"x"};
  for (const auto& e : basis.elements) {
    const bool right = e.side() == HalfLine::Right;
    r.columns.push_back(std::string(right ? "right_M" : "left_M") + std::to_string(e.level().level));
    elements.push_back({{"family", right ? "xi" : "sigma"}, {"M", e.level().level},
                        {"nu", e.level().nu}, {"c", e.level().c}});
  }
  r.extra["elements"] = elements;
  if (!(c.grid_step > 0.0) || !(c.grid_max > 0.0) || c.grid_max > kPcfXMax)
    throw UsageError("grid needs 0 < --grid-step and 0 < --grid-max <= 60");
  const auto n = static_cast<long>(std::floor(c.grid_max / c.grid_step + 1e-9));
  for (long i = -n; i <= n; ++i) {
    const double x = static_cast<double>(i) * c.grid_step;
    std::vector<double> row{x};
    for (const auto& e : basis.elements) row.push_back(e(x));
    r.rows.push_back(std::move(row));
  }
  err << "fullline: two-sided max |G - I| = " << human(dev) << ", cross-family max = " << human(cross)
      << '\n';
  return dev <= kGramThreshold ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and eigenbases of the half-line harmonic oscillator -d^2/dx^2 + x^2/4",
               "halfosc"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";
  double xi = 0, eta = 0, sigma = 0;

  auto common = [&](CLI::App* sub, bool parameter, bool quadrature) {
    if (parameter) {
      auto* oxi = sub->add_option("--xi", xi, "boundary angle xi in [0, pi)");
      auto* oeta = sub->add_option("--eta", eta, "eigenvalue-equation parameter eta = cot(xi)/sqrt(2)");
      oxi->excludes(oeta);
    }
    sub->add_option("--levels", cfg.levels, "number of levels")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "root residual tolerance")->capture_default_str();
    if (quadrature) {
      sub->add_option("--x-max", cfg.x_max, "quadrature truncation point")->capture_default_str();
      sub->add_option("--panel-width", cfg.panel_width, "quadrature panel width")->capture_default_str();
      sub->add_option("--nodes-per-panel", cfg.nodes_per_panel, "Gauss-Legendre nodes per panel")
          ->capture_default_str();
    }
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", cfg.output_path, "output file (default: standard output)");
  };

  auto* s_spectrum = app.add_subcommand("spectrum", "eigen-orders, energies and normalization constants");
  common(s_spectrum, true, false);
  auto* s_eigfun = app.add_subcommand("eigfun", "samples of a normalized eigenfunction");
  common(s_eigfun, true, false);
  s_eigfun->add_option("--m", cfg.m, "level index")->capture_default_str();
  s_eigfun->add_option("--grid-step", cfg.grid_step, "sample spacing")->capture_default_str();
  s_eigfun->add_option("--grid-max", cfg.grid_max, "last abscissa")->capture_default_str();
  auto* s_table1 = app.add_subcommand("table1", "recompute the reference 11 x 7 eigen-order table");
  common(s_table1, false, false);
  auto* s_gram = app.add_subcommand("gram", "Gram matrix of the normalized eigenfunctions");
  common(s_gram, true, true);
  auto* s_expand = app.add_subcommand("expand", "expand a sampled function in the eigenbasis");
  common(s_expand, true, true);
  s_expand->add_option("input", cfg.input_path, "two-column CSV (x, value)")->required();
  auto* s_fullline = app.add_subcommand("fullline", "combined basis on the real line");
  common(s_fullline, true, true);
  s_fullline->add_option("--sigma", sigma, "boundary angle of the mirrored family")->required();
  s_fullline->add_option("--grid-step", cfg.grid_step, "sample spacing")->capture_default_str();
  s_fullline->add_option("--grid-max", cfg.grid_max, "sample range [-grid-max, grid-max]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (const auto* o = sub->get_option_no_throw("--xi"); o && o->count()) cfg.xi = xi;
  if (const auto* o = sub->get_option_no_throw("--eta"); o && o->count()) cfg.eta = eta;
  if (cfg.command == "fullline") cfg.sigma = sigma;
  cfg.format = format == "json" ? Format::Json : Format::Csv;

  Report report;
  int status = 0;
  try {
    if (cfg.command == "spectrum") status = cmd_spectrum(cfg, report);
    else if (cfg.command == "eigfun") status = cmd_eigfun(cfg, report);
    else if (cfg.command == "table1") status = cmd_table1(cfg, report, err);
    else if (cfg.command == "gram") status = cmd_gram(cfg, report, err);
    else if (cfg.command == "expand") status = cmd_expand(cfg, report, err);
    else status = cmd_fullline(cfg, report, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.output_path.empty()) {
    write_report(cfg, report, out);
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.output_path << "'\n";
      return 2;
    }
    write_report(cfg, report, file);
  }
  return status;
}

}  // namespace halfosc::cli
