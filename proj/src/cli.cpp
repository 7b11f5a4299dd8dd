#include "effham/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "effham/classical.hpp"
#include "effham/effective.hpp"
#include "effham/errors.hpp"
#include "effham/models.hpp"
#include "effham/spectra.hpp"
#include "effham/verify.hpp"

namespace effham::cli {

namespace {

using effham::effective::ModelSpec;
using effham::models::ModelId;

// ---------------------------------------------------------------------------
// Cell formatting: every number is serialized with 17 significant digits so
// repeated runs are byte-identical and values round-trip exactly.
// ---------------------------------------------------------------------------

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

struct Cell {
  std::string csv;
  std::string json;
};

Cell num_cell(double v) {
  const std::string s = fmt_double(v);
  return {s, std::isfinite(v) ? s : "null"};
}

Cell int_cell(long long v) {
  const std::string s = std::to_string(v);
  return {s, s};
}

Cell bool_cell(bool b) {
  const std::string s = b ? "true" : "false";
  return {s, s};
}

Cell str_cell(const std::string& s) {
  return {s, "\"" + json_escape(s) + "\""};
}

struct OutTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string config_json(const RunConfig& cfg) {
  std::ostringstream os;
  auto str_or_null = [](const std::string& s) {
    return s.empty() ? std::string("null") : "\"" + json_escape(s) + "\"";
  };
  auto num_or_null = [](double v) {
    return std::isfinite(v) ? fmt_double(v) : std::string("null");
  };
  os << "{\"command\":" << str_or_null(cfg.command)
     << ",\"model\":" << str_or_null(cfg.model)
     << ",\"omega1\":" << num_or_null(cfg.omega1)
     << ",\"omega2\":" << num_or_null(cfg.omega2)
     << ",\"g\":" << num_or_null(cfg.g) << ",\"xi\":" << num_or_null(cfg.xi)
     << ",\"A\":" << cfg.A << ",\"A1\":" << cfg.A1 << ",\"A2\":" << cfg.A2
     << ",\"n_max\":" << str_or_null(cfg.n_max)
     << ",\"tol\":" << num_or_null(cfg.tol)
     << ",\"param\":" << str_or_null(cfg.param)
     << ",\"start\":" << num_or_null(cfg.start)
     << ",\"stop\":" << num_or_null(cfg.stop) << ",\"steps\":" << cfg.steps
     << ",\"corrections\":" << (cfg.corrections ? "true" : "false")
     << ",\"check\":" << str_or_null(cfg.check)
     << ",\"deltas\":" << str_or_null(cfg.deltas)
     << ",\"a_list\":" << str_or_null(cfg.a_list)
     << ",\"format\":" << str_or_null(cfg.format) << "}";
  return os.str();
}

void write_table(std::ostream& os, const RunConfig& cfg, const OutTable& t) {
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < t.header.size(); ++i)
      os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << row[i].csv;
      os << "\n";
    }
  } else {
    os << "{\"config\":" << config_json(cfg) << ",\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      os << (r ? "," : "") << "{";
      for (std::size_t i = 0; i < t.rows[r].size(); ++i)
        os << (i ? "," : "") << "\"" << t.header[i]
           << "\":" << t.rows[r][i].json;
      os << "}";
    }
    os << "]}\n";
  }
}

// ---------------------------------------------------------------------------
// Parameter resolution helpers
// ---------------------------------------------------------------------------

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw invalid_parameter_error(flag + ": cannot parse '" + item + "'");
    }
    if (used != item.size())
      throw invalid_parameter_error(flag + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw invalid_parameter_error(flag + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text,
                                const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_double_list(text, flag)) {
    if (v != std::floor(v))
      throw invalid_parameter_error(flag + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int parse_nmax_int(const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw invalid_parameter_error("--n-max: expected an integer or 'auto'");
  }
  if (used != text.size())
    throw invalid_parameter_error("--n-max: expected an integer or 'auto'");
  if (v < 2) throw invalid_parameter_error("--n-max must be >= 2");
  return v;
}

bool is_atom_model(ModelId id) {
  return id == ModelId::dicke_atom_slow ||
         id == ModelId::dicke_atom_slow_rotated;
}

bool is_field_model(ModelId id) {
  return id == ModelId::dicke_full || id == ModelId::dicke_field_slow;
}

ModelId require_model(const RunConfig& cfg) {
  if (cfg.model.empty())
    throw invalid_parameter_error("--model is required for this command");
  return models::model_from_string(cfg.model);
}

// Resolve the coupling: --g wins; otherwise --xi is inverted through the
// atom-slow critical ratio (the only model family with that contract).
ModelSpec resolve_spec(const RunConfig& cfg, ModelId id) {
  double g = cfg.g;
  if (std::isnan(g)) {
    if (std::isnan(cfg.xi))
      throw invalid_parameter_error("provide --g or --xi");
    if (!is_atom_model(id))
      throw invalid_parameter_error(
          "--xi resolves the coupling only for the atom-slow models; "
          "pass --g");
    g = models::solve_g_for_xi(cfg.A, cfg.omega1, cfg.omega2, cfg.xi);
  }
  return ModelSpec(cfg.omega1, cfg.omega2, g);
}

// Build the requested model, auto-converging the Fock cutoff when asked.
Operator build_model(const RunConfig& cfg, ModelId id, int a_value,
                     double g_value) {
  const ModelSpec spec(cfg.omega1, cfg.omega2, g_value);
  switch (id) {
    case ModelId::dicke_full:
    case ModelId::dicke_field_slow: {
      auto builder = [&](int n) {
        return id == ModelId::dicke_full
                   ? models::dicke_full(a_value, n, spec)
                   : models::dicke_field_slow(a_value, n, spec);
      };
      const int n = cfg.n_max == "auto"
                        ? spectra::converge_cutoff(builder, cfg.tol)
                        : parse_nmax_int(cfg.n_max);
      return builder(n);
    }
    case ModelId::dicke_atom_slow:
      return models::dicke_atom_slow(a_value, spec, /*rotated=*/false);
    case ModelId::dicke_atom_slow_rotated:
      return models::dicke_atom_slow(a_value, spec, /*rotated=*/true);
    case ModelId::spin_spin_slow:
      return models::spin_spin_slow(a_value, cfg.A2, spec);
  }
  throw invalid_parameter_error("unreachable model id");
}

// Model-appropriate renormalized frequency for diagnostics; NaN when the
// model has no single effective frequency (the exact coupled model).
double diagnostic_frequency(ModelId id, int a_value, const ModelSpec& spec) {
  switch (id) {
    case ModelId::dicke_field_slow:
      return models::omega1_tilde_field_slow(a_value, spec);
    case ModelId::dicke_atom_slow:
    case ModelId::dicke_atom_slow_rotated:
      return models::omega1_tilde_atom_slow(spec);
    case ModelId::spin_spin_slow:
      return models::omega1_tilde_spin_spin(a_value, spec);
    case ModelId::dicke_full:
      return std::nan("");
  }
  return std::nan("");
}

// Critical ratio for diagnostics; NaN when the regime has broken down.
double diagnostic_xi(ModelId id, int a_value, const RunConfig& cfg,
                     const ModelSpec& spec) {
  try {
    const int a1 = id == ModelId::spin_spin_slow ? a_value : cfg.A1;
    return models::critical_coupling(id, a_value, a1, cfg.A2, spec).xi;
  } catch (const regime_invalid_error&) {
    return std::nan("");
  }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

OutTable run_spectrum(const RunConfig& cfg) {
  const ModelId id = require_model(cfg);
  const ModelSpec spec = resolve_spec(cfg, id);
  const int a_value = id == ModelId::spin_spin_slow ? cfg.A1 : cfg.A;
  const Operator h = build_model(cfg, id, a_value, spec.g);
  const spectra::SpectralResult sr =
      spectra::eig_sym(h, /*want_vectors=*/false);

  const double w1t = diagnostic_frequency(id, a_value, spec);
  const double xi = diagnostic_xi(id, a_value, cfg, spec);
  const double delta = spec.delta();

  OutTable t;
  t.header = {"index", "energy", "delta", "omega1_tilde", "xi"};
  for (std::size_t i = 0; i < sr.eigenvalues.size(); ++i)
    t.rows.push_back({int_cell(static_cast<long long>(i)),
                      num_cell(sr.eigenvalues[i]), num_cell(delta),
                      num_cell(w1t), num_cell(xi)});
  return t;
}

OutTable run_classical(const RunConfig& cfg) {
  const ModelId id = cfg.model.empty() ? ModelId::dicke_atom_slow
                                       : models::model_from_string(cfg.model);

  if (!cfg.param.empty()) {
    // Bifurcation mode: locate the critical sweep value.
    if (is_field_model(id) && cfg.param != "A")
      throw invalid_parameter_error(
          "field models bifurcate along --param A");
    if (is_atom_model(id) && cfg.param != "g")
      throw invalid_parameter_error(
          "atom models bifurcate along --param g");
    if (!is_field_model(id) && !is_atom_model(id))
      throw invalid_parameter_error(
          "bifurcation_scan: the spin-spin model has no sweep contract");
    double g_fixed = cfg.g;
    if (is_field_model(id)) {
      if (std::isnan(g_fixed))
        throw invalid_parameter_error("field bifurcation requires --g");
    } else {
      g_fixed = 0.0;  // unused for the atom sweep
    }
    const classical::SweepGrid grid{cfg.start, cfg.stop, cfg.steps};
    const double crit = classical::bifurcation_scan(
        id, grid, cfg.A, cfg.omega1, cfg.omega2, g_fixed);
    OutTable t;
    t.header = {"param", "critical_value"};
    t.rows.push_back({str_cell(cfg.param), num_cell(crit)});
    return t;
  }

  if (!is_atom_model(id))
    throw invalid_parameter_error(
        "classical landscapes are defined for the atom-slow models");
  const ModelSpec spec = resolve_spec(cfg, id);
  const classical::ClassicalLandscape land =
      classical::find_stationary(cfg.A, spec, cfg.corrections);

  OutTable t;
  t.header = {"theta",        "phi",
              "energy",       "kind",
              "xi",           "order_parameter",
              "separatrix_energy", "omega1_tilde",
              "corrections"};
  for (const auto& pt : land.stationary_points) {
    const char* kind = pt.kind == classical::StationaryKind::minimum
                           ? "min"
                           : pt.kind == classical::StationaryKind::maximum
                                 ? "max"
                                 : "saddle";
    t.rows.push_back(
        {num_cell(pt.theta), num_cell(pt.phi), num_cell(pt.energy),
         str_cell(kind), num_cell(land.xi), num_cell(land.order_parameter),
         num_cell(land.separatrix_energy ? *land.separatrix_energy
                                         : std::nan("")),
         num_cell(land.omega1_tilde), bool_cell(cfg.corrections)});
  }
  return t;
}

OutTable run_scan(const RunConfig& cfg) {
  const ModelId id = require_model(cfg);
  if (cfg.param != "A" && cfg.param != "g")
    throw invalid_parameter_error("scan requires --param A or --param g");
  if (cfg.steps < 2) throw invalid_parameter_error("scan needs --steps >= 2");
  if (!(cfg.start < cfg.stop))
    throw invalid_parameter_error("scan needs --start < --stop");
  const bool sweep_a = cfg.param == "A";

  double g_base = std::nan("");
  if (sweep_a) g_base = resolve_spec(cfg, id).g;

  struct Row {
    long long a_value = 0;
    double g_value = 0.0;
    double e0 = 0.0, gap = 0.0, xi = 0.0, order = 0.0, c2 = 0.0;
  };
  std::vector<Row> rows(cfg.steps);
  std::vector<std::exception_ptr> errors(cfg.steps);

  auto compute = [&](int i) {
    const double v =
        cfg.start + (cfg.stop - cfg.start) * i / (cfg.steps - 1.0);
    Row& row = rows[i];
    if (sweep_a) {
      row.a_value = std::llround(v);
      if (row.a_value < 1)
        throw invalid_parameter_error("scan: A values must be >= 1");
      row.g_value = g_base;
    } else {
      row.a_value = id == ModelId::spin_spin_slow ? cfg.A1 : cfg.A;
      row.g_value = v;
    }
    const int a = static_cast<int>(row.a_value);
    const ModelSpec spec(cfg.omega1, cfg.omega2, row.g_value);
    const Operator h = build_model(cfg, id, a, row.g_value);
    const spectra::SpectralResult sr = spectra::eig_sym(h, false);
    row.e0 = sr.ground_energy;
    row.gap = sr.gap;
    row.xi = diagnostic_xi(id, a, cfg, spec);
    row.order =
        std::isnan(row.xi) ? std::nan("") : classical::order_parameter(row.xi);
    row.c2 = is_field_model(id)
                 ? models::field_slow_coeffs(static_cast<double>(a), spec).c2
                 : std::nan("");
  };

  int jobs = cfg.jobs;
  if (jobs <= 0) {
    jobs = 1;
    if (const char* env = std::getenv("EFFHAM_JOBS")) {
      try {
        jobs = std::max(1, std::stoi(env));
      } catch (const std::exception&) {
        jobs = 1;
      }
    }
  }
  jobs = std::min(jobs, cfg.steps);

  if (jobs <= 1) {
    for (int i = 0; i < cfg.steps; ++i) compute(i);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int i = next.fetch_add(1); i < cfg.steps; i = next.fetch_add(1)) {
        try {
          compute(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (int i = 0; i < cfg.steps; ++i)
      if (errors[i]) std::rethrow_exception(errors[i]);
  }

  OutTable t;
  t.header = {"param", "value", "e0", "gap", "xi", "order_parameter", "c2"};
  for (const Row& row : rows) {
    Cell value =
        sweep_a ? int_cell(row.a_value) : num_cell(row.g_value);
    t.rows.push_back({str_cell(cfg.param), value, num_cell(row.e0),
                      num_cell(row.gap), num_cell(row.xi),
                      num_cell(row.order), num_cell(row.c2)});
  }
  return t;
}

OutTable run_verify(const RunConfig& cfg) {
  if (cfg.check == "error-scaling") {
    const double ratio = cfg.omega1 / cfg.omega2;
    const verify::ErrorTable table = verify::error_scaling(
        cfg.A, parse_double_list(cfg.deltas, "--deltas"), ratio, cfg.tol);
    OutTable t;
    t.header = {"delta",
                "n_cutoff",
                "e0_exact",
                "e0_effective",
                "abs_error",
                "rel_error",
                "generic_abs_error",
                "generic_alt_abs_error",
                "slope",
                "generic_slope",
                "generic_alt_slope",
                "non_monotone_warning",
                "alt_sign_flag"};
    for (const auto& r : table.rows)
      t.rows.push_back({num_cell(r.delta), int_cell(r.n_cutoff),
                        num_cell(r.e0_exact), num_cell(r.e0_effective),
                        num_cell(r.abs_error), num_cell(r.rel_error),
                        num_cell(r.generic_abs_error),
                        num_cell(r.generic_alt_abs_error),
                        num_cell(table.slope), num_cell(table.generic_slope),
                        num_cell(table.generic_alt_slope),
                        bool_cell(table.non_monotone_warning),
                        bool_cell(table.alt_sign_flag)});
    return t;
  }

  if (cfg.check == "closed-vs-generic") {
    const ModelId id = require_model(cfg);
    const ModelSpec spec(cfg.omega1, cfg.omega2,
                         std::isnan(cfg.g) ? 0.05 : cfg.g);
    const int n_max = cfg.n_max == "auto" ? 8 : parse_nmax_int(cfg.n_max);
    const int a =
        id == ModelId::spin_spin_slow ? cfg.A1 : cfg.A;
    const verify::ComparisonReport rep =
        verify::closed_vs_generic(id, a, cfg.A2, n_max, spec);
    OutTable t;
    t.header = {"term",          "closed_value",
                "generic_value", "max_abs_diff",
                "max_abs_diff_offdiag", "h_norm",
                "dim"};
    for (const auto& term : rep.terms)
      t.rows.push_back({str_cell(term.name), num_cell(term.closed_value),
                        num_cell(term.generic_value),
                        num_cell(rep.max_abs_diff),
                        num_cell(rep.max_abs_diff_offdiag),
                        num_cell(rep.h_norm), int_cell(rep.dim)});
    return t;
  }

  if (cfg.check == "finite-size") {
    if (std::isnan(cfg.xi))
      throw invalid_parameter_error("finite-size check requires --xi");
    const verify::FiniteSizeTable table = verify::finite_size_convergence(
        parse_int_list(cfg.a_list, "--A-list"), cfg.xi, cfg.omega1,
        cfg.omega2);
    OutTable t;
    t.header = {"A",
                "e0_quantum",
                "e0_classical",
                "diff",
                "xi",
                "richardson_extrapolation",
                "richardson_consistent"};
    for (const auto& r : table.rows)
      t.rows.push_back({int_cell(r.A), num_cell(r.e0_quantum),
                        num_cell(r.e0_classical), num_cell(r.diff),
                        num_cell(table.xi),
                        num_cell(table.richardson_extrapolation),
                        bool_cell(table.richardson_consistent)});
    return t;
  }

  throw invalid_parameter_error(
      "verify requires --check error-scaling, closed-vs-generic, or "
      "finite-size");
}

}  // namespace

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

int dispatch(const RunConfig& cfg) {
  try {
    if (cfg.format != "csv" && cfg.format != "json")
      throw invalid_parameter_error("--format must be csv or json");

    OutTable table;
    if (cfg.command == "spectrum")
      table = run_spectrum(cfg);
    else if (cfg.command == "classical")
      table = run_classical(cfg);
    else if (cfg.command == "scan")
      table = run_scan(cfg);
    else if (cfg.command == "verify")
      table = run_verify(cfg);
    else
      throw invalid_parameter_error(
          "command must be spectrum, classical, scan, or verify");

    if (cfg.output.empty()) {
      write_table(std::cout, cfg, table);
    } else {
      std::ofstream file(cfg.output,
                         std::ios::out | std::ios::trunc | std::ios::binary);
      if (!file)
        throw invalid_parameter_error("cannot open output file: " +
                                      cfg.output);
      write_table(file, cfg, table);
    }
    return 0;
  } catch (const not_bracketed_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const no_convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// Config file: flat key=value lines, '#' comments, flags win over the file.
// ---------------------------------------------------------------------------

namespace {

std::string trim_ws(const std::string& s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

void apply_config_file(const CLI::App* sub, const std::string& path,
                       RunConfig* cfg) {
  std::ifstream in(path);
  if (!in)
    throw invalid_parameter_error("cannot open config file: " + path);

  auto was_set = [&](const char* flag) { return sub->count(flag) > 0; };
  auto as_double = [](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != v.size())
      throw invalid_parameter_error("config: " + key +
                                    ": cannot parse number '" + v + "'");
    return d;
  };
  auto as_int = [](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(v, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != v.size())
      throw invalid_parameter_error("config: " + key +
                                    ": cannot parse integer '" + v + "'");
    return i;
  };
  auto as_bool = [](const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw invalid_parameter_error("config: " + key +
                                  ": expected true/false, got '" + v + "'");
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim_ws(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw invalid_parameter_error("config line " + std::to_string(lineno) +
                                    ": expected key=value");
    std::string key = trim_ws(stripped.substr(0, eq));
    const std::string value = trim_ws(stripped.substr(eq + 1));
    for (char& ch : key)
      if (ch == '_') ch = '-';

    if (key == "model") {
      if (!was_set("--model")) cfg->model = value;
    } else if (key == "omega1") {
      if (!was_set("--omega1")) cfg->omega1 = as_double(key, value);
    } else if (key == "omega2") {
      if (!was_set("--omega2")) cfg->omega2 = as_double(key, value);
    } else if (key == "g") {
      if (!was_set("--g")) cfg->g = as_double(key, value);
    } else if (key == "xi") {
      if (!was_set("--xi")) cfg->xi = as_double(key, value);
    } else if (key == "A") {
      if (!was_set("--A")) cfg->A = as_int(key, value);
    } else if (key == "A1") {
      if (!was_set("--A1")) cfg->A1 = as_int(key, value);
    } else if (key == "A2") {
      if (!was_set("--A2")) cfg->A2 = as_int(key, value);
    } else if (key == "n-max") {
      if (!was_set("--n-max")) cfg->n_max = value;
    } else if (key == "tol") {
      if (!was_set("--tol")) cfg->tol = as_double(key, value);
    } else if (key == "param") {
      if (!was_set("--param")) cfg->param = value;
    } else if (key == "start") {
      if (!was_set("--start")) cfg->start = as_double(key, value);
    } else if (key == "stop") {
      if (!was_set("--stop")) cfg->stop = as_double(key, value);
    } else if (key == "steps") {
      if (!was_set("--steps")) cfg->steps = as_int(key, value);
    } else if (key == "corrections") {
      if (!was_set("--corrections")) cfg->corrections = as_bool(key, value);
    } else if (key == "check") {
      if (!was_set("--check")) cfg->check = value;
    } else if (key == "deltas") {
      if (!was_set("--deltas")) cfg->deltas = value;
    } else if (key == "A-list") {
      if (!was_set("--A-list")) cfg->a_list = value;
    } else if (key == "output") {
      if (!was_set("--output")) cfg->output = value;
    } else if (key == "format") {
      if (!was_set("--format")) cfg->format = value;
    } else if (key == "jobs") {
      if (!was_set("--jobs")) cfg->jobs = as_int(key, value);
    } else {
      throw invalid_parameter_error("config line " + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Flag parsing
// ---------------------------------------------------------------------------

int run_cli(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path;
  CLI::App app{
      "Effective Hamiltonians for slow-fast coupled quantum systems: "
      "spectra, classical landscapes, parameter scans, and verification "
      "tables."};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model,
                    "Model name (dicke-full, dicke-field-slow, "
                    "dicke-atom-slow, dicke-atom-slow-rotated, "
                    "spin-spin-slow)");
    sub->add_option("--omega1", cfg.omega1, "Slow frequency (default 0.01)");
    sub->add_option("--omega2", cfg.omega2, "Fast frequency (default 1)");
    sub->add_option("--g", cfg.g, "Coupling strength");
    sub->add_option("--xi", cfg.xi,
                    "Dimensionless critical ratio; resolves --g for the "
                    "atom-slow models");
    sub->add_option("--A", cfg.A, "Spin size (number of two-level atoms)");
    sub->add_option("--A1", cfg.A1, "Slow spin size (spin-spin model)");
    sub->add_option("--A2", cfg.A2, "Fast spin size (spin-spin model)");
    sub->add_option("--n-max", cfg.n_max,
                    "Fock cutoff: integer or 'auto' (default auto)");
    sub->add_option("--tol", cfg.tol,
                    "Convergence tolerance (default 1e-10)");
    sub->add_option("--param", cfg.param, "Swept parameter: A or g");
    sub->add_option("--start", cfg.start, "Sweep start");
    sub->add_option("--stop", cfg.stop, "Sweep stop");
    sub->add_option("--steps", cfg.steps, "Sweep point count (>= 2)");
    sub->add_flag("--corrections", cfg.corrections,
                  "Include cubic-order terms in the classical energy");
    sub->add_option("--check", cfg.check,
                    "Verification: error-scaling, closed-vs-generic, or "
                    "finite-size");
    sub->add_option("--deltas", cfg.deltas,
                    "Comma-separated delta grid for error-scaling");
    sub->add_option("--A-list", cfg.a_list,
                    "Comma-separated A grid for finite-size");
    sub->add_option("--output,-o", cfg.output,
                    "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format: csv or json");
    sub->add_option("--jobs", cfg.jobs,
                    "Concurrent scan evaluations (default: EFFHAM_JOBS or "
                    "1)");
    sub->add_option("--config", config_path,
                    "Config file of key=value lines ('#' comments); flags "
                    "win over file values");
  };

  add_common(app.add_subcommand("spectrum",
                                "Diagonalize one model and emit the "
                                "spectrum with diagnostics"));
  add_common(app.add_subcommand("classical",
                                "Stationary-point analysis of the classical "
                                "energy surface, or bifurcation location "
                                "with --param"));
  add_common(app.add_subcommand(
      "scan", "Sweep one parameter and emit one row per point"));
  add_common(app.add_subcommand(
      "verify", "Cross-validation tables (see --check)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (!config_path.empty()) {
    try {
      apply_config_file(sub, config_path, &cfg);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return dispatch(cfg);
}

}  // namespace effham::cli
