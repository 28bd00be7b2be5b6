// Command-line front end: solve catalog models, check raw coefficient sets,
// run the verification oracles, sweep parameter grids.
//
// Exit codes: 0 ok, 1 verification/check fail, 2 invalid input,
// 3 not algebraizable, 4 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qes/errors.hpp"
#include "qes/jacobi.hpp"
#include "qes/models.hpp"
#include "qes/pipeline.hpp"
#include "qes/sl2.hpp"
#include "qes/verify.hpp"
#include "toml_lite.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kFail = 1,
  kInvalidInput = 2,
  kNotAlgebraizable = 3,
  kNumericalFailure = 4,
};

int log_threshold() {
  const char* env = std::getenv("QES_LOG");
  if (!env) return 2;
  const std::string v = env;
  if (v == "debug") return 0;
  if (v == "info") return 1;
  return 2;
}

void log_msg(int level, const std::string& msg) {
  static const int threshold = log_threshold();
  if (level >= threshold) return;  // only levels below threshold are muted
  std::cerr << "[qes] " << msg << "\n";
}

void log_info(const std::string& msg) { log_msg(1, msg); }

struct ParamArg {
  std::string name;
  // fixed value or inclusive range a:b:steps
  double value = 0.0;
  bool is_range = false;
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};

ParamArg parse_param(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw qes::InvalidParamsError("--param expects name=value, got '" + spec + "'");
  ParamArg p;
  p.name = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 1);
  const auto c1 = rhs.find(':');
  if (c1 == std::string::npos) {
    p.value = std::stod(rhs);
    return p;
  }
  const auto c2 = rhs.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw qes::InvalidParamsError("--param range expects name=lo:hi:steps");
  p.is_range = true;
  p.lo = std::stod(rhs.substr(0, c1));
  p.hi = std::stod(rhs.substr(c1 + 1, c2 - c1 - 1));
  p.steps = std::stoi(rhs.substr(c2 + 1));
  if (p.steps < 1) throw qes::InvalidParamsError("--param range needs steps >= 1");
  return p;
}

std::pair<int, int> parse_n_range(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) {
    const int n = std::stoi(s);
    return {n, n};
  }
  return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
}

qes::Grid parse_grid(const std::string& s, qes::Grid base) {
  // rmin:rmax:points
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw qes::InvalidParamsError("--grid expects rmin:rmax:points");
  base.r_min = std::stod(s.substr(0, c1));
  base.r_max = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  base.points = std::stoi(s.substr(c2 + 1));
  return base;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

qes::ModelId require_model(const std::string& name) {
  auto id = qes::model_from_string(name);
  if (!id) throw qes::InvalidParamsError("unknown model '" + name + "'");
  return *id;
}

// config file [params] plus repeated --param flags; flags win.
qes::ModelParams assemble_params(const std::vector<std::string>& param_flags,
                                 const qes::toml_lite::Table& config) {
  qes::ModelParams p;
  if (auto it = config.find("params"); it != config.end())
    for (const auto& [k, v] : it->second) p.set(k, std::stod(v));
  for (const auto& spec : param_flags) {
    ParamArg a = parse_param(spec);
    if (a.is_range) throw qes::InvalidParamsError("ranges are only valid in sweep");
    p.set(a.name, a.value);
  }
  return p;
}

void emit_psi_files(const qes::SolveReport& rep, qes::ModelId model,
                    const qes::ModelParams& params, int n, const qes::Grid& grid,
                    const std::string& tag) {
  const auto rs = grid.sample();
  int idx = 0;
  for (const auto& e : rep.eigenpairs) {
    if (!e.admissible) {
      ++idx;
      continue;
    }
    std::vector<double> c;
    for (const auto& z : e.poly) c.push_back(z.real());
    const qes::Wavefunction psi = qes::wavefunction(model, params, qes::Polynomial(c), n);
    std::ostringstream name;
    name << "psi_" << rep.model << "_" << tag << "n" << n << "_" << idx << ".tsv";
    std::ofstream f(name.str(), std::ios::binary);
    f << "r\tpsi\n";
    for (double r : rs) f << qes::fmt_g17(r) << "\t" << qes::fmt_g17(psi.value(r)) << "\n";
    log_info("wrote " + name.str());
    ++idx;
  }
}

int run_solve(const std::string& model_name, int n,
              const std::vector<std::string>& param_flags, const qes::toml_lite::Table& config,
              const std::string& format, const std::string& out, bool emit_psi,
              const std::string& grid_spec) {
  const qes::ModelId model = require_model(model_name);
  const qes::ModelParams params = assemble_params(param_flags, config);
  const qes::SolveReport rep = qes::solve_model(model, params, n);
  if (format == "csv")
    write_output(qes::report_csv_header(rep) + "\n" + qes::report_to_csv_row(rep) + "\n", out);
  else
    write_output(qes::report_to_json(rep), out);
  if (emit_psi) {
    qes::Grid grid = qes::Grid::residual_default(model);
    if (!grid_spec.empty()) grid = parse_grid(grid_spec, grid);
    emit_psi_files(rep, model, params, n, grid, "");
  }
  return kOk;
}

int run_check(const std::vector<double>& a, const std::vector<double>& b,
              const std::vector<double>& c, std::optional<int> n, std::optional<int> scan,
              double tol, const std::string& out) {
  qes::HeunOperator h;
  for (size_t i = 0; i < 5; ++i) h.a[i] = a[i];
  for (size_t i = 0; i < 4; ++i) h.b[i] = b[i];
  for (size_t i = 0; i < 3; ++i) h.c[i] = c[i];

  std::ostringstream os;
  bool pass = false;
  if (scan) {
    const auto hits = qes::find_all_n(h, *scan, tol);
    pass = !hits.empty();
    os << "{\"scan_max\":" << *scan << ",\"passing_n\":[";
    for (size_t i = 0; i < hits.size(); ++i) {
      if (i) os << ",";
      os << hits[i];
    }
    os << "],\"passed\":" << (pass ? "true" : "false") << "}";
  } else {
    if (!n) throw qes::InvalidParamsError("check needs --n or --scan");
    const qes::AlgebraizationCertificate cert = qes::check_algebraizable(h, *n, tol);
    pass = cert.passed;
    os << "{\"n\":" << cert.n << ",\"residuals\":[" << qes::fmt_g17(cert.residuals[0]) << ","
       << qes::fmt_g17(cert.residuals[1]) << "," << qes::fmt_g17(cert.residuals[2])
       << "],\"scale\":" << qes::fmt_g17(cert.scale)
       << ",\"passed\":" << (pass ? "true" : "false") << "}";
  }
  write_output(os.str(), out);
  return pass ? kOk : kFail;
}

int run_verify(const std::string& model_name, int n,
               const std::vector<std::string>& param_flags,
               const qes::toml_lite::Table& config, double tol, const std::string& grid_spec,
               bool run_fd, int fd_points, const std::string& out) {
  const qes::ModelId model = require_model(model_name);
  const qes::ModelParams params = assemble_params(param_flags, config);
  const qes::SolveReport rep = qes::solve_model(model, params, n);

  qes::Grid grid = qes::Grid::residual_default(model);
  if (!grid_spec.empty()) grid = parse_grid(grid_spec, grid);

  bool all_pass = true;
  std::ostringstream os;
  os << "{\"model\":\"" << rep.model << "\",\"n\":" << n << ",\"oracles\":[";
  bool first = true;
  for (const auto& e : rep.eigenpairs) {
    if (!e.admissible) continue;
    std::vector<double> c;
    for (const auto& z : e.poly) c.push_back(z.real());
    const qes::Polynomial y(c);
    const double lambda = e.eigenvalue.real();

    const qes::ResidualReport ode =
        qes::ode_residual(model, params, n, lambda, y, grid, tol);
    const qes::ResidualReport dual = qes::duality_check(model, params, n, lambda, y);
    all_pass = all_pass && ode.pass && dual.pass;
    for (const auto* r : {&ode, &dual}) {
      if (!first) os << ",";
      first = false;
      os << "{\"oracle\":\"" << (r == &ode ? "ode_residual" : "duality") << "\",\"eigenvalue\":"
         << qes::fmt_g17(lambda) << ",\"max_rel_residual\":" << qes::fmt_g17(r->max_rel_residual)
         << ",\"argmax_r\":" << qes::fmt_g17(r->argmax_r) << ",\"samples\":" << r->samples
         << ",\"pass\":" << (r->pass ? "true" : "false") << "}";
    }
  }

  if (run_fd && qes::fd_supported(model)) {
    // FD needs the constrained coupling; use the first admissible eigenpair.
    for (const auto& e : rep.eigenpairs) {
      if (!e.admissible) continue;
      qes::ModelParams fd_params = params;
      if (model == qes::ModelId::inverse_sextic)
        fd_params.set("ll1", e.outputs.at("ll1"));
      else
        fd_params.set("Z", e.eigenvalue.real());
      qes::Grid fd_grid = qes::Grid::fd_default(model);
      if (fd_points > 0) fd_grid.points = fd_points;
      const auto spectrum = qes::fd_spectrum(model, fd_params, fd_grid, 10);
      double target = rep.energy;
      double best = 1e300;
      int best_idx = -1;
      for (size_t i = 0; i < spectrum.size(); ++i)
        if (std::abs(spectrum[i] - target) < best) {
          best = std::abs(spectrum[i] - target);
          best_idx = static_cast<int>(i);
        }
      const bool pass = best <= 1e-3 * std::max(1.0, std::abs(target));
      all_pass = all_pass && pass;
      if (!first) os << ",";
      first = false;
      os << "{\"oracle\":\"fd_spectrum\",\"eigenvalue\":" << qes::fmt_g17(e.eigenvalue.real())
         << ",\"closed_form\":" << qes::fmt_g17(target) << ",\"nearest_fd\":"
         << qes::fmt_g17(spectrum[static_cast<size_t>(best_idx)])
         << ",\"nearest_index\":" << best_idx << ",\"abs_error\":" << qes::fmt_g17(best)
         << ",\"pass\":" << (pass ? "true" : "false") << "}";
      break;  // one fd run per invocation is enough
    }
  }
  os << "],\"pass\":" << (all_pass ? "true" : "false") << "}";
  write_output(os.str(), out);
  return all_pass ? kOk : kFail;
}

int run_sweep(const std::string& model_name, const std::string& n_range,
              const std::vector<std::string>& param_flags,
              const qes::toml_lite::Table& config, const std::string& format,
              const std::string& out, bool emit_psi, const std::string& grid_spec) {
  const qes::ModelId model = require_model(model_name);
  auto [n_lo, n_hi] = parse_n_range(n_range);
  if (n_lo < 0) throw qes::InvalidParamsError("n must be >= 0");

  qes::ModelParams base;
  if (auto it = config.find("params"); it != config.end())
    for (const auto& [k, v] : it->second) base.set(k, std::stod(v));

  std::vector<ParamArg> ranges;
  for (const auto& spec : param_flags) {
    ParamArg a = parse_param(spec);
    if (a.is_range)
      ranges.push_back(a);
    else
      base.set(a.name, a.value);
  }

  // lexicographic order: n outermost, then each range in flag order
  std::vector<int> idx(ranges.size(), 0);
  std::ostringstream os;
  bool wrote_header = false;
  bool json_first = true;
  if (format == "json") os << "[";
  for (int n = n_lo; n <= n_hi; ++n) {
    while (true) {
      qes::ModelParams p = base;
      std::ostringstream tag;
      for (size_t i = 0; i < ranges.size(); ++i) {
        const auto& r = ranges[i];
        const double v =
            r.steps == 1 ? r.lo : r.lo + (r.hi - r.lo) * idx[i] / (r.steps - 1.0);
        p.set(r.name, v);
        tag << "g" << idx[i] << "_";
      }
      const qes::SolveReport rep = qes::solve_model(model, p, n);
      if (format == "json") {
        if (!json_first) os << ",";
        json_first = false;
        os << qes::report_to_json(rep);
      } else {
        if (!wrote_header) {
          os << qes::report_csv_header(rep) << "\n";
          wrote_header = true;
        }
        os << qes::report_to_csv_row(rep) << "\n";
      }
      if (emit_psi) {
        qes::Grid grid = qes::Grid::residual_default(model);
        if (!grid_spec.empty()) grid = parse_grid(grid_spec, grid);
        emit_psi_files(rep, model, p, n, grid, tag.str());
      }

      // advance the mixed-radix counter
      size_t pos = ranges.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < ranges[pos].steps) break;
        idx[pos] = 0;
        if (pos == 0) pos = SIZE_MAX;
      }
      if (ranges.empty() || pos == SIZE_MAX) break;
    }
  }
  if (format == "json") os << "]";
  write_output(os.str(), out);
  return kOk;
}

int run_catalog(const std::string& out) {
  std::ostringstream os;
  os << "{\"models\":[";
  bool first = true;
  for (qes::ModelId id : qes::all_models()) {
    if (!first) os << ",";
    first = false;
    os << "{\"name\":\"" << qes::to_string(id) << "\",\"params\":[";
    bool pfirst = true;
    for (const auto& spec : qes::model_schema(id)) {
      if (!pfirst) os << ",";
      pfirst = false;
      os << "{\"name\":\"" << spec.name << "\",\"constraint\":\"" << spec.constraint
         << "\",\"required\":" << (spec.required ? "true" : "false") << "}";
    }
    os << "]}";
  }
  os << "]}";
  write_output(os.str(), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-exactly solvable spectra via Stackel-transformed sl(2) operators"};
  app.require_subcommand(1);

  std::string model_name, n_range = "0", format = "json", out, config_path, grid_spec;
  std::vector<std::string> param_flags;
  int n = 0;
  double tol = 1e-8;
  bool emit_psi = false;

  auto add_common = [&](CLI::App* cmd, bool with_n) {
    cmd->add_option("--model", model_name, "catalog model name")->required();
    if (with_n) cmd->add_option("--n", n, "representation label n")->required();
    cmd->add_option("--param", param_flags, "model parameter name=value (repeatable)");
    cmd->add_option("--config", config_path, "TOML config file");
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out, "output file (default stdout)");
    cmd->add_option("--grid", grid_spec, "rmin:rmax:points");
    cmd->add_flag("--emit-psi", emit_psi, "write r<TAB>psi TSV per admissible eigenpair");
  };

  CLI::App* solve = app.add_subcommand("solve", "full pipeline for one model instance");
  add_common(solve, true);

  CLI::App* check = app.add_subcommand("check", "closure conditions on raw coefficients");
  std::vector<double> ca(5, 0.0), cb(4, 0.0), cc(3, 0.0);
  std::optional<int> check_n, scan_n;
  check->add_option("--a0", ca[0]);
  check->add_option("--a1", ca[1]);
  check->add_option("--a2", ca[2]);
  check->add_option("--a3", ca[3]);
  check->add_option("--a4", ca[4]);
  check->add_option("--b0", cb[0]);
  check->add_option("--b1", cb[1]);
  check->add_option("--b2", cb[2]);
  check->add_option("--b3", cb[3]);
  check->add_option("--c0", cc[0]);
  check->add_option("--c1", cc[1]);
  check->add_option("--c2", cc[2]);
  check->add_option("--n", check_n, "single n to test");
  check->add_option("--scan", scan_n, "scan n in 0..scan");
  check->add_option("--tol", tol, "certificate tolerance");
  check->add_option("--out", out, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the oracles on a model instance");
  add_common(verify, true);
  verify->add_option("--tol", tol, "ODE residual tolerance");
  bool no_fd = false;
  int fd_points = 0;
  verify->add_flag("--no-fd", no_fd, "skip the finite-difference oracle");
  verify->add_option("--fd-points", fd_points, "FD grid size (default 20000)");

  CLI::App* sweep = app.add_subcommand("sweep", "solve over an n-range / parameter grid");
  sweep->add_option("--model", model_name, "catalog model name")->required();
  sweep->add_option("--n", n_range, "n or lo:hi range")->required();
  sweep->add_option("--param", param_flags,
                    "name=value or name=lo:hi:steps (repeatable)");
  sweep->add_option("--config", config_path, "TOML config file");
  sweep->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", out, "output file (default stdout)");
  sweep->add_option("--grid", grid_spec, "rmin:rmax:points");
  sweep->add_flag("--emit-psi", emit_psi, "write r<TAB>psi TSV per admissible eigenpair");

  CLI::App* catalog = app.add_subcommand("catalog", "list models and parameter schemas");
  catalog->add_option("--out", out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    qes::toml_lite::Table config;
    if (!config_path.empty()) config = qes::toml_lite::parse_file(config_path);
    // CLI flags override config-file values
    if (auto it = config.find("model");
        it != config.end() && model_name.empty() && it->second.count("name"))
      model_name = it->second.at("name");
    if (auto it = config.find("solver"); it != config.end()) {
      if (model_name.empty() && it->second.count("model")) model_name = it->second.at("model");
    }

    if (solve->parsed()) {
      log_info("solve " + model_name + " n=" + std::to_string(n));
      return run_solve(model_name, n, param_flags, config, format, out, emit_psi, grid_spec);
    }
    if (check->parsed()) return run_check(ca, cb, cc, check_n, scan_n, tol, out);
    if (verify->parsed())
      return run_verify(model_name, n, param_flags, config, tol, grid_spec, !no_fd, fd_points,
                        out);
    if (sweep->parsed())
      return run_sweep(model_name, n_range, param_flags, config, format, out, emit_psi,
                       grid_spec);
    if (catalog->parsed()) return run_catalog(out);
    return kInvalidInput;
  } catch (const qes::NotAlgebraizableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotAlgebraizable;
  } catch (const qes::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const qes::ClosureViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const qes::InvalidParamsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}
