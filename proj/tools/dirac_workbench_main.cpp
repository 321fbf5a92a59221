// Command-line front end. Links only against the public C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dirac_workbench.h"

namespace {

// DW_ERR_PARSE, DW_ERR_INVALID_ARGUMENT and DW_ERR_IO are all usage errors
// from the caller's point of view; the rest keep their status value.
int exit_code(dw_status s) {
  if (s == DW_OK) return 0;
  if (s == DW_ERR_PARSE || s == DW_ERR_INVALID_ARGUMENT || s == DW_ERR_IO) return 1;
  return static_cast<int>(s);
}

int report_error(dw_status s) {
  std::cerr << "error: " << dw_last_error() << "\n";
  return exit_code(s);
}

bool write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    std::cerr << "error: cannot write output file: " << path << "\n";
    return false;
  }
  return true;
}

struct ModelGuard {
  dw_model* m = nullptr;
  ~ModelGuard() { dw_model_free(m); }
};

struct AnalysisGuard {
  dw_analysis* a = nullptr;
  ~AnalysisGuard() { dw_analysis_free(a); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { dw_string_free(s); }
};

int run_analyze(const std::string& model_path, const std::string& out_path) {
  ModelGuard model;
  dw_status s = dw_model_load_file(model_path.c_str(), &model.m);
  if (s != DW_OK) return report_error(s);

  AnalysisGuard analysis;
  s = dw_analyze(model.m, &analysis.a);
  if (s != DW_OK) return report_error(s);

  StringGuard json;
  s = dw_analysis_report_json(analysis.a, &json.s);
  if (s != DW_OK) return report_error(s);
  if (!write_output(out_path, json.s)) return 1;

  if (!dw_analysis_all_second_class(analysis.a)) {
    std::cerr << "note: first-class constraints remain; no Dirac bracket exists\n";
    return exit_code(DW_ERR_FIRST_CLASS);
  }
  return 0;
}

bool parse_initial(const std::string& text, std::vector<double>& out) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::cerr << "error: --initial expects comma-separated numbers, got '" << item << "'\n";
      return false;
    }
  }
  if (out.empty()) {
    std::cerr << "error: --initial must contain at least one number\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirac-workbench: constrained-Hamiltonian analysis, dynamics and quantization"};
  app.require_subcommand(1);
  // "--h" is the step-size option, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");

  std::string model_path, out_path = "-";
  std::string method = "dirac-rk4";
  std::string initial_text;
  double h = 1e-3;
  int steps = 1000;

  double r0 = 1, mass = 1, hbar = 1, alpha = 0, beta = 0;
  int levels = 5, grid_n = 128, op_n = 16;
  std::string spec_method = "analytic";
  bool no_e0 = false;

  CLI::App* an = app.add_subcommand("analyze", "Run the constraint analysis and print a report");
  an->set_help_flag("--help", "print this help message and exit");
  an->add_option("model", model_path, "model JSON file")->required();
  an->add_option("--out", out_path, "output path ('-' for stdout)");

  CLI::App* sim = app.add_subcommand("simulate", "Integrate the constrained equations of motion");
  sim->set_help_flag("--help", "print this help message and exit");
  sim->add_option("model", model_path, "model JSON file")->required();
  sim->add_option("--method", method, "dirac-rk4 | project | exact");
  sim->add_option("--h", h, "step size (default: model defaults)");
  sim->add_option("--steps", steps, "number of steps (default: model defaults)");
  sim->add_option("--initial", initial_text, "comma-separated initial state");
  sim->add_option("--out", out_path, "output path ('-' for stdout)");

  CLI::App* spec = app.add_subcommand("spectrum", "Energy levels of the quantized ring");
  spec->set_help_flag("--help", "print this help message and exit");
  spec->add_option("--r0", r0, "ring radius");
  spec->add_option("--m", mass, "particle mass");
  spec->add_option("--hbar", hbar, "Planck constant");
  spec->add_option("--alpha", alpha, "flux-like parameter");
  spec->add_option("--beta", beta, "boundary-twist parameter");
  spec->add_option("--levels", levels, "number of levels");
  spec->add_option("--method", spec_method, "analytic | grid");
  spec->add_option("--gridN", grid_n, "grid size for the grid method");
  spec->add_flag("--no-e0", no_e0, "omit the constant ordering energy");
  spec->add_option("--out", out_path, "output path ('-' for stdout)");

  CLI::App* ops = app.add_subcommand("operators", "Operator-truncation diagnostics");
  ops->set_help_flag("--help", "print this help message and exit");
  ops->add_option("--r0", r0, "ring radius");
  ops->add_option("--m", mass, "particle mass");
  ops->add_option("--hbar", hbar, "Planck constant");
  ops->add_option("--alpha", alpha, "flux-like parameter");
  ops->add_option("--beta", beta, "boundary-twist parameter");
  ops->add_option("--N", op_n, "mode cutoff (matrix dimension 2N+1)");
  ops->add_option("--out", out_path, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (an->parsed()) return run_analyze(model_path, out_path);

  if (sim->parsed()) {
    ModelGuard model;
    dw_status s = dw_model_load_file(model_path.c_str(), &model.m);
    if (s != DW_OK) return report_error(s);

    double def_h = h;
    int def_steps = steps;
    dw_model_defaults(model.m, &def_h, &def_steps);
    if (sim->count("--h") == 0) h = def_h;
    if (sim->count("--steps") == 0) steps = def_steps;

    std::vector<double> y0;
    const double* y0_ptr = nullptr;
    int y0_len = 0;
    if (sim->count("--initial")) {
      if (!parse_initial(initial_text, y0)) return 1;
      y0_ptr = y0.data();
      y0_len = static_cast<int>(y0.size());
    }

    StringGuard csv;
    s = dw_simulate(model.m, method.c_str(), h, steps, y0_ptr, y0_len, &csv.s);
    if (s != DW_OK) return report_error(s);
    return write_output(out_path, csv.s) ? 0 : 1;
  }

  if (spec->parsed()) {
    StringGuard json;
    dw_status s = dw_spectrum(r0, mass, hbar, alpha, beta, levels, spec_method.c_str(), grid_n,
                              no_e0 ? 0 : 1, &json.s);
    if (s != DW_OK) return report_error(s);
    return write_output(out_path, json.s) ? 0 : 1;
  }

  if (ops->parsed()) {
    StringGuard json;
    dw_status s = dw_operator_report(r0, mass, hbar, alpha, beta, op_n, &json.s);
    if (s != DW_OK) return report_error(s);
    return write_output(out_path, json.s) ? 0 : 1;
  }

  return 1;
}
