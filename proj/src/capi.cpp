#include "dirac_workbench.h"

#include <cstring>
#include <string>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "model_io.hpp"
#include "rational.hpp"
#include "reports.hpp"

struct dw_model {
  dw::Model m;
};

struct dw_analysis {
  dw::DiracStructure ds;
};

namespace {

thread_local std::string t_error;

template <typename F>
dw_status guarded(F&& body) {
  try {
    body();
    t_error.clear();
    return DW_OK;
  } catch (const dw::Error& e) {
    t_error = e.what();
    return static_cast<dw_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    t_error = e.what();
    return DW_ERR_INTERNAL;
  } catch (...) {
    t_error = "unknown failure";
    return DW_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(bool ok, const char* msg) {
  if (!ok) dw::fail(dw::errc::invalid_argument, msg);
}

// Evolved state layout shared with the analysis: plain coordinates first,
// then their momenta, in declaration order.
std::vector<int> state_layout(const dw::Model& m) {
  std::vector<int> qs, ps;
  for (const auto& [q, p] : m.phase.pairs)
    if (m.symtab[q].kind == dw::SymbolKind::coordinate) {
      qs.push_back(q);
      ps.push_back(p);
    }
  qs.insert(qs.end(), ps.begin(), ps.end());
  return qs;
}

std::vector<double> default_initial(const dw::Model& m) {
  const auto& pt = m.sample_points.front();
  std::vector<double> y;
  for (int s : state_layout(m)) y.push_back(pt.at(s).convert_to<double>());
  return y;
}

}  // namespace

extern "C" {

const char* dw_version(void) { return "1.0.0"; }

const char* dw_last_error(void) { return t_error.c_str(); }

dw_status dw_model_load_file(const char* path, dw_model** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    auto* m = new dw_model{dw::load_model_file(path)};
    *out = m;
  });
}

dw_status dw_model_load_json(const char* text, dw_model** out) {
  return guarded([&] {
    require(text && out, "text and out must be non-null");
    auto* m = new dw_model{dw::load_model_json(text)};
    *out = m;
  });
}

void dw_model_free(dw_model* model) { delete model; }

const char* dw_model_name(const dw_model* model) {
  return model ? model->m.name.c_str() : "";
}

dw_status dw_model_defaults(const dw_model* model, double* h, int* steps) {
  return guarded([&] {
    require(model, "model must be non-null");
    if (h) *h = model->m.defaults.h;
    if (steps) *steps = model->m.defaults.steps;
  });
}

int dw_model_state_size(const dw_model* model) {
  if (!model) return 0;
  return static_cast<int>(state_layout(model->m).size());
}

const char* dw_model_state_name(const dw_model* model, int i) {
  if (!model) return "";
  std::vector<int> layout = state_layout(model->m);
  if (i < 0 || i >= static_cast<int>(layout.size())) return "";
  return model->m.symtab[layout[i]].name.c_str();
}

dw_status dw_model_initial_state(const dw_model* model, double* buf, int len) {
  return guarded([&] {
    require(model && buf, "model and buf must be non-null");
    std::vector<double> y = default_initial(model->m);
    require(len == static_cast<int>(y.size()), "buffer length does not match the state size");
    for (int i = 0; i < len; ++i) buf[i] = y[i];
  });
}

dw_status dw_analyze(const dw_model* model, dw_analysis** out) {
  return guarded([&] {
    require(model && out, "model and out must be non-null");
    auto* a = new dw_analysis{dw::analyze(model->m)};
    *out = a;
  });
}

void dw_analysis_free(dw_analysis* analysis) { delete analysis; }

dw_status dw_analysis_report_json(const dw_analysis* analysis, char** out_json) {
  return guarded([&] {
    require(analysis && out_json, "analysis and out_json must be non-null");
    *out_json = copy_out(dw::analysis_report_json(analysis->ds));
  });
}

int dw_analysis_constraint_count(const dw_analysis* analysis) {
  return analysis ? static_cast<int>(analysis->ds.constraints.size()) : 0;
}

int dw_analysis_all_second_class(const dw_analysis* analysis) {
  return analysis && analysis->ds.all_second_class ? 1 : 0;
}

dw_status dw_simulate(const dw_model* model, const char* method, double h, int steps,
                      const double* initial, int initial_len, char** out_csv) {
  return guarded([&] {
    require(model && method && out_csv, "model, method and out_csv must be non-null");
    dw::DiracStructure ds = dw::analyze(model->m);
    std::vector<double> y0;
    if (initial) {
      require(initial_len == dw_model_state_size(model),
              "initial state length does not match the state size");
      y0.assign(initial, initial + initial_len);
    } else {
      y0 = default_initial(model->m);
    }
    dw::SimulationResult r = dw::simulate(ds, method, h, steps, y0);
    *out_csv = copy_out(dw::to_csv(r));
  });
}

dw_status dw_spectrum(double r0, double mass, double hbar, double alpha, double beta, int levels,
                      const char* method, int grid_n, int include_e0, char** out_json) {
  return guarded([&] {
    require(method && out_json, "method and out_json must be non-null");
    *out_json = copy_out(
        dw::spectrum_report_json(r0, mass, hbar, alpha, beta, levels, method, grid_n,
                                 include_e0 != 0));
  });
}

dw_status dw_operator_report(double r0, double mass, double hbar, double alpha, double beta,
                             int n, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json must be non-null");
    *out_json = copy_out(dw::operator_report_json(r0, mass, hbar, alpha, beta, n));
  });
}

void dw_string_free(char* s) { delete[] s; }

}  // extern "C"
