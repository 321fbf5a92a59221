#pragma once
#include <string>

#include "analysis.hpp"

namespace dw {

// Machine-readable constraint-analysis report (pretty-printed JSON, sorted
// keys, trailing newline). Contents are fully deterministic for a given
// model file. See docs/reports.md.
std::string analysis_report_json(const DiracStructure& ds);

// Energy levels of the quantized ring, either from the closed form or from
// the finite-difference grid. alpha/beta are reported both as given and
// folded to [0,1); levels are plain numbers so parameter shifts that act
// trivially produce byte-identical reports.
std::string spectrum_report_json(double r0, double mass, double hbar, double alpha, double beta,
                                 int levels, const std::string& method, int grid_n,
                                 bool include_e0);

// Operator-truncation diagnostics: hermiticity defects, commutator residuals
// against the constrained algebra, the symmetrized radial constraint norm,
// and the operator-ordering demonstration.
std::string operator_report_json(double r0, double mass, double hbar, double alpha, double beta,
                                 int n);

}  // namespace dw
