#pragma once
#include <string>

#include "analysis.hpp"

namespace dw {

// Loads a model definition from a JSON document. The schema is described in
// docs/model_format.md: symbol declarations (array order fixes the monomial
// order), exact rational parameters, the Lagrangian as an expression string,
// optional declared rewrite relations, exact sample points, and optional
// numeric defaults. Malformed JSON raises errc::parse; a well-formed document
// that violates the schema raises errc::invalid_argument.
Model load_model_json(const std::string& text);

// Reads the file (errc::io when unreadable) and delegates to load_model_json.
Model load_model_file(const std::string& path);

}  // namespace dw
