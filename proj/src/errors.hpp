#pragma once
#include <stdexcept>
#include <string>

namespace dw {

// Mirrors dw_status in the public C header.
enum class errc : int {
  ok = 0,
  parse = 1,
  singular_structure = 2,
  inconsistent_chain = 3,
  first_class = 4,
  integrator = 5,
  eigensolver = 6,
  invalid_argument = 7,
  io = 8,
  internal = 9,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

// Process exit code used by the CLI for a given error class.
inline int exit_code(errc c) {
  switch (c) {
    case errc::ok: return 0;
    case errc::parse:
    case errc::invalid_argument:
    case errc::io: return 1;
    case errc::singular_structure: return 2;
    case errc::inconsistent_chain: return 3;
    case errc::first_class: return 4;
    case errc::integrator: return 5;
    case errc::eigensolver: return 6;
    default: return 9;
  }
}

}  // namespace dw
