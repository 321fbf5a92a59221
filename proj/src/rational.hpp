#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace dw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::denominator;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;

// Parses "p" or "p/q" with optional leading '-'. Rejects anything else.
inline Rat parse_rational(const std::string& s) {
  auto bad = [&]() -> Rat { fail(errc::parse, "invalid rational literal: '" + s + "'"); };
  if (s.empty()) return bad();
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
  if (digits == 0) return bad();
  Int num(s.substr(0, i));
  Int den = 1;
  if (i < s.size()) {
    if (s[i] != '/') return bad();
    std::string d = s.substr(i + 1);
    if (d.empty()) return bad();
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return bad();
    den = Int(d);
    if (den == 0) fail(errc::parse, "zero denominator in rational literal: '" + s + "'");
  }
  return Rat(num, den);
}

inline std::string rational_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace dw
