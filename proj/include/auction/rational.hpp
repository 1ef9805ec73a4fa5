#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace auction {

// All payoff and probability arithmetic is exact. No decision anywhere in
// the library may depend on floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned exp) {
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

// Renders a rational as "p" or "p/q" (canonical reduced form).
std::string to_string(const Rat& r);

// Parses "p", "-p" or "p/q". Returns nullopt on malformed input or q == 0.
std::optional<Rat> parse_rational(const std::string& text);

// Decimal approximation for display columns only.
double to_double(const Rat& r);

}  // namespace auction
