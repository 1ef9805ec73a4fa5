#include "auction/rational.hpp"

#include <cctype>

namespace auction {

std::string to_string(const Rat& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += "/";
    out += denominator(r).str();
  }
  return out;
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!valid_int(text)) return std::nullopt;
      return Rat(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) return std::nullopt;
    BigInt q(den);
    if (q == 0) return std::nullopt;
    return Rat(BigInt(num), q);
  } catch (...) {
    return std::nullopt;
  }
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace auction
