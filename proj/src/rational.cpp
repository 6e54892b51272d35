#include "thomalab/rational.hpp"

#include "thomalab/errors.hpp"

namespace thomalab {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s)) throw ConfigError("bad rational: '" + s + "'");
    return Rat(Int(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw ConfigError("bad rational: '" + s + "'");
  Int q(den);
  if (q == 0) throw ConfigError("zero denominator: '" + s + "'");
  return Rat(Int(num), q);
}

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat acc = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1UL) acc *= b;
    exp >>= 1UL;
    if (exp > 0) b *= b;
  }
  return acc;
}

bool rat_is_natural(const Rat& r) { return r >= 0 && denominator(r) == 1; }

}  // namespace thomalab
