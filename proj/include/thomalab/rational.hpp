#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace thomalab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q", "p", "-p/q". Whitespace is not accepted; q must be nonzero.
Rat rat_from_string(const std::string& s);

// Emits "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string rat_to_string(const Rat& r);

// Integer power with the convention 0^0 = 1.
Rat rat_pow(const Rat& base, unsigned long exp);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

// True iff r is a nonnegative integer.
bool rat_is_natural(const Rat& r);

}  // namespace thomalab
