#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chordal {

// Exact rationals; mpq_class keeps lowest terms with a positive denominator
// as long as every value passes through canonicalize().
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

// "p/q" with the "/q" dropped when q == 1.
inline std::string to_string(const Scalar& s) { return s.get_str(); }

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed text
// or a zero denominator.
Scalar parse_scalar(std::string_view text);

}  // namespace chordal
