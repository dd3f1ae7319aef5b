#include "chordal/scalar.hpp"

#include <stdexcept>

namespace chordal {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t i = b; i < e; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  bool ok = slash == std::string::npos ? digits(start, s.size())
                                       : digits(start, slash) && digits(slash + 1, s.size());
  if (!ok) throw std::invalid_argument("malformed rational: " + s);
  if (s[0] == '+') s.erase(0, 1);
  Scalar value;
  if (value.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (value.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  value.canonicalize();
  return value;
}

}  // namespace chordal
