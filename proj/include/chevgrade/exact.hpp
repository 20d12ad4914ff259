#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "chevgrade/error.hpp"

namespace chevgrade {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw ArithmeticError("zero denominator");
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Text form "n" or "n/d", canonical.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "n", "-n", "n/d". Throws ArgumentError on malformed text.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ArgumentError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw ArgumentError("malformed rational literal: " + s);
  if (q.get_den() == 0) throw ArithmeticError("zero denominator in literal: " + s);
  q.canonicalize();
  return q;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw ArithmeticError("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw ArithmeticError("expected an integer, got " + q.get_str());
  return to_int64(q.get_num());
}

}  // namespace chevgrade
