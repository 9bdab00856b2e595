#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sseala {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Accepts "p" or "p/q" with optional sign; the result is canonical.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise, always in lowest terms.
std::string to_string(const Rational& x);

inline Rational rat(std::int64_t p, std::int64_t q = 1) {
  Rational r(static_cast<long>(p), static_cast<unsigned long>(q < 0 ? -q : q));
  if (q < 0) r = -r;
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const RationalVector& v);  // "(a,b,...)"

}  // namespace sseala
