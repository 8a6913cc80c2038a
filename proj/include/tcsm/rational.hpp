#pragma once

// Exact rational arithmetic. GMP supplies the bignum machinery; this header
// pins down the conventions the rest of the library relies on: canonical
// form with positive denominator, "p/q" string I/O, and deterministic
// formatting for JSON export.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tcsm/errors.hpp"

namespace tcsm {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline double to_double(const Rational& q) { return q.get_d(); }

// "n" for integers, "p/q" otherwise; canonical sign on the numerator.
inline std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p", "p/q" and plain decimals like "3.5" or "-0.25".
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 ||
        den.set_str(text.substr(slash + 1), 10) != 0 || den == 0) {
      throw Error("bad rational literal: " + text);
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) digits = text.substr(0, dot);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw Error("bad rational literal: " + text);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  mpz_class num;
  if (num.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
  return Rational(num);
}

}  // namespace tcsm
