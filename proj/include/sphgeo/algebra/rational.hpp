#pragma once

// Arbitrary-precision integers and rationals (GMP-backed) plus parsing helpers.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>

namespace sphgeo {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact square root when `q` is the square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r{rn, rd};
  r.canonicalize();
  return r;
}

/// Parses "p/q", "-7", "0.25" or "1.5e-2" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0) {
      return fail();
    }
    if (den == 0) throw std::domain_error("rational with zero denominator: '" + text + "'");
    Rational q{num, den};
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false, seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(text.substr(pos + 1), &used);
      if (pos + 1 + used != text.size()) return fail();
    } catch (const std::exception&) {
      return fail();
    }
  }
  Integer mantissa(digits, 10);
  const long power = exponent - scale;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
  Rational q = power < 0 ? Rational{mantissa, ten_pow} : Rational{mantissa * ten_pow, 1};
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace sphgeo
