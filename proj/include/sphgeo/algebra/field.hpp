#pragma once

// Field traits used by the polynomial and rational-function templates.

#include <cmath>

#include "sphgeo/algebra/rational.hpp"

namespace sphgeo {

template <class K>
struct field_traits {
  static K zero() { return K(0); }
  static K one() { return K(1); }
  static bool is_zero(const K& x) { return x == K(0); }
};

template <>
struct field_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <>
struct field_traits<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
};

template <class K>
bool is_zero(const K& x) {
  return field_traits<K>::is_zero(x);
}

}  // namespace sphgeo
