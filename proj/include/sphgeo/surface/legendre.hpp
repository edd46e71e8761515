#pragma once

// Associated Legendre functions without the Condon-Shortley phase:
//   P^m_l(x) = (1-x^2)^{m/2} d^m/dx^m P_l(x).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphgeo/algebra/poly.hpp"
#include "sphgeo/algebra/rational.hpp"

namespace sphgeo {

inline double assoc_legendre(int l, int m, double x) {
  if (l < 0 || m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  if (std::abs(x) > 1.0) throw std::domain_error("assoc_legendre: |x| > 1");
  double pmm = 1.0;
  const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * somx2;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

/// Exact coefficients of the Legendre polynomial P_l.
inline Poly<Rational> legendre_poly(int l) {
  if (l < 0) throw std::domain_error("legendre_poly: l < 0");
  Poly<Rational> prev = Poly<Rational>::constant(1);
  if (l == 0) return prev;
  Poly<Rational> cur = Poly<Rational>::x();
  for (int k = 1; k < l; ++k) {
    // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
    Poly<Rational> next = (Poly<Rational>::x() * cur).scaled(Rational(2 * k + 1)) - prev.scaled(Rational(k));
    next = next.scaled(make_rational(1, k + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// d^m/dx^m P_l as a double-precision polynomial.
inline Poly<double> legendre_derivative_poly(int l, int m) {
  if (m < 0 || m > l) throw std::domain_error("legendre_derivative_poly: need 0 <= m <= l");
  Poly<Rational> p = legendre_poly(l);
  for (int i = 0; i < m; ++i) p = p.derivative();
  std::vector<double> c;
  for (const auto& q : p.coefficients()) c.push_back(q.get_d());
  return Poly<double>(std::move(c));
}

/// max over [-1,1] of |P^m_l|.
inline double assoc_legendre_max(int l, int m) {
  if (l == m) {
    double v = 1.0;
    for (int i = 1; i <= m; ++i) v *= 2.0 * i - 1.0;
    return v;
  }
  if (m == 0) return 1.0;
  const int samples = 4000;
  double best = 0.0, best_x = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double x = -1.0 + 2.0 * i / samples;
    const double v = std::abs(assoc_legendre(l, m, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // golden-section polish of the sampled maximum
  double a = std::max(-1.0, best_x - 2.0 / samples), b = std::min(1.0, best_x + 2.0 / samples);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (std::abs(assoc_legendre(l, m, c)) > std::abs(assoc_legendre(l, m, d))) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::max(best, std::abs(assoc_legendre(l, m, 0.5 * (a + b))));
}

}  // namespace sphgeo
