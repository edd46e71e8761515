#pragma once

// The polynomial f(rho), rho = sin(theta), in
//   Gamma^theta_{phi phi} = -r cos(theta) sin^3(theta) f / det(g)
// for r = 1 + eps sin^n(theta) cos(n phi), with c = cos(n phi) held fixed.
// f > 0 on (0, 1) rules out a theta-maximum in the northern hemisphere.

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "sphgeo/algebra/linear_solve.hpp"
#include "sphgeo/algebra/poly.hpp"
#include "sphgeo/algebra/rational.hpp"

namespace sphgeo {

namespace detail {

inline Rational rpow(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

/// -Gamma^theta_{phi phi} det(g)/(r cos(theta) sin^3(theta)) at rho = sin(theta),
/// evaluated exactly with the cos(theta) factor cancelled by hand.
inline Rational lemma1_f(int n, const Rational& eps, const Rational& c, const Rational& rho) {
  using detail::rpow;
  const Rational rn = rpow(rho, n);
  const Rational r = 1 + eps * c * rn;
  const Rational rt_over_cos = eps * n * rpow(rho, n - 1) * c;
  const Rational rp2 = eps * eps * n * n * rn * rn * (1 - c * c);
  const Rational rpp = -eps * n * n * rn * c;
  const Rational rho2 = rho * rho;
  const Rational a = r * rpp * rho2 - 2 * rp2 * rho2 - r * r * rho2 * rho2;
  const Rational b = r * r * r * rho2 * rho + r * rp2 * rho;
  return -(rt_over_cos * a - b) / (rho2 * rho);
}

/// f as a polynomial in rho, fitted exactly from rational samples.
inline Poly<Rational> lemma1_poly(int n, const Rational& eps, const Rational& c) {
  if (n < 2) throw std::domain_error("lemma1_poly: n >= 2 required");
  if (sgn(eps) < 0 || eps >= 1) throw std::domain_error("lemma1_poly: 0 <= eps < 1 required");
  if (c < -1 || c > 1) throw std::domain_error("lemma1_poly: -1 <= c <= 1 required");
  const std::set<int> exps_set{n, 2 * n - 2, 2 * n, 3 * n - 2, 3 * n};
  const std::vector<int> exps(exps_set.begin(), exps_set.end());

  const std::vector<Rational> candidates = {make_rational(1, 2), make_rational(1, 3), make_rational(2, 3),
                                            make_rational(1, 4), make_rational(3, 4), make_rational(1, 5),
                                            make_rational(4, 5), make_rational(2, 5)};
  IncrementalSolver<Rational> solver(exps.size());
  std::size_t used = 0;
  for (; used < candidates.size() && solver.rank() < exps.size(); ++used) {
    const Rational& rho = candidates[used];
    std::vector<Rational> row;
    for (int e : exps) row.push_back(detail::rpow(rho, e));
    solver.add(row, lemma1_f(n, eps, c, rho) - 1);
  }
  if (solver.rank() < exps.size()) throw std::runtime_error("lemma1_poly: singular sample system");
  const auto a = *solver.solution();
  std::vector<Rational> coeffs(static_cast<std::size_t>(3 * n + 1), Rational(0));
  coeffs[0] = 1;
  for (std::size_t k = 0; k < exps.size(); ++k) coeffs[static_cast<std::size_t>(exps[k])] = a[k];
  Poly<Rational> p(std::move(coeffs));
  // any unused sample must agree, otherwise f is not of the assumed form
  for (std::size_t k = used; k < candidates.size(); ++k) {
    if (p.evaluate(candidates[k]) != lemma1_f(n, eps, c, candidates[k])) {
      throw std::runtime_error("lemma1_poly: samples are not fitted by the assumed exponents");
    }
  }
  return p;
}

/// f(rho = 1) as a cubic in c.
inline Poly<double> lemma1_f1_cubic(int n, double eps) {
  auto f1 = [&](double c) {
    const double r = 1 + eps * c, rt = eps * n * c, rp2 = eps * eps * n * n * (1 - c * c), rpp = -eps * n * n * c;
    return -(rt * (r * rpp - 2 * rp2 - r * r) - (r * r * r + r * rp2));
  };
  // Lagrange interpolation through four nodes
  const double nodes[4] = {-1.0, -1.0 / 3, 1.0 / 3, 1.0};
  Poly<double> out;
  for (int i = 0; i < 4; ++i) {
    Poly<double> basis = Poly<double>::constant(1.0);
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      basis = basis * Poly<double>({-nodes[j] / (nodes[i] - nodes[j]), 1.0 / (nodes[i] - nodes[j])});
    }
    out += basis.scaled(f1(nodes[i]));
  }
  return out;
}

/// min over c in [-1, 0] of the cubic f(1; c).
inline double lemma1_min_f1(int n, double eps) {
  const Poly<double> p = lemma1_f1_cubic(n, eps);
  double best = std::min(p.evaluate(-1.0), p.evaluate(0.0));
  const Poly<double> dp = p.derivative();
  const double a = dp[2], b = dp[1], c = dp[0];
  auto consider = [&](double x) {
    if (x > -1.0 && x < 0.0) best = std::min(best, p.evaluate(x));
  };
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) > 0) consider(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      consider((-b + sq) / (2 * a));
      consider((-b - sq) / (2 * a));
    }
  }
  return best;
}

/// Smallest eps in (0, 1) at which f(1; c) first becomes zero for some
/// c in [-1, 0]; 1 when there is none.
inline double lemma1_critical_eps(int n, double tol = 1e-8) {
  if (n < 2) throw std::domain_error("lemma1_critical_eps: n >= 2 required");
  const double step = 1e-3;
  double lo = 0.0;
  for (double e = step; e < 1.0; e += step) {
    if (lemma1_min_f1(n, e) <= 0) {
      double hi = e;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (lemma1_min_f1(n, mid) <= 0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    lo = e;
  }
  return 1.0;
}

}  // namespace sphgeo
