#pragma once

// Two independent evaluations of the normal variation along one circuit of
// the equator.
//
// s-domain: the variational equation is integrated in arc length next to the
// geodesic, with Christoffel data from the floating-point surface.
//
// z-domain: xi'' + p xi' + q xi = 0 from the exact derivation, solved on each
// monotone arc of z = eps cos(n phi). Near the turning points z = +-eps
// (regular singular, exponents 0 and 1/2) the solution is a Frobenius sum
// A f_0 + B f_1/2; across a turning point the odd part changes sign.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphgeo/geodesic/dopri5.hpp"
#include "sphgeo/geodesic/geodesic.hpp"
#include "sphgeo/nve/nve.hpp"
#include "sphgeo/surface/surface.hpp"

namespace sphgeo {

/// Coefficients of xi_ss = a xi + b xi_s at a point of the equator,
/// evaluated from the floating-point surface.
struct NVECoefficientsS {
  double a = 0, b = 0;
};

inline NVECoefficientsS nve_coefficients_s(const PolarSurface& surf, double phi, double phi_dot) {
  const double half_pi = std::numbers::pi / 2;
  const Metric2 m = metric_at(surf, half_pi, phi);
  return {-gamma_theta_phiphi_dtheta(surf, half_pi, phi) * phi_dot * phi_dot, -2 * m.Gt_tp * phi_dot};
}

namespace detail {

inline Poly<Rational> taylor_shift(const Poly<Rational>& p, const Rational& a) {
  // coefficients of p(a + x) by Horner in x
  Poly<Rational> out;
  const Poly<Rational> xa({a, Rational(1)});
  for (int k = p.degree(); k >= 0; --k) out = out * xa + Poly<Rational>::constant(p[static_cast<std::size_t>(k)]);
  return out;
}

/// First `terms` Taylor coefficients of x^k f(a + x), where f has a pole of
/// order <= k at a.
inline std::vector<double> laurent_times_power(const RatFuncQ& f, const Rational& a, int k, int terms) {
  Poly<Rational> num = taylor_shift(f.num(), a), den = taylor_shift(f.den(), a);
  int shift = 0;
  while (!den.is_zero() && sgn(den[0]) == 0) {
    den = exact_quotient(den, Poly<Rational>::x());
    ++shift;
  }
  if (shift > k) throw std::domain_error("laurent_times_power: pole order too high");
  // x^(k - shift) num/den as a power series
  std::vector<Rational> n(static_cast<std::size_t>(terms), Rational(0)), s(static_cast<std::size_t>(terms), Rational(0));
  for (int i = 0; i + (k - shift) < terms && i <= num.degree(); ++i) {
    n[static_cast<std::size_t>(i + k - shift)] = num[static_cast<std::size_t>(i)];
  }
  const Rational d0 = den[0];
  for (int i = 0; i < terms; ++i) {
    Rational acc = n[static_cast<std::size_t>(i)];
    for (int j = 1; j <= std::min(i, den.degree()); ++j) acc -= den[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(i - j)];
    s[static_cast<std::size_t>(i)] = acc / d0;
  }
  std::vector<double> out;
  for (const auto& x : s) out.push_back(x.get_d());
  return out;
}

}  // namespace detail

/// Frobenius solutions |x|^rho sum c_k x^k, x = z - a, of xi'' + p xi' + q xi = 0
/// at a regular singular point a.
class FrobeniusPair {
 public:
  FrobeniusPair(const RatFuncQ& p, const RatFuncQ& q, const Rational& a, std::array<double, 2> exponents,
                int terms = 60)
      : a_(a.get_d()), rho_(exponents) {
    const auto P = detail::laurent_times_power(p, a, 1, terms);
    const auto Q = detail::laurent_times_power(q, a, 2, terms);
    for (int b = 0; b < 2; ++b) {
      const double rho = rho_[static_cast<std::size_t>(b)];
      auto indicial = [&](double x) { return x * (x - 1) + P[0] * x + Q[0]; };
      if (std::abs(indicial(rho)) > 1e-12) throw std::domain_error("FrobeniusPair: exponent is not indicial");
      std::vector<double>& c = c_[static_cast<std::size_t>(b)];
      c.assign(static_cast<std::size_t>(terms), 0.0);
      c[0] = 1.0;
      for (int k = 1; k < terms; ++k) {
        double acc = 0;
        for (int j = 1; j <= k; ++j) {
          acc += c[static_cast<std::size_t>(k - j)] *
                 ((rho + k - j) * P[static_cast<std::size_t>(j)] + Q[static_cast<std::size_t>(j)]);
        }
        const double f = indicial(rho + k);
        if (std::abs(f) < 1e-12) throw std::domain_error("FrobeniusPair: resonant exponents");
        c[static_cast<std::size_t>(k)] = -acc / f;
      }
    }
  }

  double center() const { return a_; }

  /// (value, derivative) of basis solution b at z.
  std::array<double, 2> eval(int b, double z) const {
    const double x = z - a_, ax = std::abs(x);
    const double rho = rho_[static_cast<std::size_t>(b)];
    const auto& c = c_[static_cast<std::size_t>(b)];
    double s = 0, ds = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      ds = ds * x + s;
      s = s * x + c[k];
    }
    const double xr = std::pow(ax, rho);
    return {xr * s, xr * (rho / x * s + ds)};
  }

 private:
  double a_;
  std::array<double, 2> rho_;
  std::array<std::vector<double>, 2> c_;
};

struct TransportSample {
  double s = 0, phi = 0, z = 0;
  double xi_s = 0;  // s-domain value
  double xi_z = 0;  // z-domain value
};

struct TransportReport {
  std::vector<TransportSample> samples;
  double circuit_length = 0;
  double max_abs = 0;
  double max_diff = 0;
  double relative_error() const { return max_abs > 0 ? max_diff / max_abs : max_diff; }
};

/// Compares the two representations over one circuit, starting at phi = 0
/// with xi = xi0, xi_s = xi_dot0, sampling `per_arc` points on each of the
/// 2n arcs between turning points.
inline TransportReport nve_transport_check(int n, const Rational& eps, double xi0, double xi_dot0, int per_arc = 16) {
  if (n < 2) throw std::domain_error("nve_transport_check: n >= 2 required");
  const double e = eps.get_d();
  const double pi = std::numbers::pi;
  const NVEData nve = equatorial_nve(n, eps);
  const PolarSurface surf = PolarSurface::sectoral(n, e);

  // sample angles strictly inside each arc
  std::vector<double> phis;
  for (int k = 0; k < 2 * n; ++k) {
    for (int j = 0; j < per_arc; ++j) phis.push_back((k + (j + 0.5) / per_arc) * pi / n);
  }

  TransportReport rep;
  // s-domain: (theta, phi, theta_dot, phi_dot, xi, xi_dot)
  using S6 = Dopri5<6>;
  auto f6 = [&](double, const S6::State& y) {
    const Vec4 g = geodesic_rhs(surf, Vec4{y[0], y[1], y[2], y[3]});
    const NVECoefficientsS c = nve_coefficients_s(surf, y[1], y[3]);
    return S6::State{g[0], g[1], g[2], g[3], y[5], c.a * y[4] + c.b * y[5]};
  };
  const double phi_dot0 = 1.0 / std::sqrt(metric_at(surf, pi / 2, 0.0).g_pp);
  S6::State y{pi / 2, 0.0, 0.0, phi_dot0, xi0, xi_dot0};
  S6::Tolerance tol;
  tol.rtol = tol.atol = 1e-12;
  double t = 0, h = 1e-3;
  S6::State k1 = f6(t, y);
  std::size_t next = 0;
  while (next < phis.size() || y[1] < 2 * pi) {
    const S6::Step st = S6::attempt(f6, t, y, k1, h, tol);
    if (!(st.err <= 1.0)) {
      h = S6::next_h(h, st.err);
      continue;
    }
    while (next < phis.size() && st.y1[1] >= phis[next]) {
      // phi is monotone: secant on the dense output
      double a = st.t0, b = st.t0 + st.h;
      for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
        const double fa = st.eval(a)[1] - phis[next], fb = st.eval(b)[1] - phis[next];
        double m = a - fa * (b - a) / (fb - fa);
        if (!(m > a && m < b)) m = 0.5 * (a + b);
        const double fm = st.eval(m)[1] - phis[next];
        if (fm == 0) a = b = m;
        else if ((fm < 0) == (fa < 0)) a = m;
        else b = m;
      }
      const double sm = 0.5 * (a + b);
      rep.samples.push_back({sm, phis[next], e * std::cos(n * phis[next]), st.eval(sm)[4], 0.0});
      ++next;
    }
    if (st.y0[1] < 2 * pi && st.y1[1] >= 2 * pi) {
      rep.circuit_length = st.t0 + st.h * (2 * pi - st.y0[1]) / (st.y1[1] - st.y0[1]);
    }
    t += h;
    y = st.y1;
    k1 = st.k7;
    h = std::min(S6::next_h(h, st.err), 0.05);
  }

  // z-domain
  auto to_poly = [](const Poly<Rational>& p) {
    std::vector<double> c;
    for (const auto& x : p.coefficients()) c.push_back(x.get_d());
    return Poly<double>(std::move(c));
  };
  const Poly<double> p_num = to_poly(nve.p.num()), p_den = to_poly(nve.p.den());
  const Poly<double> q_num = to_poly(nve.q.num()), q_den = to_poly(nve.q.den());
  using S2 = Dopri5<2>;
  auto f2 = [&](double z, const S2::State& v) {
    const double p = p_num.evaluate(z) / p_den.evaluate(z), q = q_num.evaluate(z) / q_den.evaluate(z);
    return S2::State{v[1], -p * v[1] - q * v[0]};
  };
  S2::Tolerance tol2;
  tol2.rtol = tol2.atol = 1e-13;

  const FrobeniusPair top(nve.p, nve.q, eps, {0.0, 0.5});
  const FrobeniusPair bottom(nve.p, nve.q, -eps, {0.0, 0.5});
  // half the distance to the nearest other singular point
  auto reach = [&](double a) {
    double d = 1e300;
    for (const auto& pole : nve.poles) {
      const double x = std::abs(pole.to_double() - a);
      if (x > 0) d = std::min(d, x);
    }
    return 0.5 * d;
  };
  const double r_top = reach(e), r_bottom = reach(-e);

  // A f_0 + B f_1/2 at phi = 0+: |z - eps| ~ eps n^2 phi^2 / 2
  double A = xi0, B = xi_dot0 / (phi_dot0 * n * std::sqrt(e / 2));
  std::size_t idx = 0;
  for (int k = 0; k < 2 * n; ++k) {
    const bool down = k % 2 == 0;
    const FrobeniusPair& from = down ? top : bottom;
    const FrobeniusPair& to = down ? bottom : top;
    const double r_from = down ? r_top : r_bottom, r_to = down ? r_bottom : r_top;
    const double dir = down ? -1.0 : 1.0;
    auto series = [](const FrobeniusPair& fp, double a, double b, double z) {
      const auto f0 = fp.eval(0, z), f1 = fp.eval(1, z);
      return std::array<double, 2>{a * f0[0] + b * f1[0], a * f0[1] + b * f1[1]};
    };
    // numerical leg between the two series disks
    const double z1 = from.center() + dir * r_from, z2 = to.center() - dir * r_to;
    std::vector<S2::Step> leg;
    {
      S2::State v = series(from, A, B, z1);
      double zz = z1, hh = dir * 1e-3;
      S2::State kk = f2(zz, v);
      while (dir * (z2 - zz) > 1e-15) {
        if (dir * (zz + hh - z2) > 0) hh = z2 - zz;
        const S2::Step st = S2::attempt(f2, zz, v, kk, hh, tol2);
        if (!(st.err <= 1.0)) {
          hh = S2::next_h(hh, st.err);
          continue;
        }
        leg.push_back(st);
        zz += hh;
        v = st.y1;
        kk = st.k7;
        hh = S2::next_h(hh, st.err);
      }
      // coefficients at the far turning point
      const auto g0 = to.eval(0, z2), g1 = to.eval(1, z2);
      const double det = g0[0] * g1[1] - g1[0] * g0[1];
      const double A2 = (v[0] * g1[1] - g1[0] * v[1]) / det;
      const double B2 = (g0[0] * v[1] - v[0] * g0[1]) / det;
      for (int j = 0; j < per_arc; ++j, ++idx) {
        TransportSample& smp = rep.samples[idx];
        const double z = smp.z;
        if (std::abs(z - from.center()) <= r_from) {
          smp.xi_z = series(from, A, B, z)[0];
        } else if (std::abs(z - to.center()) <= r_to) {
          smp.xi_z = series(to, A2, B2, z)[0];
        } else {
          const auto it = std::find_if(leg.begin(), leg.end(), [&](const S2::Step& st) {
            return dir * (st.t0 + st.h - z) >= 0;
          });
          smp.xi_z = (it == leg.end() ? leg.back() : *it).eval(z)[0];
        }
      }
      A = A2;
      B = -B2;
    }
  }
  for (const auto& smp : rep.samples) {
    rep.max_abs = std::max(rep.max_abs, std::abs(smp.xi_s));
    rep.max_diff = std::max(rep.max_diff, std::abs(smp.xi_s - smp.xi_z));
  }
  return rep;
}

}  // namespace sphgeo
