#pragma once

// Polar surfaces r(theta, phi) and their metric / Christoffel data.
//
// A surface is stored as a function h on R^3 whose restriction to the unit
// sphere is the radius, r(theta, phi) = h(u(theta, phi)). The harmonic
// families use h = 1 + eps k Q(z) Re((x+iy)^m) with Q = d^m P_l/dz^m, which
// equals 1 + eps k P^m_l(cos theta) cos(m phi) on the sphere. Polar partials
// in any rotated chart then follow from grad h and hess h by the chain rule.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "sphgeo/algebra/poly.hpp"
#include "sphgeo/surface/legendre.hpp"

namespace sphgeo {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

inline Vec3 mat_t_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2], m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
          m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2]};
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline double quad_form(const Vec3& a, const Mat3& h, const Vec3& b) { return dot(a, mat_vec(h, b)); }

struct AmbientJet {
  double h = 1.0;
  Vec3 grad{};
  Mat3 hess{};
};

enum class Family { zonal, sectoral, tesseral, custom };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::zonal: return "zonal";
    case Family::sectoral: return "sectoral";
    case Family::tesseral: return "tesseral";
    case Family::custom: return "custom";
  }
  return "custom";
}

inline Family family_from_string(const std::string& s) {
  if (s == "zonal") return Family::zonal;
  if (s == "sectoral") return Family::sectoral;
  if (s == "tesseral") return Family::tesseral;
  if (s == "custom") return Family::custom;
  throw std::invalid_argument("unknown surface family '" + s + "'");
}

/// For sectoral surfaces l == m == n.
struct SurfaceSpec {
  Family family = Family::sectoral;
  int l = 0;
  int m = 0;
  double eps = 0.0;

  int n() const { return m; }
};

/// cos(theta) computed as sin(pi/2 - theta): exactly zero on the double
/// nearest pi/2, so the equator of a symmetric surface is invariant in
/// floating point too.
inline double cos_polar(double theta) { return std::sin(std::numbers::pi / 2 - theta); }

/// Spherical coordinates of a rotated frame: u_world = R u_chart.
struct Chart {
  Mat3 R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static Chart standard() { return {}; }
  /// Rotation about the x-axis taking meridian y = 0 to the chart equator:
  /// (x, y, z) = (sin t cos p, cos t, -sin t sin p).
  static Chart rotated_x() { return {{{{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}}}; }
  /// Chart whose polar axis is the world x-axis; r = 1 + eps cos(t) for n = 1.
  static Chart polar_x() { return {{{{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}}}; }

  Chart compose(const Chart& inner) const { return {mat_mul(R, inner.R)}; }

  Vec3 to_world(double theta, double phi) const {
    const double st = std::sin(theta);
    return mat_vec(R, {st * std::cos(phi), st * std::sin(phi), cos_polar(theta)});
  }

  std::pair<double, double> from_world(const Vec3& u) const {
    const Vec3 c = mat_t_vec(R, u);
    return {std::atan2(std::hypot(c[0], c[1]), c[2]), std::atan2(c[1], c[0])};
  }
};

struct RPartials {
  double r, r_t, r_p, r_tt, r_tp, r_pp;
};

class CoordinateSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kPoleGuard = 1e-8;

inline void check_off_pole(double theta) {
  if (theta < kPoleGuard || std::numbers::pi - theta < kPoleGuard) {
    throw CoordinateSingularity("polar coordinates are singular at theta = " + std::to_string(theta));
  }
}

class PolarSurface {
 public:
  using JetFn = std::function<AmbientJet(const Vec3&)>;

  static PolarSurface sphere() { return zonal(0, 0.0); }

  static PolarSurface zonal(int l, double eps) { return harmonic({Family::zonal, l, 0, eps}); }
  static PolarSurface sectoral(int n, double eps) { return harmonic({Family::sectoral, n, n, eps}); }
  static PolarSurface tesseral(int l, int m, double eps) { return harmonic({Family::tesseral, l, m, eps}); }

  static PolarSurface custom(JetFn jet) {
    PolarSurface s;
    s.spec_ = {Family::custom, 0, 0, 0.0};
    s.jet_ = std::move(jet);
    return s;
  }

  static PolarSurface from_spec(const SurfaceSpec& spec) {
    switch (spec.family) {
      case Family::zonal: return zonal(spec.l, spec.eps);
      case Family::sectoral: return sectoral(spec.m, spec.eps);
      case Family::tesseral: return tesseral(spec.l, spec.m, spec.eps);
      case Family::custom: break;
    }
    throw std::invalid_argument("custom surfaces cannot be built from a spec");
  }

  PolarSurface with_chart(const Chart& chart) const {
    PolarSurface s = *this;
    s.chart_ = chart;
    return s;
  }

  const SurfaceSpec& spec() const { return spec_; }
  const Chart& chart() const { return chart_; }
  AmbientJet ambient(const Vec3& u) const { return jet_(u); }

  double radius(double theta, double phi) const { return jet_(chart_.to_world(theta, phi)).h; }

  RPartials partials(double theta, double phi) const {
    check_off_pole(theta);
    const double st = std::sin(theta), ct = cos_polar(theta), sp = std::sin(phi), cp = std::cos(phi);
    const Vec3 uc{st * cp, st * sp, ct};
    const Vec3 u = mat_vec(chart_.R, uc);
    const Vec3 ut = mat_vec(chart_.R, {ct * cp, ct * sp, -st});
    const Vec3 up = mat_vec(chart_.R, {-st * sp, st * cp, 0.0});
    const Vec3 utp = mat_vec(chart_.R, {-ct * sp, ct * cp, 0.0});
    const Vec3 upp = mat_vec(chart_.R, {-st * cp, -st * sp, 0.0});
    // u_tt = -u
    const AmbientJet j = jet_(u);
    RPartials p;
    p.r = j.h;
    p.r_t = dot(j.grad, ut);
    p.r_p = dot(j.grad, up);
    p.r_tt = quad_form(ut, j.hess, ut) - dot(j.grad, u);
    p.r_tp = quad_form(ut, j.hess, up) + dot(j.grad, utp);
    p.r_pp = quad_form(up, j.hess, up) + dot(j.grad, upp);
    return p;
  }

 private:
  static PolarSurface harmonic(const SurfaceSpec& spec) {
    if (spec.l < 0 || spec.m < 0 || spec.m > spec.l) throw std::invalid_argument("harmonic surface needs 0 <= m <= l");
    if (!(spec.eps >= 0.0 && spec.eps < 1.0)) throw std::invalid_argument("harmonic surface needs 0 <= eps < 1");
    if (spec.family == Family::sectoral && spec.l < 1) throw std::invalid_argument("sectoral surface needs n >= 1");
    PolarSurface s;
    s.spec_ = spec;
    // sectoral: k Q == 1 exactly
    Poly<double> q = spec.l == spec.m ? Poly<double>::constant(1.0) : legendre_derivative_poly(spec.l, spec.m);
    const double k = spec.l == spec.m ? 1.0 : 1.0 / assoc_legendre_max(spec.l, spec.m);
    s.jet_ = HarmonicJet{spec.eps * k, spec.m, q, q.derivative(), q.derivative().derivative()};
    return s;
  }

  struct HarmonicJet {
    double amp;
    int m;
    Poly<double> q, dq, ddq;

    AmbientJet operator()(const Vec3& u) const {
      const std::complex<double> w(u[0], u[1]);
      auto wpow = [&](int k) {
        std::complex<double> r(1.0, 0.0);
        for (int i = 0; i < k; ++i) r *= w;
        return r;
      };
      double t = 1.0, tx = 0.0, ty = 0.0, txx = 0.0, txy = 0.0;
      if (m > 0) {
        t = wpow(m).real();
        const auto w1 = wpow(m - 1);
        tx = m * w1.real();
        ty = -m * w1.imag();
        if (m > 1) {
          const auto w2 = wpow(m - 2);
          txx = m * (m - 1) * w2.real();
          txy = -m * (m - 1) * w2.imag();
        }
      }
      const double tyy = -txx;
      const double z = u[2];
      const double q0 = q.evaluate(z), q1 = dq.evaluate(z), q2 = ddq.evaluate(z);
      AmbientJet j;
      j.h = 1.0 + amp * q0 * t;
      j.grad = {amp * q0 * tx, amp * q0 * ty, amp * q1 * t};
      j.hess = {{{amp * q0 * txx, amp * q0 * txy, amp * q1 * tx},
                 {amp * q0 * txy, amp * q0 * tyy, amp * q1 * ty},
                 {amp * q1 * tx, amp * q1 * ty, amp * q2 * t}}};
      return j;
    }
  };

  SurfaceSpec spec_;
  Chart chart_;
  JetFn jet_;
};

/// Metric and Christoffel symbols; index t = theta, p = phi, so Gt_pp is
/// Gamma^theta_{phi phi}.
struct Metric2 {
  double g_tt, g_tp, g_pp, det;
  double Gt_tt, Gt_tp, Gt_pp;
  double Gp_tt, Gp_tp, Gp_pp;
};

inline Metric2 metric_from_partials(const RPartials& d, double theta) {
  const double st = std::sin(theta), ct = cos_polar(theta), s2 = st * st;
  const double r = d.r;
  Metric2 m{};
  m.g_tt = d.r_t * d.r_t + r * r;
  m.g_tp = d.r_t * d.r_p;
  m.g_pp = d.r_p * d.r_p + r * r * s2;
  m.det = m.g_tt * m.g_pp - m.g_tp * m.g_tp;

  // first derivatives of the metric
  const double tt_t = 2 * d.r_t * d.r_tt + 2 * r * d.r_t;
  const double tt_p = 2 * d.r_t * d.r_tp + 2 * r * d.r_p;
  const double tp_t = d.r_tt * d.r_p + d.r_t * d.r_tp;
  const double tp_p = d.r_tp * d.r_p + d.r_t * d.r_pp;
  const double pp_t = 2 * d.r_p * d.r_tp + 2 * r * d.r_t * s2 + 2 * r * r * st * ct;
  const double pp_p = 2 * d.r_p * d.r_pp + 2 * r * d.r_p * s2;

  // Gamma_{d,bc} = (g_bd,c + g_cd,b - g_bc,d)/2
  const double t_tt = 0.5 * tt_t;
  const double t_tp = 0.5 * tt_p;
  const double t_pp = tp_p - 0.5 * pp_t;
  const double p_tt = tp_t - 0.5 * tt_p;
  const double p_tp = 0.5 * pp_t;
  const double p_pp = 0.5 * pp_p;

  const double it_t = m.g_pp / m.det, it_p = -m.g_tp / m.det, ip_p = m.g_tt / m.det;
  m.Gt_tt = it_t * t_tt + it_p * p_tt;
  m.Gt_tp = it_t * t_tp + it_p * p_tp;
  m.Gt_pp = it_t * t_pp + it_p * p_pp;
  m.Gp_tt = it_p * t_tt + ip_p * p_tt;
  m.Gp_tp = it_p * t_tp + ip_p * p_tp;
  m.Gp_pp = it_p * t_pp + ip_p * p_pp;
  return m;
}

inline Metric2 metric_at(const PolarSurface& s, double theta, double phi) {
  return metric_from_partials(s.partials(theta, phi), theta);
}

/// Gamma^theta_{phi phi} from the direct closed form in r and its partials.
inline double gamma_theta_phiphi(const PolarSurface& s, double theta, double phi) {
  const RPartials d = s.partials(theta, phi);
  const double st = std::sin(theta), ct = cos_polar(theta), s2 = st * st;
  const double r = d.r, rt = d.r_t, rp = d.r_p;
  const double num = rt * (r * d.r_pp * s2 - 2 * rp * rp * s2 - r * r * s2 * s2) - ct * (r * r * r * s2 * st + r * rp * rp * st);
  const double den = r * (r * r * s2 + rt * rt * s2 + rp * rp);
  return num / den;
}

/// theta-derivative of gamma_theta_phiphi (Richardson-extrapolated central
/// differences of the closed form).
inline double gamma_theta_phiphi_dtheta(const PolarSurface& s, double theta, double phi) {
  auto central = [&](double h) {
    return (gamma_theta_phiphi(s, theta + h, phi) - gamma_theta_phiphi(s, theta - h, phi)) / (2 * h);
  };
  const double h = 1e-3;
  const double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
  const double e1 = (4 * d2 - d1) / 3, e2 = (4 * d3 - d2) / 3;
  return (16 * e2 - e1) / 15;
}

}  // namespace sphgeo
