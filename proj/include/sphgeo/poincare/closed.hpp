#pragma once

// First-return map of the equatorial section, its fixed points (closed
// geodesics) and their monodromy.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "sphgeo/geodesic/geodesic.hpp"
#include "sphgeo/poincare/section.hpp"

namespace sphgeo {

class NoReturn : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FixedPointDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReturnMapOptions {
  double s_budget = 200.0;
  IntegratorOptions integrator = [] {
    IntegratorOptions o;
    o.rtol = o.atol = 1e-13;
    o.record_samples = false;
    return o;
  }();
};

struct SectionCoords {
  double phi = 0;
  double phi_dot = 0;
  double s = 0;  // arc length of the return
};

namespace detail {

inline SectionCoords first_crossing(const PolarSurface& surf, const GeodesicState& x0, int direction,
                                    const ReturnMapOptions& opt) {
  std::optional<Crossing> hit;
  GeodesicIntegrator integ(surf, opt.integrator);
  integ.integrate(x0, opt.s_budget, [&](const Crossing& c) {
    if (c.direction != direction) return true;
    hit = c;
    return false;
  });
  if (!hit) throw NoReturn("no return to the section within s = " + std::to_string(opt.s_budget));
  return {hit->state.phi, hit->state.phi_dot, hit->state.s};
}

}  // namespace detail

/// Next upward crossing after launching from (phi, phi_dot) on the section.
/// The returned phi is continued from the input rather than wrapped.
inline SectionCoords return_map(const PolarSurface& surf, double phi, double phi_dot,
                                const ReturnMapOptions& opt = {}) {
  const SectionCoords c = detail::first_crossing(surf, section_state(surf, phi, phi_dot), 1, opt);
  return {unwrap_near(c.phi, phi), c.phi_dot, c.s};
}

/// Inverse of return_map by time reversal.
inline SectionCoords inverse_return_map(const PolarSurface& surf, double phi, double phi_dot,
                                        const ReturnMapOptions& opt = {}) {
  GeodesicState x0 = section_state(surf, phi, phi_dot);
  x0.theta_dot = -x0.theta_dot;
  x0.phi_dot = -x0.phi_dot;
  const SectionCoords c = detail::first_crossing(surf, x0, -1, opt);
  return {unwrap_near(c.phi, phi), -c.phi_dot, c.s};
}

inline SectionCoords iterate_return_map(const PolarSurface& surf, double phi, double phi_dot, int period,
                                        const ReturnMapOptions& opt = {}) {
  SectionCoords c{phi, phi_dot, 0};
  double s = 0;
  for (int k = 0; k < period; ++k) {
    c = return_map(surf, c.phi, c.phi_dot, opt);
    s += c.s;
  }
  c.s = s;
  return c;
}

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Jacobian of the period-k map by central differences.
inline Mat2 return_map_jacobian(const PolarSurface& surf, double phi, double phi_dot, int period, double h,
                                const ReturnMapOptions& opt = {}) {
  Mat2 J{};
  for (int col = 0; col < 2; ++col) {
    const double dp = col == 0 ? h : 0.0, dv = col == 1 ? h : 0.0;
    const SectionCoords plus = iterate_return_map(surf, phi + dp, phi_dot + dv, period, opt);
    const SectionCoords minus = iterate_return_map(surf, phi - dp, phi_dot - dv, period, opt);
    J[0][col] = (plus.phi - unwrap_near(minus.phi, plus.phi)) / (2 * h);
    J[1][col] = (plus.phi_dot - minus.phi_dot) / (2 * h);
  }
  return J;
}

enum class GeodesicFamily { planar, perpendicular, oblique, island };
enum class Stability { elliptic, hyperbolic, parabolic };

inline std::string to_string(GeodesicFamily f) {
  switch (f) {
    case GeodesicFamily::planar: return "planar";
    case GeodesicFamily::perpendicular: return "perpendicular";
    case GeodesicFamily::oblique: return "oblique";
    case GeodesicFamily::island: return "island";
  }
  return "planar";
}

inline GeodesicFamily geodesic_family_from_string(const std::string& s) {
  if (s == "planar") return GeodesicFamily::planar;
  if (s == "perpendicular") return GeodesicFamily::perpendicular;
  if (s == "oblique") return GeodesicFamily::oblique;
  if (s == "island") return GeodesicFamily::island;
  throw std::invalid_argument("unknown closed-geodesic family '" + s + "'");
}

inline std::string to_string(Stability s) {
  switch (s) {
    case Stability::elliptic: return "elliptic";
    case Stability::hyperbolic: return "hyperbolic";
    case Stability::parabolic: return "parabolic";
  }
  return "parabolic";
}

struct ClosedGeodesic {
  GeodesicFamily family = GeodesicFamily::planar;
  double phi = 0;
  double phi_dot = 0;
  int period = 1;
  double length = 0;
  Mat2 monodromy{};
  std::array<std::complex<double>, 2> eigenvalues{};
  Stability stability = Stability::parabolic;
  double residual = 0;
  int iterations = 0;

  double trace() const { return monodromy[0][0] + monodromy[1][1]; }
  double det() const { return monodromy[0][0] * monodromy[1][1] - monodromy[0][1] * monodromy[1][0]; }
};

inline std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
  const double tr = m[0][0] + m[1][1], det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const std::complex<double> sq = std::sqrt(std::complex<double>(tr * tr - 4 * det));
  return {(tr + sq) / 2.0, (tr - sq) / 2.0};
}

/// |tr| < 2 elliptic, |tr| > 2 hyperbolic, within `tol` of 2 parabolic.
inline Stability classify(const Mat2& m, double tol = 1e-6) {
  const double tr = std::abs(m[0][0] + m[1][1]);
  if (tr < 2 - tol) return Stability::elliptic;
  if (tr > 2 + tol) return Stability::hyperbolic;
  return Stability::parabolic;
}

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 30;
  double fd_step = 1e-5;
  double parabolic_tol = 1e-6;
  ReturnMapOptions map;
};

/// Newton iteration on P^k(x) - x from the guess, then monodromy and
/// classification at the converged point.
inline ClosedGeodesic find_closed_geodesic(const PolarSurface& surf, GeodesicFamily family, double phi0,
                                           double phi_dot0, int period = 1, const FixedPointOptions& opt = {}) {
  if (period < 1) throw std::invalid_argument("find_closed_geodesic: period >= 1 required");
  ClosedGeodesic cg;
  cg.family = family;
  cg.period = period;
  double phi = phi0, pd = phi_dot0;
  auto residual = [&](const SectionCoords& c) {
    return std::array<double, 2>{std::remainder(c.phi - phi, kTwoPi), c.phi_dot - pd};
  };
  SectionCoords img = iterate_return_map(surf, phi, pd, period, opt.map);
  auto r = residual(img);
  int it = 0;
  for (; std::hypot(r[0], r[1]) > opt.tol; ++it) {
    if (it >= opt.max_iter) {
      throw FixedPointDivergence("fixed-point iteration did not converge; residual " +
                                 std::to_string(std::hypot(r[0], r[1])));
    }
    const Mat2 J = return_map_jacobian(surf, phi, pd, period, opt.fd_step, opt.map);
    const double a = J[0][0] - 1, b = J[0][1], c = J[1][0], d = J[1][1] - 1;
    const double det = a * d - b * c;
    if (det == 0 || !std::isfinite(det)) throw FixedPointDivergence("singular Newton system");
    double dphi = -(d * r[0] - b * r[1]) / det, dpd = -(-c * r[0] + a * r[1]) / det;
    // damp until the residual decreases
    for (int k = 0; k < 20; ++k) {
      try {
        const SectionCoords trial = iterate_return_map(surf, phi + dphi, pd + dpd, period, opt.map);
        const double np = phi + dphi, nv = pd + dpd;
        const std::array<double, 2> rt{std::remainder(trial.phi - np, kTwoPi), trial.phi_dot - nv};
        if (std::hypot(rt[0], rt[1]) < std::hypot(r[0], r[1]) || k == 19) {
          phi = np, pd = nv, img = trial, r = rt;
          break;
        }
      } catch (const std::domain_error&) {
        // stepped outside the section ellipse
      }
      dphi *= 0.5, dpd *= 0.5;
    }
    if (!std::isfinite(phi) || !std::isfinite(pd)) throw FixedPointDivergence("Newton iterate is not finite");
  }
  cg.phi = wrap_two_pi(phi);
  cg.phi_dot = pd;
  cg.length = img.s;
  cg.residual = std::hypot(r[0], r[1]);
  cg.iterations = it;
  cg.monodromy = return_map_jacobian(surf, phi, pd, period, opt.fd_step, opt.map);
  cg.eigenvalues = eigenvalues(cg.monodromy);
  cg.stability = classify(cg.monodromy, opt.parabolic_tol);
  return cg;
}

/// Section coordinates of the closed-geodesic families of the sectoral
/// surface of order n, i = 0..n-1 (perpendicular ones exist for odd n).
inline std::pair<double, double> planar_guess(int n, int i) { return {std::numbers::pi * i / n, 0.0}; }

inline std::pair<double, double> perpendicular_guess(int n, int i) {
  return {std::numbers::pi * (i + 0.5) / n, 0.0};
}

/// Coordinates in the chart rotated about the x-axis, in which the meridian
/// phi = 0, pi becomes the equator.
inline std::pair<double, double> rotate_chart(double theta, double phi) {
  const auto [t, p] = Chart::rotated_x().from_world(Chart::standard().to_world(theta, phi));
  if (t < kPoleGuard || std::numbers::pi - t < kPoleGuard) {
    throw CoordinateSingularity("rotate_chart: point maps to a pole of the rotated chart");
  }
  return {t, p};
}

inline std::pair<double, double> unrotate_chart(double vartheta, double varphi) {
  const auto [t, p] = Chart::standard().from_world(Chart::rotated_x().to_world(vartheta, varphi));
  if (t < kPoleGuard || std::numbers::pi - t < kPoleGuard) {
    throw CoordinateSingularity("unrotate_chart: point maps to a pole of the standard chart");
  }
  return {t, p};
}

/// The equatorial geodesic of sectoral(n, eps) as a fixed point of the
/// section of the rotated chart. Its monodromy is that of one full circuit.
inline ClosedGeodesic equator_in_rotated_section(int n, double eps, const FixedPointOptions& opt = {}) {
  const PolarSurface rotated = PolarSurface::sectoral(n, eps).with_chart(Chart::rotated_x());
  return find_closed_geodesic(rotated, GeodesicFamily::planar, 0.0, 0.0, 1, opt);
}

}  // namespace sphgeo
