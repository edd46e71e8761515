#pragma once

// Unit-speed geodesic flow on a polar surface with equator-crossing events.
//
// The state (theta, phi, theta_dot, phi_dot) is integrated in the surface's
// own chart. Within swap_in of a pole the integration moves to an auxiliary
// chart rotated about the x-axis (whose poles lie on the primary equator) and
// returns once the primary theta is back inside [swap_out, pi - swap_out].

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphgeo/geodesic/dopri5.hpp"
#include "sphgeo/surface/surface.hpp"

namespace sphgeo {

struct GeodesicState {
  double theta = 0, phi = 0, theta_dot = 0, phi_dot = 0;
  double s = 0;
};

using Vec4 = std::array<double, 4>;

inline Vec4 to_vec(const GeodesicState& x) { return {x.theta, x.phi, x.theta_dot, x.phi_dot}; }

inline GeodesicState from_vec(const Vec4& y, double s) { return {y[0], y[1], y[2], y[3], s}; }

/// (theta_dot, phi_dot, theta_ddot, phi_ddot).
inline Vec4 geodesic_rhs(const PolarSurface& surf, const Vec4& y) {
  const Metric2 m = metric_at(surf, y[0], y[1]);
  const double td = y[2], pd = y[3];
  return {td, pd, -(m.Gt_tt * td * td + 2 * m.Gt_tp * td * pd + m.Gt_pp * pd * pd),
          -(m.Gp_tt * td * td + 2 * m.Gp_tp * td * pd + m.Gp_pp * pd * pd)};
}

inline Vec4 geodesic_rhs(const PolarSurface& surf, const GeodesicState& x) { return geodesic_rhs(surf, to_vec(x)); }

/// 2H = g(v, v).
inline double two_h(const PolarSurface& surf, const Vec4& y) {
  const RPartials d = surf.partials(y[0], y[1]);
  const Metric2 m = metric_from_partials(d, y[0]);
  return m.g_tt * y[2] * y[2] + 2 * m.g_tp * y[2] * y[3] + m.g_pp * y[3] * y[3];
}

inline double two_h(const PolarSurface& surf, const GeodesicState& x) { return two_h(surf, to_vec(x)); }

/// Rescales the velocity so that 2H = 1.
inline GeodesicState normalize_speed(const PolarSurface& surf, GeodesicState x) {
  const double e = two_h(surf, x);
  if (!(e > 0)) throw std::invalid_argument("normalize_speed: zero velocity");
  const double k = 1.0 / std::sqrt(e);
  x.theta_dot *= k;
  x.phi_dot *= k;
  return x;
}

/// Same point and velocity expressed in another chart.
inline Vec4 change_chart(const Chart& from, const Chart& to, const Vec4& y) {
  const double st = std::sin(y[0]), ct = cos_polar(y[0]), sp = std::sin(y[1]), cp = std::cos(y[1]);
  const Vec3 u = mat_vec(from.R, {st * cp, st * sp, ct});
  const Vec3 v = mat_vec(from.R, {ct * cp * y[2] - st * sp * y[3], ct * sp * y[2] + st * cp * y[3], -st * y[2]});
  const auto [t2, p2] = to.from_world(u);
  const double st2 = std::sin(t2), ct2 = cos_polar(t2), sp2 = std::sin(p2), cp2 = std::cos(p2);
  const Vec3 ut = mat_vec(to.R, {ct2 * cp2, ct2 * sp2, -st2});
  const Vec3 up = mat_vec(to.R, {-sp2, cp2, 0.0});  // unit vector along phi
  return {t2, p2, dot(v, ut), dot(v, up) / st2};
}

inline double unwrap_near(double phi, double ref) {
  constexpr double two_pi = 2 * std::numbers::pi;
  return phi + two_pi * std::round((ref - phi) / two_pi);
}

struct Crossing {
  GeodesicState state;
  int direction = 0;  // sign of theta_dot
};

struct Sample {
  GeodesicState state;
  double H = 0;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Crossing> crossings;
  GeodesicState final_state;
  bool stopped_by_callback = false;
  int chart_swaps = 0;
  long steps = 0;
};

struct IntegratorOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double h_init = 1e-2;
  double h_max = 0.25;
  double h_min = 1e-13;
  bool record_samples = true;
  double sample_interval = 0.0;  // 0 records every accepted step
  bool detect_crossings = true;
  double swap_in = 0.05;
  double swap_out = 0.1;
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Called for every equator crossing; returning false ends the integration.
using CrossingCallback = std::function<bool(const Crossing&)>;

class GeodesicIntegrator {
 public:
  using Stepper = Dopri5<4>;

  explicit GeodesicIntegrator(PolarSurface surf, IntegratorOptions opt = {})
      : primary_(std::move(surf)),
        aux_(primary_.with_chart(primary_.chart().compose(Chart::rotated_x()))),
        opt_(opt) {
    tol_.rtol = opt_.rtol;
    tol_.atol = opt_.atol;
    tol_.absolute_only = {false, true, false, false};
  }

  const PolarSurface& surface() const { return primary_; }
  const IntegratorOptions& options() const { return opt_; }

  Trajectory integrate(const GeodesicState& x0, double s_max, const CrossingCallback& on_crossing = {}) const {
    constexpr double half_pi = std::numbers::pi / 2;
    Trajectory out;
    double t = x0.s;
    Vec4 y = to_vec(x0);
    double phi_ref = y[1];
    bool in_aux = false;
    if (near_pole(y[0], opt_.swap_in)) {
      y = change_chart(primary_.chart(), aux_.chart(), y);
      in_aux = true;
      ++out.chart_swaps;
    }
    auto current = [&]() -> const PolarSurface& { return in_aux ? aux_ : primary_; };
    auto f = [&](double, const Vec4& z) { return geodesic_rhs(current(), z); };

    auto as_primary = [&](const Vec4& z, double s) {
      Vec4 w = in_aux ? change_chart(aux_.chart(), primary_.chart(), z) : z;
      if (in_aux) w[1] = unwrap_near(w[1], phi_ref);
      return from_vec(w, s);
    };
    auto record = [&](const Vec4& z, double s) {
      if (opt_.record_samples) out.samples.push_back({as_primary(z, s), 0.5 * two_h(current(), z)});
    };

    record(y, t);
    double next_sample = t + opt_.sample_interval;
    Vec4 k1 = f(t, y);
    double h = opt_.h_init;
    while (s_max - t > 1e-14 * std::max(1.0, std::abs(s_max))) {
      h = std::min({h, opt_.h_max, s_max - t});
      Stepper::Step st;
      try {
        st = Stepper::attempt(f, t, y, k1, h, tol_);
      } catch (const CoordinateSingularity&) {
        st.err = std::numeric_limits<double>::infinity();
      }
      if (!(st.err <= 1.0)) {
        h = std::isfinite(st.err) ? Stepper::next_h(h, st.err) : 0.25 * h;
        if (h < opt_.h_min) throw StepSizeUnderflow("step size underflow at s = " + std::to_string(t));
        continue;
      }
      ++out.steps;

      if (!in_aux && opt_.detect_crossings) {
        const double g0 = st.y0[0] - half_pi, g1 = st.y1[0] - half_pi;
        if ((g0 < 0 && g1 >= 0) || (g0 > 0 && g1 <= 0)) {
          Crossing c = locate_crossing(f, st);
          c.state.phi = unwrap_near(c.state.phi, phi_ref);
          out.crossings.push_back(c);
          if (on_crossing && !on_crossing(c)) {
            if (opt_.record_samples) out.samples.push_back({c.state, 0.5 * two_h(primary_, c.state)});
            out.final_state = c.state;
            out.stopped_by_callback = true;
            return out;
          }
        }
      }

      if (opt_.record_samples && opt_.sample_interval > 0) {
        while (next_sample <= t + h && next_sample <= s_max) {
          record(st.eval(next_sample), next_sample);
          next_sample += opt_.sample_interval;
        }
      }
      t += h;
      y = st.y1;
      k1 = st.k7;
      if (opt_.record_samples && opt_.sample_interval <= 0) record(y, t);
      if (!in_aux) phi_ref = y[1];
      h = Stepper::next_h(h, st.err);

      if (!in_aux && near_pole(y[0], opt_.swap_in)) {
        y = change_chart(primary_.chart(), aux_.chart(), y);
        in_aux = true;
        ++out.chart_swaps;
        k1 = f(t, y);
      } else if (in_aux) {
        const Vec4 w = change_chart(aux_.chart(), primary_.chart(), y);
        if (!near_pole(w[0], opt_.swap_out)) {
          y = w;
          y[1] = unwrap_near(y[1], phi_ref);
          phi_ref = y[1];
          in_aux = false;
          k1 = f(t, y);
        }
      }
    }
    out.final_state = as_primary(y, t);
    return out;
  }

 private:
  static bool near_pole(double theta, double margin) {
    return theta < margin || theta > std::numbers::pi - margin;
  }

  // Root of theta - pi/2 inside an accepted step: Illinois iteration on the
  // dense output, then Newton polishing with full steps from the step start.
  template <class F>
  Crossing locate_crossing(F& f, const Stepper::Step& st) const {
    constexpr double half_pi = std::numbers::pi / 2;
    double a = st.t0, b = st.t0 + st.h;
    double ga = st.y0[0] - half_pi, gb = st.y1[0] - half_pi;
    double x = b;
    int side = 0;
    for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      x = (a * gb - b * ga) / (gb - ga);
      const double gx = st.eval(x)[0] - half_pi;
      if (gx == 0) break;
      if ((gx < 0) == (ga < 0)) {
        a = x;
        ga = gx;
        if (side == -1) gb *= 0.5;
        side = -1;
      } else {
        b = x;
        gb = gx;
        if (side == 1) ga *= 0.5;
        side = 1;
      }
    }
    Vec4 z = st.eval(x);
    for (int it = 0; it < 4; ++it) {
      const double dt = x - st.t0;
      if (dt <= 0) break;
      z = Stepper::attempt(f, st.t0, st.y0, st.k1, dt, tol_).y1;
      const double g = z[0] - half_pi;
      if (std::abs(g) < 1e-15) break;
      x -= g / z[2];
    }
    Crossing c;
    c.state = from_vec(z, x);
    c.direction = z[2] > 0 ? 1 : (z[2] < 0 ? -1 : 0);
    return c;
  }

  PolarSurface primary_;
  PolarSurface aux_;
  IntegratorOptions opt_;
  Dopri5<4>::Tolerance tol_;
};

inline Trajectory integrate(const PolarSurface& surf, const GeodesicState& x0, double s_max, double tol = 1e-12) {
  IntegratorOptions opt;
  opt.rtol = opt.atol = tol;
  return GeodesicIntegrator(surf, opt).integrate(x0, s_max);
}

}  // namespace sphgeo
