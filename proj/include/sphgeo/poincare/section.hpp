#pragma once

// Equatorial Poincare sections: upward crossings (theta_dot > 0) of
// theta = pi/2 recorded as (phi, phi_dot) in the surface's chart.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeo/geodesic/geodesic.hpp"
#include "sphgeo/parallel.hpp"
#include "sphgeo/surface/surface.hpp"

namespace sphgeo {

inline constexpr double kTwoPi = 2 * std::numbers::pi;

inline double wrap_two_pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

/// Largest |phi_dot| that is admissible at every phi on the equatorial
/// section of the sectoral surface: 1/sqrt(max_phi g_phiphi).
inline double phi_dot_max(int n, double eps) {
  if (n < 1) throw std::invalid_argument("phi_dot_max: n >= 1 required");
  if (!(eps >= 0 && eps < 1)) throw std::invalid_argument("phi_dot_max: 0 <= eps < 1 required");
  const double n2 = static_cast<double>(n) * n;
  if (n == 1 || eps < 1.0 / (n2 - 1)) return 1.0 / (1.0 + eps);
  return 1.0 / std::sqrt(n2 * (1 + eps * eps * (n2 - 1)) / (n2 - 1));
}

/// Equatorial energy relation solved for theta_dot >= 0; empty when the
/// state (phi, phi_dot) lies outside the section ellipse.
inline std::optional<double> section_theta_dot(const PolarSurface& surf, double phi, double phi_dot) {
  const Metric2 m = metric_at(surf, std::numbers::pi / 2, phi);
  const double b = m.g_tp * phi_dot;
  const double disc = b * b - m.g_tt * (m.g_pp * phi_dot * phi_dot - 1);
  if (disc < 0) return std::nullopt;
  const double td = (-b + std::sqrt(disc)) / m.g_tt;
  if (!(td > 0)) return std::nullopt;
  return td;
}

/// Largest |phi_dot| on the section at a given phi (theta_dot free).
inline double section_phi_dot_bound(const PolarSurface& surf, double phi) {
  const Metric2 m = metric_at(surf, std::numbers::pi / 2, phi);
  return std::sqrt(m.g_tt / m.det);
}

/// min over phi of section_phi_dot_bound, by sampling and golden-section
/// refinement. Agrees with phi_dot_max on sectoral surfaces.
inline double phi_dot_max_numeric(const PolarSurface& surf, int samples = 4096) {
  auto f = [&](double phi) { return section_phi_dot_bound(surf, phi); };
  int best = 0;
  double best_v = f(0.0);
  for (int i = 1; i < samples; ++i) {
    const double v = f(kTwoPi * i / samples);
    if (v < best_v) best_v = v, best = i;
  }
  double a = kTwoPi * (best - 1) / samples, b = kTwoPi * (best + 1) / samples;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc, c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd, d = a + g * (b - a), fd = f(d);
    }
  }
  return std::min(best_v, f(0.5 * (a + b)));
}

/// Sampling bound for random section starts.
inline double section_sampling_bound(const PolarSurface& surf) {
  const SurfaceSpec& sp = surf.spec();
  const Chart& ch = surf.chart();
  const bool standard = ch.R == Chart::standard().R;
  if (standard && sp.family == Family::sectoral) return phi_dot_max(sp.n(), sp.eps);
  return phi_dot_max_numeric(surf);
}

/// Launch state on the section, heading south.
inline GeodesicState section_state(const PolarSurface& surf, double phi, double phi_dot) {
  const auto td = section_theta_dot(surf, phi, phi_dot);
  if (!td) throw std::domain_error("section_state: (phi, phi_dot) is outside the section ellipse");
  return {std::numbers::pi / 2, phi, *td, phi_dot, 0.0};
}

struct SectionPoint {
  int traj_id = 0;
  int crossing_index = 0;
  double s = 0;
  double phi = 0;
  double phi_dot = 0;
};

struct SectionFailure {
  int traj_id = 0;
  double s = 0;
  std::string reason;
};

struct SectionOptions {
  int num_traj = 10;
  int num_crossings = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double gap_budget = 200.0;  // max arc length between successive upward crossings
  IntegratorOptions integrator = [] {
    IntegratorOptions o;
    o.record_samples = false;
    return o;
  }();
};

struct SectionStart {
  int traj_id = 0;
  double phi = 0;
  double phi_dot = 0;
};

struct Section {
  std::vector<SectionStart> starts;
  std::vector<SectionPoint> points;
  std::vector<SectionFailure> failures;
};

/// Random start for one trajectory; the generator is keyed by (seed, traj_id)
/// so results do not depend on scheduling.
inline SectionStart section_start(const PolarSurface& surf, std::uint64_t seed, int traj_id, double bound) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(traj_id)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi), upd(-bound, bound);
  for (;;) {
    const double phi = uphi(rng), pd = upd(rng);
    if (section_theta_dot(surf, phi, pd)) return {traj_id, phi, pd};
  }
}

/// Follows one trajectory until `num_crossings` upward crossings have been
/// recorded. Returns the failure, if any; points found so far are kept.
inline std::optional<SectionFailure> trace_section_trajectory(const GeodesicIntegrator& integ,
                                                              const SectionStart& start, int num_crossings,
                                                              double gap_budget, std::vector<SectionPoint>& out) {
  const GeodesicState x0 = section_state(integ.surface(), start.phi, start.phi_dot);
  double last_s = 0;
  bool gap_exceeded = false;
  auto cb = [&](const Crossing& c) {
    if (c.direction <= 0) return true;
    if (c.state.s - last_s > gap_budget) {
      gap_exceeded = true;
      return false;
    }
    last_s = c.state.s;
    out.push_back({start.traj_id, static_cast<int>(out.size()), c.state.s, wrap_two_pi(c.state.phi),
                   c.state.phi_dot});
    return static_cast<int>(out.size()) < num_crossings;
  };
  try {
    const Trajectory tr = integ.integrate(x0, gap_budget * num_crossings, cb);
    if (gap_exceeded || static_cast<int>(out.size()) < num_crossings) {
      return SectionFailure{start.traj_id, tr.final_state.s, "no upward crossing within the arc-length budget"};
    }
  } catch (const StepSizeUnderflow& e) {
    return SectionFailure{start.traj_id, last_s, e.what()};
  }
  return std::nullopt;
}

inline Section generate_section(const PolarSurface& surf, const SectionOptions& opt) {
  if (opt.num_traj < 0 || opt.num_crossings < 1) throw std::invalid_argument("generate_section: bad counts");
  const GeodesicIntegrator integ(surf, opt.integrator);
  const double bound = section_sampling_bound(surf);
  const auto n = static_cast<std::size_t>(opt.num_traj);
  std::vector<SectionStart> starts(n);
  std::vector<std::vector<SectionPoint>> pts(n);
  std::vector<std::optional<SectionFailure>> fails(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    starts[i] = section_start(surf, opt.seed, static_cast<int>(i), bound);
    fails[i] = trace_section_trajectory(integ, starts[i], opt.num_crossings, opt.gap_budget, pts[i]);
  });
  Section out;
  out.starts = std::move(starts);
  for (std::size_t i = 0; i < n; ++i) {
    out.points.insert(out.points.end(), pts[i].begin(), pts[i].end());
    if (fails[i]) out.failures.push_back(*fails[i]);
  }
  return out;
}

/// Number of cells of a grid x grid box over [0, 2pi) x [-bound, bound]
/// visited by the given trajectory's points.
inline int occupancy(const std::vector<SectionPoint>& pts, int traj_id, double bound, int grid = 100) {
  std::vector<char> seen(static_cast<std::size_t>(grid) * grid, 0);
  int count = 0;
  for (const auto& p : pts) {
    if (p.traj_id != traj_id) continue;
    const int i = std::clamp(static_cast<int>(p.phi / kTwoPi * grid), 0, grid - 1);
    const int j = std::clamp(static_cast<int>((p.phi_dot + bound) / (2 * bound) * grid), 0, grid - 1);
    char& c = seen[static_cast<std::size_t>(i) * grid + j];
    if (!c) c = 1, ++count;
  }
  return count;
}

/// Largest single-trajectory occupancy as a fraction of the grid.
inline double max_occupancy_ratio(const Section& sec, double bound, int grid = 100) {
  int best = 0;
  for (const auto& st : sec.starts) best = std::max(best, occupancy(sec.points, st.traj_id, bound, grid));
  return static_cast<double>(best) / (static_cast<double>(grid) * grid);
}

}  // namespace sphgeo
