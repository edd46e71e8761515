#pragma once

// CSV, SVG and JSON output for sections and closed geodesics.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <string>

#include "sphgeo/io.hpp"
#include "sphgeo/poincare/closed.hpp"
#include "sphgeo/poincare/section.hpp"

namespace sphgeo {

inline void write_section_csv(std::ostream& os, const Section& sec) {
  os << "traj_id,crossing_index,s,phi,phi_dot\n";
  for (const auto& p : sec.points) {
    os << p.traj_id << ',' << p.crossing_index << ',' << format_double(p.s) << ',' << format_double(p.phi) << ','
       << format_double(p.phi_dot) << '\n';
  }
}

/// Scatter plot, phi in [0, 2pi] across and phi_dot in [-bound, bound] up.
inline void write_section_svg(std::ostream& os, const Section& sec, double bound, int width = 800,
                              int height = 400) {
  const double margin = 40;
  const double pw = width - 2 * margin, ph = height - 2 * margin;
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n",
                margin, margin, pw, ph);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"%d\" text-anchor=\"middle\">phi</text>\n", width / 2.0,
                height - 10);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"12\" y=\"%.0f\" text-anchor=\"middle\">phi_dot</text>\n", height / 2.0);
  os << buf;
  int traj = -1, color = 0;
  for (const auto& p : sec.points) {
    if (p.traj_id != traj) {
      if (traj >= 0) os << "</g>\n";
      traj = p.traj_id;
      // golden-angle hues keep neighbouring trajectories apart
      color = static_cast<int>(std::fmod(traj * 137.508, 360.0));
      os << "<g fill=\"hsl(" << color << ",70%,40%)\">\n";
    }
    const double x = margin + pw * p.phi / kTwoPi;
    const double y = margin + ph * (1 - (std::clamp(p.phi_dot, -bound, bound) + bound) / (2 * bound));
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"0.8\"/>\n", x, y);
    os << buf;
  }
  if (traj >= 0) os << "</g>\n";
  os << "</svg>\n";
}

inline nlohmann::json closed_geodesic_json(const ClosedGeodesic& cg) {
  nlohmann::json eig = nlohmann::json::array();
  for (const auto& l : cg.eigenvalues) eig.push_back({{"re", l.real()}, {"im", l.imag()}});
  return {{"family", to_string(cg.family)},
          {"fixed_point", {{"phi", cg.phi}, {"phi_dot", cg.phi_dot}}},
          {"period", cg.period},
          {"length", cg.length},
          {"monodromy", cg.monodromy},
          {"trace", cg.trace()},
          {"det", cg.det()},
          {"eigenvalues", eig},
          {"classification", to_string(cg.stability)},
          {"residual", cg.residual}};
}

}  // namespace sphgeo
