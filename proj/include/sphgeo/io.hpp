#pragma once

// Plain-text number formatting shared by the CSV and JSON writers.

#include <cstdio>
#include <ostream>
#include <string>

#include "sphgeo/geodesic/geodesic.hpp"

namespace sphgeo {

/// Round-trip decimal form of a double ("%.17g").
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "s,theta,phi,theta_dot,phi_dot,H\n";
  for (const auto& smp : tr.samples) {
    const auto& x = smp.state;
    os << format_double(x.s) << ',' << format_double(x.theta) << ',' << format_double(x.phi) << ','
       << format_double(x.theta_dot) << ',' << format_double(x.phi_dot) << ',' << format_double(smp.H) << '\n';
  }
}

}  // namespace sphgeo
