#pragma once

// Dormand-Prince 5(4) with the Hairer-Wanner continuous extension.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace sphgeo {

template <std::size_t N>
struct Dopri5 {
  using State = std::array<double, N>;

  struct Tolerance {
    double rtol = 1e-12;
    double atol = 1e-12;
    std::array<bool, N> absolute_only{};  // components measured against atol alone
  };

  /// Accepted or trial step with everything needed for dense output.
  struct Step {
    double t0 = 0, h = 0;
    State y0{}, y1{}, k1{}, k7{};
    std::array<State, 5> cont{};
    double err = 0;

    State eval(double t) const {
      const double th = (t - t0) / h, th1 = 1.0 - th;
      State y;
      for (std::size_t i = 0; i < N; ++i) {
        y[i] = cont[0][i] + th * (cont[1][i] + th1 * (cont[2][i] + th * (cont[3][i] + th1 * cont[4][i])));
      }
      return y;
    }
  };

  /// One trial step of size h from (t, y) with derivative k1 = f(t, y).
  template <class F>
  static Step attempt(F&& f, double t, const State& y, const State& k1, double h, const Tolerance& tol) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    State tmp, k2, k3, k4, k5, k6, k7, y1;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = f(t + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(t + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(t + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(t + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = f(t + h, y1);

    Step s;
    s.t0 = t;
    s.h = h;
    s.y0 = y;
    s.y1 = y1;
    s.k1 = k1;
    s.k7 = k7;
    double acc = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk =
          tol.absolute_only[i] ? tol.atol : tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      acc += (e / sk) * (e / sk);
      const double ydiff = y1[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      s.cont[0][i] = y[i];
      s.cont[1][i] = ydiff;
      s.cont[2][i] = bspl;
      s.cont[3][i] = ydiff - h * k7[i] - bspl;
      s.cont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    s.err = std::sqrt(acc / N);
    return s;
  }

  /// Proposed next step size from a normalized error.
  static double next_h(double h, double err) {
    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
    if (err == 0) return h * fac_max;
    return h * std::clamp(safety * std::pow(err, -0.2), fac_min, fac_max);
  }
};

}  // namespace sphgeo
