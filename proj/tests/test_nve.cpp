#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sphgeo/nve.hpp"

using namespace sphgeo;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<Rational> kEps = {make_rational(1, 10), make_rational(1, 4), make_rational(1, 2),
                                    make_rational(2, 3)};

RatFuncQ z() { return RatFuncQ::x(); }
RatFuncQ c(const Rational& x) { return RatFuncQ(x); }

// Hand-derived closed forms on the equator, G = g_phiphi:
//   p = z/(z^2 - eps^2) + (n^2 z - 1 - z)/G + 2/(1 + z)
//   q = Gp/(n^2 (eps^2 - z^2)),
//   Gp = (n^3 z^2 + n z (1+z) + (1+z)^2)/(1+z)^2 - n^3 z (eps^2 - z^2)(n^2 z - 1 - z)/((1+z)^2 G)
std::pair<RatFuncQ, RatFuncQ> hand_pq(int n, const Rational& eps) {
  const Rational nn(n);
  const RatFuncQ e2 = c(eps * eps), one = c(1), zp1 = z() + one;
  const RatFuncQ G = c(nn * nn) * (e2 - z() * z()) + zp1 * zp1;
  const RatFuncQ p = z() / (z() * z() - e2) + (c(nn * nn) * z() - one - z()) / G + c(2) / zp1;
  const RatFuncQ gp = (c(nn * nn * nn) * z() * z() + c(nn) * z() * zp1 + zp1 * zp1) / (zp1 * zp1) -
                      c(nn * nn * nn) * z() * (e2 - z() * z()) * (c(nn * nn) * z() - one - z()) / (zp1 * zp1 * G);
  return {p, gp / (c(nn * nn) * (e2 - z() * z()))};
}

}  // namespace

TEST(NVE, MatchesHandDerivedCoefficients) {
  for (int n : {1, 2, 3, 5, 12}) {
    for (const auto& e : kEps) {
      const auto [p, q] = equatorial_pq(n, e);
      const auto [hp, hq] = hand_pq(n, e);
      EXPECT_EQ(p, hp) << "n=" << n << " eps=" << e;
      EXPECT_EQ(q, hq) << "n=" << n << " eps=" << e;
    }
  }
}

TEST(NVE, SphereBranch) {
  EXPECT_THROW(equatorial_nve(3, Rational(0)), std::domain_error);
  const auto s = PolarSurface::sphere();
  for (double phi : {0.0, 0.7, 2.0}) {
    const auto k = nve_coefficients_s(s, phi, 1.0);
    EXPECT_NEAR(k.a, -1.0, 1e-9);
    EXPECT_NEAR(k.b, 0.0, 1e-15);
  }
}

TEST(NVE, StandardForm) {
  EXPECT_EQ(standard_form(RatFuncQ(), c(-1)), c(1));
  const RatFuncQ inv_z = z().inverse();
  EXPECT_EQ(standard_form(inv_z, RatFuncQ()), c(Rational(-1, 4)) * inv_z * inv_z);
}

TEST(NVE, PoleSets) {
  for (int n = 2; n <= 12; ++n) {
    for (const auto& e : kEps) {
      const NVEData d = equatorial_nve(n, e);
      ASSERT_EQ(d.poles.size(), 5u);
      EXPECT_EQ(d.poles[0], QuadExt(-1));
      EXPECT_EQ(d.poles[1], QuadExt(e));
      EXPECT_EQ(d.poles[2], QuadExt(-e));
      // rho+- are the roots of (1 - n^2) z^2 + 2 z + 1 + n^2 eps^2
      for (int k : {3, 4}) {
        const QuadExt& a = d.poles[static_cast<std::size_t>(k)];
        EXPECT_TRUE(is_zero(QuadExt(1 - n * n) * a * a + QuadExt(2) * a + QuadExt(1 + n * n * e * e)));
      }
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < i; ++j) EXPECT_NE(d.poles[i], d.poles[j]);
      }
      // every root of the denominator of r is one of the poles, of order <= 2
      Poly<QuadExt> den = lift(d.r).den();
      for (const auto& a : d.poles) {
        int order = 0;
        while (den.degree() > 0 && is_zero(den.evaluate(a))) den = exact_quotient(den, Poly<QuadExt>::linear(a)), ++order;
        EXPECT_GE(order, 1);
        EXPECT_LE(order, 2);
      }
      EXPECT_EQ(den.degree(), 0);
    }
  }
  const NVEData d1 = equatorial_nve(1, make_rational(1, 3));
  ASSERT_EQ(d1.poles.size(), 4u);
  EXPECT_EQ(d1.poles[3], QuadExt(make_rational(-5, 9)));
}

TEST(NVE, FuchsianExponentsForAllOrders) {
  const std::vector<Rational> beta = {0, make_rational(-3, 16), make_rational(-3, 16), make_rational(5, 16),
                                      make_rational(5, 16)};
  const std::vector<Rational> roots = {1, make_rational(1, 2), make_rational(1, 2), make_rational(3, 2),
                                       make_rational(3, 2)};
  for (int n = 2; n <= 12; ++n) {
    for (const auto& e : kEps) {
      const NVEData d = equatorial_nve(n, e);
      for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_EQ(d.beta[j], QuadExt(beta[j])) << "n=" << n << " j=" << j;
        EXPECT_EQ(rational_sqrt(1 + 4 * beta[j]).value(), roots[j]);
      }
      EXPECT_EQ(d.beta_inf, QuadExt(Rational(n + 1) / (n * n)));
      EXPECT_EQ(rational_sqrt(1 + 4 * Rational(n + 1) / (n * n)).value(), Rational(n + 2) / n);
      EXPECT_TRUE(d.regular_at_infinity);
      QuadExt sum;
      QuadExt binf;
      for (std::size_t j = 0; j < 5; ++j) {
        sum += d.delta[j];
        binf += d.beta[j] + d.delta[j] * d.poles[j];
      }
      EXPECT_TRUE(is_zero(sum));
      EXPECT_EQ(binf, d.beta_inf);
      EXPECT_EQ(d.delta[0], QuadExt(Rational(2) / (n * (e * e - 1))));
    }
  }
}

TEST(NVE, LimaconOrderOne) {
  for (const auto& e : kEps) {
    const NVEData d = equatorial_nve(1, e);
    EXPECT_EQ(d.beta_inf, QuadExt(make_rational(45, 16)));
    const std::vector<Rational> beta = {0, make_rational(-3, 16), make_rational(-3, 16), make_rational(5, 16)};
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(d.beta[j], QuadExt(beta[j]));
    EXPECT_TRUE(d.regular_at_infinity);
  }
}

TEST(NVE, DeltaDependsOnEpsBetaDoesNot) {
  for (int n : {2, 3, 6}) {
    const NVEData a = equatorial_nve(n, kEps[0]), b = equatorial_nve(n, kEps[1]), c3 = equatorial_nve(n, kEps[2]);
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(a.beta[j].to_double(), b.beta[j].to_double());
      EXPECT_EQ(b.beta[j].to_double(), c3.beta[j].to_double());
      EXPECT_GT(std::abs(a.delta[j].to_double() - b.delta[j].to_double()), 1e-9);
      EXPECT_GT(std::abs(b.delta[j].to_double() - c3.delta[j].to_double()), 1e-9);
    }
  }
}

TEST(NVE, TabulatedDeltasAgreeExactly) {
  // upper signs pair with +eps and rho+
  for (int n = 2; n <= 12; ++n) {
    for (const auto& e : kEps) {
      const NVEData d = equatorial_nve(n, e);
      const auto tab = tabulated_deltas(n, e);
      for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(d.delta[j], tab[j]) << "n=" << n << " eps=" << e << " j=" << j;
    }
  }
  const NVEData d = equatorial_nve(2, make_rational(1, 2));
  EXPECT_EQ(d.delta[0], QuadExt(make_rational(-4, 3)));
  EXPECT_EQ(d.delta[1], QuadExt(make_rational(83, 72)));
  EXPECT_EQ(d.delta[2], QuadExt(make_rational(-27, 8)));
  EXPECT_NEAR(d.delta[3].to_double(), -0.650119010649550, 1e-13);
  EXPECT_NEAR(d.delta[4].to_double(), 4.20567456620511, 1e-13);
}

TEST(NVE, UnexpectedPoleIsReported) {
  const RatFuncQ r = c(1) / ((z() - c(make_rational(1, 7))) * (z() - c(make_rational(1, 7))));
  EXPECT_THROW(extract_fuchsian(r, 2, make_rational(1, 2)), NonFuchsianError);
}

TEST(NVE, FloatingPointSurfaceAgreesWithExactCoefficients) {
  // xi_ss = a xi + b xi_s with a = -q Q, where Q = (phi_s dz/dphi)^2
  for (int n : {2, 3, 4}) {
    const Rational e = make_rational(1, 4);
    const auto [p, q] = equatorial_pq(n, e);
    const PolarSurface s = PolarSurface::sectoral(n, e.get_d());
    for (double phi : {0.1, 0.5, 1.3, 2.9}) {
      const double zz = e.get_d() * std::cos(n * phi);
      const double G = metric_at(s, pi / 2, phi).g_pp;
      const double phi_dot = 1 / std::sqrt(G);
      const double w = -n * e.get_d() * std::sin(n * phi);
      const double Q = phi_dot * phi_dot * w * w;
      const auto k = nve_coefficients_s(s, phi, phi_dot);
      EXPECT_NEAR(k.a, -q.evaluate(Rational(zz)).get_d() * Q, 1e-9) << "n=" << n << " phi=" << phi;
      // p = (Q'/2 - b phi_s w)/Q
      const RatFuncQ pp = hand_pq(n, e).first;
      const double h = 1e-6;
      auto Qz = [&](double x) {
        const double g = n * n * (e.get_d() * e.get_d() - x * x) + (1 + x) * (1 + x);
        return n * n * (e.get_d() * e.get_d() - x * x) / g;
      };
      const double dQ = (Qz(zz + h) - Qz(zz - h)) / (2 * h);
      EXPECT_NEAR(k.b, (dQ / 2 - pp.evaluate(Rational(zz)).get_d() * Q) / (phi_dot * w), 1e-6);
    }
  }
}

TEST(NVE, FrobeniusBasisSolvesTheEquation) {
  const Rational e = make_rational(1, 5);
  const auto [p, q] = equatorial_pq(3, e);
  const FrobeniusPair fp(p, q, e, {0.0, 0.5});
  for (int b = 0; b < 2; ++b) {
    const double z0 = 0.15, h = 1e-6;
    const auto f = fp.eval(b, z0), fp1 = fp.eval(b, z0 + h), fm1 = fp.eval(b, z0 - h);
    const double d2 = (fp1[1] - fm1[1]) / (2 * h);
    const double pz = p.evaluate(Rational(z0)).get_d(), qz = q.evaluate(Rational(z0)).get_d();
    EXPECT_NEAR(d2 + pz * f[1] + qz * f[0], 0.0, 1e-6) << "branch " << b;
  }
  EXPECT_THROW(FrobeniusPair(p, q, e, {0.0, 0.25}), std::domain_error);
}

TEST(NVE, DualRepresentationOverOneCircuit) {
  for (int n : {2, 3}) {
    for (auto [x0, v0] : {std::pair{1.0, 0.0}, {0.0, 1.0}}) {
      const auto rep = nve_transport_check(n, make_rational(1, 5), x0, v0);
      EXPECT_EQ(rep.samples.size(), static_cast<std::size_t>(2 * n * 16));
      EXPECT_LE(rep.relative_error(), 1e-6) << "n=" << n;
      EXPECT_GT(rep.circuit_length, 2 * pi);
    }
  }
}

TEST(NVE, JsonDump) {
  const NVEData d = equatorial_nve(2, make_rational(1, 2));
  const auto j = nve_json(d);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["eps"], "1/2");
  EXPECT_EQ(j["poles"].size(), 5u);
  EXPECT_EQ(j["beta"][3]["a"], "5/16");
  EXPECT_EQ(j["beta_inf"]["a"], "3/4");
  EXPECT_EQ(j["delta"][1]["a"], "83/72");
  // integer form reconstructs r
  std::vector<Rational> num, den;
  for (const auto& x : j["r"]["num"]) num.emplace_back(Integer(x.get<std::string>()));
  for (const auto& x : j["r"]["den"]) den.emplace_back(Integer(x.get<std::string>()));
  EXPECT_EQ(RatFuncQ(Poly<Rational>(num), Poly<Rational>(den)), d.r);
}
