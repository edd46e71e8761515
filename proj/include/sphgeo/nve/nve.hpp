#pragma once

// Normal variational equation about the equator of r = 1 + eps sin^n(theta) cos(n phi).
//
// Along the equator the normal variation xi = theta - pi/2 obeys
//   xi_ss + 2 G^theta_{theta phi} phi_s xi_s + d_theta G^theta_{phi phi} phi_s^2 xi = 0,
// with phi_s^2 = 1/g_phiphi. With z = eps cos(n phi) this becomes
//   xi'' + p(z) xi' + q(z) xi = 0,  and  xi'' = r(z) xi  after r = -q + p^2/4 + p'/2.

#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeo/algebra/partial_fractions.hpp"
#include "sphgeo/algebra/quad_ext.hpp"
#include "sphgeo/algebra/ratfunc.hpp"
#include "sphgeo/algebra/rational.hpp"
#include "sphgeo/nve/trig.hpp"

namespace sphgeo {

using RatFuncQE = RatFunc<QuadExt>;

class DerivationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Equatorial geometry in z, before forming the NVE.
struct EquatorData {
  RatFuncQ g_phiphi;          // g_phiphi on the equator
  RatFuncQ dgamma_phiphi;     // d_theta G^theta_{phi phi} on the equator
  TrigElem gamma_thetaphi;    // G^theta_{theta phi} on the equator (odd in S)
};

struct NVEData {
  int n = 0;
  Rational eps;
  QuadFieldPtr field;  // Q(sqrt(1 + eps^2 (n^2 - 1)))
  RatFuncQ p, q, r;
  std::vector<QuadExt> poles;  // {-1, eps, -eps, rho+, rho-} or {-1, eps, -eps, rho}
  std::vector<QuadExt> beta, delta;
  QuadExt beta_inf;
  bool regular_at_infinity = false;
};

inline EquatorData equator_data(int n, const Rational& eps) {
  if (n < 1) throw std::domain_error("equator_data: n >= 1 required");
  if (sgn(eps) <= 0 || eps >= 1) throw std::domain_error("equator_data: 0 < eps < 1 required");
  const TrigAlgebra alg(n, eps);
  constexpr int order = 4;

  // r = 1 + z cos^n(t); theta = pi/2 + t so sin(theta) = cos(t)
  const TSeries sin_theta = TSeries::cos_t(alg, order);
  TSeries sin_n = TSeries::constant(alg, order, alg.constant(1));
  for (int k = 0; k < n; ++k) sin_n = sin_n * sin_theta;
  const TSeries r = TSeries::constant(alg, order, alg.constant(1)) + TSeries::constant(alg, order, alg.z()) * sin_n;
  const TSeries r_t = r.dt(), r_p = r.dphi();

  const TSeries g_tt = r * r + r_t * r_t;
  const TSeries g_tp = r_t * r_p;
  const TSeries g_pp = r * r * sin_theta * sin_theta + r_p * r_p;
  const TSeries inv_det = (g_tt * g_pp - g_tp * g_tp).inverse();
  const TSeries up_tt = g_pp * inv_det;
  const TSeries up_tp = (g_tp * inv_det).scaled(-1);

  const Rational half(1, 2);
  const TSeries gamma_pp = (up_tt * (g_tp.dphi().scaled(2) - g_pp.dt()) + up_tp * g_pp.dphi()).scaled(half);
  const TSeries gamma_tp = (up_tt * g_tt.dphi() + up_tp * g_pp.dt()).scaled(half);

  if (!gamma_pp[0].a.is_zero() || !gamma_pp[0].b.is_zero()) {
    throw DerivationError("equator is not a geodesic: G^theta_{phi phi} != 0 on theta = pi/2");
  }
  if (!g_pp[0].is_even() || !gamma_pp[1].is_even()) {
    throw DerivationError("odd powers of sin(n phi) did not cancel in the metric data");
  }
  if (!gamma_tp[0].a.is_zero()) throw DerivationError("G^theta_{theta phi} has an even part on the equator");
  return {g_pp[0].a, gamma_pp[1].a, gamma_tp[0]};
}

/// p and q of xi'' + p xi' + q xi = 0.
inline std::pair<RatFuncQ, RatFuncQ> equatorial_pq(int n, const Rational& eps) {
  const TrigAlgebra alg(n, eps);
  const EquatorData eq = equator_data(n, eps);
  const RatFuncQ inv_g = eq.g_phiphi.inverse();  // phi_s^2
  // d/ds = phi_s w d/dz with w = dz/dphi; (phi_s w)^2 is even
  const TrigElem w = alg.dz_dphi();
  const TrigElem Q = alg.mul(alg.mul(w, w), {inv_g, RatFuncQ()});
  const TrigElem damping = alg.scale(alg.mul(alg.mul(eq.gamma_thetaphi, w), {inv_g, RatFuncQ()}), Rational(2));
  if (!Q.is_even() || !damping.is_even()) throw DerivationError("odd powers of sin(n phi) did not cancel in p");
  const RatFuncQ inv_Q = Q.a.inverse();
  const RatFuncQ p = (Q.a.derivative() * RatFuncQ(Rational(1, 2)) + damping.a) * inv_Q;
  const RatFuncQ q = eq.dgamma_phiphi * inv_g * inv_Q;
  return {p, q};
}

inline RatFuncQ standard_form(const RatFuncQ& p, const RatFuncQ& q) {
  return -q + p * p * RatFuncQ(Rational(1, 4)) + p.derivative() * RatFuncQ(Rational(1, 2));
}

template <class K>
RatFunc<K> standard_form(const RatFunc<K>& p, const RatFunc<K>& q) {
  return -q + p * p * RatFunc<K>(K(Rational(1, 4))) + p.derivative() * RatFunc<K>(K(Rational(1, 2)));
}

inline RatFuncQE lift(const RatFuncQ& f) {
  auto conv = [](const Poly<Rational>& p) {
    std::vector<QuadExt> c;
    for (const auto& x : p.coefficients()) c.emplace_back(x);
    return Poly<QuadExt>(std::move(c));
  };
  return RatFuncQE(conv(f.num()), conv(f.den()));
}

inline QuadFieldPtr nve_field(int n, const Rational& eps) {
  return make_quad_field(1 + eps * eps * (n * n - 1));
}

/// The finite singular points in the order -1, eps, -eps, rho+, rho- (n > 1)
/// or -1, eps, -eps, -(1 + eps^2)/2 (n = 1).
inline std::vector<QuadExt> nve_poles(int n, const Rational& eps) {
  std::vector<QuadExt> poles = {QuadExt(-1), QuadExt(eps), QuadExt(-eps)};
  if (n == 1) {
    poles.emplace_back(-(1 + eps * eps) / 2);
    return poles;
  }
  const QuadFieldPtr field = nve_field(n, eps);
  const Rational m = n * n - 1;
  poles.emplace_back(Rational(1) / m, Rational(n) / m, field);
  poles.emplace_back(Rational(1) / m, Rational(-n) / m, field);
  return poles;
}

struct FuchsianData {
  std::vector<QuadExt> beta, delta;
  QuadExt beta_inf;
  bool regular_at_infinity = false;
};

/// Partial-fraction data of r at the expected poles; an unexpected pole is
/// reported as a NonFuchsianError.
inline FuchsianData extract_fuchsian(const RatFuncQ& r, int n, const Rational& eps) {
  const auto pf = partial_fractions(lift(r), nve_poles(n, eps));
  return {pf.beta, pf.delta, pf.beta_inf, pf.regular_at_infinity};
}

inline NVEData equatorial_nve(int n, const Rational& eps) {
  if (sgn(eps) == 0) throw std::domain_error("equatorial_nve: eps = 0 is the sphere, whose NVE is xi_ss + xi = 0");
  NVEData d;
  d.n = n;
  d.eps = eps;
  d.field = nve_field(n, eps);
  std::tie(d.p, d.q) = equatorial_pq(n, eps);
  d.r = standard_form(d.p, d.q);
  d.poles = nve_poles(n, eps);
  const FuchsianData f = extract_fuchsian(d.r, n, eps);
  d.beta = f.beta;
  d.delta = f.delta;
  d.beta_inf = f.beta_inf;
  d.regular_at_infinity = f.regular_at_infinity;
  return d;
}

/// The tabulated closed forms for delta_j, in the pole order of nve_poles
/// (n > 1). The upper signs belong to +eps and rho+.
inline std::vector<QuadExt> tabulated_deltas(int n, const Rational& eps) {
  if (n < 2) throw std::domain_error("tabulated_deltas: n >= 2 required");
  const auto a = nve_poles(n, eps);
  const Rational nn(n), e2 = eps * eps;
  std::vector<QuadExt> out;
  out.emplace_back(Rational(2) / (nn * (e2 - 1)));
  for (int sg : {1, -1}) {
    const Rational num = 8 + nn * nn + sg * 2 * eps * (8 + 4 * nn + 3 * nn * nn) +
                         e2 * (8 + 8 * nn + 5 * nn * nn + 8 * nn * nn * nn + 4 * nn * nn * nn * nn);
    const Rational den = 16 * eps * (1 + sg * eps) * (1 + sg * eps) * nn * nn;
    out.emplace_back(sg * num / den);
  }
  const QuadExt root = QuadExt::root(nve_field(n, eps));
  for (int k : {3, 4}) {
    const int sg = k == 3 ? 1 : -1;
    const QuadExt& ak = a[static_cast<std::size_t>(k)];
    const QuadExt& other = a[static_cast<std::size_t>(k == 3 ? 4 : 3)];
    const QuadExt inner = QuadExt(e2 * (1 - 2 * nn * nn) - 1) + QuadExt(sg * nn * (1 + e2)) * root;
    const QuadExt first = QuadExt(Rational(-1) / (2 * nn * (1 - e2) * (1 - e2))) * inner;
    const QuadExt one(1);
    const QuadExt second = QuadExt(Rational(-1, 8)) * (QuadExt(4) / (ak - a[0]) + one / (ak - a[1]) +
                                                       one / (ak - a[2]) - one / (ak - other));
    out.push_back(first + second);
  }
  return out;
}

}  // namespace sphgeo
