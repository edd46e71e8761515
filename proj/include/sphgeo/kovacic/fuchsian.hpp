#pragma once

// Fuchsian input xi'' = r(z) xi with
//   r = sum_j beta_j/(z - a_j)^2 + delta_j/(z - a_j),  sum_j delta_j = 0.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeo/algebra/partial_fractions.hpp"
#include "sphgeo/algebra/quad_ext.hpp"
#include "sphgeo/algebra/ratfunc.hpp"
#include "sphgeo/algebra/rational.hpp"
#include "sphgeo/nve/nve.hpp"

namespace sphgeo {

struct FuchsianODE {
  RatFuncQE r;
  std::vector<QuadExt> poles;
  std::vector<QuadExt> beta, delta;
  QuadExt beta_inf;
  // sqrt(1 + 4 beta) at each pole, then at infinity
  std::vector<Rational> root;
  Rational root_inf;

  std::size_t size() const { return poles.size(); }

  /// tau+- = (1 +- sqrt(1 + 4 beta))/2 at pole j.
  std::pair<Rational, Rational> tau(std::size_t j) const {
    return {(1 + root[j]) / 2, (1 - root[j]) / 2};
  }
  std::pair<Rational, Rational> tau_inf() const { return {(1 + root_inf) / 2, (1 - root_inf) / 2}; }

  /// prod_j (z - a_j).
  Poly<QuadExt> pole_product() const {
    Poly<QuadExt> s = Poly<QuadExt>::constant(QuadExt(1));
    for (const auto& a : poles) s = s * Poly<QuadExt>::linear(a);
    return s;
  }

  /// Order of r at infinity, deg(den) - deg(num).
  int order_at_infinity() const {
    if (r.is_zero()) return 1 << 20;
    return r.den().degree() - r.num().degree();
  }

  /// Pole order of r at a_j (0, 1 or 2).
  int pole_order(std::size_t j) const {
    if (!is_zero(beta[j])) return 2;
    return is_zero(delta[j]) ? 0 : 1;
  }
};

namespace detail {

inline Rational exponent_root(const QuadExt& beta, const std::string& where) {
  if (!beta.is_rational()) throw std::domain_error("FuchsianODE: irrational beta at " + where);
  const Rational radicand = 1 + 4 * beta.a();
  auto root = rational_sqrt(radicand);
  if (!root) {
    throw std::domain_error("FuchsianODE: sqrt(1 + 4 beta) = sqrt(" + radicand.get_str() + ") at " + where +
                            " is irrational; only rational exponent differences are supported");
  }
  return *root;
}

}  // namespace detail

inline FuchsianODE make_fuchsian(RatFuncQE r, std::vector<QuadExt> poles) {
  const auto pf = partial_fractions(r, poles);
  if (!pf.regular_at_infinity) throw NonFuchsianError("make_fuchsian: sum of delta_j != 0, infinity is irregular");
  FuchsianODE f;
  f.r = std::move(r);
  f.poles = std::move(poles);
  f.beta = pf.beta;
  f.delta = pf.delta;
  f.beta_inf = pf.beta_inf;
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    f.root.push_back(detail::exponent_root(f.beta[j], "pole " + f.poles[j].to_string()));
  }
  f.root_inf = detail::exponent_root(f.beta_inf, "infinity");
  return f;
}

inline FuchsianODE make_fuchsian(const NVEData& nve) {
  if (!nve.regular_at_infinity) throw NonFuchsianError("make_fuchsian: NVE is irregular at infinity");
  FuchsianODE f;
  f.r = lift(nve.r);
  f.poles = nve.poles;
  f.beta = nve.beta;
  f.delta = nve.delta;
  f.beta_inf = nve.beta_inf;
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    f.root.push_back(detail::exponent_root(f.beta[j], "pole " + f.poles[j].to_string()));
  }
  f.root_inf = detail::exponent_root(f.beta_inf, "infinity");
  return f;
}

/// Kovacic's necessary conditions on pole orders, one flag per case.
struct NecessaryConditions {
  bool case1 = true, case2 = true, case3 = true;
};

inline NecessaryConditions necessary_conditions(const FuchsianODE& f) {
  NecessaryConditions c;
  const int inf = f.order_at_infinity();
  bool any_two = false;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const int o = f.pole_order(j);
    if (o == 2) any_two = true;
    if (o > 2) c.case3 = false;
    if (o > 1 && o % 2 == 1) c.case1 = false;
  }
  if (inf % 2 == 1 && inf <= 2) c.case1 = false;
  c.case2 = any_two;
  if (inf < 2) c.case3 = false;
  return c;
}

}  // namespace sphgeo
