#pragma once

// Partial-fraction data of a Fuchsian rational function
//   f(z) = sum_j beta_j/(z-a_j)^2 + delta_j/(z-a_j)
// computed from residues at the supplied poles.

#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeo/algebra/ratfunc.hpp"

namespace sphgeo {

template <class K>
struct PartialFractions {
  std::vector<K> beta;
  std::vector<K> delta;
  K beta_inf;
  bool regular_at_infinity = true;  // sum of delta == 0
};

class NonFuchsianError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class K>
PartialFractions<K> partial_fractions(const RatFunc<K>& f, const std::vector<K>& poles) {
  PartialFractions<K> out;
  out.beta_inf = field_traits<K>::zero();
  const Poly<K>& num = f.num();
  Poly<K> rest = f.den();
  std::vector<int> order(poles.size(), 0);

  for (std::size_t j = 0; j < poles.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (poles[i] == poles[j]) throw std::invalid_argument("partial_fractions: repeated pole");
    }
    const Poly<K> lin = Poly<K>::linear(poles[j]);
    while (rest.degree() > 0) {
      auto [q, r] = divmod(rest, lin);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++order[j];
    }
    if (order[j] > 2) throw NonFuchsianError("partial_fractions: pole of order " + std::to_string(order[j]));
  }
  if (rest.degree() > 0) throw NonFuchsianError("partial_fractions: denominator has a pole outside the list");
  if (!num.is_zero() && num.degree() >= f.den().degree()) {
    throw NonFuchsianError("partial_fractions: polynomial part present, infinity is irregular");
  }

  K delta_sum = field_traits<K>::zero();
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const K& a = poles[j];
    K beta = field_traits<K>::zero(), delta = field_traits<K>::zero();
    if (order[j] > 0) {
      Poly<K> cofactor = f.den();
      for (int k = 0; k < order[j]; ++k) cofactor = exact_quotient(cofactor, Poly<K>::linear(a));
      const K q0 = cofactor.evaluate(a);
      const K n0 = num.evaluate(a);
      if (order[j] == 1) {
        delta = n0 / q0;
      } else {
        beta = n0 / q0;
        // derivative of num/cofactor at a
        delta = (num.derivative().evaluate(a) * q0 - n0 * cofactor.derivative().evaluate(a)) / (q0 * q0);
      }
    }
    out.beta.push_back(beta);
    out.delta.push_back(delta);
    out.beta_inf += beta + delta * a;
    delta_sum += delta;
  }
  out.regular_at_infinity = is_zero(delta_sum);
  return out;
}

/// sum_j beta_j/(z-a_j)^2 + delta_j/(z-a_j).
template <class K>
RatFunc<K> reconstruct(const std::vector<K>& poles, const std::vector<K>& beta, const std::vector<K>& delta) {
  RatFunc<K> out;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const Poly<K> lin = Poly<K>::linear(poles[j]);
    if (!is_zero(beta[j])) out += RatFunc<K>(Poly<K>::constant(beta[j]), lin * lin);
    if (!is_zero(delta[j])) out += RatFunc<K>(Poly<K>::constant(delta[j]), lin);
  }
  return out;
}

}  // namespace sphgeo
