#pragma once

// Exact arithmetic for functions along the equator of the sectoral surface.
//
// With z = eps cos(n phi) and S = sin(n phi), every quantity is a + b S with
// a, b rational functions of z, subject to S^2 = 1 - z^2/eps^2. Dependence
// on theta = pi/2 + t is carried by truncated power series in t.

#include <stdexcept>
#include <utility>
#include <vector>

#include "sphgeo/algebra/ratfunc.hpp"
#include "sphgeo/algebra/rational.hpp"

namespace sphgeo {

using RatFuncQ = RatFunc<Rational>;

struct TrigElem {
  RatFuncQ a;  // even part
  RatFuncQ b;  // coefficient of S

  bool is_even() const { return b.is_zero(); }
};

class TrigAlgebra {
 public:
  TrigAlgebra(int n, Rational eps) : n_(n), eps_(std::move(eps)) {
    if (sgn(eps_) == 0) throw std::domain_error("TrigAlgebra: eps must be nonzero");
    const RatFuncQ z = RatFuncQ::x();
    s2_ = RatFuncQ(1) - z * z * RatFuncQ(Rational(1) / (eps_ * eps_));
  }

  int n() const { return n_; }
  const Rational& eps() const { return eps_; }
  /// S^2 as a function of z.
  const RatFuncQ& sin2() const { return s2_; }

  TrigElem constant(const Rational& c) const { return {RatFuncQ(c), RatFuncQ()}; }
  TrigElem z() const { return {RatFuncQ::x(), RatFuncQ()}; }
  TrigElem sin_n_phi() const { return {RatFuncQ(), RatFuncQ(1)}; }
  /// dz/dphi = -n eps S.
  TrigElem dz_dphi() const { return {RatFuncQ(), RatFuncQ(-Rational(n_) * eps_)}; }

  TrigElem add(const TrigElem& x, const TrigElem& y) const { return {x.a + y.a, x.b + y.b}; }
  TrigElem sub(const TrigElem& x, const TrigElem& y) const { return {x.a - y.a, x.b - y.b}; }
  TrigElem neg(const TrigElem& x) const { return {-x.a, -x.b}; }
  TrigElem scale(const TrigElem& x, const Rational& c) const { return {x.a * RatFuncQ(c), x.b * RatFuncQ(c)}; }

  TrigElem mul(const TrigElem& x, const TrigElem& y) const {
    return {x.a * y.a + x.b * y.b * s2_, x.a * y.b + x.b * y.a};
  }

  TrigElem inverse(const TrigElem& x) const {
    // (a + bS)^-1 = (a - bS)/(a^2 - b^2 S^2)
    const RatFuncQ norm = x.a * x.a - x.b * x.b * s2_;
    if (norm.is_zero()) throw std::domain_error("TrigAlgebra: element is not invertible");
    const RatFuncQ inv = norm.inverse();
    return {x.a * inv, -x.b * inv};
  }

  /// d/dphi, using dz/dphi = -n eps S and dS/dphi = n z/eps.
  TrigElem dphi(const TrigElem& x) const {
    const RatFuncQ ne = RatFuncQ(Rational(n_) * eps_);
    const RatFuncQ nz_over_eps = RatFuncQ::x() * RatFuncQ(Rational(n_) / eps_);
    return {-ne * x.b.derivative() * s2_ + nz_over_eps * x.b, -ne * x.a.derivative()};
  }

 private:
  int n_;
  Rational eps_;
  RatFuncQ s2_;
};

/// Power series in t = theta - pi/2 truncated after t^order.
class TSeries {
 public:
  TSeries(const TrigAlgebra& alg, int order) : alg_(&alg), c_(static_cast<std::size_t>(order) + 1, alg.constant(0)) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const TrigElem& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  TrigElem& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  static TSeries constant(const TrigAlgebra& alg, int order, const TrigElem& x) {
    TSeries s(alg, order);
    s[0] = x;
    return s;
  }

  /// cos(t) = sin(theta).
  static TSeries cos_t(const TrigAlgebra& alg, int order) {
    TSeries s(alg, order);
    Rational term = 1;
    for (int k = 0; k <= order; k += 2) {
      s[k] = alg.constant(term);
      term = -term / ((k + 1) * (k + 2));
    }
    return s;
  }

  friend TSeries operator+(const TSeries& x, const TSeries& y) {
    TSeries r(*x.alg_, x.order());
    for (int k = 0; k <= x.order(); ++k) r[k] = x.alg_->add(x[k], y[k]);
    return r;
  }
  friend TSeries operator-(const TSeries& x, const TSeries& y) {
    TSeries r(*x.alg_, x.order());
    for (int k = 0; k <= x.order(); ++k) r[k] = x.alg_->sub(x[k], y[k]);
    return r;
  }
  friend TSeries operator*(const TSeries& x, const TSeries& y) {
    TSeries r(*x.alg_, x.order());
    for (int i = 0; i <= x.order(); ++i) {
      for (int j = 0; i + j <= x.order(); ++j) r[i + j] = x.alg_->add(r[i + j], x.alg_->mul(x[i], y[j]));
    }
    return r;
  }

  TSeries scaled(const Rational& c) const {
    TSeries r(*alg_, order());
    for (int k = 0; k <= order(); ++k) r[k] = alg_->scale(c_[static_cast<std::size_t>(k)], c);
    return r;
  }

  TSeries inverse() const {
    TSeries r(*alg_, order());
    const TrigElem inv0 = alg_->inverse(c_[0]);
    r[0] = inv0;
    for (int k = 1; k <= order(); ++k) {
      TrigElem acc = alg_->constant(0);
      for (int j = 1; j <= k; ++j) acc = alg_->add(acc, alg_->mul(c_[static_cast<std::size_t>(j)], r[k - j]));
      r[k] = alg_->neg(alg_->mul(inv0, acc));
    }
    return r;
  }

  /// d/dt; the top coefficient of the result is not determined and is zero.
  TSeries dt() const {
    TSeries r(*alg_, order());
    for (int k = 0; k < order(); ++k) r[k] = alg_->scale(c_[static_cast<std::size_t>(k) + 1], Rational(k + 1));
    return r;
  }

  TSeries dphi() const {
    TSeries r(*alg_, order());
    for (int k = 0; k <= order(); ++k) r[k] = alg_->dphi(c_[static_cast<std::size_t>(k)]);
    return r;
  }

 private:
  const TrigAlgebra* alg_;
  std::vector<TrigElem> c_;
};

}  // namespace sphgeo
