#pragma once

// Rational functions num/den over a field K, kept reduced with a monic
// denominator.

#include <stdexcept>
#include <string>
#include <utility>

#include "sphgeo/algebra/poly.hpp"

namespace sphgeo {

template <class K>
class RatFunc {
 public:
  using poly_type = Poly<K>;

  RatFunc() : num_(), den_(Poly<K>::constant(field_traits<K>::one())) {}
  RatFunc(const K& c) : num_(Poly<K>::constant(c)), den_(Poly<K>::constant(field_traits<K>::one())) {}  // NOLINT
  RatFunc(long c) : RatFunc(K(c)) {}  // NOLINT
  RatFunc(Poly<K> num) : num_(std::move(num)), den_(Poly<K>::constant(field_traits<K>::one())) {}  // NOLINT
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc x() { return RatFunc(Poly<K>::x()); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator-() const { return RatFunc(-num_, den_, raw_tag{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    // cross-cancel first to keep intermediate degrees small
    const Poly<K> g1 = gcd(a.num_, b.den_);
    const Poly<K> g2 = gcd(b.num_, a.den_);
    Poly<K> n = exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2);
    Poly<K> d = exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1);
    return RatFunc(std::move(n), std::move(d), monic_tag{});
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(den_, num_);
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  K evaluate(const K& x) const {
    const K d = den_.evaluate(x);
    if (sphgeo::is_zero(d)) throw std::domain_error("RatFunc: evaluation at a pole");
    return num_.evaluate(x) / d;
  }

  /// f(lambda * z).
  RatFunc scale_variable(const K& lambda) const {
    return RatFunc(num_.scale_variable(lambda), den_.scale_variable(lambda));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct raw_tag {};
  struct monic_tag {};
  RatFunc(Poly<K> num, Poly<K> den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}
  // already coprime, only the leading coefficient needs fixing
  RatFunc(Poly<K> num, Poly<K> den, monic_tag) : num_(std::move(num)), den_(std::move(den)) { normalize_lead(); }

  void reduce() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(field_traits<K>::one());
      return;
    }
    if (den_.degree() > 0) {
      const Poly<K> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_quotient(num_, g);
        den_ = exact_quotient(den_, g);
      }
    }
    normalize_lead();
  }

  void normalize_lead() {
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(field_traits<K>::one());
      return;
    }
    const K lead = den_.leading();
    if (lead == field_traits<K>::one()) return;
    const K inv = field_traits<K>::one() / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }

  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
struct field_traits<RatFunc<K>> {
  static RatFunc<K> zero() { return RatFunc<K>(); }
  static RatFunc<K> one() { return RatFunc<K>(field_traits<K>::one()); }
  static bool is_zero(const RatFunc<K>& x) { return x.is_zero(); }
};

template <class K, class ToString>
std::string to_string(const RatFunc<K>& f, ToString str, const std::string& var = "z") {
  if (f.is_polynomial()) return to_string(f.num(), str, var);
  return "(" + to_string(f.num(), str, var) + ")/(" + to_string(f.den(), str, var) + ")";
}

}  // namespace sphgeo
