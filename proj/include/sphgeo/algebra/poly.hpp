#pragma once

// Dense univariate polynomials over a field K, lowest degree first.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sphgeo/algebra/field.hpp"

namespace sphgeo {

template <class K>
class Poly {
 public:
  using value_type = K;

  Poly() = default;
  explicit Poly(std::vector<K> coefficients) : c_(std::move(coefficients)) { trim(); }
  Poly(std::initializer_list<K> coefficients) : c_(coefficients) { trim(); }

  static Poly constant(const K& value) { return Poly(std::vector<K>{value}); }
  static Poly monomial(const K& coefficient, std::size_t power) {
    std::vector<K> c(power + 1, field_traits<K>::zero());
    c[power] = coefficient;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(field_traits<K>::one(), 1); }
  /// The monic linear factor (z - root).
  static Poly linear(const K& root) { return Poly(std::vector<K>{-root, field_traits<K>::one()}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coefficients() const { return c_; }

  K coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : field_traits<K>::zero(); }
  K operator[](std::size_t i) const { return coefficient(i); }
  const K& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_traits<K>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_traits<K>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, field_traits<K>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sphgeo::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }

  Poly scaled(const K& s) const {
    if (sphgeo::is_zero(s)) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return Poly(std::move(r));
  }

  /// p(lambda * z).
  Poly scale_variable(const K& lambda) const {
    Poly r = *this;
    K power = field_traits<K>::one();
    for (auto& x : r.c_) {
      x *= power;
      power *= lambda;
    }
    r.trim();
    return r;
  }

  K evaluate(const K& x) const {
    K acc = field_traits<K>::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation in another ring, e.g. a double approximation.
  template <class X, class Convert>
  X evaluate_as(const X& x, Convert convert) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + convert(*it);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && sphgeo::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

/// Quotient and remainder with deg(remainder) < deg(divisor).
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<K>(), a};
  std::vector<K> rem = a.coefficients();
  const int db = b.degree();
  const auto& bc = b.coefficients();
  const K lead_inv = field_traits<K>::one() / b.leading();
  std::vector<K> quot(static_cast<std::size_t>(a.degree() - db + 1), field_traits<K>::zero());
  for (int k = a.degree() - db; k >= 0; --k) {
    const K q = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    quot[static_cast<std::size_t>(k)] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> make_monic(const Poly<K>& p) {
  if (p.is_zero()) return p;
  return p.scaled(field_traits<K>::one() / p.leading());
}

/// Monic greatest common divisor (zero only when both inputs are zero).
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Exact division; throws when `b` does not divide `a`.
template <class K>
Poly<K> exact_quotient(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

/// Number of sign variations in the coefficient sequence (Descartes' bound
/// on the number of positive real roots).
template <class K, class SignFn>
int descartes_bound(const Poly<K>& p, SignFn sign_of) {
  if (p.is_zero()) throw std::domain_error("descartes_bound: zero polynomial");
  int changes = 0, last = 0;
  for (const auto& c : p.coefficients()) {
    const int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int descartes_bound(const Poly<Rational>& p) {
  return descartes_bound(p, [](const Rational& q) { return sgn(q); });
}

inline int descartes_bound(const Poly<double>& p) {
  return descartes_bound(p, [](double x) { return (x > 0) - (x < 0); });
}

template <class K, class ToString>
std::string to_string(const Poly<K>& p, ToString str, const std::string& var = "z") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const K& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    out += "(" + str(c) + ")";
    if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

}  // namespace sphgeo
