#pragma once

// Elements a + b*sqrt(D) of a real quadratic field Q(sqrt(D)).
//
// Elements with b == 0 are plain rationals and mix freely with any field.
// Two irrational operands must share the same discriminant. When D is the
// square of a rational the element is folded to a rational at construction.

#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sphgeo/algebra/field.hpp"
#include "sphgeo/algebra/rational.hpp"

namespace sphgeo {

class QuadField {
 public:
  explicit QuadField(Rational discriminant) : d_(std::move(discriminant)) {
    if (sgn(d_) < 0) throw std::domain_error("QuadField: negative discriminant");
    if (auto root = rational_sqrt(d_)) root_ = *root;
  }

  const Rational& discriminant() const { return d_; }
  bool is_square() const { return root_.has_value(); }
  const Rational& rational_root() const { return *root_; }
  double sqrt_value() const { return std::sqrt(d_.get_d()); }

 private:
  Rational d_;
  std::optional<Rational> root_;
};

using QuadFieldPtr = std::shared_ptr<const QuadField>;

inline QuadFieldPtr make_quad_field(const Rational& discriminant) {
  return std::make_shared<const QuadField>(discriminant);
}

class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  QuadExt(Rational a, Rational b, QuadFieldPtr field) : a_(std::move(a)), b_(std::move(b)), field_(std::move(field)) {
    normalize();
  }

  /// sqrt(D) as an element of the field.
  static QuadExt root(const QuadFieldPtr& field) { return QuadExt(Rational(0), Rational(1), field); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const QuadFieldPtr& field() const { return field_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  double to_double() const {
    if (is_rational()) return a_.get_d();
    return a_.get_d() + b_.get_d() * field_->sqrt_value();
  }

  /// Sign of the real number a + b sqrt(D).
  int sign() const {
    if (is_rational()) return sgn(a_);
    const int sa = sgn(a_), sb = sgn(b_);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 D
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * field_->discriminant();
    return cmp(lhs, rhs) > 0 ? sa : sb;
  }

  QuadExt operator-() const {
    QuadExt r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  QuadExt& operator+=(const QuadExt& o) {
    field_ = common_field(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
  }
  QuadExt& operator-=(const QuadExt& o) {
    field_ = common_field(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
  }
  QuadExt& operator*=(const QuadExt& o) {
    if (o.is_rational()) {
      a_ *= o.a_;
      b_ *= o.a_;
      normalize();
      return *this;
    }
    if (is_rational()) {
      Rational a = a_;
      a_ = a * o.a_;
      b_ = a * o.b_;
      field_ = o.field_;
      normalize();
      return *this;
    }
    field_ = common_field(*this, o);
    const Rational na = a_ * o.a_ + b_ * o.b_ * field_->discriminant();
    const Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    normalize();
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

  QuadExt inverse() const {
    if (is_zero()) throw std::domain_error("QuadExt: division by zero");
    if (is_rational()) return QuadExt(Rational(1) / a_);
    const Rational norm = a_ * a_ - b_ * b_ * field_->discriminant();
    return QuadExt(a_ / norm, -b_ / norm, field_);
  }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
    common_field(x, y);
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  std::string to_string() const {
    if (is_rational()) return a_.get_str();
    return "(" + a_.get_str() + ")+(" + b_.get_str() + ")*sqrt(" + field_->discriminant().get_str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

  static QuadFieldPtr common_field(const QuadExt& x, const QuadExt& y) {
    if (y.is_rational() || !y.field_) return x.field_ ? x.field_ : y.field_;
    if (x.is_rational() || !x.field_) return y.field_;
    if (x.field_ == y.field_) return x.field_;
    if (x.field_->discriminant() != y.field_->discriminant()) {
      throw std::domain_error("QuadExt: mixed discriminants " + x.field_->discriminant().get_str() + " and " +
                              y.field_->discriminant().get_str());
    }
    return x.field_;
  }

 private:
  void normalize() {
    if (field_ && field_->is_square() && sgn(b_) != 0) {
      a_ += b_ * field_->rational_root();
      b_ = 0;
    }
  }

  Rational a_{0};
  Rational b_{0};
  QuadFieldPtr field_;
};

template <>
struct field_traits<QuadExt> {
  static QuadExt zero() { return QuadExt(); }
  static QuadExt one() { return QuadExt(1); }
  static bool is_zero(const QuadExt& x) { return x.is_zero(); }
};

inline double to_double(const QuadExt& x) { return x.to_double(); }
inline std::string to_string(const QuadExt& x) { return x.to_string(); }

}  // namespace sphgeo
