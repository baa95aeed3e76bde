#pragma once

#include <complex>
#include <string>

#include "a2q/complex.hpp"

namespace a2q {

// a + b*omega in Q(omega), omega = exp(2 pi i / 3), so omega^2 = -1 - omega
// and conj(omega) = omega^2.
class QOmega {
 public:
  QOmega() = default;
  QOmega(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QOmega(int a) : a_(a) {}                  // NOLINT(google-explicit-constructor)
  QOmega(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QOmega omega() { return QOmega(0, 1); }
  // omega^k for any integer k.
  static QOmega omega_pow(long k) {
    switch (((k % 3) + 3) % 3) {
      case 0: return QOmega(1);
      case 1: return QOmega(0, 1);
      default: return QOmega(-1, -1);
    }
  }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QOmega conj() const { return QOmega(a_ - b_, -b_); }
  // |x|^2 = a^2 - ab + b^2, a rational.
  Rational norm2() const { return a_ * a_ - a_ * b_ + b_ * b_; }

  std::complex<double> to_complex() const {
    const double a = static_cast<double>(a_), b = static_cast<double>(b_);
    return {a - 0.5 * b, b * 0.8660254037844386};
  }

  QOmega operator-() const { return QOmega(-a_, -b_); }
  QOmega& operator+=(const QOmega& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QOmega& operator-=(const QOmega& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QOmega& operator*=(const QOmega& o) {
    Rational bd = b_ * o.b_;
    Rational a = a_ * o.a_ - bd;
    b_ = a_ * o.b_ + b_ * o.a_ - bd;
    a_ = std::move(a);
    return *this;
  }

  friend QOmega operator+(QOmega x, const QOmega& y) { return x += y; }
  friend QOmega operator-(QOmega x, const QOmega& y) { return x -= y; }
  friend QOmega operator*(QOmega x, const QOmega& y) { return x *= y; }
  friend bool operator==(const QOmega& x, const QOmega& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_{0};
  Rational b_{0};
};

inline QOmega conj(const QOmega& x) { return x.conj(); }
inline Rational conj(const Rational& x) { return x; }

inline std::string to_string(const QOmega& x) {
  return x.a().str() + (x.b() < 0 ? "-" : "+") + Rational(boost::multiprecision::abs(x.b())).str() + "*w";
}

}  // namespace a2q
