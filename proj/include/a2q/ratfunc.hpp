#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "a2q/poly.hpp"

namespace a2q {

// Integer valuation extended by +infinity (the valuation of zero).
class Valuation {
 public:
  static Valuation infinity() noexcept { return Valuation(); }
  static Valuation of(std::int64_t v) noexcept { return Valuation(v); }

  bool is_infinite() const noexcept { return infinite_; }
  // Throws DegenerateInput for the infinite valuation.
  std::int64_t value() const;

  friend Valuation operator+(Valuation a, Valuation b) noexcept {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  Valuation() noexcept : infinite_(true), value_(0) {}
  explicit Valuation(std::int64_t v) noexcept : infinite_(false), value_(v) {}

  bool infinite_;
  std::int64_t value_;
};

// Element of F_q(t) in lowest terms with a monic denominator, so two
// equal rational functions have identical representations.
class RatFunc {
 public:
  explicit RatFunc(FieldCfg field);
  RatFunc(PolyFq numerator);  // NOLINT(google-explicit-constructor)
  // Throws DegenerateInput when the denominator is zero.
  RatFunc(PolyFq numerator, PolyFq denominator);

  static RatFunc constant(FieldCfg field, std::int64_t c);
  // t^k for any integer k.
  static RatFunc t_power(FieldCfg field, int k);

  const FieldCfg& field() const noexcept { return num_.field(); }
  const PolyFq& numerator() const noexcept { return num_; }
  const PolyFq& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& rhs);
  RatFunc& operator-=(const RatFunc& rhs);
  RatFunc& operator*=(const RatFunc& rhs);
  RatFunc& operator/=(const RatFunc& rhs);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  void normalize();

  PolyFq num_;
  PolyFq den_;
};

// nu(g/h) = deg h - deg g, so that |f| = q^{-nu(f)}; nu(0) is +infinity.
Valuation valuation(const RatFunc& f);

// Quotient of the numerator by the denominator.
PolyFq polynomial_part(const RatFunc& alpha);

// alpha -> 1/(alpha - [alpha]). Throws DegenerateInput for polynomials.
RatFunc t_map(const RatFunc& alpha);

std::string to_string(const PolyFq& p);
std::string to_string(const RatFunc& f);

// Text syntax: sums of terms "c*t^e", "c*t", "t^e", "t", "c" with decimal
// coefficients; a rational function is "num" or "(num)/(den)". A leading
// '-' negates a term. Coefficients >= q are rejected.
PolyFq parse_poly(FieldCfg field, std::string_view text);
RatFunc parse_ratfunc(FieldCfg field, std::string_view text);

}  // namespace a2q
