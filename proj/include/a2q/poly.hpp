#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace a2q {

bool is_prime(std::uint64_t n);

// Prime field F_q. Elements are residues in [0, q).
class FieldCfg {
 public:
  // Largest supported modulus; keeps residue products inside 64 bits.
  static constexpr std::uint32_t max_q = 65521;

  explicit FieldCfg(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }

  std::uint32_t reduce(std::int64_t x) const noexcept;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t neg(std::uint32_t a) const noexcept;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  // Throws DegenerateInput on zero.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const FieldCfg&, const FieldCfg&) = default;

 private:
  std::uint32_t q_;
};

// Polynomial over F_q in the variable t. Coefficients are stored
// lowest degree first and trimmed so the leading coefficient is nonzero;
// the zero polynomial has no coefficients and degree -1.
class PolyFq {
 public:
  explicit PolyFq(FieldCfg field) : field_(field) {}
  PolyFq(FieldCfg field, std::vector<std::uint32_t> coeffs);

  static PolyFq constant(FieldCfg field, std::int64_t c);
  static PolyFq monomial(FieldCfg field, std::uint32_t c, int degree);
  static PolyFq t(FieldCfg field) { return monomial(field, 1, 1); }

  const FieldCfg& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  std::uint32_t coeff(int i) const noexcept;
  std::uint32_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  std::span<const std::uint32_t> coefficients() const noexcept { return coeffs_; }

  PolyFq monic() const;
  PolyFq scaled(std::uint32_t c) const;
  // Multiplication by t^k, k >= 0.
  PolyFq shifted(int k) const;
  PolyFq pow(unsigned e) const;
  // Drops every coefficient of degree < k.
  PolyFq high_part(int k) const;
  // Keeps only coefficients of degree < k.
  PolyFq low_part(int k) const;

  PolyFq operator-() const;
  PolyFq& operator+=(const PolyFq& rhs);
  PolyFq& operator-=(const PolyFq& rhs);
  PolyFq& operator*=(const PolyFq& rhs);

  friend PolyFq operator+(PolyFq a, const PolyFq& b) { return a += b; }
  friend PolyFq operator-(PolyFq a, const PolyFq& b) { return a -= b; }
  friend PolyFq operator*(PolyFq a, const PolyFq& b) { return a *= b; }
  friend bool operator==(const PolyFq&, const PolyFq&) = default;

 private:
  void trim();
  void check_field(const PolyFq& other) const;

  FieldCfg field_;
  std::vector<std::uint32_t> coeffs_;
};

struct PolyDivision {
  PolyFq quotient;
  PolyFq remainder;
};

// Euclidean division; throws DegenerateInput when b is zero.
PolyDivision divmod(const PolyFq& a, const PolyFq& b);

// Monic gcd (zero only when both inputs are zero).
PolyFq gcd(PolyFq a, PolyFq b);

// Monic b with b^k = a for monic nonzero a, found by matching coefficients
// from the top degree down. When the characteristic divides k the k-th
// power map is additive and the root is read off the exponents divisible
// by k. Returns nullopt when no root exists.
std::optional<PolyFq> kth_root(const PolyFq& a, unsigned k);
std::optional<PolyFq> cube_root(const PolyFq& a);
std::optional<PolyFq> square_root(const PolyFq& a);

}  // namespace a2q
