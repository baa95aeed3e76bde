#include "a2q/poly.hpp"

#include <algorithm>
#include <string>

#include "a2q/errors.hpp"

namespace a2q {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCfg::FieldCfg(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw DomainError("q must be a prime (got " + std::to_string(q) + ")");
  }
  if (q > max_q) {
    throw DomainError("q must not exceed " + std::to_string(max_q));
  }
}

std::uint32_t FieldCfg::reduce(std::int64_t x) const noexcept {
  auto r = x % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t FieldCfg::add(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint32_t s = a + b;
  return s >= q_ ? s - q_ : s;
}

std::uint32_t FieldCfg::sub(std::uint32_t a, std::uint32_t b) const noexcept {
  return a >= b ? a - b : a + q_ - b;
}

std::uint32_t FieldCfg::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
}

std::uint32_t FieldCfg::neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }

std::uint32_t FieldCfg::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % q_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldCfg::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw DegenerateInput("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

PolyFq::PolyFq(FieldCfg field, std::vector<std::uint32_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= field_.q();
  trim();
}

PolyFq PolyFq::constant(FieldCfg field, std::int64_t c) {
  return PolyFq(field, {field.reduce(c)});
}

PolyFq PolyFq::monomial(FieldCfg field, std::uint32_t c, int degree) {
  if (degree < 0) throw DomainError("monomial degree must be non-negative");
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(degree) + 1, 0);
  coeffs.back() = c;
  return PolyFq(field, std::move(coeffs));
}

std::uint32_t PolyFq::coeff(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

void PolyFq::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void PolyFq::check_field(const PolyFq& other) const {
  if (!(field_ == other.field_)) throw FieldMismatch("polynomials over different fields");
}

PolyFq PolyFq::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

PolyFq PolyFq::scaled(std::uint32_t c) const {
  PolyFq out(field_);
  out.coeffs_.reserve(coeffs_.size());
  for (auto a : coeffs_) out.coeffs_.push_back(field_.mul(a, c % field_.q()));
  out.trim();
  return out;
}

PolyFq PolyFq::shifted(int k) const {
  if (k < 0) throw DomainError("shift must be non-negative");
  if (is_zero() || k == 0) return *this;
  PolyFq out(field_);
  out.coeffs_.assign(static_cast<std::size_t>(k), 0);
  out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

PolyFq PolyFq::pow(unsigned e) const {
  PolyFq result = constant(field_, 1);
  PolyFq base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

PolyFq PolyFq::high_part(int k) const {
  if (k <= 0) return *this;
  if (k >= static_cast<int>(coeffs_.size())) return PolyFq(field_);
  std::vector<std::uint32_t> c(coeffs_);
  std::fill(c.begin(), c.begin() + k, 0u);
  return PolyFq(field_, std::move(c));
}

PolyFq PolyFq::low_part(int k) const {
  if (k <= 0) return PolyFq(field_);
  if (k >= static_cast<int>(coeffs_.size())) return *this;
  return PolyFq(field_, std::vector<std::uint32_t>(coeffs_.begin(), coeffs_.begin() + k));
}

PolyFq PolyFq::operator-() const { return scaled(field_.neg(1)); }

PolyFq& PolyFq::operator+=(const PolyFq& rhs) {
  check_field(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    coeffs_[i] = field_.add(coeffs_[i], rhs.coeffs_[i]);
  }
  trim();
  return *this;
}

PolyFq& PolyFq::operator-=(const PolyFq& rhs) {
  check_field(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    coeffs_[i] = field_.sub(coeffs_[i], rhs.coeffs_[i]);
  }
  trim();
  return *this;
}

PolyFq& PolyFq::operator*=(const PolyFq& rhs) {
  check_field(rhs);
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  const std::uint64_t q = field_.q();
  std::vector<std::uint64_t> acc(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(coeffs_[i]) * rhs.coeffs_[j]) % q;
    }
  }
  coeffs_.assign(acc.begin(), acc.end());
  trim();
  return *this;
}

PolyDivision divmod(const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw DegenerateInput("polynomial division by zero");
  if (!(a.field() == b.field())) throw FieldMismatch("polynomials over different fields");
  const FieldCfg& f = a.field();
  if (a.degree() < b.degree()) return {PolyFq(f), a};

  std::vector<std::uint32_t> rem(a.coefficients().begin(), a.coefficients().end());
  std::vector<std::uint32_t> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  const auto bc = b.coefficients();
  const std::uint32_t lead_inv = f.inv(b.leading());
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    std::uint32_t c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    c = f.mul(c, lead_inv);
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& r = rem[static_cast<std::size_t>(i - db + j)];
      r = f.sub(r, f.mul(c, bc[static_cast<std::size_t>(j)]));
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {PolyFq(f, std::move(quot)), PolyFq(f, std::move(rem))};
}

PolyFq gcd(PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::optional<PolyFq> kth_root(const PolyFq& a, unsigned k) {
  if (k == 0) throw DomainError("root order must be positive");
  if (!a.is_monic()) throw DomainError("kth_root expects a monic polynomial");
  const FieldCfg& f = a.field();
  if (a.degree() % static_cast<int>(k) != 0) return std::nullopt;
  const int d = a.degree() / static_cast<int>(k);

  if (k % f.q() == 0) {
    // Only reachable for k = q here (k in {2, 3}); x -> x^q is the identity on F_q.
    if (k != f.q()) return std::nullopt;
    std::vector<std::uint32_t> root(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i <= a.degree(); ++i) {
      if (a.coeff(i) == 0) continue;
      if (i % static_cast<int>(k) != 0) return std::nullopt;
      root[static_cast<std::size_t>(i) / k] = a.coeff(i);
    }
    return PolyFq(f, std::move(root));
  }

  // The coefficient of t^{(k-1)d + j} in b^k is k*b_j plus terms in b_{j+1..d}.
  const std::uint32_t k_inv = f.inv(static_cast<std::uint32_t>(k % f.q()));
  std::vector<std::uint32_t> root(static_cast<std::size_t>(d) + 1, 0);
  root.back() = 1;
  for (int j = d - 1; j >= 0; --j) {
    const PolyFq partial(f, root);
    const std::uint32_t have = partial.pow(k).coeff((static_cast<int>(k) - 1) * d + j);
    const std::uint32_t want = a.coeff((static_cast<int>(k) - 1) * d + j);
    root[static_cast<std::size_t>(j)] = f.mul(f.sub(want, have), k_inv);
  }
  PolyFq b(f, std::move(root));
  if (b.pow(k) == a) return b;
  return std::nullopt;
}

std::optional<PolyFq> cube_root(const PolyFq& a) { return kth_root(a, 3); }

std::optional<PolyFq> square_root(const PolyFq& a) { return kth_root(a, 2); }

}  // namespace a2q
