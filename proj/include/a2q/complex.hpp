#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace a2q {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Vertex v_{m,n} of the fundamental domain, 0 <= n <= m.
struct Vertex {
  int m = 0;
  int n = 0;

  // Throws InvalidVertex unless 0 <= n <= m.
  static Vertex make(int m, int n);
  static bool valid(int m, int n) noexcept { return 0 <= n && n <= m; }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class Direction { Plus, Minus };

// Position of v in the row-major triangle {0 <= n <= m}.
inline std::size_t vertex_index(Vertex v) noexcept {
  return static_cast<std::size_t>(v.m) * static_cast<std::size_t>(v.m + 1) / 2 +
         static_cast<std::size_t>(v.n);
}
inline std::size_t triangle_size(int depth) noexcept {
  return static_cast<std::size_t>(depth + 1) * static_cast<std::size_t>(depth + 2) / 2;
}

// (m + n) mod 3; A+ raises the color by one.
int color(Vertex v) noexcept;

BigInt stabilizer_order(std::uint32_t q, Vertex v);
Rational vertex_weight(std::uint32_t q, Vertex v);

// Neighbours of v in the quotient, in a fixed order.
std::vector<Vertex> neighbours(Vertex v);
bool is_adjacent(Vertex a, Vertex b);

struct Coeff {
  Vertex target;
  std::uint64_t value;
};

// Coefficient row of A+ or A- at v; the values sum to q^2+q+1.
std::vector<Coeff> coeff_row(std::uint32_t q, Direction dir, Vertex v);
inline std::vector<Coeff> coeffs_plus(std::uint32_t q, Vertex v) { return coeff_row(q, Direction::Plus, v); }
inline std::vector<Coeff> coeffs_minus(std::uint32_t q, Vertex v) { return coeff_row(q, Direction::Minus, v); }

// Degree bounds deg(gamma_ij) <= b_ij describing the stabilizer of
// diag(t^m, t^n, 1) in PGL(3, F_q[t]); a negative bound forces a zero.
using DegreeBounds = std::array<std::array<int, 3>, 3>;
DegreeBounds stabilizer_bounds(Vertex v);
DegreeBounds intersect(const DegreeBounds& a, const DegreeBounds& b);
// Number of classes modulo F_q^x of matrices with the given degree bounds
// and determinant in F_q^x.
BigInt count_stabilizer(std::uint32_t q, const DegreeBounds& bounds);

// |Gamma_a| / |Gamma_a cap Gamma_b|; throws NotAdjacent.
Rational edge_coeff_from_stabilizers(std::uint32_t q, Vertex a, Vertex b);

struct RowEntry {
  std::uint32_t target;  // index into the vertex list
  std::uint64_t coeff;
};

// Truncated quotient complex on {0 <= n <= m <= M}. Coefficient rows keep
// every entry; entries pointing past depth M are counted in the mask
// rather than dropped silently.
class QuotientComplex {
 public:
  // Throws DomainError for non-prime q or depth < 2.
  QuotientComplex(std::uint32_t q, int depth);

  std::uint32_t q() const noexcept { return q_; }
  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const Rational& weight(std::size_t i) const { return weights_[i]; }
  std::uint64_t degree() const noexcept { return static_cast<std::uint64_t>(q_) * q_ + q_ + 1; }

  // In-range entries of the row at vertex i.
  const std::vector<RowEntry>& row(Direction dir, std::size_t i) const {
    return dir == Direction::Plus ? plus_[i] : minus_[i];
  }
  // Whether the row at vertex i references a vertex beyond the depth.
  bool masked(Direction dir, std::size_t i) const {
    return dir == Direction::Plus ? plus_mask_[i] : minus_mask_[i];
  }

 private:
  std::uint32_t q_;
  int depth_;
  std::vector<Vertex> vertices_;
  std::vector<Rational> weights_;
  std::vector<std::vector<RowEntry>> plus_, minus_;
  std::vector<bool> plus_mask_, minus_mask_;
};

}  // namespace a2q
