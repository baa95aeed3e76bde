#include "a2q/complex.hpp"

#include <algorithm>
#include <string>

#include "a2q/errors.hpp"
#include "a2q/poly.hpp"

namespace a2q {

namespace {

BigInt pow_big(std::uint32_t q, unsigned e) {
  BigInt out = 1;
  for (unsigned i = 0; i < e; ++i) out *= q;
  return out;
}

void check_q(std::uint32_t q) { (void)FieldCfg(q); }

std::string name(Vertex v) { return "v(" + std::to_string(v.m) + "," + std::to_string(v.n) + ")"; }

}  // namespace

Vertex Vertex::make(int m, int n) {
  if (!valid(m, n)) {
    throw InvalidVertex("vertex (" + std::to_string(m) + "," + std::to_string(n) +
                        ") violates 0 <= n <= m");
  }
  return Vertex{m, n};
}

int color(Vertex v) noexcept { return (v.m + v.n) % 3; }

BigInt stabilizer_order(std::uint32_t q, Vertex v) {
  check_q(q);
  const BigInt qq = q;
  const BigInt base = (qq - 1) * (qq - 1);
  if (v.m == 0) return pow_big(q, 3) * (qq + 1) * (qq * qq + qq + 1) * base;
  const BigInt top = pow_big(q, static_cast<unsigned>(2 * v.m + 3)) * base;
  if (v.n == 0 || v.n == v.m) return top * (qq + 1);
  return top;
}

Rational vertex_weight(std::uint32_t q, Vertex v) {
  const BigInt qq = q;
  const BigInt normalizer = pow_big(q, 3) * (qq + 1) * (qq - 1) * (qq - 1);
  return Rational(normalizer, stabilizer_order(q, v));
}

std::vector<Vertex> neighbours(Vertex v) {
  const int m = v.m, n = v.n;
  if (m == 0) return {{1, 0}, {1, 1}};
  if (n == 0) return {{m - 1, 0}, {m + 1, 0}, {m, 1}, {m + 1, 1}};
  if (n == m) return {{m + 1, m}, {m, m - 1}, {m + 1, m + 1}, {m - 1, m - 1}};
  return {{m - 1, n}, {m + 1, n}, {m, n - 1}, {m, n + 1}, {m + 1, n + 1}, {m - 1, n - 1}};
}

bool is_adjacent(Vertex a, Vertex b) {
  const auto nb = neighbours(a);
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

std::vector<Coeff> coeff_row(std::uint32_t q, Direction dir, Vertex v) {
  const std::uint64_t Q = q;
  const int m = v.m, n = v.n;
  if (dir == Direction::Plus) {
    if (m == 0) return {{{1, 0}, Q * Q + Q + 1}};
    if (n == 0) return {{{m + 1, 0}, 1}, {{m, 1}, Q * Q + Q}};
    if (n == m) return {{{m - 1, m - 1}, Q * Q}, {{m + 1, m}, Q + 1}};
    return {{{m - 1, n - 1}, Q * Q}, {{m, n + 1}, Q}, {{m + 1, n}, 1}};
  }
  if (m == 0) return {{{1, 1}, Q * Q + Q + 1}};
  if (n == 0) return {{{m - 1, 0}, Q * Q}, {{m + 1, 1}, Q + 1}};
  if (n == m) return {{{m, m - 1}, Q * Q + Q}, {{m + 1, m + 1}, 1}};
  return {{{m - 1, n}, Q * Q}, {{m, n - 1}, Q}, {{m + 1, n + 1}, 1}};
}

DegreeBounds stabilizer_bounds(Vertex v) {
  const std::array<int, 3> e{v.m, v.n, 0};
  DegreeBounds b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = e[i] - e[j];
  return b;
}

DegreeBounds intersect(const DegreeBounds& a, const DegreeBounds& b) {
  DegreeBounds out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = std::min(a[i][j], b[i][j]);
  return out;
}

BigInt count_stabilizer(std::uint32_t q, const DegreeBounds& b) {
  check_q(q);
  for (int i = 0; i < 3; ++i) {
    if (b[i][i] != 0) throw DomainError("diagonal degree bounds must be 0");
    for (int j = i + 1; j < 3; ++j) {
      if (b[i][j] >= 0 && b[j][i] >= 0 && (b[i][j] != 0 || b[j][i] != 0)) {
        throw DomainError("degree bounds do not describe a block triangular group");
      }
    }
  }
  // Blocks: indices linked by constant entries in both directions.
  std::array<int, 3> block{0, 1, 2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && b[i][j] == 0 && b[j][i] == 0) {
        const int from = block[j], to = block[i];
        for (auto& x : block)
          if (x == from) x = to;
      }
    }
  }
  // The determinant is the product of the diagonal block determinants only
  // when some ordering makes the pattern block upper triangular.
  std::array<int, 3> order{0, 1, 2};
  bool triangular = false;
  do {
    bool ok = true;
    for (int x = 0; x < 3 && ok; ++x)
      for (int y = 0; y < x && ok; ++y)
        ok = block[order[x]] == block[order[y]] || b[order[x]][order[y]] < 0;
    triangular = ok;
  } while (!triangular && std::next_permutation(order.begin(), order.end()));
  if (!triangular) throw DomainError("degree bounds do not describe a block triangular group");

  BigInt count = 1;
  const BigInt Q = q;
  for (int blk = 0; blk < 3; ++blk) {
    const int k = static_cast<int>(std::count(block.begin(), block.end(), blk));
    const BigInt qk = pow_big(q, static_cast<unsigned>(k));
    for (int i = 0; i < k; ++i) count *= qk - pow_big(q, static_cast<unsigned>(i));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (block[i] != block[j] && b[i][j] >= 0) count *= pow_big(q, static_cast<unsigned>(b[i][j] + 1));
    }
  }
  return count / (Q - 1);
}

Rational edge_coeff_from_stabilizers(std::uint32_t q, Vertex a, Vertex b) {
  if (!is_adjacent(a, b)) throw NotAdjacent(name(a) + " and " + name(b) + " are not adjacent");
  const DegreeBounds ba = stabilizer_bounds(a);
  return Rational(count_stabilizer(q, ba), count_stabilizer(q, intersect(ba, stabilizer_bounds(b))));
}

QuotientComplex::QuotientComplex(std::uint32_t q, int depth) : q_(q), depth_(depth) {
  check_q(q);
  if (depth < 2) throw DomainError("depth must be at least 2 (got " + std::to_string(depth) + ")");
  const std::size_t size = triangle_size(depth);
  vertices_.reserve(size);
  for (int m = 0; m <= depth; ++m)
    for (int n = 0; n <= m; ++n) vertices_.push_back({m, n});
  weights_.reserve(size);
  for (const auto& v : vertices_) weights_.push_back(vertex_weight(q, v));

  auto build = [&](Direction dir, std::vector<std::vector<RowEntry>>& rows, std::vector<bool>& mask) {
    rows.resize(size);
    mask.assign(size, false);
    for (std::size_t i = 0; i < size; ++i) {
      for (const auto& c : coeff_row(q, dir, vertices_[i])) {
        if (c.target.m > depth) {
          mask[i] = true;
          continue;
        }
        rows[i].push_back({static_cast<std::uint32_t>(vertex_index(c.target)), c.value});
      }
    }
  };
  build(Direction::Plus, plus_, plus_mask_);
  build(Direction::Minus, minus_, minus_mask_);
}

}  // namespace a2q
