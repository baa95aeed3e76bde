#pragma once

#include <complex>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "a2q/complex.hpp"
#include "a2q/errors.hpp"
#include "a2q/qomega.hpp"
#include "a2q/rng.hpp"

namespace a2q {

using Complex = std::complex<double>;

// Function on the depth-M triangle {0 <= n <= m <= M}, stored in
// vertex_index order.
template <typename S>
class GridFunction {
 public:
  explicit GridFunction(int depth) : depth_(depth), values_(triangle_size(depth), S(0)) {}

  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return values_.size(); }
  S& operator[](std::size_t i) { return values_[i]; }
  const S& operator[](std::size_t i) const { return values_[i]; }
  S& at(Vertex v) {
    check(v);
    return values_[vertex_index(v)];
  }
  const S& at(Vertex v) const {
    check(v);
    return values_[vertex_index(v)];
  }
  const std::vector<S>& values() const noexcept { return values_; }

  GridFunction& operator+=(const GridFunction& o) {
    same_depth(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    same_depth(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GridFunction& operator*=(const S& c) {
    for (auto& x : values_) x *= c;
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, const S& c) { return a *= c; }

 private:
  void check(Vertex v) const {
    if (!Vertex::valid(v.m, v.n) || v.m > depth_) {
      throw InvalidVertex("vertex (" + std::to_string(v.m) + "," + std::to_string(v.n) +
                          ") outside the depth-" + std::to_string(depth_) + " triangle");
    }
  }
  void same_depth(const GridFunction& o) const {
    if (o.depth_ != depth_) throw DimensionMismatch("grid functions of different depth");
  }

  int depth_;
  std::vector<S> values_;
};

template <typename S>
S coeff_as(std::uint64_t c) {
  if constexpr (std::is_same_v<S, Complex> || std::is_floating_point_v<S>) {
    return S(static_cast<double>(c));
  } else {
    return S(Rational(c));
  }
}

template <typename S>
struct Applied {
  GridFunction<S> values;
  // True where the coefficient row reaches past the depth; the missing
  // neighbours were read as 0 there.
  std::vector<bool> masked;
};

// (A^{+-} f)(v) = sum over the coefficient row of c(v, v') f(v').
template <typename S>
Applied<S> apply(const QuotientComplex& cx, Direction dir, const GridFunction<S>& f) {
  if (f.depth() != cx.depth()) throw DimensionMismatch("grid function depth differs from the complex");
  Applied<S> out{GridFunction<S>(f.depth()), std::vector<bool>(f.size())};
  for (std::size_t i = 0; i < f.size(); ++i) {
    S acc(0);
    for (const auto& e : cx.row(dir, i)) acc += coeff_as<S>(e.coeff) * f[e.target];
    out.values[i] = acc;
    out.masked[i] = cx.masked(dir, i);
  }
  return out;
}

// Inner products either over every vertex or only over vertices whose
// coefficient rows stay inside the truncation (m < M).
enum class Region { All, Unmasked };

// Exact <f, g> = sum f(v) conj(g(v)) w(v).
template <typename S>
S inner_exact(const QuotientComplex& cx, const GridFunction<S>& f, const GridFunction<S>& g,
              Region region = Region::All) {
  if (f.depth() != cx.depth() || g.depth() != cx.depth()) {
    throw DimensionMismatch("inner product of functions on different depths");
  }
  S acc(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (region == Region::Unmasked && cx.vertices()[i].m == cx.depth()) continue;
    acc += f[i] * conj(g[i]) * S(cx.weight(i));
  }
  return acc;
}

// sqrt(w(v)) in double precision. Throws RangeError when q^{M+1} is not
// representable, since values and weights then leave the double range.
std::vector<double> sqrt_weights(const QuotientComplex& cx);

// Floating inner product computed as sum (f sqrt(w)) conj(g sqrt(w)) so that
// functions growing like q^m stay in range.
Complex inner(const QuotientComplex& cx, const GridFunction<Complex>& f, const GridFunction<Complex>& g,
              Region region = Region::All);
double norm_w(const QuotientComplex& cx, const GridFunction<Complex>& f, Region region = Region::All);
// Same, with precomputed sqrt_weights(cx).
Complex inner(const QuotientComplex& cx, const std::vector<double>& sw, const GridFunction<Complex>& f,
              const GridFunction<Complex>& g, Region region = Region::All);
double norm_w(const QuotientComplex& cx, const std::vector<double>& sw, const GridFunction<Complex>& f,
              Region region = Region::All);

// <A f, f> / <f, f> over unmasked vertices. Throws ZeroFunction.
Complex rayleigh(const QuotientComplex& cx, Direction dir, const GridFunction<Complex>& f);

// Random complex values on {m <= support_depth}, zero elsewhere.
GridFunction<Complex> random_function(int depth, int support_depth, Rng& rng);
GridFunction<QOmega> random_function_exact(int depth, int support_depth, Rng& rng);

// max over random pairs f, g supported on m <= M-1 of
// |<A+ f, g> - <f, A- g>| in double precision.
double adjoint_defect(const QuotientComplex& cx, int trials, Rng& rng);
// Number of random pairs whose exact defect is nonzero (0 is expected).
int adjoint_failures_exact(const QuotientComplex& cx, int trials, Rng& rng);

struct NormEstimate {
  double estimate = 0;
  double bound = 0;  // q^2 + q + 1
  int iterations = 0;
  // Estimate after each iteration.
  std::vector<double> history;
};

// Power iteration on A- A+ restricted to the truncation, where A- is the
// exact adjoint of the truncated A+. Returns sqrt of the Rayleigh quotient.
NormEstimate norm_estimate(std::uint32_t q, int depth, int iters);

}  // namespace a2q
