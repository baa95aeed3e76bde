#include "a2q/operator.hpp"

#include <cfloat>
#include <cmath>
#include <string>

namespace a2q {

namespace {

template <typename S>
double norm_sq(const QuotientComplex& cx, const std::vector<double>& sw, const GridFunction<S>& f,
               Region region) {
  double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (region == Region::Unmasked && cx.vertices()[i].m == cx.depth()) continue;
    acc += std::norm(f[i] * sw[i]);
  }
  return acc;
}

void check_depths(const QuotientComplex& cx, int a, int b) {
  if (a != cx.depth() || b != cx.depth()) throw DimensionMismatch("functions and complex differ in depth");
}

}  // namespace

std::vector<double> sqrt_weights(const QuotientComplex& cx) {
  const double q = cx.q();
  if (std::pow(q, cx.depth() + 1) > DBL_MAX / 64) {
    throw RangeError("q^(M+1) exceeds double range for q = " + std::to_string(cx.q()) +
                     ", M = " + std::to_string(cx.depth()));
  }
  std::vector<double> sw;
  sw.reserve(cx.size());
  const double interior = std::sqrt(q + 1);
  for (int m = 0; m <= cx.depth(); ++m) {
    const double shell = m == 0 ? 1 / std::sqrt(q * q + q + 1) : std::pow(q, -m);
    for (int n = 0; n <= m; ++n) sw.push_back(n > 0 && n < m ? shell * interior : shell);
  }
  return sw;
}

Complex inner(const QuotientComplex& cx, const std::vector<double>& sw, const GridFunction<Complex>& f,
              const GridFunction<Complex>& g, Region region) {
  check_depths(cx, f.depth(), g.depth());
  Complex acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (region == Region::Unmasked && cx.vertices()[i].m == cx.depth()) continue;
    acc += (f[i] * sw[i]) * std::conj(g[i] * sw[i]);
  }
  return acc;
}

Complex inner(const QuotientComplex& cx, const GridFunction<Complex>& f, const GridFunction<Complex>& g,
              Region region) {
  return inner(cx, sqrt_weights(cx), f, g, region);
}

double norm_w(const QuotientComplex& cx, const std::vector<double>& sw, const GridFunction<Complex>& f,
              Region region) {
  check_depths(cx, f.depth(), f.depth());
  return std::sqrt(norm_sq(cx, sw, f, region));
}

double norm_w(const QuotientComplex& cx, const GridFunction<Complex>& f, Region region) {
  return norm_w(cx, sqrt_weights(cx), f, region);
}

Complex rayleigh(const QuotientComplex& cx, Direction dir, const GridFunction<Complex>& f) {
  const auto sw = sqrt_weights(cx);
  const Complex ff = inner(cx, sw, f, f, Region::Unmasked);
  if (ff == Complex(0)) throw ZeroFunction("Rayleigh quotient of a function vanishing on the unmasked vertices");
  return inner(cx, sw, apply(cx, dir, f).values, f, Region::Unmasked) / ff;
}

GridFunction<Complex> random_function(int depth, int support_depth, Rng& rng) {
  GridFunction<Complex> f(depth);
  for (std::size_t i = 0; i < triangle_size(support_depth); ++i) {
    f[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  return f;
}

GridFunction<QOmega> random_function_exact(int depth, int support_depth, Rng& rng) {
  GridFunction<QOmega> f(depth);
  auto r = [&] { return Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 7)); };
  for (std::size_t i = 0; i < triangle_size(support_depth); ++i) f[i] = QOmega(r(), r());
  return f;
}

double adjoint_defect(const QuotientComplex& cx, int trials, Rng& rng) {
  const auto sw = sqrt_weights(cx);
  double worst = 0;
  for (int k = 0; k < trials; ++k) {
    const auto f = random_function(cx.depth(), cx.depth() - 1, rng);
    const auto g = random_function(cx.depth(), cx.depth() - 1, rng);
    const Complex lhs = inner(cx, sw, apply(cx, Direction::Plus, f).values, g);
    const Complex rhs = inner(cx, sw, f, apply(cx, Direction::Minus, g).values);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

int adjoint_failures_exact(const QuotientComplex& cx, int trials, Rng& rng) {
  int failures = 0;
  for (int k = 0; k < trials; ++k) {
    const auto f = random_function_exact(cx.depth(), cx.depth() - 1, rng);
    const auto g = random_function_exact(cx.depth(), cx.depth() - 1, rng);
    const QOmega lhs = inner_exact(cx, apply(cx, Direction::Plus, f).values, g);
    const QOmega rhs = inner_exact(cx, f, apply(cx, Direction::Minus, g).values);
    if (!(lhs == rhs)) ++failures;
  }
  return failures;
}

NormEstimate norm_estimate(std::uint32_t q, int depth, int iters) {
  if (iters < 1) throw DomainError("norm_estimate needs at least one iteration");
  const QuotientComplex cx(q, depth);
  const auto sw = sqrt_weights(cx);
  NormEstimate out;
  out.bound = static_cast<double>(cx.degree());

  // Positive start, so the iteration cannot be orthogonal to the
  // (positive) top singular vector.
  GridFunction<double> f(depth);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 / (1.0 + cx.vertices()[i].m);
  double fn = std::sqrt(norm_sq(cx, sw, f, Region::All));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] /= fn;

  for (int k = 0; k < iters; ++k) {
    const auto tf = apply(cx, Direction::Plus, f).values;
    out.estimate = std::sqrt(norm_sq(cx, sw, tf, Region::All));
    out.history.push_back(out.estimate);
    auto nf = apply(cx, Direction::Minus, tf).values;
    fn = std::sqrt(norm_sq(cx, sw, nf, Region::All));
    if (fn == 0) break;
    for (std::size_t i = 0; i < nf.size(); ++i) nf[i] /= fn;
    f = std::move(nf);
  }
  out.iterations = static_cast<int>(out.history.size());
  return out;
}

}  // namespace a2q
