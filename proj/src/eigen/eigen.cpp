#include "a2q/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "a2q/poly.hpp"

namespace a2q {

namespace {

const Complex kOmega = std::polar(1.0, 2 * std::numbers::pi / 3);

Complex omega_pow(int k) { return closed_form::ipow(kOmega, ((k % 3) + 3) % 3); }

void require_prime(std::uint32_t q) {
  if (!is_prime(q)) throw DomainError("q = " + std::to_string(q) + " is not prime");
}

// Smallest total distance over the 6 matchings of a onto b.
double match_distance(const Triple& a, const Triple& b) {
  std::array<int, 3> perm{0, 1, 2};
  double best = INFINITY;
  do {
    double d = 0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void classify(SpectralParam& p, double tol_sing) {
  const double q = p.q;
  for (int k = 0; k < 3; ++k) {
    const Complex w = omega_pow(k);
    if (match_distance(p.s, {q * w, w, w / q}) < tol_sing) {
      p.stratum = Stratum::Trivial;
      p.trivial_k = k;
      p.near_singular = false;
      return;
    }
  }
  const auto& s = p.s;
  int close = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(s[i] - s[j]) < tol_sing) ++close;
  p.stratum = close == 0 ? Stratum::Generic : close == 1 ? Stratum::Double : Stratum::Triple;
  const double gap = smallest_gap(s);
  p.near_singular = p.stratum == Stratum::Generic && gap < 10 * tol_sing;
}

Complex polish(Complex x, Complex a, Complex b) {
  auto f = [&](Complex z) { return ((z - a) * z + b) * z - 1.0; };
  const Complex d = (3.0 * x - 2.0 * a) * x + b;
  if (std::abs(d) == 0) return x;
  const Complex y = x - f(x) / d;
  return std::abs(f(y)) < std::abs(f(x)) ? y : x;
}

double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi + 1e-12 ? std::numbers::pi : a;
}

}  // namespace

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::Generic: return "generic";
    case Stratum::Double: return "double";
    case Stratum::Triple: return "triple";
    case Stratum::Trivial: return "trivial";
  }
  return "?";
}

bool in_S(const Triple& s, double tol) {
  for (const auto& x : s)
    if (x == Complex(0)) return false;
  const Complex prod = s[0] * s[1] * s[2];
  const Complex lhs = std::conj(s[0] + s[1] + s[2]);
  const Complex rhs = 1.0 / s[0] + 1.0 / s[1] + 1.0 / s[2];
  return std::abs(prod - 1.0) < tol && std::abs(lhs - rhs) < tol;
}

double smallest_gap(const Triple& s) {
  return std::min({std::abs(s[0] - s[1]), std::abs(s[0] - s[2]), std::abs(s[1] - s[2])});
}

SpectralParam make_param(std::uint32_t q, const Triple& s, double tol_s, double tol_sing) {
  require_prime(q);
  if (!in_S(s, tol_s)) throw NotInS("s does not satisfy s1 s2 s3 = 1 and conj(e1) = e2");
  SpectralParam p;
  p.q = q;
  p.s = s;
  classify(p, tol_sing);
  return p;
}

EigenPair lambda_of(const SpectralParam& p) {
  if (!in_S(p.s)) throw NotInS("lambda_of: s is not in S");
  const double q = p.q;
  const auto& s = p.s;
  return {q * (s[0] + s[1] + s[2]), q * (1.0 / s[0] + 1.0 / s[1] + 1.0 / s[2])};
}

SpectralParam from_lambda(std::uint32_t q, Complex lambda_plus, double tol_sing) {
  require_prime(q);
  const Complex a = lambda_plus / double(q), b = std::conj(lambda_plus) / double(q);
  // x = y + a/3 gives y^3 + p y + r = 0.
  const Complex p = b - a * a / 3.0;
  const Complex r = -2.0 * a * a * a / 27.0 + a * b / 3.0 - 1.0;
  const Complex disc = std::sqrt(r * r / 4.0 + p * p * p / 27.0);
  Complex u3 = -r / 2.0 + disc;
  if (std::abs(-r / 2.0 - disc) > std::abs(u3)) u3 = -r / 2.0 - disc;
  Triple roots;
  if (std::abs(u3) == 0) {
    roots.fill(a / 3.0);
  } else {
    const Complex u = std::pow(u3, 1.0 / 3);
    for (int k = 0; k < 3; ++k) {
      const Complex uk = u * omega_pow(k);
      roots[k] = uk - p / (3.0 * uk) + a / 3.0;
    }
  }
  for (auto& x : roots) x = polish(x, a, b);
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    const double mx = std::abs(x), my = std::abs(y);
    if (std::abs(mx - my) > 1e-9) return mx > my;
    return principal_arg(x) < principal_arg(y);
  });
  SpectralParam out;
  out.q = q;
  out.s = roots;
  classify(out, tol_sing);
  return out;
}

std::optional<std::array<int, 3>> classify_lemma_b(const Triple& s, double tol) {
  if (!in_S(s, std::max(tol, kTolS))) throw NotInS("classify_lemma_b: s is not in S");
  if (std::all_of(s.begin(), s.end(), [&](Complex x) { return std::abs(std::abs(x) - 1) < tol; })) {
    return std::nullopt;
  }
  std::array<int, 3> perm{0, 1, 2};
  do {
    const Complex x = s[perm[0]], y = s[perm[1]], z = s[perm[2]];
    if (std::abs(x) > 1 && std::abs(std::abs(y) - 1) < tol && std::abs(std::conj(x) - 1.0 / z) < tol) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw NotInS("no permutation pairs conj(s_i) with 1/s_k");
}

EigenCoeffs eigen_coeffs(std::uint32_t q, const Triple& s) {
  if (smallest_gap(s) == 0) throw Singular("B_{i,j} needs distinct s_i");
  const double Q = q, deg = Q * Q + Q + 1;
  EigenCoeffs c;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    c.A0[i] = (s[i] - Q * s[j]) * (s[i] - Q * s[k]) / ((s[i] - s[j]) * (s[i] - s[k]) * deg);
    c.A1[i] = (s[j] + s[k]) / (Q * Q + Q) * c.A0[i];
    for (int jj = 0; jj < 3; ++jj)
      if (jj != i) c.B[i][jj] = closed_form::b_coeff(Q, s, i, jj);
  }
  return c;
}

Complex eval_eigenfunction(const SpectralParam& p, int m, int n) {
  if (!Vertex::valid(m, n)) {
    throw InvalidVertex("vertex (" + std::to_string(m) + "," + std::to_string(n) + ") needs 0 <= n <= m");
  }
  const double q = p.q;
  const auto& s = p.s;
  switch (p.stratum) {
    case Stratum::Trivial: return omega_pow(p.trivial_k * ((m + n) % 3));
    case Stratum::Generic: return closed_form::generic(q, s, m, n);
    case Stratum::Triple: return closed_form::triple_root(q, (s[0] + s[1] + s[2]) / 3.0, m, n);
    case Stratum::Double: {
      int lone = 0;
      double best = INFINITY;
      for (int k = 0; k < 3; ++k) {
        const double d = std::abs(s[(k + 1) % 3] - s[(k + 2) % 3]);
        if (d < best) best = d, lone = k;
      }
      const Complex pair = (s[(lone + 1) % 3] + s[(lone + 2) % 3]) / 2.0;
      return closed_form::double_root(q, s[lone], pair, m, n);
    }
  }
  return 0;
}

GridFunction<Complex> eigenfunction(const SpectralParam& p, int depth) {
  GridFunction<Complex> f(depth);
  std::size_t i = 0;
  for (int m = 0; m <= depth; ++m)
    for (int n = 0; n <= m; ++n) f[i++] = eval_eigenfunction(p, m, n);
  return f;
}

GridFunction<Complex> damped(const SpectralParam& p, double eps, int depth) {
  if (!(eps > 0 && eps < 0.5)) throw InvalidEpsilon("epsilon must lie in (0, 1/2)");
  auto f = eigenfunction(p, depth);
  std::size_t i = 0;
  for (int m = 0; m <= depth; ++m) {
    const double damp = std::pow(1 - eps, m);
    for (int n = 0; n <= m; ++n) f[i++] *= damp;
  }
  return f;
}

double verify_recurrence(const SpectralParam& p, int depth) {
  const QuotientComplex cx(p.q, depth);
  const auto lam = lambda_of(p);
  const auto f = eigenfunction(p, depth);
  // Largest |f| on each shell, spread back over the shell.
  std::vector<double> shell(depth + 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto& s = shell[cx.vertices()[i].m];
    s = std::max(s, std::abs(f[i]));
  }
  GridFunction<double> size(depth);
  for (std::size_t i = 0; i < f.size(); ++i) size[i] = shell[cx.vertices()[i].m];
  double worst = 0;
  for (Direction dir : {Direction::Plus, Direction::Minus}) {
    const Complex l = dir == Direction::Plus ? lam.lambda_plus : lam.lambda_minus;
    const auto af = apply(cx, dir, f);
    const auto scale = apply(cx, dir, size).values;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (af.masked[i]) continue;
      const double denom = 1 + std::abs(l) * size[i] + scale[i];
      worst = std::max(worst, std::abs(af.values[i] - l * f[i]) / denom);
    }
  }
  return worst;
}

int trivial_failures_exact(std::uint32_t q, int k, int depth) {
  const QuotientComplex cx(q, depth);
  GridFunction<QOmega> f(depth);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vertex v = cx.vertices()[i];
    f[i] = QOmega::omega_pow(static_cast<long>(k) * (v.m + v.n));
  }
  const QOmega deg(Rational(cx.degree()));
  int failures = 0;
  for (Direction dir : {Direction::Plus, Direction::Minus}) {
    const QOmega l = deg * QOmega::omega_pow(dir == Direction::Plus ? k : -k);
    const auto af = apply(cx, dir, f);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!af.masked[i] && !(af.values[i] == l * f[i])) ++failures;
  }
  return failures;
}

}  // namespace a2q
