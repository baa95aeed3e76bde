#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "a2q/errors.hpp"
#include "a2q/operator.hpp"

namespace a2q {

inline constexpr double kTolS = 1e-10;
inline constexpr double kTolSing = 1e-4;

using Triple = std::array<Complex, 3>;

enum class Stratum { Generic, Double, Triple, Trivial };
std::string to_string(Stratum s);

struct SpectralParam {
  std::uint32_t q = 2;
  Triple s{};
  Stratum stratum = Stratum::Generic;
  // s is a permutation of omega^k (q, 1, 1/q) when stratum == Trivial.
  int trivial_k = 0;
  // Smallest pairwise distance in (tol_sing, 10 tol_sing): evaluated with
  // the generic formula, which loses digits there.
  bool near_singular = false;
};

struct EigenPair {
  Complex lambda_plus;
  Complex lambda_minus;
};

struct EigenCoeffs {
  std::array<Complex, 3> A0{};
  std::array<Complex, 3> A1{};
  std::array<std::array<Complex, 3>, 3> B{};  // B[i][i] = 0
};

// s1 s2 s3 = 1 and conj(s1 + s2 + s3) = 1/s1 + 1/s2 + 1/s3.
bool in_S(const Triple& s, double tol = kTolS);
double smallest_gap(const Triple& s);

// Validates membership and assigns the stratum. Throws NotInS.
SpectralParam make_param(std::uint32_t q, const Triple& s, double tol_s = kTolS, double tol_sing = kTolSing);

// Throws NotInS.
EigenPair lambda_of(const SpectralParam& p);

// Roots of X^3 - (l/q) X^2 + (conj(l)/q) X - 1, ordered by modulus
// (descending) then argument (ascending).
SpectralParam from_lambda(std::uint32_t q, Complex lambda_plus, double tol_sing = kTolSing);

// Permutation sigma (0-based) with conj(s[sigma0]) = 1/s[sigma2] and
// |s[sigma1]| = 1, |s[sigma0]| > 1; nullopt when every |s_i| = 1.
std::optional<std::array<int, 3>> classify_lemma_b(const Triple& s, double tol = 1e-8);

// A_{i,0}, A_{i,1}, B_{i,j}. Throws Singular unless the s_i are distinct.
EigenCoeffs eigen_coeffs(std::uint32_t q, const Triple& s);

// f_s(v_{m,n}) normalized by f(v_{0,0}) = 1.
Complex eval_eigenfunction(const SpectralParam& p, int m, int n);
GridFunction<Complex> eigenfunction(const SpectralParam& p, int depth);
// (1 - eps)^m f_s(v_{m,n}). Throws InvalidEpsilon unless 0 < eps < 1/2.
GridFunction<Complex> damped(const SpectralParam& p, double eps, int depth);

// max over unmasked v of |A f - lambda f|(v) / (1 + |lambda| F(v) + sum_u c(v,u) F(u)),
// both directions, where F(u) is the largest |f| on the shell of u. Pointwise
// |f| is no scale: f can vanish exactly at vertices whose computed value is
// rounding noise of size q^m.
double verify_recurrence(const SpectralParam& p, int depth);

// omega^{k(m+n)} in Q(omega); number of unmasked vertices where
// A+ f != (q^2+q+1) omega^k f or A- f != (q^2+q+1) omega^{-k} f.
int trivial_failures_exact(std::uint32_t q, int k, int depth);

namespace closed_form {

template <typename R>
std::complex<R> ipow(std::complex<R> z, int k) {
  std::complex<R> out(1);
  while (k > 0) {
    if (k & 1) out *= z;
    z *= z;
    k >>= 1;
  }
  return out;
}

template <typename R>
R rpow(R x, int k) {
  R out(1);
  while (k-- > 0) out *= x;
  return out;
}

// s_a - q s_b, set to 0 when it vanishes up to rounding. On the family
// (sqrt(q) e^{it}, e^{-2it}, e^{it}/sqrt(q)) the exact zeros remove terms
// growing like q^{m/2}, which rounding would otherwise resurrect.
template <typename R>
std::complex<R> shifted(R q, std::complex<R> a, std::complex<R> b) {
  const auto d = a - q * b;
  return std::abs(d) < R(1e-10) * (std::abs(a) + 1) ? std::complex<R>(0) : d;
}

// B_{i,j} with k the remaining index.
template <typename R>
std::complex<R> b_coeff(R q, const std::array<std::complex<R>, 3>& s, int i, int j) {
  const int k = 3 - i - j;
  const auto num = shifted(q, s[i], s[j]) * shifted(q, s[i], s[k]) * shifted(q, s[j], s[k]);
  const auto den = (s[i] - s[j]) * (s[i] - s[k]) * (s[j] - s[k]) * ((q + 1) * (q * q + q + 1));
  return num / den;
}

template <typename R>
std::complex<R> generic(R q, const std::array<std::complex<R>, 3>& s, int m, int n) {
  std::complex<R> acc(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) acc += b_coeff(q, s, i, j) * ipow(s[i], m) * ipow(s[j], n);
  return acc * rpow(q, m);
}

// s = (s1, s2, s2).
template <typename R>
std::complex<R> double_root(R q, std::complex<R> s1, std::complex<R> s2, int m, int n) {
  const R M = m, N = n;
  const auto d = s1 - s2;
  const auto a = s1 - q * s2, b = s2 - q * s1;
  const auto mixed = ipow(s1, n) * ipow(s2, m);
  const auto bracket = a * a * ((1 - q) * N + q + 1) * ipow(s1, m) * ipow(s2, n) +
                       b * b * ((1 - q) * (M - N) + q + 1) * ipow(s2, m + n) +
                       M * (q - 1) * a * b * mixed +
                       (q + 1) * (q * (s1 * s1 + s2 * s2) - 2 * (q * q - q + 1) * s1 * s2) * mixed;
  return rpow(q, m) * bracket / (d * d * ((q + 1) * (q * q + q + 1)));
}

// s = (s, s, s).
template <typename R>
std::complex<R> triple_root(R q, std::complex<R> s, int m, int n) {
  const R M = m, N = n, p = 1 - q;
  const R c = (q + 1) * (q * q + q + 1);
  const R brace = 2 * c + 6 * M * (1 - q * q) + p * p * (q + 1) * (M * M + (2 * N - 3) * M - 2 * N * N) +
                  p * p * p * (M * M * N - M * N * N);
  return ipow(s, m + n) * (rpow(q, m) * brace / (2 * c));
}

}  // namespace closed_form

}  // namespace a2q
