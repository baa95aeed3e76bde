#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "a2q/eigen.hpp"

namespace a2q {

enum class SetTag { Sigma0, Sigma1, Sigma2Boundary, Sigma2Interior, Outside };
std::string to_string(SetTag t);

struct SpectrumPoint {
  Complex lambda;
  SetTag tag = SetTag::Outside;
};

// (q^2+q+1) e^{2 pi i k / 3}, k = 0, 1, 2.
std::array<Complex, 3> sigma0(std::uint32_t q);

// (q^{3/2} + q^{1/2}) e^{i theta} + q e^{-2 i theta}.
Complex sigma1_point(std::uint32_t q, double theta);
// Distance from lambda to the Sigma1 curve: 4096-point grid, then
// golden-section refinement around the best grid points.
double sigma1_distance(std::uint32_t q, Complex lambda);

// Moduli of the roots of X^3 - (l/q) X^2 + (conj(l)/q) X - 1, descending.
std::array<double, 3> root_moduli(std::uint32_t q, Complex lambda);
// Every root has modulus within tol of 1. A double root moves by about the
// square root of the rounding error, hence the loose default.
bool sigma2_contains(std::uint32_t q, Complex lambda, double tol = 1e-6);
// q (e^{2 i theta} + 2 e^{-i theta}), the image of a double unimodular root.
Complex sigma2_boundary_point(std::uint32_t q, double theta);

SpectrumPoint tag_point(std::uint32_t q, Complex lambda, double tol = 1e-7);

// Points of each set for plotting and CSV output.
struct SampledPoint {
  double theta;
  SpectrumPoint point;
};
std::vector<SampledPoint> sample_sets(std::uint32_t q, int samples);

struct ResidualReport {
  SpectralParam s;
  double epsilon = 0;
  int depth = 0;
  double residual_plus = 0;
  double residual_minus = 0;
  double norm = 0;
  // Squared norm on the outer shell m = M over the total squared norm.
  double truncation_fraction = 0;
};

inline constexpr double kDepthConstant = 12;
inline constexpr double kMaxTruncationFraction = 0.01;
inline constexpr double kMonotoneSlack = 0.05;
// Depth used for the undamped trivial function.
inline constexpr int kTrivialDepth = 40;

// ||A^{+-} f - lambda^{+-} f|| / ||f|| for f = f_s^eps on depth
// M = ceil(C / eps); the numerator runs over unmasked vertices. For the
// trivial stratum f is the undamped eigenfunction and eps is reported as 0.
// Throws InvalidEpsilon, TruncationTooCoarse.
ResidualReport residual_report(const SpectralParam& s, double eps, double depth_constant = kDepthConstant);
std::vector<ResidualReport> residual_sweep(const SpectralParam& s, const std::vector<double>& eps,
                                           double depth_constant = kDepthConstant);
// Residuals decrease along the sweep (eps decreasing), up to the relative slack.
bool sweep_monotone(const std::vector<ResidualReport>& sweep, double slack = kMonotoneSlack);

// sum_{m <= M} sum_n |f_s(v_{m,n})|^2 w(v_{m,n}) for each M in depths.
std::vector<double> norm_divergence(const SpectralParam& s, const std::vector<int>& depths);
// Exact partial and total mass of |omega^{k(m+n)}|^2 w = w.
Rational trivial_partial_mass(std::uint32_t q, int depth);
Rational trivial_total_mass(std::uint32_t q);

struct WitnessReport {
  std::uint32_t q = 2;
  double lambda_star = 0;  // q^{3/2} + q + q^{1/2}
  bool sigma2_contains = false;
  double margin = 0;  // lambda_star - 3q
  std::array<double, 3> root_moduli{};
  std::vector<ResidualReport> sweep;
  bool sweep_monotone = false;
};

inline const std::vector<double> kDefaultEpsilons = {0.2, 0.1, 0.05, 0.025};

WitnessReport non_ramanujan_witness(std::uint32_t q, const std::vector<double>& eps = kDefaultEpsilons);

std::string spectra_svg(std::uint32_t q);
// Throws std::runtime_error when the file cannot be written.
void render_spectra(std::uint32_t q, const std::string& path);

}  // namespace a2q
