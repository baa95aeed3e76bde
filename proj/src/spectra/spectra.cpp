#include "a2q/spectra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace a2q {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGrid = 4096;

double golden_min(const auto& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

std::string to_string(SetTag t) {
  switch (t) {
    case SetTag::Sigma0: return "sigma0";
    case SetTag::Sigma1: return "sigma1";
    case SetTag::Sigma2Boundary: return "sigma2_boundary";
    case SetTag::Sigma2Interior: return "sigma2_interior";
    case SetTag::Outside: return "outside (undetermined)";
  }
  return "?";
}

std::array<Complex, 3> sigma0(std::uint32_t q) {
  const double d = double(q) * q + q + 1;
  return {Complex(d), std::polar(d, 2 * kPi / 3), std::polar(d, 4 * kPi / 3)};
}

Complex sigma1_point(std::uint32_t q, double theta) {
  const double Q = q;
  return std::polar(Q * std::sqrt(Q) + std::sqrt(Q), theta) + std::polar(Q, -2 * theta);
}

double sigma1_distance(std::uint32_t q, Complex lambda) {
  auto dist = [&](double t) { return std::abs(sigma1_point(q, t) - lambda); };
  std::vector<double> d(kGrid);
  const double h = 2 * kPi / kGrid;
  for (int k = 0; k < kGrid; ++k) d[k] = dist(k * h);
  std::vector<int> minima;
  for (int k = 0; k < kGrid; ++k)
    if (d[k] <= d[(k + kGrid - 1) % kGrid] && d[k] <= d[(k + 1) % kGrid]) minima.push_back(k);
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return d[a] < d[b]; });
  if (minima.size() > 4) minima.resize(4);
  double best = *std::min_element(d.begin(), d.end());
  for (int k : minima) best = std::min(best, golden_min(dist, (k - 1) * h, (k + 1) * h));
  return best;
}

std::array<double, 3> root_moduli(std::uint32_t q, Complex lambda) {
  const auto p = from_lambda(q, lambda);
  std::array<double, 3> out{std::abs(p.s[0]), std::abs(p.s[1]), std::abs(p.s[2])};
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool sigma2_contains(std::uint32_t q, Complex lambda, double tol) {
  if (!(tol > 0)) throw DomainError("sigma2_contains needs tol > 0");
  for (double r : root_moduli(q, lambda))
    if (std::abs(r - 1) > tol) return false;
  return true;
}

Complex sigma2_boundary_point(std::uint32_t q, double theta) {
  return double(q) * (std::polar(1.0, 2 * theta) + 2.0 * std::polar(1.0, -theta));
}

SpectrumPoint tag_point(std::uint32_t q, Complex lambda, double tol) {
  const double scale = double(q) * q + q + 1;
  for (const auto& z : sigma0(q))
    if (std::abs(lambda - z) < tol * scale) return {lambda, SetTag::Sigma0};
  if (sigma1_distance(q, lambda) < tol * scale) return {lambda, SetTag::Sigma1};
  // Root moduli of a near-double root carry sqrt(rounding) error.
  if (sigma2_contains(q, lambda, 1e-6)) {
    const auto p = from_lambda(q, lambda);
    return {lambda, smallest_gap(p.s) < 1e-6 ? SetTag::Sigma2Boundary : SetTag::Sigma2Interior};
  }
  return {lambda, SetTag::Outside};
}

std::vector<SampledPoint> sample_sets(std::uint32_t q, int samples) {
  if (samples < 3) throw DomainError("need at least 3 samples per set");
  std::vector<SampledPoint> out;
  const auto s0 = sigma0(q);
  for (int k = 0; k < 3; ++k) out.push_back({2 * kPi * k / 3, {s0[k], SetTag::Sigma0}});
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * kPi * k / samples;
    out.push_back({t, {sigma1_point(q, t), SetTag::Sigma1}});
  }
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * kPi * k / samples;
    out.push_back({t, {sigma2_boundary_point(q, t), SetTag::Sigma2Boundary}});
  }
  return out;
}

ResidualReport residual_report(const SpectralParam& s, double eps, double depth_constant) {
  const bool trivial = s.stratum == Stratum::Trivial;
  if (!(eps < 0.5) || !(trivial ? eps >= 0 : eps > 0)) {
    throw InvalidEpsilon(fmt::format("epsilon = {} outside (0, 1/2)", eps));
  }
  if (!(depth_constant > 0)) throw DomainError("depth constant must be positive");
  ResidualReport r;
  r.s = s;
  r.epsilon = trivial ? 0 : eps;
  r.depth = eps > 0 ? std::max(2, static_cast<int>(std::ceil(depth_constant / eps))) : kTrivialDepth;
  const QuotientComplex cx(s.q, r.depth);
  const auto sw = sqrt_weights(cx);
  const auto f = trivial ? eigenfunction(s, r.depth) : damped(s, eps, r.depth);
  const auto lam = lambda_of(s);

  r.norm = norm_w(cx, sw, f);
  if (r.norm == 0 || !std::isfinite(r.norm)) throw DomainError("damped function has no finite nonzero norm");
  double shell = 0;
  for (std::size_t i = triangle_size(r.depth - 1); i < f.size(); ++i) shell += std::norm(f[i] * sw[i]);
  r.truncation_fraction = shell / (r.norm * r.norm);
  if (!(r.truncation_fraction < kMaxTruncationFraction)) {
    throw TruncationTooCoarse(fmt::format("outer shell holds {:.3g} of the squared norm at depth {}",
                                          r.truncation_fraction, r.depth));
  }
  for (Direction dir : {Direction::Plus, Direction::Minus}) {
    const Complex l = dir == Direction::Plus ? lam.lambda_plus : lam.lambda_minus;
    auto diff = apply(cx, dir, f).values;
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] -= l * f[i];
    const double res = norm_w(cx, sw, diff, Region::Unmasked) / r.norm;
    (dir == Direction::Plus ? r.residual_plus : r.residual_minus) = res;
  }
  return r;
}

std::vector<ResidualReport> residual_sweep(const SpectralParam& s, const std::vector<double>& eps,
                                           double depth_constant) {
  std::vector<ResidualReport> out;
  out.reserve(eps.size());
  for (double e : eps) out.push_back(residual_report(s, e, depth_constant));
  return out;
}

bool sweep_monotone(const std::vector<ResidualReport>& sweep, double slack) {
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    if (sweep[k].residual_plus > sweep[k - 1].residual_plus * (1 + slack)) return false;
    if (sweep[k].residual_minus > sweep[k - 1].residual_minus * (1 + slack)) return false;
  }
  return true;
}

std::vector<double> norm_divergence(const SpectralParam& s, const std::vector<int>& depths) {
  if (depths.empty()) return {};
  const int top = *std::max_element(depths.begin(), depths.end());
  if (*std::min_element(depths.begin(), depths.end()) < 0) throw DomainError("negative depth");
  const QuotientComplex cx(s.q, std::max(top, 2));
  const auto sw = sqrt_weights(cx);
  std::vector<double> cumulative(cx.depth() + 1);
  double acc = 0;
  std::size_t i = 0;
  for (int m = 0; m <= cx.depth(); ++m) {
    for (int n = 0; n <= m; ++n, ++i) acc += std::norm(eval_eigenfunction(s, m, n) * sw[i]);
    cumulative[m] = acc;
  }
  std::vector<double> out;
  for (int d : depths) out.push_back(cumulative[d]);
  return out;
}

Rational trivial_partial_mass(std::uint32_t q, int depth) {
  Rational acc = 0;
  for (int m = 0; m <= depth; ++m)
    for (int n = 0; n <= m; ++n) acc += vertex_weight(q, {m, n});
  return acc;
}

Rational trivial_total_mass(std::uint32_t q) {
  const Rational Q = q;
  return 1 / (Q * Q + Q + 1) + 2 / (Q * Q - 1) + 1 / ((Q - 1) * (Q - 1) * (Q + 1));
}

WitnessReport non_ramanujan_witness(std::uint32_t q, const std::vector<double>& eps) {
  WitnessReport w;
  w.q = q;
  const double Q = q, r = std::sqrt(Q);
  const auto s = make_param(q, {r, 1.0, 1 / r});
  w.lambda_star = Q * r + Q + r;
  w.sigma2_contains = sigma2_contains(q, w.lambda_star);
  w.margin = w.lambda_star - 3 * Q;
  w.root_moduli = root_moduli(q, w.lambda_star);
  w.sweep = residual_sweep(s, eps);
  w.sweep_monotone = sweep_monotone(w.sweep);
  return w;
}

std::string spectra_svg(std::uint32_t q) {
  const double Q = q, deg = Q * Q + Q + 1;
  const double size = 640, half = size / 2, scale = 0.8 * half / deg;
  auto X = [&](Complex z) { return half + scale * z.real(); };
  auto Y = [&](Complex z) { return half - scale * z.imag(); };
  auto path = [&](auto point) {
    std::string d;
    constexpr int kSteps = 720;
    for (int k = 0; k < kSteps; ++k) {
      const Complex z = point(2 * kPi * k / kSteps);
      d += fmt::format("{}{:.3f},{:.3f} ", k == 0 ? "M" : "L", X(z), Y(z));
    }
    return d + "Z";
  };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\" data-format=\"1\">\n", size);
  svg += fmt::format("<title>spectra for q = {}</title>\n", q);
  svg += fmt::format("<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", size);
  svg += fmt::format(
      "<line class=\"axis\" x1=\"0\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#999\"/>\n"
      "<line class=\"axis\" x1=\"{0}\" y1=\"0\" x2=\"{0}\" y2=\"{1}\" stroke=\"#999\"/>\n",
      half, size);
  svg += fmt::format("<path class=\"sigma2\" d=\"{}\" fill=\"#9ecae1\" fill-opacity=\"0.7\" stroke=\"#3182bd\"/>\n",
                     path([&](double t) { return sigma2_boundary_point(q, t); }));
  svg += fmt::format("<path class=\"sigma1\" d=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
                     path([&](double t) { return sigma1_point(q, t); }));
  for (const auto& z : sigma0(q)) {
    svg += fmt::format("<circle class=\"sigma0\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"5\" fill=\"black\"/>\n", X(z), Y(z));
  }
  for (int k = 0; k < 3; ++k) {
    const Complex z = sigma1_point(q, 2 * kPi * k / 3);
    svg += fmt::format(
        "<path class=\"cusp\" d=\"M{0:.3f},{1:.3f} l-4,-4 m0,8 l8,-8 m0,8 l-8,-8\" stroke=\"#d62728\"/>\n",
        X(z) + 4, Y(z) + 4);
  }
  const double lambda_star = Q * std::sqrt(Q) + Q + std::sqrt(Q);
  const std::array<std::pair<double, const char*>, 3> ticks{
      {{3 * Q, "3q"}, {lambda_star, "√q(q+√q+1)"}, {deg, "q²+q+1"}}};
  for (std::size_t k = 0; k < ticks.size(); ++k) {
    const double x = X(ticks[k].first);
    const double y = half + 16 + 14 * static_cast<double>(k);
    svg += fmt::format("<line class=\"tick\" x1=\"{0:.3f}\" y1=\"{1}\" x2=\"{0:.3f}\" y2=\"{2}\" stroke=\"#333\"/>\n",
                       x, half - 4, y - 10);
    svg += fmt::format(
        "<text class=\"label\" x=\"{:.3f}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{} = {:.4g}</text>\n", x,
        y, ticks[k].second, ticks[k].first);
  }
  return svg + "</svg>\n";
}

void render_spectra(std::uint32_t q, const std::string& path) {
  const std::string svg = spectra_svg(q);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << svg;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace a2q
