// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "a2q/complex.hpp"
#include "a2q/eigen.hpp"
#include "a2q/operator.hpp"
#include "a2q/reduction.hpp"
#include "a2q/spectra.hpp"

using namespace a2q;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

std::string fmtd(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string vname(Vertex v) { return "v(" + std::to_string(v.m) + "," + std::to_string(v.n) + ")"; }

// Rows as printed in the recurrences for f(v00) = 1, m >= 1.
std::map<Vertex, std::uint64_t> printed_row(std::uint64_t q, Direction dir, Vertex v) {
  const int m = v.m, n = v.n;
  const bool plus = dir == Direction::Plus;
  if (m == 0) return plus ? std::map<Vertex, std::uint64_t>{{{1, 0}, q * q + q + 1}}
                          : std::map<Vertex, std::uint64_t>{{{1, 1}, q * q + q + 1}};
  if (n == 0) {
    if (plus) return {{{m + 1, 0}, 1}, {{m, 1}, q * q + q}};
    return {{{m - 1, 0}, q * q}, {{m + 1, 1}, q + 1}};
  }
  if (n == m) {
    if (plus) return {{{m - 1, m - 1}, q * q}, {{m + 1, m}, q + 1}};
    return {{{m, m - 1}, q * q + q}, {{m + 1, m + 1}, 1}};
  }
  if (plus) return {{{m - 1, n - 1}, q * q}, {{m, n + 1}, q}, {{m + 1, n}, 1}};
  return {{{m - 1, n}, q * q}, {{m, n - 1}, q}, {{m + 1, n + 1}, 1}};
}

Outcome coefficient_reproduction() {
  Outcome o;
  int rows = 0;
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const QuotientComplex cx(q, 21);
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const Vertex v = cx.vertices()[i];
      if (v.m > 20) continue;
      for (Direction dir : {Direction::Plus, Direction::Minus}) {
        std::map<Vertex, std::uint64_t> got, grid;
        for (const auto& c : coeff_row(q, dir, v)) got[c.target] = c.value;
        for (const auto& e : cx.row(dir, i)) grid[cx.vertices()[e.target]] = e.coeff;
        const auto want = printed_row(q, dir, v);
        o.require(got == want, "q=" + std::to_string(q) + " row at " + vname(v));
        o.require(grid == want && !cx.masked(dir, i), "q=" + std::to_string(q) + " truncated row at " + vname(v));
        ++rows;
      }
    }
  }
  o.detail = o.pass ? std::to_string(rows) + " rows equal the printed coefficients" : o.detail;
  return o;
}

BigInt pow(std::uint32_t q, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= q;
  return r;
}

Outcome stabilizer_cross_check() {
  Outcome o;
  int edges = 0;
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const BigInt Q = q, g = (Q - 1) * (Q - 1);
    const std::string tag = "q=" + std::to_string(q) + " ";
    auto inter = [&](Vertex a, Vertex b) {
      return count_stabilizer(q, intersect(stabilizer_bounds(a), stabilizer_bounds(b)));
    };
    o.require(inter({0, 0}, {1, 0}) == pow(q, 3) * (Q + 1) * g, tag + "|G00 cap G10|");
    o.require(inter({0, 0}, {1, 1}) == pow(q, 3) * (Q + 1) * g, tag + "|G00 cap G11|");
    o.require(inter({1, 0}, {1, 1}) == pow(q, 4) * g, tag + "|G10 cap G11|");
    for (int m = 0; m <= 20; ++m) {
      for (int n = 0; n <= m; ++n) {
        const Vertex v{m, n};
        BigInt want = pow(q, 2 * m + 3) * g;
        if (m == 0) want = pow(q, 3) * (Q + 1) * (Q * Q + Q + 1) * g;
        else if (n == 0 || n == m) want *= Q + 1;
        const BigInt got = count_stabilizer(q, stabilizer_bounds(v));
        o.require(got == want && stabilizer_order(q, v) == want, tag + "N at " + vname(v));
        if (n >= 1 && m >= 2 && n < m) o.require(inter({m, n - 1}, v) == pow(q, 2 * m + 2) * g, tag + "edge into " + vname(v));
        if (m >= 1 && n == 0) {
          o.require(edge_coeff_from_stabilizers(q, v, {m + 1, 1}) == Rational(q + 1), tag + "n=0 diagonal edge at " + vname(v));
        }
        for (Direction dir : {Direction::Plus, Direction::Minus}) {
          for (const auto& c : coeff_row(q, dir, v)) {
            o.require(edge_coeff_from_stabilizers(q, v, c.target) == Rational(c.value), tag + "index at " + vname(v));
            ++edges;
          }
        }
      }
    }
  }
  o.require(stabilizer_order(2, {0, 0}) == 168, "|PGL(3,F2)|");
  if (o.pass) o.detail = std::to_string(edges) + " indices match; N00(q=2)=168; n=0 diagonal edge = q+1";
  return o;
}

Outcome adjointness() {
  Outcome o;
  const QuotientComplex cx(2, 50);
  Rng rng(2024);
  const int failures = adjoint_failures_exact(cx, 100, rng);
  o.require(failures == 0, std::to_string(failures) + " pairs with nonzero exact defect");
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const QuotientComplex c(q, 50);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (Direction dir : {Direction::Plus, Direction::Minus}) {
        if (c.masked(dir, i)) continue;
        std::uint64_t sum = 0;
        for (const auto& e : c.row(dir, i)) sum += e.coeff;
        o.require(sum == c.degree(), "row sum at " + vname(c.vertices()[i]));
      }
    }
  }
  if (o.pass) o.detail = "100 exact pairs at M=50, every row sums to q^2+q+1";
  return o;
}

Triple unimodular(double a, double b) { return {std::polar(1.0, a), std::polar(1.0, b), std::polar(1.0, -a - b)}; }

Outcome closed_forms() {
  Outcome o;
  Rng rng(77);
  const Complex w = std::polar(1.0, 2 * kPi / 3);
  double worst[3] = {0, 0, 0};
  for (int k = 0; k < 100; ++k) {
    const std::uint32_t q = k % 2 ? 3 : 2;
    Triple g;
    do {
      g = unimodular(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    } while (smallest_gap(g) < 10 * kTolSing);
    const double t = rng.uniform(-kPi, kPi);
    Triple d{std::polar(1.0, 2 * t), std::polar(1.0, -t), std::polar(1.0, -t)};
    const Complex r = closed_form::ipow(w, static_cast<int>(rng.uniform_int(0, 2)));
    Triple tr{r, r, r};
    const Triple* fam[3] = {&g, &d, &tr};
    const Stratum want[3] = {Stratum::Generic, Stratum::Double, Stratum::Triple};
    for (int f = 0; f < 3; ++f) {
      const auto p = make_param(q, *fam[f]);
      o.require(p.stratum == want[f], "stratum of sample " + std::to_string(k));
      worst[f] = std::max(worst[f], verify_recurrence(p, 30));
    }
  }
  for (double x : worst) o.require(x < 1e-9, "residual " + fmtd("%.3g", x));
  int exact = 0;
  for (std::uint32_t q : {2u, 3u, 5u})
    for (int k = 0; k < 3; ++k) exact += trivial_failures_exact(q, k, 30);
  o.require(exact == 0, std::to_string(exact) + " exact trivial failures");
  if (o.pass) {
    o.detail = "max residual generic " + fmtd("%.2e", worst[0]) + ", double " + fmtd("%.2e", worst[1]) +
               ", triple " + fmtd("%.2e", worst[2]) + "; trivial exact";
  }
  return o;
}

using CL = std::complex<long double>;

// Least-squares slope of log(dev) against log(delta).
double fitted_order(const std::vector<long double>& deltas, const std::vector<long double>& devs) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = deltas.size();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const long double x = std::log(deltas[i]), y = std::log(devs[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return static_cast<double>((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

Outcome stratum_limits() {
  Outcome o;
  double lowest = INFINITY;
  for (long double q : {2.0L, 3.0L, 5.0L}) {
    for (auto [a, b] : {std::pair{0.8L, -0.4L}, {2.2L, 1.1L}}) {
      const CL s1 = std::polar(1.0L, a), s2 = std::polar(1.0L, b);
      for (bool to_triple : {false, true}) {
        std::vector<long double> deltas, devs;
        for (long double delta = 1e-2L; delta >= 1e-5L; delta /= 2) {
          long double worst = 0;
          for (int m = 0; m <= 10; ++m) {
            for (int n = 0; n <= m; ++n) {
              CL near, limit;
              if (to_triple) {
                near = closed_form::double_root(q, s2 * (1 + delta), s2, m, n);
                limit = closed_form::triple_root(q, s2, m, n);
              } else {
                near = closed_form::generic<long double>(q, {s1, s2 * (1 + delta), s2}, m, n);
                limit = closed_form::double_root(q, s1, s2, m, n);
              }
              worst = std::max(worst, std::abs(near - limit) / std::max(1.0L, std::abs(limit)));
            }
          }
          deltas.push_back(delta);
          devs.push_back(worst);
        }
        const double order = fitted_order(deltas, devs);
        lowest = std::min(lowest, order);
        o.require(order >= 0.9, std::string(to_triple ? "double->triple" : "generic->double") + " order " +
                                    fmtd("%.3f", order));
      }
    }
  }
  if (o.pass) o.detail = "lowest fitted order " + fmtd("%.4f", lowest) + " over 12 limits";
  return o;
}

Outcome operator_norm() {
  Outcome o;
  double prev = 0, last = 0;
  for (int M : {25, 50, 100, 200}) {
    const auto est = norm_estimate(2, M, 500);
    o.require(est.estimate <= 7 + 1e-9, "estimate above 7 at M=" + std::to_string(M));
    o.require(est.estimate >= prev, "not monotone at M=" + std::to_string(M));
    prev = last = est.estimate;
  }
  o.require(std::abs(last - 7) <= 0.07, "M=200 estimate " + fmtd("%.6f", last));
  if (o.pass) o.detail = "M=200 estimate " + fmtd("%.9f", last) + ", 7 - estimate = " + fmtd("%.2e", 7 - last);
  return o;
}

bool sweep_ok(const std::vector<ResidualReport>& sweep, Outcome& o, const std::string& name) {
  bool ok = sweep_monotone(sweep);
  for (const auto& r : sweep) {
    ok = ok && r.truncation_fraction < kMaxTruncationFraction &&
         r.depth == static_cast<int>(std::ceil(kDepthConstant / r.epsilon));
  }
  o.require(ok, name);
  return ok;
}

SpectralParam sigma1_param(std::uint32_t q, double theta) {
  const double r = std::sqrt(double(q));
  return make_param(q, {std::polar(r, theta), std::polar(1.0, -2 * theta), std::polar(1 / r, theta)});
}

Outcome containment() {
  Outcome o;
  std::vector<std::pair<std::string, SpectralParam>> family{{"lambda=0", from_lambda(2, 0)}};
  Rng rng(11);
  while (family.size() < 4) {
    const Triple s = unimodular(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    if (smallest_gap(s) < 10 * kTolSing) continue;
    const auto p = make_param(2, s);
    if (tag_point(2, lambda_of(p).lambda_plus).tag != SetTag::Sigma2Interior) continue;
    family.push_back({"random sigma2 #" + std::to_string(family.size()), p});
  }
  for (double theta : {0.0, 0.7, 2.1}) family.push_back({"sigma1 theta=" + fmtd("%g", theta), sigma1_param(2, theta)});
  double last = 0;
  for (const auto& [name, p] : family) {
    const auto sweep = residual_sweep(p, kDefaultEpsilons);
    sweep_ok(sweep, o, name);
    last = std::max({last, sweep.back().residual_plus, sweep.back().residual_minus});
  }
  if (o.pass) o.detail = "7 sweeps decrease, largest residual at eps=0.025: " + fmtd("%.4f", last);
  return o;
}

Outcome witness() {
  Outcome o;
  const auto w = non_ramanujan_witness(2);
  const double want = 2 * std::sqrt(2.0) + std::sqrt(2.0) - 4;
  o.require(!w.sigma2_contains, "sigma2_contains(lambda*) is true");
  o.require(w.margin > 0 && std::abs(w.margin - want) < 1e-12, "margin " + fmtd("%.12f", w.margin));
  o.require(w.sweep_monotone, "sweep not monotone");
  sweep_ok(w.sweep, o, "witness sweep");
  if (o.pass) {
    o.detail = "lambda*=" + fmtd("%.6f", w.lambda_star) + " outside sigma2, margin " + fmtd("%.6f", w.margin) +
               ", residual " + fmtd("%.4f", w.sweep.front().residual_plus) + " -> " +
               fmtd("%.4f", w.sweep.back().residual_plus);
  }
  return o;
}

Outcome round_trips() {
  Outcome o;
  int ok = 0;
  for (std::uint32_t q : {2u, 3u}) {
    FieldCfg f(q);
    Rng rng(500 + q);
    for (int trial = 0; trial < 250; ++trial) {
      const int m = static_cast<int>(rng.uniform_int(0, 5));
      const int n = static_cast<int>(rng.uniform_int(0, m));
      const ProjMat g = random_gamma(f, 3, rng) * ProjMat::diag_t(f, {m, n, 0}) * random_w(f, 3, rng);
      const auto r = reduce3(g);
      const bool good = r.m == m && r.n == n && verify_witness(r, g);
      o.require(good, "q=" + std::to_string(q) + " trial " + std::to_string(trial));
      ok += good;
    }
  }
  o.detail = o.pass ? std::to_string(ok) + "/500 reduced and verified" : o.detail;
  return o;
}

Outcome norm_dichotomy() {
  Outcome o;
  const double total = 8.0 / 7;
  o.require(trivial_total_mass(2) == Rational(8, 7), "closed-form total mass");
  o.require(static_cast<double>(Rational(8, 7) - trivial_partial_mass(2, 40)) < 1e-10, "exact partial mass at M=40");
  for (int k = 0; k < 3; ++k) {
    const auto t = from_lambda(2, 7.0 * std::polar(1.0, 2 * kPi * k / 3));
    o.require(t.stratum == Stratum::Trivial, "trivial stratum");
    o.require(std::abs(norm_divergence(t, {40})[0] - total) < 1e-10, "trivial partial norm at M=40");
  }
  std::vector<SpectralParam> family{from_lambda(2, 0), make_param(2, {1.0, 1.0, 1.0}), sigma1_param(2, 0.7),
                                    make_param(2, {std::polar(1.0, 0.8), std::polar(1.0, -0.4), std::polar(1.0, -0.4)})};
  Rng rng(12);
  while (family.size() < 8) {
    const Triple s = unimodular(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    if (smallest_gap(s) > 10 * kTolSing) family.push_back(make_param(2, s));
  }
  double smallest = INFINITY;
  std::vector<int> depths;
  for (int M = 25; M <= 200; M += 25) depths.push_back(M);
  for (const auto& s : family) {
    const auto pn = norm_divergence(s, depths);
    for (std::size_t k = 1; k < pn.size(); ++k) o.require(pn[k] > pn[k - 1], "partial norms not increasing");
    o.require(pn.back() > 10 * total, "plateau below 10x trivial mass");
    smallest = std::min(smallest, pn.back());
  }
  if (o.pass) o.detail = "trivial -> 8/7; smallest nontrivial partial norm at M=200: " + fmtd("%.4g", smallest);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact coefficient reproduction", 1, coefficient_reproduction},
      {2, "stabilizer cross-check", 1, stabilizer_cross_check},
      {3, "adjointness and regularity", 5, adjointness},
      {4, "eigenfunction closed forms", 30, closed_forms},
      {5, "stratum-limit consistency", 10, stratum_limits},
      {6, "operator norm", 60, operator_norm},
      {7, "containment residual sweeps", 300, containment},
      {8, "non-Ramanujan witness", 60, witness},
      {9, "reduction round trips", 30, round_trips},
      {10, "norm dichotomy", 30, norm_dichotomy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += " (over the " + fmtd("%g", c.limit_s) + " s budget)";
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
