#include "a2q/reduction.hpp"

#include <algorithm>
#include <string>

#include "a2q/errors.hpp"

namespace a2q {

namespace {

using Rows = ProjMat::Rows;

Rows identity_rows(FieldCfg field, int d) {
  Rows rows(static_cast<std::size_t>(d), std::vector<RatFunc>(static_cast<std::size_t>(d), RatFunc(field)));
  for (int i = 0; i < d; ++i) rows[i][i] = RatFunc::constant(field, 1);
  return rows;
}

// Negated valuation, i.e. the t-degree of the leading term at infinity.
int top_degree(const RatFunc& f) { return static_cast<int>(-valuation(f).value()); }

RatFunc unit_to_t_power(const RatFunc& f) {
  return RatFunc::t_power(f.field(), top_degree(f)) / f;
}

// Carries out X -> E X F and keeps g = G X W fixed, with every row
// operation in PGL(d, F_q[t]) and every column operation in PGL(d, O).
class Reducer {
 public:
  explicit Reducer(const ProjMat& g)
      : field_(g.field()),
        d_(g.dim()),
        x_(g.rows()),
        g_(identity_rows(field_, d_)),
        w_(identity_rows(field_, d_)),
        e_(static_cast<std::size_t>(d_), 0) {
    if (g.det().is_zero()) throw Singular("matrix is singular (determinant 0)");
  }

  ReductionResult run() {
    triangularize();
    int steps = 0;
    for (;;) {
      canonicalize();
      const auto block = pick_block();
      if (!block) break;
      if (++steps > kMaxBlockSteps) {
        throw IterationLimit("reduction exceeded " + std::to_string(kMaxBlockSteps) + " block steps");
      }
      exchange(block->first, block->second);
    }
    sort_diagonal();

    ReductionResult r{0, std::nullopt, ProjMat(field_, g_), ProjMat(field_, w_), steps};
    r.m = e_[0] - e_[d_ - 1];
    if (d_ == 3) r.n = e_[1] - e_[2];
    return r;
  }

 private:
  // row_i += p * row_j, p polynomial.
  void row_add(int i, int j, const RatFunc& p) {
    for (int k = 0; k < d_; ++k) {
      if (!x_[j][k].is_zero()) x_[i][k] += p * x_[j][k];
      if (!g_[k][i].is_zero()) g_[k][j] -= p * g_[k][i];
    }
  }

  // col_j += c * col_i, c of valuation >= 0.
  void col_add(int j, int i, const RatFunc& c) {
    for (int k = 0; k < d_; ++k) {
      if (!x_[k][i].is_zero()) x_[k][j] += c * x_[k][i];
      if (!w_[j][k].is_zero()) w_[i][k] -= c * w_[j][k];
    }
  }

  void swap_rows(int i, int j) {
    std::swap(x_[i], x_[j]);
    for (int k = 0; k < d_; ++k) std::swap(g_[k][i], g_[k][j]);
  }

  void swap_cols(int i, int j) {
    for (int k = 0; k < d_; ++k) std::swap(x_[k][i], x_[k][j]);
    std::swap(w_[i], w_[j]);
  }

  // col_i *= u with u a unit of O.
  void scale_col(int i, const RatFunc& u) {
    const RatFunc u_inv = u.inverse();
    for (int k = 0; k < d_; ++k) {
      x_[k][i] *= u;
      w_[i][k] *= u_inv;
    }
  }

  void normalize_pivot(int r) {
    e_[r] = top_degree(x_[r][r]);
    const RatFunc u = unit_to_t_power(x_[r][r]);
    if (!u.is_one()) scale_col(r, u);
  }

  // Column reduction over O from the bottom row up: upper triangular with
  // diagonal t^{e_r}.
  void triangularize() {
    for (int r = d_ - 1; r >= 0; --r) {
      int best = -1;
      for (int c = 0; c <= r; ++c) {
        if (x_[r][c].is_zero()) continue;
        if (best < 0 || valuation(x_[r][c]) < valuation(x_[r][best])) best = c;
      }
      if (best < 0) throw Singular("matrix is singular (zero row in reduction)");
      if (best != r) swap_cols(best, r);
      for (int c = 0; c < r; ++c) {
        if (!x_[r][c].is_zero()) col_add(c, r, -(x_[r][c] / x_[r][r]));
      }
      normalize_pivot(r);
    }
  }

  // Leaves x[i][j] with t-degrees in [e_i + 1, e_j - 1].
  void canonicalize_entry(int i, int j) {
    if (x_[i][j].is_zero()) return;
    const RatFunc y = x_[i][j] * RatFunc::t_power(field_, -e_[i]);
    const PolyFq p = polynomial_part(y);
    const RatFunc c = -((y - RatFunc(p)) + RatFunc::constant(field_, p.coeff(0)));
    if (!c.is_zero()) col_add(j, i, c);
    if (x_[i][j].is_zero()) return;

    const PolyFq z = polynomial_part(x_[i][j] * RatFunc::t_power(field_, -e_[j]));
    if (!z.is_zero()) row_add(i, j, -RatFunc(z));
  }

  void canonicalize() {
    // Later entries are only touched by operations on earlier ones in
    // this order, never the reverse.
    for (int i = d_ - 2; i >= 0; --i) {
      for (int j = i + 1; j < d_; ++j) canonicalize_entry(i, j);
    }
  }

  std::optional<std::pair<int, int>> pick_block() const {
    for (int i = 0; i + 1 < d_; ++i) {
      if (!x_[i][i + 1].is_zero()) return std::pair{i, i + 1};
    }
    if (d_ == 3 && !x_[0][2].is_zero()) return std::pair{0, 2};
    return std::nullopt;
  }

  // [[t^a, alpha], [0, t^b]] with a < deg alpha < b becomes
  // [[t^{a+b-e}, *], [0, t^e]], e = deg alpha.
  void exchange(int i, int j) {
    const RatFunc alpha = x_[i][j];
    col_add(i, j, -(RatFunc::t_power(field_, e_[i]) / alpha));
    swap_rows(i, j);
    normalize_pivot(i);
    normalize_pivot(j);
  }

  void sort_diagonal() {
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        if (i != j && !x_[i][j].is_zero()) throw IterationLimit("reduction ended off the diagonal");
      }
    }
    for (int pos = 0; pos < d_; ++pos) {
      int best = pos;
      for (int k = pos + 1; k < d_; ++k) {
        if (e_[k] > e_[best]) best = k;
      }
      if (best != pos) {
        swap_rows(pos, best);
        swap_cols(pos, best);
        std::swap(e_[pos], e_[best]);
      }
    }
  }

  FieldCfg field_;
  int d_;
  Rows x_;
  Rows g_;
  Rows w_;
  std::vector<int> e_;
};

PolyFq random_poly(FieldCfg field, Rng& rng, int degree, bool monic) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng.uniform_int(0, field.q() - 1));
  if (monic) c.back() = 1;
  return PolyFq(field, std::move(c));
}

std::uint32_t random_unit(FieldCfg field, Rng& rng) {
  return static_cast<std::uint32_t>(rng.uniform_int(1, field.q() - 1));
}

// Element of O: numerator degree at most the (monic) denominator degree.
RatFunc random_integral(FieldCfg field, Rng& rng, int max_degree) {
  const int k = static_cast<int>(rng.uniform_int(0, max_degree));
  return RatFunc(random_poly(field, rng, k, false), random_poly(field, rng, k, true));
}

RatFunc random_o_unit(FieldCfg field, Rng& rng, int max_degree) {
  const int k = static_cast<int>(rng.uniform_int(0, max_degree));
  const PolyFq num = random_poly(field, rng, k, true).scaled(random_unit(field, rng));
  const PolyFq den = random_poly(field, rng, k, true);
  return RatFunc(num, den);
}

template <typename Entry, typename Unit>
ProjMat random_product(FieldCfg field, int d, Rng& rng, int factors, Entry off_diag, Unit unit) {
  ProjMat acc = ProjMat::identity(field, d);
  for (int f = 0; f < factors; ++f) {
    Rows e = identity_rows(field, d);
    switch (rng.uniform_int(0, 3)) {
      case 0:
      case 1: {
        const int i = static_cast<int>(rng.uniform_int(0, d - 1));
        int j = static_cast<int>(rng.uniform_int(0, d - 2));
        if (j >= i) ++j;
        e[i][j] = off_diag();
        break;
      }
      case 2: {
        const int i = static_cast<int>(rng.uniform_int(0, d - 1));
        int j = static_cast<int>(rng.uniform_int(0, d - 2));
        if (j >= i) ++j;
        std::swap(e[i], e[j]);
        break;
      }
      default:
        for (int i = 0; i < d; ++i) e[i][i] = unit();
    }
    acc = acc * ProjMat(field, std::move(e));
  }
  return acc;
}

}  // namespace

ProjMat::ProjMat(FieldCfg field, Rows rows) : field_(field), rows_(std::move(rows)) {
  const std::size_t d = rows_.size();
  if (d != 2 && d != 3) throw DomainError("matrix must be 2x2 or 3x3");
  for (const auto& row : rows_) {
    if (row.size() != d) throw DomainError("matrix must be square");
    for (const auto& x : row) {
      if (!(x.field() == field_)) throw FieldMismatch("matrix entries over different fields");
    }
  }
}

ProjMat ProjMat::identity(FieldCfg field, int d) { return ProjMat(field, identity_rows(field, d)); }

ProjMat ProjMat::diag_t(FieldCfg field, const std::vector<int>& exponents) {
  Rows rows = identity_rows(field, static_cast<int>(exponents.size()));
  for (std::size_t i = 0; i < exponents.size(); ++i) rows[i][i] = RatFunc::t_power(field, exponents[i]);
  return ProjMat(field, std::move(rows));
}

RatFunc ProjMat::det() const {
  const auto& a = rows_;
  if (dim() == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

ProjMat ProjMat::scaled(const RatFunc& lambda) const {
  Rows out = rows_;
  for (auto& row : out)
    for (auto& x : row) x *= lambda;
  return ProjMat(field_, std::move(out));
}

ProjMat operator*(const ProjMat& a, const ProjMat& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix product of different sizes");
  if (!(a.field() == b.field())) throw FieldMismatch("matrix product over different fields");
  const int d = a.dim();
  Rows out(static_cast<std::size_t>(d), std::vector<RatFunc>(static_cast<std::size_t>(d), RatFunc(a.field())));
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        if (!b.at(k, j).is_zero()) out[i][j] += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return ProjMat(a.field(), std::move(out));
}

bool operator==(const ProjMat& a, const ProjMat& b) {
  if (a.dim() != b.dim() || !(a.field() == b.field())) return false;
  const int d = a.dim();
  std::optional<RatFunc> lambda;
  for (int i = 0; i < d && !lambda; ++i) {
    for (int j = 0; j < d && !lambda; ++j) {
      if (a.at(i, j).is_zero()) continue;
      if (b.at(i, j).is_zero()) return false;
      lambda = b.at(i, j) / a.at(i, j);
    }
  }
  if (!lambda) return false;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(a.at(i, j) * *lambda == b.at(i, j))) return false;
    }
  }
  return true;
}

ProjMat parse_matrix(FieldCfg field, std::string_view text) {
  Rows rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view row_text = text.substr(start, stop - start);
    std::vector<RatFunc> row;
    std::size_t a = 0;
    while (a <= row_text.size()) {
      std::size_t b = row_text.find(',', a);
      if (b == std::string_view::npos) b = row_text.size();
      row.push_back(parse_ratfunc(field, row_text.substr(a, b - a)));
      a = b + 1;
    }
    rows.push_back(std::move(row));
    start = stop + 1;
  }
  const std::size_t d = rows.size();
  for (const auto& row : rows) {
    if (row.size() != d) throw ParseError("matrix \"" + std::string(text) + "\" is not square");
  }
  if (d != 2 && d != 3) throw ParseError("matrix \"" + std::string(text) + "\" must be 2x2 or 3x3");
  return ProjMat(field, std::move(rows));
}

std::string to_string(const ProjMat& g) {
  std::string out;
  for (int i = 0; i < g.dim(); ++i) {
    if (i > 0) out += ';';
    for (int j = 0; j < g.dim(); ++j) {
      if (j > 0) out += ',';
      out += to_string(g.at(i, j));
    }
  }
  return out;
}

bool is_in_gamma(const ProjMat& g) {
  const RatFunc det = g.det();
  if (det.is_zero()) return false;
  const unsigned d = static_cast<unsigned>(g.dim());
  const auto a1 = kth_root(det.numerator().monic(), d);
  const auto b1 = kth_root(det.denominator(), d);
  if (!a1 || !b1) return false;
  const ProjMat h = g.scaled(RatFunc(*b1, *a1));
  for (const auto& row : h.rows()) {
    for (const auto& x : row) {
      if (!x.is_polynomial()) return false;
    }
  }
  const RatFunc hd = h.det();
  return hd.is_polynomial() && hd.numerator().degree() == 0;
}

bool is_in_w(const ProjMat& g) {
  const RatFunc det = g.det();
  if (det.is_zero()) return false;
  Valuation mu = Valuation::infinity();
  for (const auto& row : g.rows()) {
    for (const auto& x : row) mu = std::min(mu, valuation(x));
  }
  // nu(det(t^mu g)) = nu(det g) - d * mu.
  return valuation(det).value() - g.dim() * mu.value() == 0;
}

ReductionResult reduce2(const ProjMat& g) {
  if (g.dim() != 2) throw DimensionMismatch("reduce2 expects a 2x2 matrix");
  return Reducer(g).run();
}

ReductionResult reduce3(const ProjMat& g) {
  if (g.dim() != 3) throw DimensionMismatch("reduce3 expects a 3x3 matrix");
  return Reducer(g).run();
}

ReductionResult reduce(const ProjMat& g) { return g.dim() == 2 ? reduce2(g) : reduce3(g); }

bool verify_witness(const ReductionResult& r, const ProjMat& g) {
  if (r.gamma.dim() != g.dim() || r.w.dim() != g.dim()) return false;
  if (r.m < 0) return false;
  std::vector<int> exps{r.m};
  if (g.dim() == 3) {
    if (!r.n || *r.n < 0 || *r.n > r.m) return false;
    exps.push_back(*r.n);
  } else if (r.n) {
    return false;
  }
  exps.push_back(0);
  if (!is_in_gamma(r.gamma) || !is_in_w(r.w)) return false;
  return r.gamma * ProjMat::diag_t(g.field(), exps) * r.w == g;
}

ProjMat random_gamma(FieldCfg field, int d, Rng& rng, int factors, int max_degree) {
  return random_product(
      field, d, rng, factors,
      [&] { return RatFunc(random_poly(field, rng, static_cast<int>(rng.uniform_int(0, max_degree)), false)); },
      [&] { return RatFunc::constant(field, random_unit(field, rng)); });
}

ProjMat random_w(FieldCfg field, int d, Rng& rng, int factors, int max_degree) {
  return random_product(
      field, d, rng, factors, [&] { return random_integral(field, rng, max_degree); },
      [&] { return random_o_unit(field, rng, max_degree); });
}

RatFunc random_ratfunc(FieldCfg field, Rng& rng, int max_degree) {
  PolyFq num(field);
  while (num.is_zero()) num = random_poly(field, rng, static_cast<int>(rng.uniform_int(0, max_degree)), false);
  return RatFunc(num, random_poly(field, rng, static_cast<int>(rng.uniform_int(0, max_degree)), true));
}

}  // namespace a2q
