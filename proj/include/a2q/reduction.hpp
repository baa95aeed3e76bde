#pragma once

#include <optional>
#include <vector>

#include "a2q/ratfunc.hpp"
#include "a2q/rng.hpp"

namespace a2q {

// Invertible 2x2 or 3x3 matrix over F_q(t), read modulo scalars. The
// entries of a particular representative are accessible, but operator==
// compares classes.
class ProjMat {
 public:
  using Rows = std::vector<std::vector<RatFunc>>;

  // Throws DomainError unless rows is a square 2x2 or 3x3 array over one
  // field. Singular matrices are accepted here and rejected by the
  // operations that need invertibility.
  ProjMat(FieldCfg field, Rows rows);

  static ProjMat identity(FieldCfg field, int d);
  // diag(t^e_0, ..., t^e_{d-1}); exponents may be negative.
  static ProjMat diag_t(FieldCfg field, const std::vector<int>& exponents);

  const FieldCfg& field() const noexcept { return field_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()); }
  const RatFunc& at(int i, int j) const { return rows_[i][j]; }
  const Rows& rows() const noexcept { return rows_; }

  RatFunc det() const;
  ProjMat scaled(const RatFunc& lambda) const;

  friend ProjMat operator*(const ProjMat& a, const ProjMat& b);
  // Equality of projective classes.
  friend bool operator==(const ProjMat& a, const ProjMat& b);

 private:
  FieldCfg field_;
  Rows rows_;
};

// Parses "a,b;c,d" or "a,b,c;d,e,f;g,h,i" with RatFunc entries.
ProjMat parse_matrix(FieldCfg field, std::string_view text);
std::string to_string(const ProjMat& g);

struct ReductionResult {
  int m = 0;
  // Absent for 2x2 input.
  std::optional<int> n;
  ProjMat gamma;
  ProjMat w;
  // Number of block exchange steps taken.
  int steps = 0;
};

// The class contains a representative with polynomial entries and
// constant nonzero determinant, i.e. lies in PGL(d, F_q[t]).
bool is_in_gamma(const ProjMat& g);
// The class contains a representative with entries of valuation >= 0 and
// determinant of valuation 0, i.e. lies in PGL(d, O).
bool is_in_w(const ProjMat& g);

// Normal form g = gamma * diag(t^m, 1) * w. Throws Singular, IterationLimit.
ReductionResult reduce2(const ProjMat& g);
// Normal form g = gamma * diag(t^m, t^n, 1) * w with m >= n >= 0.
ReductionResult reduce3(const ProjMat& g);
// Dispatches on the dimension.
ReductionResult reduce(const ProjMat& g);

bool verify_witness(const ReductionResult& r, const ProjMat& g);

inline constexpr int kMaxBlockSteps = 10000;

// Random elements built from elementary matrices, permutations and
// diagonal units, so membership holds by construction.
ProjMat random_gamma(FieldCfg field, int d, Rng& rng, int factors = 6, int max_degree = 2);
ProjMat random_w(FieldCfg field, int d, Rng& rng, int factors = 6, int max_degree = 2);
// Random nonzero rational function with numerator and denominator of
// degree at most max_degree.
RatFunc random_ratfunc(FieldCfg field, Rng& rng, int max_degree);

}  // namespace a2q
