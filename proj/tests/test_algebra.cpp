#include <doctest.h>

#include <random>
#include <vector>

#include "a2q/errors.hpp"
#include "a2q/ratfunc.hpp"

using namespace a2q;

namespace {

// Schoolbook product on raw coefficient vectors, kept apart from PolyFq.
std::vector<unsigned> naive_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                unsigned q) {
  std::vector<unsigned> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % q;
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

PolyFq random_poly(FieldCfg f, std::mt19937_64& rng, int max_deg, bool monic) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::uint32_t> c(0, f.q() - 1);
  std::vector<std::uint32_t> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = c(rng);
  if (monic) v.back() = 1;
  return PolyFq(f, v);
}

RatFunc random_ratfunc(FieldCfg f, std::mt19937_64& rng) {
  PolyFq den = random_poly(f, rng, 4, true);
  return RatFunc(random_poly(f, rng, 5, false), den);
}

}  // namespace

TEST_CASE("field axioms hold exhaustively for small q") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldCfg f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (std::uint32_t c = 0; c < q; ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        }
      }
    }
  }
}

TEST_CASE("field rejects composite and oversized moduli") {
  CHECK_THROWS_AS(FieldCfg(1), DomainError);
  CHECK_THROWS_AS(FieldCfg(4), DomainError);
  CHECK_THROWS_AS(FieldCfg(65537), DomainError);
  CHECK_NOTHROW(FieldCfg(65521));
}

TEST_CASE("polynomial product agrees with schoolbook expansion") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    FieldCfg f(q);
    for (int trial = 0; trial < 100; ++trial) {
      PolyFq a = random_poly(f, rng, 8, false);
      PolyFq b = random_poly(f, rng, 8, false);
      if (a.is_zero() || b.is_zero()) continue;
      std::vector<unsigned> av(a.coefficients().begin(), a.coefficients().end());
      std::vector<unsigned> bv(b.coefficients().begin(), b.coefficients().end());
      auto expect = naive_mul(av, bv, q);
      PolyFq prod = a * b;
      REQUIRE(prod.degree() + 1 == static_cast<int>(expect.size()));
      for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(prod.coeff(static_cast<int>(i)) == expect[i]);
    }
  }
}

TEST_CASE("division identity a = qb + r with deg r < deg b") {
  std::mt19937_64 rng(11);
  FieldCfg f(5);
  for (int trial = 0; trial < 200; ++trial) {
    PolyFq a = random_poly(f, rng, 9, false);
    PolyFq b = random_poly(f, rng, 4, true);
    auto [quo, rem] = divmod(a, b);
    CHECK(quo * b + rem == a);
    CHECK(rem.degree() < b.degree());
  }
  CHECK_THROWS_AS(divmod(PolyFq::t(f), PolyFq(f)), DegenerateInput);
}

TEST_CASE("valuation examples") {
  FieldCfg f(3);
  const PolyFq t = PolyFq::t(f);
  CHECK(valuation(RatFunc(t * t)) == Valuation::of(-2));
  CHECK(valuation(RatFunc::t_power(f, -1)) == Valuation::of(1));
  CHECK(valuation(RatFunc(t + PolyFq::constant(f, 1), t.pow(3))) == Valuation::of(2));
  CHECK(valuation(RatFunc(f)).is_infinite());
  CHECK_THROWS_AS(valuation(RatFunc(f)).value(), DegenerateInput);
  CHECK(Valuation::of(1000) < Valuation::infinity());
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldCfg f(q);
    for (int trial = 0; trial < 200; ++trial) {
      RatFunc a = random_ratfunc(f, rng);
      RatFunc b = random_ratfunc(f, rng);
      CHECK(valuation(a * b) == valuation(a) + valuation(b));
      const Valuation va = valuation(a), vb = valuation(b), vs = valuation(a + b);
      CHECK(vs >= std::min(va, vb));
      if (va != vb) CHECK(vs == std::min(va, vb));
    }
  }
}

TEST_CASE("canonical form makes equality structural") {
  FieldCfg f(5);
  const PolyFq t = PolyFq::t(f);
  const PolyFq one = PolyFq::constant(f, 1);
  RatFunc a(t * t - one, (t - one).scaled(3));
  RatFunc b(t + one, PolyFq::constant(f, 3));
  CHECK(a == b);
  CHECK(a.denominator().is_one());
  CHECK(RatFunc(t, t) == RatFunc::constant(f, 1));
  CHECK_THROWS_AS(RatFunc(t, PolyFq(f)), DegenerateInput);
}

TEST_CASE("polynomial part and the map T") {
  FieldCfg f(2);
  const PolyFq t = PolyFq::t(f);
  const PolyFq one = PolyFq::constant(f, 1);
  RatFunc alpha(t * t + one, t);
  CHECK(polynomial_part(alpha) == t);
  CHECK(t_map(alpha) == RatFunc(t));
  CHECK(polynomial_part(RatFunc(t.pow(3))) == t.pow(3));
  CHECK(polynomial_part(RatFunc::t_power(f, -1)).is_zero());
  CHECK(t_map(RatFunc::t_power(f, -1)) == RatFunc(t));
  CHECK_THROWS_AS(t_map(RatFunc(t)), DegenerateInput);
}

TEST_CASE("polynomial part properties and T-iteration termination") {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldCfg f(q);
    for (int trial = 0; trial < 200; ++trial) {
      RatFunc alpha = random_ratfunc(f, rng);
      const PolyFq p = polynomial_part(alpha);
      CHECK(polynomial_part(RatFunc(p)) == p);
      CHECK(valuation(alpha - RatFunc(p)) >= Valuation::of(1));
      int steps = 0;
      while (!alpha.is_polynomial()) {
        const int before = alpha.denominator().degree();
        alpha = t_map(alpha);
        CHECK(alpha.denominator().degree() < before);
        REQUIRE(++steps < 64);
      }
    }
  }
}

TEST_CASE("cube roots") {
  FieldCfg f2(2);
  const PolyFq t = PolyFq::t(f2);
  CHECK(cube_root(t.pow(3)) == t);
  CHECK_FALSE(cube_root(t).has_value());
  // (t+1)^3 = t^3+t^2+t+1 over F_2 by schoolbook expansion, so t^3+1 is no cube.
  auto cube = naive_mul(naive_mul({1, 1}, {1, 1}, 2), {1, 1}, 2);
  CHECK(cube == std::vector<unsigned>{1, 1, 1, 1});
  CHECK_FALSE(cube_root(parse_poly(f2, "t^3+1")).has_value());
  CHECK(cube_root(parse_poly(f2, "t^3+t^2+t+1")) == parse_poly(f2, "t+1"));

  FieldCfg f3(3);
  CHECK(cube_root(parse_poly(f3, "t^6+2*t^3+1")) == parse_poly(f3, "t^2+2*t+1"));
  CHECK(cube_root(parse_poly(f3, "t^6+1")) == parse_poly(f3, "t^2+1"));
  CHECK_FALSE(cube_root(parse_poly(f3, "t^3+t")).has_value());
}

TEST_CASE("cube_root(b^3) = b and square_root(b^2) = b for random monic b") {
  std::mt19937_64 rng(13);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldCfg f(q);
    for (int trial = 0; trial < 200; ++trial) {
      PolyFq b = random_poly(f, rng, 10, true);
      CHECK(cube_root(b.pow(3)) == b);
      CHECK(square_root(b.pow(2)) == b);
    }
  }
}

TEST_CASE("text round trip and parse errors") {
  FieldCfg f(3);
  CHECK(to_string(parse_poly(f, "t^3+2*t+1")) == "t^3+2*t+1");
  CHECK(to_string(parse_poly(f, " 2 t^2 - t ")) == "2*t^2+2*t");
  CHECK(to_string(parse_poly(f, "0")) == "0");
  RatFunc r = parse_ratfunc(f, "(t^2+1)/(t)");
  CHECK(to_string(r) == "(t^2+1)/(t)");
  CHECK(parse_ratfunc(f, to_string(r)) == r);
  CHECK(parse_ratfunc(f, "(2*t)/(2)") == RatFunc(PolyFq::t(f)));
  CHECK_THROWS_AS(parse_poly(f, "3*t"), ParseError);
  CHECK_THROWS_AS(parse_poly(f, "t^"), ParseError);
  CHECK_THROWS_AS(parse_poly(f, ""), ParseError);
  CHECK_THROWS_AS(parse_ratfunc(f, "t/0"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc(f, "(t+1"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc(f, "t/t/t"), ParseError);
}
