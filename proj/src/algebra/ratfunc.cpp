#include "a2q/ratfunc.hpp"

#include <cctype>
#include <string>

#include "a2q/errors.hpp"

namespace a2q {

std::int64_t Valuation::value() const {
  if (infinite_) throw DegenerateInput("valuation of zero is infinite");
  return value_;
}

RatFunc::RatFunc(FieldCfg field) : num_(field), den_(PolyFq::constant(field, 1)) {}

RatFunc::RatFunc(PolyFq numerator)
    : num_(std::move(numerator)), den_(PolyFq::constant(num_.field(), 1)) {}

RatFunc::RatFunc(PolyFq numerator, PolyFq denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (!(num_.field() == den_.field())) throw FieldMismatch("rational function over mixed fields");
  if (den_.is_zero()) throw DegenerateInput("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::constant(FieldCfg field, std::int64_t c) {
  return RatFunc(PolyFq::constant(field, c));
}

RatFunc RatFunc::t_power(FieldCfg field, int k) {
  if (k >= 0) return RatFunc(PolyFq::monomial(field, 1, k));
  return RatFunc(PolyFq::constant(field, 1), PolyFq::monomial(field, 1, -k));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = PolyFq::constant(num_.field(), 1);
    return;
  }
  if (!den_.is_constant()) {
    PolyFq g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divmod(num_, g).quotient;
      den_ = divmod(den_, g).quotient;
    }
  }
  const std::uint32_t lead_inv = field().inv(den_.leading());
  if (lead_inv != 1) {
    num_ = num_.scaled(lead_inv);
    den_ = den_.scaled(lead_inv);
  }
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DegenerateInput("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc out(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  return out;
}

RatFunc RatFunc::operator-() const {
  RatFunc out(*this);
  out.num_ = -out.num_;
  return out;
}

RatFunc& RatFunc::operator+=(const RatFunc& rhs) {
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs) { return *this += -rhs; }

RatFunc& RatFunc::operator*=(const RatFunc& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs) { return *this *= rhs.inverse(); }

Valuation valuation(const RatFunc& f) {
  if (f.is_zero()) return Valuation::infinity();
  return Valuation::of(f.denominator().degree() - f.numerator().degree());
}

PolyFq polynomial_part(const RatFunc& alpha) {
  return divmod(alpha.numerator(), alpha.denominator()).quotient;
}

RatFunc t_map(const RatFunc& alpha) {
  if (alpha.is_polynomial()) {
    throw DegenerateInput("T is undefined on polynomials (alpha - [alpha] = 0)");
  }
  // alpha - [alpha] = r / den with r the division remainder.
  const PolyFq r = divmod(alpha.numerator(), alpha.denominator()).remainder;
  return RatFunc(alpha.denominator(), r);
}

std::string to_string(const PolyFq& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const std::uint32_t c = p.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += 't';
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

namespace {

class PolyParser {
 public:
  PolyParser(FieldCfg field, std::string_view text) : field_(field), text_(text) {}

  PolyFq parse() {
    PolyFq acc(field_);
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      PolyFq term = parse_term();
      acc += negative ? -term : term;
      first = false;
      skip_space();
    }
    return acc;
  }

 private:
  PolyFq parse_term() {
    std::uint32_t coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_number();
      have_coeff = true;
      if (coeff >= field_.q()) {
        fail("coefficient " + std::to_string(coeff) + " is not below q = " +
             std::to_string(field_.q()));
      }
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (peek() != 't') fail("expected 't' after '*'");
      }
    }
    int degree = 0;
    if (peek() == 't') {
      ++pos_;
      degree = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        degree = static_cast<int>(parse_number());
      }
    } else if (!have_coeff) {
      fail("expected a coefficient or 't'");
    }
    return PolyFq::monomial(field_, coeff, degree);
  }

  std::uint32_t parse_number() {
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > 1'000'000'000ULL) fail("number too large");
      ++pos_;
    }
    return static_cast<std::uint32_t>(v);
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse polynomial \"" + std::string(text_) + "\" at offset " +
                     std::to_string(pos_) + ": " + why);
  }

  FieldCfg field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    // Only strip when the outer pair matches.
    int depth = 0;
    bool outer = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) {
        outer = false;
        break;
      }
    }
    if (!outer) break;
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

}  // namespace

PolyFq parse_poly(FieldCfg field, std::string_view text) {
  const std::string_view body = strip_parens(text);
  if (body.find_first_of("()/") != std::string_view::npos) {
    throw ParseError("unexpected '(', ')' or '/' in polynomial \"" + std::string(text) + "\"");
  }
  return PolyParser(field, body).parse();
}

RatFunc parse_ratfunc(FieldCfg field, std::string_view text) {
  int depth = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string_view::npos) {
        throw ParseError("more than one '/' in \"" + std::string(text) + "\"");
      }
      slash = i;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
  if (slash == std::string_view::npos) return RatFunc(parse_poly(field, text));
  PolyFq num = parse_poly(field, text.substr(0, slash));
  PolyFq den = parse_poly(field, text.substr(slash + 1));
  if (den.is_zero()) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return RatFunc(std::move(num), std::move(den));
}

}  // namespace a2q
