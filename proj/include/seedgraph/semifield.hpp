#pragma once

// The three concrete semifields used for coefficients: the tropical
// semifield on m generators, the one-element semifield, and subtraction-free
// rational functions in y1..yn (the home of Y-patterns).

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "seedgraph/laurent.hpp"

namespace seedgraph {

/// prod g_j^{a_j}; multiplication adds exponents, oplus takes the
/// componentwise minimum.
class TropicalElement {
 public:
  TropicalElement() = default;
  explicit TropicalElement(std::vector<std::int64_t> exponents) : exps_(std::move(exponents)) {}

  static TropicalElement one(std::size_t rank) { return TropicalElement(std::vector<std::int64_t>(rank, 0)); }
  static TropicalElement generator(std::size_t rank, std::size_t j);

  std::size_t rank() const noexcept { return exps_.size(); }
  std::span<const std::int64_t> exponents() const noexcept { return exps_; }

  TropicalElement unit() const { return one(rank()); }
  TropicalElement operator*(const TropicalElement& other) const;
  TropicalElement operator/(const TropicalElement& other) const;
  TropicalElement inverse() const { return pow(-1); }
  TropicalElement pow(std::int64_t e) const;
  TropicalElement oplus(const TropicalElement& other) const;

  bool operator==(const TropicalElement&) const = default;

  /// `g1^a1*...*gm^am`, every generator listed; rank 0 renders as `1`.
  std::string to_string() const;
  static TropicalElement parse(std::string_view text);

 private:
  std::vector<std::int64_t> exps_;
};

/// The one-element semifield {1}.
struct TrivialElement {
  TrivialElement unit() const { return {}; }
  TrivialElement operator*(const TrivialElement&) const { return {}; }
  TrivialElement operator/(const TrivialElement&) const { return {}; }
  TrivialElement inverse() const { return {}; }
  TrivialElement pow(std::int64_t) const { return {}; }
  TrivialElement oplus(const TrivialElement&) const { return {}; }
  bool operator==(const TrivialElement&) const = default;
  std::string to_string() const { return "1"; }
};

/// num/den with both polynomials having nonnegative integer coefficients in
/// the variables of one context. Only common monomial content is cancelled;
/// equality is decided by cross-multiplication.
class SubtractionFreeRational {
 public:
  SubtractionFreeRational(LaurentPolynomial num, LaurentPolynomial den);

  static SubtractionFreeRational variable(const Context& ctx, std::size_t i);
  static SubtractionFreeRational one(const Context& ctx);

  const LaurentPolynomial& numerator() const noexcept { return num_; }
  const LaurentPolynomial& denominator() const noexcept { return den_; }
  const Context& context() const noexcept { return num_.context(); }

  SubtractionFreeRational unit() const { return one(context()); }
  SubtractionFreeRational operator*(const SubtractionFreeRational& other) const;
  SubtractionFreeRational operator/(const SubtractionFreeRational& other) const;
  SubtractionFreeRational inverse() const;
  SubtractionFreeRational pow(std::int64_t e) const;
  SubtractionFreeRational oplus(const SubtractionFreeRational& other) const;
  /// c-fold oplus of this element with itself, c >= 1.
  SubtractionFreeRational scaled(const mpz_class& c) const;

  bool operator==(const SubtractionFreeRational& other) const;
  std::string to_string() const;

 private:
  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

template <class S>
concept Semifield = std::equality_comparable<S> && requires(const S& a, const S& b, std::int64_t e) {
  { a.unit() } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { a.inverse() } -> std::same_as<S>;
  { a.pow(e) } -> std::same_as<S>;
  { a.oplus(b) } -> std::same_as<S>;
};

/// a ⊕ a ⊕ ... ⊕ a (c copies, c >= 1).
template <Semifield S>
S oplus_multiple(const S& a, const mpz_class& c) {
  if constexpr (requires { a.scaled(c); }) {
    return a.scaled(c);
  } else {
    if (c < 1) throw Error("oplus multiple needs a positive count");
    // Binary doubling: a ⊕ a is computed once per bit.
    S result = a;
    bool have = false;
    S power = a;
    mpz_class k = c;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) {
        result = have ? result.oplus(power) : power;
        have = true;
      }
      k >>= 1;
      if (k > 0) power = power.oplus(power);
    }
    return result;
  }
}

/// Evaluates a polynomial with nonnegative coefficients and exponents at
/// semifield points: + becomes ⊕ and integer coefficients become repeated ⊕.
template <Semifield S>
S evaluate_subtraction_free(const LaurentPolynomial& p, std::span<const S> images) {
  if (images.size() != p.variable_count()) throw ContextMismatch("y-pattern evaluation needs one image per variable");
  if (images.empty()) throw ContextMismatch("y-pattern evaluation over an empty variable set");
  if (p.is_zero()) throw NotSubtractionFree("zero is not a semifield element");
  S total = images[0].unit();
  bool first = true;
  for (const auto& t : p.terms()) {
    if (t.coeff <= 0) throw NotSubtractionFree("negative coefficient in subtraction-free expression");
    S value = images[0].unit();
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (t.monomial[i] != 0) value = value * images[i].pow(t.monomial[i]);
    }
    value = oplus_multiple(value, t.coeff);
    total = first ? value : total.oplus(value);
    first = false;
  }
  return total;
}

/// Evaluates a Y-pattern expression in the target semifield with y_i
/// replaced by images[i].
template <Semifield S>
S evaluate_y_pattern(const SubtractionFreeRational& expr, std::span<const S> images) {
  return evaluate_subtraction_free(expr.numerator(), images) /
         evaluate_subtraction_free(expr.denominator(), images);
}

/// Evaluation over the ambient field itself (ordinary + and *).
RationalFunction evaluate_y_pattern(const SubtractionFreeRational& expr, std::span<const RationalFunction> images);

/// Tropical element as a Laurent monomial in the ambient variables
/// first_variable, first_variable+1, ... of ctx.
LaurentPolynomial tropical_to_ambient(const TropicalElement& y, const Context& ctx, std::size_t first_variable);

}  // namespace seedgraph
