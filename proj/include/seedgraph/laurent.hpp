#pragma once

// Exact multivariate Laurent polynomials over arbitrary-precision integers.
//
// Every polynomial is bound to a Context (the ordered set of ambient
// variable names). Terms are stored in strictly descending graded-lex order
// with no zero coefficients, so structural equality is mathematical equality.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "seedgraph/errors.hpp"

namespace seedgraph {

class VariableSet {
 public:
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const VariableSet&) const = default;

 private:
  std::vector<std::string> names_;
};

using Context = std::shared_ptr<const VariableSet>;

/// Context with variables prefix1..prefixN.
Context make_context(std::size_t count, std::string_view prefix = "x");
Context make_context(std::vector<std::string> names);
bool same_context(const Context& a, const Context& b) noexcept;
void require_same_context(const Context& a, const Context& b);

class Monomial {
 public:
  using Exponent = std::int32_t;

  Monomial() = default;
  explicit Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {}

  static Monomial one(std::size_t nvars) { return Monomial(std::vector<Exponent>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i, Exponent e = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }

  std::int64_t degree() const noexcept;
  bool is_one() const noexcept;

  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(std::int64_t e) const;

  /// Componentwise exponent minimum (the gcd of two Laurent monomials).
  static Monomial min(const Monomial& a, const Monomial& b);
  /// True when other/this has no negative exponent.
  bool divides(const Monomial& other) const noexcept;

  /// Graded order: total degree first, then lexicographic with x1 heaviest.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept = default;

 private:
  std::vector<Exponent> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class LaurentPolynomial {
 public:
  struct Term {
    Monomial monomial;
    mpz_class coeff;
  };

  explicit LaurentPolynomial(Context ctx);
  /// Normalizes: merges repeated monomials, drops zeros, sorts.
  LaurentPolynomial(Context ctx, std::vector<Term> terms);

  static LaurentPolynomial constant(Context ctx, const mpz_class& c);
  static LaurentPolynomial variable(Context ctx, std::size_t i, Monomial::Exponent e = 1);
  static LaurentPolynomial monomial(Context ctx, Monomial m, const mpz_class& c = 1);

  const Context& context() const noexcept { return ctx_; }
  std::size_t variable_count() const noexcept { return ctx_->size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  const Term& leading_term() const;

  /// Componentwise minimum exponent over all terms; the zero polynomial
  /// yields the unit monomial.
  Monomial min_exponents() const;
  std::size_t max_coefficient_bits() const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

  LaurentPolynomial times(const Monomial& m, const mpz_class& c = 1) const;
  /// Negative powers are allowed only for monomials.
  LaurentPolynomial pow(std::int64_t e) const;

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);
  std::string to_string() const;
  static LaurentPolynomial parse(Context ctx, std::string_view text);

 private:
  Context ctx_;
  std::vector<Term> terms_;  // strictly descending monomial order
};

/// Total order on polynomials over one context: the descending term lists
/// are compared lexicographically (monomial, then coefficient); a proper
/// prefix is smaller. Throws ContextMismatch across contexts.
std::strong_ordering compare(const LaurentPolynomial& a, const LaurentPolynomial& b);

/// q with q * den == num in the Laurent ring, or NotDivisible.
LaurentPolynomial exact_divide(const LaurentPolynomial& num, const LaurentPolynomial& den);

/// A numerator/denominator pair. Kept in a light canonical form: a unit
/// monomial denominator is folded into the numerator, an exact quotient is
/// taken when one exists, and otherwise only common monomial content is
/// removed. Equality is cross-multiplication.
class RationalFunction {
 public:
  RationalFunction(LaurentPolynomial p);  // NOLINT(implicit): Laurent values embed
  RationalFunction(LaurentPolynomial num, LaurentPolynomial den);

  const LaurentPolynomial& numerator() const noexcept { return num_; }
  const LaurentPolynomial& denominator() const noexcept { return den_; }
  const Context& context() const noexcept { return num_.context(); }
  bool is_laurent() const noexcept { return den_.is_one(); }
  /// The Laurent value; NotDivisible if the denominator did not cancel.
  const LaurentPolynomial& as_laurent() const;
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  RationalFunction pow(std::int64_t e) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  std::string to_string() const;

 private:
  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

/// Composes p with the assignment variable i -> images[i]. The images share
/// one (target) context, and images.size() must equal p's variable count.
/// A zero image raised to a negative power throws DivisionByZero.
RationalFunction substitute(const LaurentPolynomial& p, std::span<const RationalFunction> images);

}  // namespace seedgraph
