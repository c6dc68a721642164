#include "seedgraph/semifield.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace seedgraph {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("tropical exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("tropical exponent overflow");
  return r;
}

void require_same_rank(const TropicalElement& a, const TropicalElement& b) {
  if (a.rank() != b.rank()) throw ContextMismatch("tropical elements of different rank");
}

}  // namespace

TropicalElement TropicalElement::generator(std::size_t rank, std::size_t j) {
  std::vector<std::int64_t> e(rank, 0);
  e.at(j) = 1;
  return TropicalElement(std::move(e));
}

TropicalElement TropicalElement::operator*(const TropicalElement& other) const {
  require_same_rank(*this, other);
  std::vector<std::int64_t> e(rank());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(exps_[i], other.exps_[i]);
  return TropicalElement(std::move(e));
}

TropicalElement TropicalElement::operator/(const TropicalElement& other) const {
  return *this * other.inverse();
}

TropicalElement TropicalElement::pow(std::int64_t k) const {
  std::vector<std::int64_t> e(rank());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_mul(exps_[i], k);
  return TropicalElement(std::move(e));
}

TropicalElement TropicalElement::oplus(const TropicalElement& other) const {
  require_same_rank(*this, other);
  std::vector<std::int64_t> e(rank());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(exps_[i], other.exps_[i]);
  return TropicalElement(std::move(e));
}

std::string TropicalElement::to_string() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) os << '*';
    os << 'g' << (i + 1) << '^' << exps_[i];
  }
  return os.str();
}

TropicalElement TropicalElement::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto integer = [&]() -> std::int64_t {
    skip();
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
    const std::size_t start = pos;
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = checked_add(checked_mul(v, 10), text[pos] - '0');
      ++pos;
    }
    if (pos == start) throw ParseError("expected integer", pos);
    return negative ? -v : v;
  };

  skip();
  if (text.substr(pos) == "1") return TropicalElement();
  std::vector<std::int64_t> exps;
  while (true) {
    skip();
    if (pos >= text.size() || text[pos] != 'g') throw ParseError("expected generator g<j>", pos);
    ++pos;
    const std::size_t at = pos;
    const std::int64_t j = integer();
    if (j < 1) throw ParseError("generator index must be positive", at);
    std::int64_t e = 1;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      e = integer();
    }
    const auto idx = static_cast<std::size_t>(j - 1);
    if (idx >= exps.size()) exps.resize(idx + 1, 0);
    exps[idx] = checked_add(exps[idx], e);
    skip();
    if (pos == text.size()) break;
    if (text[pos] != '*') throw ParseError("expected '*'", pos);
    ++pos;
  }
  return TropicalElement(std::move(exps));
}

// ---------------------------------------------------------------------------

namespace {

void require_nonnegative(const LaurentPolynomial& p) {
  for (const auto& t : p.terms()) {
    if (t.coeff < 0) throw NotSubtractionFree("negative coefficient: " + p.to_string());
  }
}

}  // namespace

SubtractionFreeRational::SubtractionFreeRational(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  require_same_context(num_.context(), den_.context());
  if (num_.is_zero() || den_.is_zero()) throw NotSubtractionFree("zero is not a semifield element");
  require_nonnegative(num_);
  require_nonnegative(den_);
  const Monomial content = Monomial::min(num_.min_exponents(), den_.min_exponents());
  if (!content.is_one()) {
    num_ = num_.times(content.inverse());
    den_ = den_.times(content.inverse());
  }
}

SubtractionFreeRational SubtractionFreeRational::variable(const Context& ctx, std::size_t i) {
  return {LaurentPolynomial::variable(ctx, i), LaurentPolynomial::constant(ctx, 1)};
}

SubtractionFreeRational SubtractionFreeRational::one(const Context& ctx) {
  return {LaurentPolynomial::constant(ctx, 1), LaurentPolynomial::constant(ctx, 1)};
}

SubtractionFreeRational SubtractionFreeRational::operator*(const SubtractionFreeRational& other) const {
  return {num_ * other.num_, den_ * other.den_};
}

SubtractionFreeRational SubtractionFreeRational::operator/(const SubtractionFreeRational& other) const {
  return {num_ * other.den_, den_ * other.num_};
}

SubtractionFreeRational SubtractionFreeRational::inverse() const { return {den_, num_}; }

SubtractionFreeRational SubtractionFreeRational::pow(std::int64_t e) const {
  if (e >= 0) return {num_.pow(e), den_.pow(e)};
  return {den_.pow(-e), num_.pow(-e)};
}

SubtractionFreeRational SubtractionFreeRational::oplus(const SubtractionFreeRational& other) const {
  if (den_ == other.den_) return {num_ + other.num_, den_};
  return {num_ * other.den_ + other.num_ * den_, den_ * other.den_};
}

SubtractionFreeRational SubtractionFreeRational::scaled(const mpz_class& c) const {
  if (c < 1) throw Error("oplus multiple needs a positive count");
  return {num_ * LaurentPolynomial::constant(context(), c), den_};
}

bool SubtractionFreeRational::operator==(const SubtractionFreeRational& other) const {
  if (!same_context(context(), other.context())) return false;
  return num_ * other.den_ == other.num_ * den_;
}

std::string SubtractionFreeRational::to_string() const {
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction evaluate_y_pattern(const SubtractionFreeRational& expr, std::span<const RationalFunction> images) {
  const RationalFunction top = substitute(expr.numerator(), images);
  const RationalFunction bottom = substitute(expr.denominator(), images);
  return top / bottom;
}

LaurentPolynomial tropical_to_ambient(const TropicalElement& y, const Context& ctx, std::size_t first_variable) {
  if (first_variable + y.rank() > ctx->size()) {
    throw ContextMismatch("tropical generators do not fit in the ambient context");
  }
  std::vector<Monomial::Exponent> e(ctx->size(), 0);
  for (std::size_t j = 0; j < y.rank(); ++j) {
    const auto v = y.exponents()[j];
    if (v > std::numeric_limits<Monomial::Exponent>::max() || v < std::numeric_limits<Monomial::Exponent>::min()) {
      throw Error("tropical exponent does not fit a monomial");
    }
    e[first_variable + j] = static_cast<Monomial::Exponent>(v);
  }
  return LaurentPolynomial::monomial(ctx, Monomial(std::move(e)));
}

}  // namespace seedgraph
