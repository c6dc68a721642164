#include "seedgraph/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace seedgraph {

// ---------------------------------------------------------------------------
// Contexts

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

Context make_context(std::size_t count, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(std::string(prefix) + std::to_string(i + 1));
  return std::make_shared<const VariableSet>(std::move(names));
}

Context make_context(std::vector<std::string> names) {
  return std::make_shared<const VariableSet>(std::move(names));
}

bool same_context(const Context& a, const Context& b) noexcept {
  return a == b || (a && b && *a == *b);
}

void require_same_context(const Context& a, const Context& b) {
  if (!same_context(a, b)) throw ContextMismatch("polynomials over different ambient variable sets");
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

Monomial::Exponent checked_exponent(std::int64_t v) {
  if (v > std::numeric_limits<Monomial::Exponent>::max() ||
      v < std::numeric_limits<Monomial::Exponent>::min()) {
    throw Error("monomial exponent overflow");
  }
  return static_cast<Monomial::Exponent>(v);
}

void require_same_size(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw ContextMismatch("monomials of different length");
}

}  // namespace

Monomial Monomial::variable(std::size_t nvars, std::size_t i, Exponent e) {
  std::vector<Exponent> v(nvars, 0);
  v.at(i) = e;
  return Monomial(std::move(v));
}

std::int64_t Monomial::degree() const noexcept {
  std::int64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  require_same_size(*this, other);
  std::vector<Exponent> v(exps_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = checked_exponent(std::int64_t{exps_[i]} + other.exps_[i]);
  }
  return Monomial(std::move(v));
}

Monomial Monomial::operator/(const Monomial& other) const {
  require_same_size(*this, other);
  std::vector<Exponent> v(exps_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = checked_exponent(std::int64_t{exps_[i]} - other.exps_[i]);
  }
  return Monomial(std::move(v));
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(std::int64_t e) const {
  std::vector<Exponent> v(exps_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    __int128 p = static_cast<__int128>(exps_[i]) * e;
    if (p > std::numeric_limits<Exponent>::max() || p < std::numeric_limits<Exponent>::min()) {
      throw Error("monomial exponent overflow");
    }
    v[i] = static_cast<Exponent>(p);
  }
  return Monomial(std::move(v));
}

Monomial Monomial::min(const Monomial& a, const Monomial& b) {
  require_same_size(a, b);
  std::vector<Exponent> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(a.exps_[i], b.exps_[i]);
  return Monomial(std::move(v));
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto e : m.exponents()) {
    h ^= static_cast<std::uint32_t>(e);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Laurent polynomials

namespace {

bool term_greater(const LaurentPolynomial::Term& a, const LaurentPolynomial::Term& b) {
  return a.monomial > b.monomial;
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(Context ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ContextMismatch("null context");
}

LaurentPolynomial::LaurentPolynomial(Context ctx, std::vector<Term> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  if (!ctx_) throw ContextMismatch("null context");
  for (const auto& t : terms_) {
    if (t.monomial.size() != ctx_->size()) throw ContextMismatch("monomial length differs from context");
  }
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  terms_ = std::move(merged);
}

LaurentPolynomial LaurentPolynomial::constant(Context ctx, const mpz_class& c) {
  const std::size_t n = ctx->size();
  return monomial(std::move(ctx), Monomial::one(n), c);
}

LaurentPolynomial LaurentPolynomial::variable(Context ctx, std::size_t i, Monomial::Exponent e) {
  if (i >= ctx->size()) throw ContextMismatch("variable index outside context");
  const std::size_t n = ctx->size();
  return monomial(std::move(ctx), Monomial::variable(n, i, e));
}

LaurentPolynomial LaurentPolynomial::monomial(Context ctx, Monomial m, const mpz_class& c) {
  LaurentPolynomial p(std::move(ctx));
  if (m.size() != p.ctx_->size()) throw ContextMismatch("monomial length differs from context");
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

bool LaurentPolynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].monomial.is_one();
}

const LaurentPolynomial::Term& LaurentPolynomial::leading_term() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.front();
}

Monomial LaurentPolynomial::min_exponents() const {
  if (terms_.empty()) return Monomial::one(ctx_->size());
  Monomial m = terms_.front().monomial;
  for (const auto& t : terms_) m = Monomial::min(m, t.monomial);
  return m;
}

std::size_t LaurentPolynomial::max_coefficient_bits() const {
  std::size_t bits = 0;
  for (const auto& t : terms_) {
    if (t.coeff != 0) bits = std::max(bits, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
  }
  return bits;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two descending term lists; sign = +1 or -1 applied to b.
std::vector<LaurentPolynomial::Term> merge_terms(std::span<const LaurentPolynomial::Term> a,
                                                 std::span<const LaurentPolynomial::Term> b,
                                                 int sign) {
  std::vector<LaurentPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].monomial > b[j].monomial)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].monomial > a[i].monomial) {
      out.push_back({b[j].monomial, sign > 0 ? mpz_class(b[j].coeff) : mpz_class(-b[j].coeff)});
      ++j;
    } else {
      mpz_class c = sign > 0 ? mpz_class(a[i].coeff + b[j].coeff) : mpz_class(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  require_same_context(ctx_, other.ctx_);
  terms_ = merge_terms(terms_, other.terms_, +1);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  require_same_context(ctx_, other.ctx_);
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& other) {
  *this = *this * other;
  return *this;
}

LaurentPolynomial LaurentPolynomial::times(const Monomial& m, const mpz_class& c) const {
  LaurentPolynomial r(ctx_);
  if (c == 0) return r;
  if (m.size() != ctx_->size()) throw ContextMismatch("monomial length differs from context");
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial is order-preserving, so the result stays sorted.
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coeff * c});
  return r;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  require_same_context(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero()) return LaurentPolynomial(a.ctx_);
  if (a.is_monomial()) return b.times(a.terms_[0].monomial, a.terms_[0].coeff);
  if (b.is_monomial()) return a.times(b.terms_[0].monomial, b.terms_[0].coeff);

  std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
  acc.reserve(a.terms_.size() * 2 + b.terms_.size() * 2);
  mpz_class prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      prod = s.coeff * t.coeff;
      acc[s.monomial * t.monomial] += prod;
    }
  }
  std::vector<LaurentPolynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  LaurentPolynomial r(a.ctx_);
  r.terms_ = std::move(terms);
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(std::int64_t e) const {
  if (e < 0) {
    if (!is_monomial() || abs(terms_[0].coeff) != 1) {
      throw NotDivisible("negative power of a non-unit Laurent polynomial");
    }
    mpz_class c = (terms_[0].coeff < 0 && (-e) % 2 == 1) ? -1 : 1;
    return monomial(ctx_, terms_[0].monomial.pow(e), c);
  }
  if (is_monomial()) {
    mpz_class c;
    mpz_pow_ui(c.get_mpz_t(), terms_[0].coeff.get_mpz_t(), static_cast<unsigned long>(e));
    return monomial(ctx_, terms_[0].monomial.pow(e), c);
  }
  LaurentPolynomial result = constant(ctx_, 1);
  LaurentPolynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (!same_context(a.ctx_, b.ctx_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::strong_ordering compare(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  require_same_context(a.context(), b.context());
  auto ta = a.terms();
  auto tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = ta[i].monomial <=> tb[i].monomial; c != 0) return c;
    if (int c = cmp(ta[i].coeff, tb[i].coeff); c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return ta.size() <=> tb.size();
}

// ---------------------------------------------------------------------------
// Rendering and parsing

namespace {

void render_monomial(std::ostream& os, const Monomial& m, const VariableSet& vars) {
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << vars.name(i);
    if (m[i] != 1) os << '^' << m[i];
  }
}

}  // namespace

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    mpz_class mag = abs(t.coeff);
    if (t.monomial.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      render_monomial(os, t.monomial, *ctx_);
    }
  }
  return os.str();
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(const Context& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

  LaurentPolynomial parse() {
    std::vector<LaurentPolynomial::Term> terms;
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      terms.push_back(parse_term(sign));
      skip_space();
      if (pos_ == text_.size()) break;
      if (peek() == '+') {
        sign = 1;
      } else if (peek() == '-') {
        sign = -1;
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      ++pos_;
    }
    return LaurentPolynomial(ctx_, std::move(terms));
  }

 private:
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  mpz_class parse_integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  LaurentPolynomial::Term parse_term(int sign) {
    std::vector<Monomial::Exponent> exps(ctx_->size(), 0);
    mpz_class coeff = sign;
    bool any = false;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) fail("expected factor");
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_integer();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        const auto index = ctx_->index_of(name);
        if (!index) {
          pos_ = start;
          fail("unknown variable '" + std::string(name) + "'");
        }
        std::int64_t e = 1;
        skip_space();
        if (pos_ < text_.size() && peek() == '^') {
          ++pos_;
          skip_space();
          int esign = 1;
          if (pos_ < text_.size() && peek() == '-') {
            esign = -1;
            ++pos_;
          }
          mpz_class v = parse_integer();
          if (!v.fits_sint_p()) fail("exponent out of range");
          e = esign * v.get_si();
        }
        exps[*index] = checked_exponent(exps[*index] + e);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      any = true;
      skip_space();
      if (pos_ < text_.size() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {Monomial(std::move(exps)), std::move(coeff)};
  }

  const Context& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPolynomial LaurentPolynomial::parse(Context ctx, std::string_view text) {
  return PolynomialParser(ctx, text).parse();
}

// ---------------------------------------------------------------------------
// Exact division

LaurentPolynomial exact_divide(const LaurentPolynomial& num, const LaurentPolynomial& den) {
  require_same_context(num.context(), den.context());
  if (den.is_zero()) throw DivisionByZero("exact division by the zero polynomial");
  if (num.is_zero()) return LaurentPolynomial(num.context());

  if (den.is_monomial()) {
    const auto& d = den.leading_term();
    std::vector<LaurentPolynomial::Term> out;
    out.reserve(num.term_count());
    for (const auto& t : num.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t())) {
        throw NotDivisible("coefficient " + t.coeff.get_str() + " not divisible by " + d.coeff.get_str());
      }
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), d.coeff.get_mpz_t());
      out.push_back({t.monomial / d.monomial, std::move(q)});
    }
    return LaurentPolynomial(num.context(), std::move(out));
  }

  // Shift both operands into the polynomial ring with no variable dividing
  // either one. Since the variables are prime there, q = shift * q0 where
  // q0 is the polynomial quotient of the shifted operands.
  const Monomial num_shift = num.min_exponents();
  const Monomial den_shift = den.min_exponents();
  const LaurentPolynomial d = den.times(den_shift.inverse());
  const auto& lead = d.leading_term();

  std::map<Monomial, mpz_class, std::greater<>> rem;
  for (const auto& t : num.terms()) rem.emplace(t.monomial / num_shift, t.coeff);

  std::vector<LaurentPolynomial::Term> quotient;
  mpz_class cq, delta;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.monomial.divides(top->first) ||
        !mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) {
      throw NotDivisible("nonzero remainder in exact division");
    }
    const Monomial mq = top->first / lead.monomial;
    mpz_divexact(cq.get_mpz_t(), top->second.get_mpz_t(), lead.coeff.get_mpz_t());
    rem.erase(top);
    for (std::size_t i = 1; i < d.term_count(); ++i) {
      const auto& t = d.terms()[i];
      delta = t.coeff * cq;
      auto [it, inserted] = rem.try_emplace(t.monomial * mq);
      it->second -= delta;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({mq, cq});
  }
  // Quotient terms come out in strictly descending order.
  LaurentPolynomial q(num.context(), std::move(quotient));
  return q.times(num_shift / den_shift);
}

// ---------------------------------------------------------------------------
// Rational functions

namespace {

// Removes a common monomial factor and integer content, makes the leading
// denominator coefficient positive.
void strip_content(LaurentPolynomial& num, LaurentPolynomial& den) {
  const Monomial shift = Monomial::min(num.min_exponents(), den.min_exponents());
  if (!shift.is_one()) {
    num = num.times(shift.inverse());
    den = den.times(shift.inverse());
  }
  mpz_class g = 0;
  for (const auto& t : num.terms()) g = gcd(g, t.coeff);
  for (const auto& t : den.terms()) g = gcd(g, t.coeff);
  if (den.leading_term().coeff < 0) g = -g;
  if (g != 1) {
    const Monomial one = Monomial::one(num.variable_count());
    num = exact_divide(num, LaurentPolynomial::monomial(num.context(), one, g));
    den = exact_divide(den, LaurentPolynomial::monomial(den.context(), one, g));
  }
}

}  // namespace

RationalFunction::RationalFunction(LaurentPolynomial p)
    : num_(std::move(p)), den_(LaurentPolynomial::constant(num_.context(), 1)) {}

RationalFunction::RationalFunction(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  require_same_context(num_.context(), den_.context());
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPolynomial::constant(num_.context(), 1);
    return;
  }
  if (den_.is_monomial() && abs(den_.leading_term().coeff) == 1) {
    num_ = num_.times(den_.leading_term().monomial.inverse(), den_.leading_term().coeff);
    den_ = LaurentPolynomial::constant(num_.context(), 1);
    return;
  }
  try {
    num_ = exact_divide(num_, den_);
    den_ = LaurentPolynomial::constant(num_.context(), 1);
    return;
  } catch (const NotDivisible&) {
  }
  strip_content(num_, den_);
}

const LaurentPolynomial& RationalFunction::as_laurent() const {
  if (!is_laurent()) throw NotDivisible("rational function is not a Laurent polynomial: " + to_string());
  return num_;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZero("division by a zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction RationalFunction::pow(std::int64_t e) const {
  if (e >= 0) return RationalFunction(num_.pow(e), den_.pow(e));
  if (is_zero()) throw DivisionByZero("negative power of zero");
  return RationalFunction(den_.pow(-e), num_.pow(-e));
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (!same_context(a.context(), b.context())) return false;
  if (a.is_laurent() && b.is_laurent()) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunction::to_string() const {
  if (is_laurent()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Substitution

RationalFunction substitute(const LaurentPolynomial& p, std::span<const RationalFunction> images) {
  const std::size_t nvars = p.variable_count();
  if (images.size() != nvars) throw ContextMismatch("substitution needs one image per variable");
  if (nvars == 0) return RationalFunction(p);
  const Context& target = images[0].context();
  for (const auto& img : images) require_same_context(img.context(), target);

  // Per-variable exponent range over p.
  std::vector<std::int64_t> pos(nvars, 0), neg(nvars, 0);
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < nvars; ++i) {
      pos[i] = std::max<std::int64_t>(pos[i], t.monomial[i]);
      neg[i] = std::max<std::int64_t>(neg[i], -std::int64_t{t.monomial[i]});
    }
  }
  for (std::size_t i = 0; i < nvars; ++i) {
    if (neg[i] > 0 && images[i].is_zero()) {
      throw DivisionByZero("zero substituted for a variable with negative exponent");
    }
  }

  // x_i -> a_i/b_i. Everything is multiplied through by prod b_i^pos a_i^neg,
  // so each term becomes c * prod a_i^(e_i+neg_i) b_i^(pos_i-e_i).
  auto power_table = [&](const LaurentPolynomial& base, std::int64_t top) {
    std::vector<LaurentPolynomial> table;
    table.reserve(static_cast<std::size_t>(top) + 1);
    table.push_back(LaurentPolynomial::constant(target, 1));
    for (std::int64_t k = 1; k <= top; ++k) table.push_back(table.back() * base);
    return table;
  };
  std::vector<std::vector<LaurentPolynomial>> num_pow(nvars), den_pow(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    const std::int64_t width = pos[i] + neg[i];
    num_pow[i] = power_table(images[i].numerator(), width);
    den_pow[i] = power_table(images[i].denominator(), width);
  }

  LaurentPolynomial num(target);
  for (const auto& t : p.terms()) {
    LaurentPolynomial term = LaurentPolynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < nvars; ++i) {
      const std::int64_t e = t.monomial[i];
      const auto& np = num_pow[i][static_cast<std::size_t>(e + neg[i])];
      const auto& dp = den_pow[i][static_cast<std::size_t>(pos[i] - e)];
      if (!np.is_one()) term = term * np;
      if (!dp.is_one()) term = term * dp;
    }
    num += term;
  }
  LaurentPolynomial den = LaurentPolynomial::constant(target, 1);
  for (std::size_t i = 0; i < nvars; ++i) {
    den = den * den_pow[i][static_cast<std::size_t>(pos[i])];
    den = den * num_pow[i][static_cast<std::size_t>(neg[i])];
  }
  return RationalFunction(std::move(num), std::move(den));
}

}  // namespace seedgraph
