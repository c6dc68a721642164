#include "seedgraph/seed.hpp"

#include <algorithm>
#include <sstream>

namespace seedgraph {

namespace {

void check_direction(std::size_t k, std::size_t n) {
  if (k >= n) throw BadDirection("direction " + std::to_string(k + 1) + " outside [1," + std::to_string(n) + "]");
}

std::vector<LaurentPolynomial> initial_cluster(const Context& ctx, std::size_t n) {
  std::vector<LaurentPolynomial> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(LaurentPolynomial::variable(ctx, i));
  return x;
}

Context shared_context(const std::vector<LaurentPolynomial>& cluster) {
  if (cluster.empty()) throw Error("a seed needs at least one cluster variable");
  const Context& ctx = cluster.front().context();
  for (const auto& x : cluster) require_same_context(x.context(), ctx);
  return ctx;
}

std::size_t tuple_size(const CoefficientTuple& c) {
  return std::visit([](const auto& v) { return v.size(); }, c);
}

}  // namespace

Seed::Seed(std::vector<LaurentPolynomial> cluster, ExchangeMatrix extended)
    : ctx_(shared_context(cluster)),
      cluster_(std::move(cluster)),
      coeffs_(std::vector<TrivialElement>{}),
      matrix_(std::move(extended)),
      mode_(SeedMode::geometric) {
  if (matrix_.rank() != cluster_.size()) throw ContextMismatch("cluster size differs from matrix rank");
  if (ctx_->size() != matrix_.columns()) throw ContextMismatch("ambient context must hold n+m variables");
}

Seed::Seed(std::vector<LaurentPolynomial> cluster, CoefficientTuple coefficients, ExchangeMatrix matrix)
    : ctx_(shared_context(cluster)),
      cluster_(std::move(cluster)),
      coeffs_(std::move(coefficients)),
      matrix_(std::move(matrix)),
      mode_(SeedMode::general) {
  const std::size_t n = cluster_.size();
  if (matrix_.rank() != n || matrix_.stable_count() != 0) {
    throw ContextMismatch("general seeds take an n x n exchange matrix");
  }
  if (tuple_size(coeffs_) != n) throw ContextMismatch("coefficient tuple length differs from rank");
  std::size_t generators = 0;
  if (const auto* trop = std::get_if<std::vector<TropicalElement>>(&coeffs_)) {
    generators = trop->front().rank();
    for (const auto& y : *trop) {
      if (y.rank() != generators) throw ContextMismatch("tropical coefficients of different rank");
    }
  }
  if (ctx_->size() != n + generators) throw ContextMismatch("ambient context must hold n + (generator count) variables");
}

Seed Seed::initial_geometric(const ExchangeMatrix& extended) {
  const Context ctx = make_context(extended.columns());
  return Seed(initial_cluster(ctx, extended.rank()), extended);
}

Seed Seed::initial_general(const ExchangeMatrix& matrix, CoefficientTuple coefficients) {
  std::size_t generators = 0;
  if (const auto* trop = std::get_if<std::vector<TropicalElement>>(&coefficients); trop && !trop->empty()) {
    generators = trop->front().rank();
  }
  const Context ctx = make_context(matrix.rank() + generators);
  return Seed(initial_cluster(ctx, matrix.rank()), std::move(coefficients), matrix);
}

Seed Seed::coefficient_free(const ExchangeMatrix& matrix) {
  return initial_general(matrix.principal(), std::vector<TrivialElement>(matrix.rank()));
}

Seed Seed::principal(const ExchangeMatrix& matrix) {
  return initial_geometric(principal_extension(matrix.principal()));
}

CoefficientTuple Seed::coefficients() const {
  if (mode_ == SeedMode::geometric) return coefficients_from_extended(matrix_);
  return coeffs_;
}

Seed Seed::permuted(std::span<const std::size_t> sigma) const {
  const std::size_t n = rank();
  if (sigma.size() != n) throw Error("permutation size differs from rank");
  std::vector<LaurentPolynomial> x;
  x.reserve(n);
  for (auto s : sigma) x.push_back(cluster_.at(s));
  if (mode_ == SeedMode::geometric) return Seed(std::move(x), matrix_.permuted(sigma));
  CoefficientTuple c = std::visit(
      [&](const auto& v) -> CoefficientTuple {
        std::remove_cvref_t<decltype(v)> out;
        out.reserve(n);
        for (auto s : sigma) out.push_back(v.at(s));
        return out;
      },
      coeffs_);
  return Seed(std::move(x), std::move(c), matrix_.permuted(sigma));
}

bool Seed::operator==(const Seed& other) const {
  return mode_ == other.mode_ && same_context(ctx_, other.ctx_) && cluster_ == other.cluster_ &&
         matrix_ == other.matrix_ && coefficients() == other.coefficients();
}

std::vector<TropicalElement> coefficients_from_extended(const ExchangeMatrix& extended) {
  const std::size_t n = extended.rank(), m = extended.stable_count();
  std::vector<TropicalElement> y;
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(m);
    for (std::size_t j = 0; j < m; ++j) e[j] = extended(i, n + j);
    y.emplace_back(std::move(e));
  }
  return y;
}

// ---------------------------------------------------------------------------

namespace {

// prod over columns i in [0, columns) of x_i^{|b_ki|} for b_ki of the given
// sign. Columns beyond the cluster are the stable variables themselves.
LaurentPolynomial exchange_monomial(const Seed& s, std::size_t k, std::size_t columns, int sign) {
  const Context& ctx = s.context();
  const std::size_t n = s.rank();
  LaurentPolynomial product = LaurentPolynomial::constant(ctx, 1);
  std::vector<Monomial::Exponent> stable(ctx->size(), 0);
  for (std::size_t i = 0; i < columns; ++i) {
    const std::int64_t b = s.matrix()(k, i);
    if (b == 0 || (b > 0) != (sign > 0)) continue;
    const std::int64_t e = b > 0 ? b : -b;
    if (i < n) {
      product = product * s.cluster()[i].pow(e);
    } else {
      stable[i] = static_cast<Monomial::Exponent>(e);
    }
  }
  return product.times(Monomial(std::move(stable)));
}

}  // namespace

Seed seed_mutate_general(const Seed& s, std::size_t k) {
  if (s.mode() != SeedMode::general) throw Error("seed_mutate_general needs a general-mode seed");
  const std::size_t n = s.rank();
  check_direction(k, n);
  const Context& ctx = s.context();

  LaurentPolynomial plus = exchange_monomial(s, k, n, +1);
  LaurentPolynomial minus = exchange_monomial(s, k, n, -1);
  const CoefficientTuple coeffs = s.coefficients();
  CoefficientTuple mutated = std::visit(
      [&](const auto& y) -> CoefficientTuple { return mutate_coefficients<typename std::decay_t<decltype(y)>::value_type>(y, s.matrix(), k); },
      coeffs);
  if (const auto* trop = std::get_if<std::vector<TropicalElement>>(&coeffs)) {
    // y/(y ⊕ 1) = g^{max(a,0)} and 1/(y ⊕ 1) = g^{max(-a,0)} componentwise.
    const TropicalElement& yk = (*trop)[k];
    const TropicalElement denom = yk.oplus(yk.unit());
    plus = plus * tropical_to_ambient(yk / denom, ctx, n);
    minus = minus * tropical_to_ambient(denom.inverse(), ctx, n);
  }

  std::vector<LaurentPolynomial> x = s.cluster();
  x[k] = exact_divide(plus + minus, s.cluster()[k]);
  return Seed(std::move(x), std::move(mutated), matrix_mutate(s.matrix(), k));
}

Seed seed_mutate_geometric(const Seed& s, std::size_t k) {
  if (s.mode() != SeedMode::geometric) throw Error("seed_mutate_geometric needs a geometric-mode seed");
  const std::size_t n = s.rank();
  check_direction(k, n);
  const std::size_t columns = s.matrix().columns();
  const LaurentPolynomial plus = exchange_monomial(s, k, columns, +1);
  const LaurentPolynomial minus = exchange_monomial(s, k, columns, -1);
  std::vector<LaurentPolynomial> x = s.cluster();
  x[k] = exact_divide(plus + minus, s.cluster()[k]);
  return Seed(std::move(x), matrix_mutate(s.matrix(), k));
}

Seed mutate(const Seed& s, std::size_t k) {
  return s.mode() == SeedMode::geometric ? seed_mutate_geometric(s, k) : seed_mutate_general(s, k);
}

Seed mutate_along(Seed s, std::span<const std::size_t> path) {
  for (auto k : path) s = mutate(s, k);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<RationalFunction> compute_yhat(const Seed& s) {
  const std::size_t n = s.rank();
  const Context& ctx = s.context();
  const CoefficientTuple coeffs = s.coefficients();
  const ExchangeMatrix b = s.principal_matrix();
  std::vector<RationalFunction> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    LaurentPolynomial num = LaurentPolynomial::constant(ctx, 1);
    LaurentPolynomial den = LaurentPolynomial::constant(ctx, 1);
    if (const auto* trop = std::get_if<std::vector<TropicalElement>>(&coeffs)) {
      num = tropical_to_ambient((*trop)[j], ctx, n);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t e = b(j, k);
      if (e > 0) num = num * s.cluster()[k].pow(e);
      if (e < 0) den = den * s.cluster()[k].pow(-e);
    }
    out.emplace_back(std::move(num), std::move(den));
  }
  return out;
}

std::vector<std::vector<std::int64_t>> compute_toric_weights(const ExchangeMatrix& b) {
  const IntMatrix principal = b.principal().entries();
  const std::size_t n = principal.rows();
  const mpz_class det = determinant(principal);
  if (det == 0) throw NondegenerateRequired("toric weights need det B != 0");
  if (!det.fits_slong_p()) throw Error("determinant does not fit in 64 bits");
  const auto adj = adjugate(principal);
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(2 * n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!adj[i][j].fits_slong_p()) throw Error("adjugate entry does not fit in 64 bits");
      w[j][i] = adj[i][j].get_si();
    }
    w[j][n + j] = -det.get_si();
  }
  // Kernel condition [B | I] w^T = 0.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class acc = w[j][n + r];
      for (std::size_t c = 0; c < n; ++c) acc += mpz_class(static_cast<long>(principal(r, c))) * static_cast<long>(w[j][c]);
      if (acc != 0) throw std::logic_error("toric weight violates the kernel condition");
    }
  }
  return w;
}

std::string describe(const Seed& s) {
  std::ostringstream os;
  os << "mode: " << (s.mode() == SeedMode::geometric ? "geometric" : "general") << '\n';
  os << "cluster:\n";
  for (std::size_t i = 0; i < s.rank(); ++i) os << "  [" << (i + 1) << "] " << s.cluster()[i].to_string() << '\n';
  os << "coefficients:";
  std::visit(
      [&](const auto& v) {
        for (const auto& y : v) os << ' ' << y.to_string();
      },
      s.coefficients());
  os << '\n';
  os << "matrix:\n";
  for (std::size_t i = 0; i < s.rank(); ++i) {
    os << " ";
    for (auto v : s.matrix().entries().row(i)) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace seedgraph
