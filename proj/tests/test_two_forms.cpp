#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seedgraph/two_forms.hpp"

using namespace seedgraph;

namespace {

ExchangeMatrix M(std::vector<std::vector<std::int64_t>> rows) { return ExchangeMatrix(IntMatrix::from_rows(rows)); }

RationalMatrix R(std::vector<std::vector<std::int64_t>> rows) { return RationalMatrix::from_integers(IntMatrix::from_rows(rows)); }

const ExchangeMatrix A2 = M({{0, 1}, {-1, 0}});
const ExchangeMatrix A3 = M({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});

RationalMatrix sum(RationalMatrix a, const RationalMatrix& b) { return a += b; }

// Random integer combination of the basis.
RationalMatrix random_form(std::mt19937_64& rng, const FormBasis& fb) {
  std::uniform_int_distribution<int> c(-3, 3);
  RationalMatrix omega = fb.basis.front() * mpq_class(0);
  for (const auto& e : fb.basis) omega += e * mpq_class(c(rng));
  return omega;
}

// Dimension of {Omega skew : omega_ij = mu_i b_ij for i < n} as the nullity
// of the linear system in the unknowns (omega_ab for a < b, mu_i).
std::size_t nullspace_dimension(const IntMatrix& b) {
  const std::size_t n = b.rows(), t = b.cols();
  std::vector<std::vector<std::size_t>> slot(t, std::vector<std::size_t>(t));
  std::size_t unknowns = 0;
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t c = a + 1; c < t; ++c) slot[a][c] = unknowns++;
  }
  const std::size_t mu0 = unknowns;
  unknowns += n;
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i == j) continue;
      std::vector<mpq_class> row(unknowns, 0);
      if (i < j) row[slot[i][j]] = 1;
      else row[slot[j][i]] = -1;
      row[mu0 + i] = -mpq_class(static_cast<long>(b(i, j)));
      rows.push_back(std::move(row));
    }
  }
  return unknowns - oracle::rank(rows);
}

// x_l d/dx_l applied to p.
LaurentPolynomial euler(const LaurentPolynomial& p, std::size_t l) {
  std::vector<LaurentPolynomial::Term> out;
  for (const auto& t : p.terms()) {
    if (t.monomial[l] != 0) out.push_back({t.monomial, t.coeff * t.monomial[l]});
  }
  return LaurentPolynomial(p.context(), std::move(out));
}

// Pulls omega back through x_k = P / x'_k and checks the result against
// P^2 * omega' entry by entry. Omega must have integer entries.
void check_pullback(const ExchangeMatrix& b, const RationalMatrix& omega, std::size_t k) {
  const std::size_t t = b.columns();
  const Context ctx = make_context(t);
  LaurentPolynomial plus = LaurentPolynomial::constant(ctx, 1), minus = plus;
  for (std::size_t i = 0; i < t; ++i) {
    const auto e = b(k, i);
    if (e > 0) plus = plus * LaurentPolynomial::variable(ctx, i).pow(e);
    if (e < 0) minus = minus * LaurentPolynomial::variable(ctx, i).pow(-e);
  }
  const LaurentPolynomial p = plus + minus;

  // N = P * (d log x / d log x'): identity rows except row k.
  std::vector<std::vector<LaurentPolynomial>> nmat(t, std::vector<LaurentPolynomial>(t, LaurentPolynomial(ctx)));
  for (std::size_t a = 0; a < t; ++a) {
    if (a != k) {
      nmat[a][a] = p;
      continue;
    }
    for (std::size_t l = 0; l < t; ++l) nmat[k][l] = euler(p, l) - (l == k ? p : LaurentPolynomial(ctx));
  }
  auto integer = [&](const mpq_class& v) {
    REQUIRE(v.get_den() == 1);
    return LaurentPolynomial::constant(ctx, v.get_num());
  };

  const RationalMatrix mutated = mutate_form(omega, b, k);
  const LaurentPolynomial p2 = p * p;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      LaurentPolynomial acc(ctx);
      for (std::size_t a = 0; a < t; ++a) {
        for (std::size_t c = 0; c < t; ++c) {
          if (omega(a, c) == 0 || nmat[a][i].is_zero() || nmat[c][j].is_zero()) continue;
          acc = acc + nmat[a][i] * integer(omega(a, c)) * nmat[c][j];
        }
      }
      CHECK(acc == p2 * integer(mutated(i, j)));
    }
  }
}

}  // namespace

TEST_CASE("compatible form spaces") {
  {
    const FormBasis fb = compatible_form_space(A2);
    CHECK(fb.dimension == 1);
    CHECK(fb.basis[0] == R({{0, 1}, {-1, 0}}));
  }
  CHECK(compatible_form_space(M({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}})).dimension == 2);
  CHECK(compatible_form_space(M({{0, 1, 1, 2}, {-1, 0, -1, 0}})).dimension == 2);
  CHECK(compatible_form_space(principal_extension(A3)).dimension == 1 + 3);
  CHECK_THROWS_AS(compatible_form_space(M({{0, 0, 1}, {0, 0, 0}})), ZeroRowUnsupported);
  CHECK_THROWS_AS(compatible_form_space(M({{0, 0}, {0, 0}})), ZeroRowUnsupported);
}

TEST_CASE("compatibility checks") {
  // D B for B2 padded: d = (2, 1).
  const ExchangeMatrix b2 = M({{0, 1}, {-2, 0}});
  const auto ok = verify_compatibility(R({{0, 2}, {-2, 0}}), b2);
  CHECK(ok.ok);
  CHECK(ok.lambda == std::vector<mpq_class>{1});

  const auto bad = verify_compatibility(R({{0, 2}, {-1, 0}}), A2);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == std::pair<std::size_t, std::size_t>{0, 1});

  // Skew but not proportional to the matrix row.
  const ExchangeMatrix pr = principal_extension(A2);
  const auto off = verify_compatibility(R({{0, 2, 1, 0}, {-2, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}), pr);
  CHECK_FALSE(off.ok);
  CHECK(off.witness.has_value());

  // Stable entries missing from a row that needs them.
  const auto split = verify_compatibility(
      R({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}), pr);
  CHECK_FALSE(split.ok);

  CHECK_FALSE(verify_compatibility(R({{0, 1}, {-1, 0}}), pr).ok);
  CHECK_THROWS_AS(mutate_form(R({{0, 2}, {-1, 0}}), A2, 0), NotCompatible);
}

TEST_CASE("form mutation rules") {
  const ExchangeMatrix b = principal_extension(A3);
  const RationalMatrix omega = compatible_form_space(b).basis[0];
  for (std::size_t k = 0; k < 3; ++k) {
    const RationalMatrix out = mutate_form(omega, b, k);
    for (std::size_t j = 0; j < 6; ++j) CHECK(out(k, j) == -omega(k, j));
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t l = 0; l < 6; ++l) {
        if (j == k || l == k) continue;
        if (b(k, j) >= 0 && b(k, l) >= 0) CHECK(out(j, l) == omega(j, l));
      }
    }
    CHECK(mutate_form(out, matrix_mutate(b, k), k) == omega);
  }
  CHECK_THROWS_AS(mutate_form(omega, b, 3), BadDirection);
}

TEST_CASE("dimension matches an independent nullspace computation") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5, m = n == 1 ? 1 + trial % 3 : trial % 4;
    const IntMatrix raw = oracle::random_exchange_matrix(rng, n, m);
    const ExchangeMatrix b(raw);
    const FormBasis fb = compatible_form_space(b);
    CHECK(fb.dimension == nullspace_dimension(raw));
    CHECK(fb.dimension == b.symmetrizer().block_count() + m * (m - 1) / 2);
    for (const auto& e : fb.basis) CHECK(verify_compatibility(e, b).ok);

    std::vector<std::vector<mpq_class>> flat;
    for (const auto& e : fb.basis) {
      std::vector<mpq_class> row;
      for (std::size_t i = 0; i < e.rows(); ++i) {
        for (std::size_t j = 0; j < e.cols(); ++j) row.push_back(e(i, j));
      }
      flat.push_back(std::move(row));
    }
    CHECK(oracle::rank(flat) == fb.dimension);
  }
}

TEST_CASE("mutation keeps compatibility and is an involution") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4, m = trial % 3;
    ExchangeMatrix b(oracle::random_exchange_matrix(rng, n, m));
    const FormBasis fb = compatible_form_space(b);
    std::vector<RationalMatrix> forms = fb.basis;
    forms.push_back(random_form(rng, fb));
    std::uniform_int_distribution<std::size_t> dir(0, n - 1);
    for (int step = 0; step < 6; ++step) {
      const std::size_t k = dir(rng);
      const ExchangeMatrix next = matrix_mutate(b, k);
      for (auto& f : forms) {
        const RationalMatrix g = mutate_form(f, b, k);
        CHECK(verify_compatibility(g, next).ok);
        CHECK(mutate_form(g, next, k) == f);
        f = g;
      }
      b = next;
    }
  }
}

TEST_CASE("mutated coefficients equal the symbolic pullback") {
  for (std::size_t k = 0; k < 2; ++k) {
    check_pullback(A2, compatible_form_space(A2).basis[0], k);
    const ExchangeMatrix pr = principal_extension(A2);
    const FormBasis fb = compatible_form_space(pr);
    check_pullback(pr, sum(fb.basis[0], fb.basis[1] * mpq_class(3)), k);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const ExchangeMatrix pr = principal_extension(A3);
    std::mt19937_64 rng(59 + k);
    check_pullback(pr, random_form(rng, compatible_form_space(pr)), k);
  }
  // Skew-symmetrizable, with stable columns.
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const ExchangeMatrix b(oracle::random_exchange_matrix(rng, 2 + trial % 2, 1 + trial % 2));
    check_pullback(b, random_form(rng, compatible_form_space(b)), trial % b.rank());
  }
}
