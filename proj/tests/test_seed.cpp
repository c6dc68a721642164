#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seedgraph/exchange_graph.hpp"
#include "seedgraph/seed.hpp"

using namespace seedgraph;

namespace {

ExchangeMatrix M(std::vector<std::vector<std::int64_t>> rows) { return ExchangeMatrix(IntMatrix::from_rows(rows)); }

LaurentPolynomial P(const Seed& s, const char* text) { return LaurentPolynomial::parse(s.context(), text); }

const ExchangeMatrix A2 = M({{0, 1}, {-1, 0}});

}  // namespace

TEST_CASE("first mutations of A2") {
  const Seed cf = Seed::coefficient_free(A2);
  const Seed s = mutate(cf, 0);
  CHECK(s.cluster()[0] == P(cf, "x2*x1^-1 + x1^-1"));
  CHECK(s.cluster()[1] == P(cf, "x2"));
  CHECK(s.matrix() == M({{0, -1}, {1, 0}}));

  const Seed pr = Seed::principal(A2);
  CHECK(pr.matrix().entries() == IntMatrix::from_rows({{0, 1, 1, 0}, {-1, 0, 0, 1}}));
  CHECK(mutate(pr, 0).cluster()[0] == P(pr, "x2*x3*x1^-1 + x1^-1"));
}

TEST_CASE("coefficients read from the stable columns") {
  const Seed pr = Seed::principal(A2);
  const auto y = std::get<std::vector<TropicalElement>>(pr.coefficients());
  CHECK(y[0] == TropicalElement::generator(2, 0));
  CHECK(y[1] == TropicalElement::generator(2, 1));

  const auto zero = coefficients_from_extended(M({{0, 1, 0}, {-1, 0, 0}}));
  CHECK(zero[0] == TropicalElement::one(1));
  const auto read = coefficients_from_extended(M({{0, 1, 2, -1}, {-1, 0, 0, 0}}));
  CHECK(read[0].to_string() == "g1^2*g2^-1");
}

TEST_CASE("coefficient mutation rule") {
  std::vector<TropicalElement> y{TropicalElement({1, -2}), TropicalElement({-1, 3})};
  const auto out = mutate_coefficients<TropicalElement>(y, A2, 0);
  CHECK(out[0] == y[0].inverse());
  // b_21 = -1 < 0: y2' = y2 (y1 ⊕ 1) = g1^-1 g2^3 * g1^0 g2^-2.
  CHECK(out[1] == TropicalElement({-1, 1}));
}

TEST_CASE("double mutation restores the seed") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3, m = trial % 3;
    const ExchangeMatrix b(oracle::random_exchange_matrix(rng, n, m, false));
    const Seed g = Seed::initial_geometric(b);
    std::vector<TropicalElement> y = coefficients_from_extended(b);
    const Seed t = Seed::initial_general(b.principal(), y);
    const Seed cf = Seed::coefficient_free(b);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(mutate(mutate(g, k), k) == g);
      CHECK(mutate(mutate(t, k), k) == t);
      CHECK(mutate(mutate(cf, k), k) == cf);
    }
  }
}

TEST_CASE("exchange relation holds pointwise") {
  // x_k * x_k' = prod x_i^[b_ki]+ + prod x_i^[-b_ki]+ at random rational points.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 3, m = 1 + trial % 2;
    const ExchangeMatrix b(oracle::random_exchange_matrix(rng, n, m, false));
    Seed s = Seed::initial_geometric(b);
    std::uniform_int_distribution<std::size_t> dir(0, n - 1);
    for (int step = 0; step < 4; ++step) {
      const std::size_t k = dir(rng);
      const Seed next = mutate(s, k);
      const auto pt = oracle::random_point(rng, n + m);
      std::vector<mpq_class> vals;
      for (std::size_t i = 0; i < n; ++i) vals.push_back(oracle::eval(s.cluster()[i], pt));
      for (std::size_t i = n; i < n + m; ++i) vals.push_back(pt[i]);
      mpq_class plus = 1, minus = 1;
      for (std::size_t i = 0; i < n + m; ++i) {
        const auto e = s.matrix()(k, i);
        if (e > 0) plus *= oracle::qpow(vals[i], e);
        if (e < 0) minus *= oracle::qpow(vals[i], -e);
      }
      CHECK(oracle::eval(next.cluster()[k], pt) * vals[k] == plus + minus);
      s = next;
    }
  }
}

TEST_CASE("tropical and geometric pipelines agree") {
  std::mt19937_64 rng(37);
  std::size_t compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3, m = 1 + trial % 3;
    const ExchangeMatrix b(oracle::random_exchange_matrix(rng, n, m, false));
    Seed g = Seed::initial_geometric(b);
    Seed t = Seed::initial_general(b.principal(), coefficients_from_extended(b));
    std::uniform_int_distribution<std::size_t> dir(0, n - 1);
    for (int step = 0; step < 3; ++step) {
      const std::size_t k = dir(rng);
      g = seed_mutate_geometric(g, k);
      t = seed_mutate_general(t, k);
      CHECK(g.cluster() == t.cluster());
      CHECK(g.principal_matrix() == t.matrix());
      CHECK(std::get<std::vector<TropicalElement>>(g.coefficients()) ==
            std::get<std::vector<TropicalElement>>(t.coefficients()));
      ++compared;
    }
  }
  CHECK(compared == 180);
}

TEST_CASE("no stable columns matches the trivial semifield") {
  const ExchangeMatrix a3 = M({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  Seed g = Seed::initial_geometric(a3);
  Seed cf = Seed::coefficient_free(a3);
  for (std::size_t k : {0u, 1u, 2u, 1u, 0u}) {
    g = mutate(g, k);
    cf = mutate(cf, k);
    CHECK(g.cluster() == cf.cluster());
  }
}

TEST_CASE("mutation paths and directions") {
  const Seed cf = Seed::coefficient_free(A2);
  std::vector<std::size_t> ten{0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  CHECK(mutate_along(cf, ten) == cf);
  std::vector<std::size_t> five{0, 1, 0, 1, 0};
  const Seed s5 = mutate_along(cf, five);
  CHECK_FALSE(s5 == cf);
  CHECK(canonicalize_seed(s5) == canonicalize_seed(cf));
  CHECK_THROWS_AS(mutate(cf, 2), BadDirection);
}

TEST_CASE("yhat values") {
  const Seed cf = Seed::coefficient_free(A2);
  const auto yh = compute_yhat(cf);
  CHECK(yh[0] == RationalFunction(P(cf, "x2")));
  CHECK(yh[1] == RationalFunction(P(cf, "x1^-1")));

  const Seed pr = Seed::principal(A2);
  const auto yp = compute_yhat(pr);
  CHECK(yp[0] == RationalFunction(P(pr, "x3*x2")));
  CHECK(yp[1] == RationalFunction(P(pr, "x4*x1^-1")));
}

TEST_CASE("toric weights") {
  const auto w = compute_toric_weights(A2);
  CHECK(w[0] == std::vector<std::int64_t>{0, 1, -1, 0});
  CHECK(w[1] == std::vector<std::int64_t>{-1, 0, 0, -1});
  CHECK_THROWS_AS(compute_toric_weights(M({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}})), NondegenerateRequired);

  std::mt19937_64 rng(41);
  int tested = 0;
  while (tested < 30) {
    const ExchangeMatrix b(oracle::random_exchange_matrix(rng, 2 + 2 * (tested % 2), 0, true, 3));
    if (oracle::cofactor_det(b.entries().to_rows()) == 0) continue;
    const auto pr = principal_extension(b);
    for (const auto& wj : compute_toric_weights(b)) {
      for (std::size_t r = 0; r < b.rank(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < pr.columns(); ++c) acc += pr(r, c) * wj[c];
        CHECK(acc == 0);
      }
    }
    ++tested;
  }
}

TEST_CASE("seed permutation") {
  const Seed pr = Seed::principal(M({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
  const std::vector<std::size_t> sigma{2, 0, 1};
  const Seed p = pr.permuted(sigma);
  CHECK(p.cluster()[0] == pr.cluster()[2]);
  CHECK(p.matrix()(0, 1) == pr.matrix()(2, 0));
  CHECK(p.matrix()(0, 3 + 2) == pr.matrix()(2, 3 + 2));
  CHECK(canonicalize_seed(p) == canonicalize_seed(pr));
}

TEST_CASE("describe lists the seed") {
  const std::string text = describe(Seed::principal(A2));
  CHECK(text.find("mode: geometric") != std::string::npos);
  CHECK(text.find("[1] x1") != std::string::npos);
  CHECK(text.find("g1^1*g2^0") != std::string::npos);
}
