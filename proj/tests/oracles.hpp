#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's arithmetic beyond reading terms.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "seedgraph/laurent.hpp"
#include "seedgraph/matrix.hpp"

namespace oracle {

inline mpq_class qpow(const mpq_class& base, long e) {
  mpq_class r = 1;
  const mpq_class b = e < 0 ? mpq_class(1) / base : base;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

/// Value of p at a point with nonzero rational coordinates.
inline mpq_class eval(const seedgraph::LaurentPolynomial& p, const std::vector<mpq_class>& point) {
  mpq_class total = 0;
  for (const auto& t : p.terms()) {
    mpq_class v(t.coeff);
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (t.monomial[i] != 0) v *= qpow(point[i], t.monomial[i]);
    }
    total += v;
  }
  return total;
}

inline std::vector<mpq_class> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<mpq_class> p;
  for (std::size_t i = 0; i < n; ++i) {
    int a = 0;
    while (a == 0) a = num(rng);
    mpq_class v(a, den(rng));
    v.canonicalize();
    p.push_back(v);
  }
  return p;
}

/// n x (n+m) skew-symmetrizable matrix: b_ij = d_j c_ij with c skew-symmetric,
/// so d_i b_ij = d_i d_j c_ij is skew. No zero rows when `no_zero_rows`.
inline seedgraph::IntMatrix random_exchange_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                                   bool no_zero_rows = true, int spread = 2) {
  std::uniform_int_distribution<int> dval(1, 3), cval(-spread, spread), sval(-2, 2);
  for (;;) {
    std::vector<std::int64_t> d(n);
    for (auto& x : d) x = dval(rng);
    seedgraph::IntMatrix b(n, n + m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int c = cval(rng);
        b(i, j) = d[j] * c;
        b(j, i) = -d[i] * c;
      }
      for (std::size_t j = n; j < n + m; ++j) b(i, j) = sval(rng);
    }
    if (!no_zero_rows) return b;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < n + m; ++j) zero = zero && b(i, j) == 0;
      ok = !zero;
    }
    if (ok) return b;
  }
}

/// Rank of a rational matrix by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Determinant by cofactor expansion along the first row.
inline mpz_class cofactor_det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[i][j]);
      }
      minor.push_back(row);
    }
    const mpz_class term = mpz_class(static_cast<long>(a[0][c])) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

}  // namespace oracle
