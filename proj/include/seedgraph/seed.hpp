#pragma once

// Seeds and their mutations.
//
// Directions are 0-based throughout the library; the CLI and every exported
// format use the 1-based labels 1..n.
//
// A seed lives over an ambient Context. Cluster variables x1..xn come first;
// stable variables (geometric mode) or the generators of the tropical
// coefficient semifield (general mode) follow as x_{n+1}..x_{n+m}.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seedgraph/laurent.hpp"
#include "seedgraph/matrix.hpp"
#include "seedgraph/semifield.hpp"

namespace seedgraph {

enum class SeedMode { general, geometric };

using CoefficientTuple = std::variant<std::vector<TrivialElement>, std::vector<TropicalElement>>;

class Seed {
 public:
  /// Geometric seed: coefficients are carried by the stable columns of the
  /// extended matrix. The context must have n+m variables.
  Seed(std::vector<LaurentPolynomial> cluster, ExchangeMatrix extended);
  /// General seed over the trivial or a tropical semifield; matrix is n x n.
  /// With tropical coefficients of rank m the context has n+m variables.
  Seed(std::vector<LaurentPolynomial> cluster, CoefficientTuple coefficients, ExchangeMatrix matrix);

  /// Initial seeds use the cluster x1..xn.
  static Seed initial_geometric(const ExchangeMatrix& extended);
  static Seed initial_general(const ExchangeMatrix& matrix, CoefficientTuple coefficients);
  static Seed coefficient_free(const ExchangeMatrix& matrix);
  /// Geometric seed of [B | I].
  static Seed principal(const ExchangeMatrix& matrix);

  SeedMode mode() const noexcept { return mode_; }
  std::size_t rank() const noexcept { return cluster_.size(); }
  /// Number of ambient variables beyond the cluster.
  std::size_t stable_count() const noexcept { return ctx_->size() - rank(); }
  const Context& context() const noexcept { return ctx_; }
  const std::vector<LaurentPolynomial>& cluster() const noexcept { return cluster_; }
  /// n x (n+m) in geometric mode, n x n in general mode.
  const ExchangeMatrix& matrix() const noexcept { return matrix_; }
  ExchangeMatrix principal_matrix() const { return matrix_.principal(); }
  /// Stored tuple in general mode; read off the stable columns in geometric
  /// mode.
  CoefficientTuple coefficients() const;

  /// Seed whose index i carries old index sigma[i].
  Seed permuted(std::span<const std::size_t> sigma) const;

  bool operator==(const Seed& other) const;

 private:
  Context ctx_;
  std::vector<LaurentPolynomial> cluster_;
  CoefficientTuple coeffs_;
  ExchangeMatrix matrix_;
  SeedMode mode_;
};

/// y_i = prod_j g_j^{b_{i,n+j}} from the stable columns.
std::vector<TropicalElement> coefficients_from_extended(const ExchangeMatrix& extended);

/// Coefficient mutation in direction k over any semifield.
template <Semifield S>
std::vector<S> mutate_coefficients(std::span<const S> y, const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.rank();
  if (y.size() != n) throw ContextMismatch("coefficient tuple length differs from rank");
  if (k >= n) throw BadDirection("direction " + std::to_string(k + 1) + " outside [1," + std::to_string(n) + "]");
  const S& yk = y[k];
  const S denom = yk.oplus(yk.unit());
  std::vector<S> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t bjk = b(j, k);
    if (j == k) {
      out.push_back(yk.inverse());
    } else if (bjk > 0) {
      out.push_back(y[j] * yk.pow(bjk) * denom.pow(-bjk));
    } else {
      out.push_back(y[j] * denom.pow(-bjk));
    }
  }
  return out;
}

Seed seed_mutate_general(const Seed& s, std::size_t k);
Seed seed_mutate_geometric(const Seed& s, std::size_t k);
/// Dispatches on the seed's mode.
Seed mutate(const Seed& s, std::size_t k);
Seed mutate_along(Seed s, std::span<const std::size_t> path);

/// yhat_j = y_j prod_k x_k^{b_jk}, exact in the ambient field.
std::vector<RationalFunction> compute_yhat(const Seed& s);

/// Weights w^1..w^n of length 2n with [B | I] (w^j)^T = 0: the first n
/// entries of w^j are column j of det(B) B^{-1}, the last n are
/// -det(B) e_j. Throws NondegenerateRequired when det B = 0.
std::vector<std::vector<std::int64_t>> compute_toric_weights(const ExchangeMatrix& b);

/// Human-readable multi-line rendering.
std::string describe(const Seed& s);

}  // namespace seedgraph
