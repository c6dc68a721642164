#pragma once

// Closed 2-forms compatible with a cluster algebra of geometric type.
//
// A form  sum omega_jk dx_j/x_j ^ dx_k/x_k  over the extended cluster is
// stored through its skew-symmetric coefficient matrix, of size
// (n+m) x (n+m). Scalars are exact rationals.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "seedgraph/matrix.hpp"
#include "seedgraph/seed.hpp"

namespace seedgraph {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix from_integers(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_skew_symmetric() const;
  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix operator*(const mpq_class& c) const;
  bool operator==(const RationalMatrix& o) const;

  /// Rows of canonical rational strings such as "-3/2".
  std::vector<std::vector<std::string>> to_rows() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> data_;
};

struct FormBasis {
  std::vector<RationalMatrix> basis;
  std::size_t dimension = 0;
  /// Number of blocks of the principal part that contribute.
  std::size_t block_count = 0;
};

/// One element per block of B (Lambda the block indicator, stable-stable
/// part zero) followed by one per unordered stable pair.
/// Throws ZeroRowUnsupported when some row of the extended matrix vanishes.
FormBasis compatible_form_space(const ExchangeMatrix& extended);

struct CompatibilityReport {
  bool ok = false;
  /// 0-based entry where the first violation was seen.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string reason;
  /// lambda per block when ok.
  std::vector<mpq_class> lambda;
};

CompatibilityReport verify_compatibility(const RationalMatrix& omega, const ExchangeMatrix& extended);

/// Coefficient matrix of the same form in the extended cluster adjacent in
/// direction k. Throws NotCompatible if omega is not compatible with b.
RationalMatrix mutate_form(const RationalMatrix& omega, const ExchangeMatrix& extended, std::size_t k);
RationalMatrix mutate_form(const RationalMatrix& omega, const Seed& s, std::size_t k);

}  // namespace seedgraph
