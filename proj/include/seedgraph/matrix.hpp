#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "seedgraph/errors.hpp"

namespace seedgraph {

/// Dense row-major integer matrix. Arithmetic on entries is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// From nested rows; all rows must have equal length.
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const;
  std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<std::vector<std::int64_t>> to_rows() const;

  /// Leading rows x cols block.
  IntMatrix block(std::size_t rows, std::size_t cols) const;
  bool is_square() const noexcept { return rows_ == cols_; }

  bool operator==(const IntMatrix&) const = default;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Positive integer symmetrizer of a square matrix, together with the
/// finest block decomposition (connected components of the graph with an
/// edge i-j whenever b_ij != 0). Blocks are listed by smallest member; d is
/// normalized so each block's entries are coprime.
struct Skewsymmetrizer {
  std::vector<std::int64_t> d;
  std::vector<std::size_t> block_of;
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t block_count() const noexcept { return blocks.size(); }
  bool operator==(const Skewsymmetrizer&) const = default;
};

/// Throws NotSkewSymmetrizable when no positive diagonal D makes DB
/// skew-symmetric.
Skewsymmetrizer validate_and_symmetrize(const IntMatrix& b);

/// An n x (n+m) exchange matrix whose leading n x n block is
/// skew-symmetrizable. m = 0 is the plain (coefficient-free) case; the
/// remaining columns carry the stable variables.
class ExchangeMatrix {
 public:
  /// entries must have n rows and n+m columns.
  explicit ExchangeMatrix(IntMatrix entries);

  std::size_t rank() const noexcept { return entries_.rows(); }
  std::size_t stable_count() const noexcept { return entries_.cols() - entries_.rows(); }
  std::size_t columns() const noexcept { return entries_.cols(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const IntMatrix& entries() const noexcept { return entries_; }
  ExchangeMatrix principal() const;
  const Skewsymmetrizer& symmetrizer() const noexcept { return sym_; }

  bool has_zero_row() const noexcept;
  /// New row/column i is old sigma[i] for i < n; stable columns keep place.
  ExchangeMatrix permuted(std::span<const std::size_t> sigma) const;

  bool operator==(const ExchangeMatrix& other) const { return entries_ == other.entries_; }

 private:
  ExchangeMatrix(IntMatrix entries, Skewsymmetrizer sym) : entries_(std::move(entries)), sym_(std::move(sym)) {}
  friend ExchangeMatrix matrix_mutate(const ExchangeMatrix&, std::size_t);

  IntMatrix entries_;
  Skewsymmetrizer sym_;
};

/// Matrix mutation in direction k (0-based), applied to every column.
ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k);

/// [B | I_n].
ExchangeMatrix principal_extension(const ExchangeMatrix& b);

mpz_class determinant(const IntMatrix& a);
/// adj(A), so A * adj(A) = det(A) * I.
std::vector<std::vector<mpz_class>> adjugate(const IntMatrix& a);

/// {"n": n, "m": m, "rows": [[...], ...]}
nlohmann::ordered_json to_json(const ExchangeMatrix& b);
ExchangeMatrix exchange_matrix_from_json(const nlohmann::json& j);

/// Whitespace-separated rows, one per line (`;` also ends a row); blank lines
/// and `#` comments are skipped. Errors report line and column.
IntMatrix parse_matrix_text(std::string_view text);

/// JSON object or plain text, detected by the first non-blank character.
ExchangeMatrix parse_exchange_matrix(std::string_view text);

}  // namespace seedgraph
