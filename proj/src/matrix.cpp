#include "seedgraph/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <sstream>

namespace seedgraph {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("exchange matrix entry overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("exchange matrix entry overflow");
  return r;
}

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error("ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::int64_t IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  return (*this)(i, j);
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

IntMatrix IntMatrix::block(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw std::out_of_range("matrix block");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

Skewsymmetrizer validate_and_symmetrize(const IntMatrix& b) {
  if (!b.is_square()) throw NotSkewSymmetrizable("exchange matrix must be square");
  const std::size_t n = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (b(i, i) != 0) throw NotSkewSymmetrizable("nonzero diagonal entry at " + std::to_string(i + 1));
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool zi = b(i, j) == 0, zj = b(j, i) == 0;
      if (zi != zj || (!zi && (b(i, j) > 0) == (b(j, i) > 0))) {
        throw NotSkewSymmetrizable("entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                   ") are not sign-skew");
      }
    }
  }

  Skewsymmetrizer out;
  out.d.assign(n, 0);
  out.block_of.assign(n, n);
  std::vector<mpq_class> d(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (out.block_of[start] != n) continue;
    const std::size_t block = out.blocks.size();
    out.blocks.emplace_back();
    d[start] = 1;
    out.block_of[start] = block;
    std::queue<std::size_t> todo;
    todo.push(start);
    while (!todo.empty()) {
      const std::size_t i = todo.front();
      todo.pop();
      out.blocks[block].push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j) == 0) continue;
        // d_i b_ij = -d_j b_ji
        const mpq_class dj = -d[i] * mpq_class(b(i, j)) / mpq_class(b(j, i));
        if (out.block_of[j] == n) {
          out.block_of[j] = block;
          d[j] = dj;
          todo.push(j);
        } else if (d[j] != dj) {
          throw NotSkewSymmetrizable("no diagonal symmetrizer: cycle through " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " is inconsistent");
        }
      }
    }
    auto& members = out.blocks[block];
    std::sort(members.begin(), members.end());
    mpz_class den_lcm = 1;
    for (auto i : members) den_lcm = lcm(den_lcm, mpz_class(d[i].get_den()));
    mpz_class num_gcd = 0;
    for (auto i : members) num_gcd = gcd(num_gcd, mpz_class(d[i] * den_lcm));
    for (auto i : members) out.d[i] = to_int64(mpz_class(d[i] * den_lcm / num_gcd));
  }
  return out;
}

ExchangeMatrix::ExchangeMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.cols() < entries_.rows()) throw Error("exchange matrix needs n rows and n+m columns");
  sym_ = validate_and_symmetrize(entries_.block(entries_.rows(), entries_.rows()));
}

ExchangeMatrix ExchangeMatrix::principal() const {
  return ExchangeMatrix(entries_.block(rank(), rank()), sym_);
}

bool ExchangeMatrix::has_zero_row() const noexcept {
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    const auto r = entries_.row(i);
    if (std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; })) return true;
  }
  return false;
}

ExchangeMatrix ExchangeMatrix::permuted(std::span<const std::size_t> sigma) const {
  const std::size_t n = rank();
  if (sigma.size() != n) throw Error("permutation size differs from rank");
  IntMatrix e(n, columns());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns(); ++j) {
      e(i, j) = entries_(sigma[i], j < n ? sigma[j] : j);
    }
  }
  return ExchangeMatrix(std::move(e));
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.rank();
  if (k >= n) throw BadDirection("direction " + std::to_string(k + 1) + " outside [1," + std::to_string(n) + "]");
  IntMatrix e(n, b.columns());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.columns(); ++j) {
      if (i == k || j == k) {
        e(i, j) = -b(i, j);
      } else {
        const std::int64_t bik = b(i, k), bkj = b(k, j);
        const std::int64_t twice = checked_add(checked_mul(std::abs(bik), bkj), checked_mul(bik, std::abs(bkj)));
        e(i, j) = checked_add(b(i, j), twice / 2);
      }
    }
  }
  // Mutation preserves the symmetrizer and the block partition.
  return ExchangeMatrix(std::move(e), b.symmetrizer());
}

ExchangeMatrix principal_extension(const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  IntMatrix e(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e(i, j) = b(i, j);
    e(i, n + i) = 1;
  }
  return ExchangeMatrix(std::move(e));
}

// ---------------------------------------------------------------------------

mpz_class determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a(i, j));
  }
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<std::vector<mpz_class>> adjugate(const IntMatrix& a) {
  if (!a.is_square()) throw Error("adjugate of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<mpz_class>> adj(n, std::vector<mpz_class>(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const mpz_class cof = ((i + j) % 2 ? -1 : 1) * determinant(minor);
      adj[j][i] = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const ExchangeMatrix& b) {
  nlohmann::ordered_json j;
  j["n"] = b.rank();
  j["m"] = b.stable_count();
  j["rows"] = b.entries().to_rows();
  return j;
}

ExchangeMatrix exchange_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("matrix JSON must be an object with n, m, rows");
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.contains("m") ? j.at("m").get<std::size_t>() : std::size_t{0};
  const auto rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
  if (rows.size() != n) throw Error("matrix JSON: expected " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n + m) {
      throw Error("matrix JSON: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                  " entries, expected " + std::to_string(n + m));
    }
  }
  if (n == 0) throw Error("matrix JSON: rank must be positive");
  return ExchangeMatrix(IntMatrix::from_rows(rows));
}

namespace {

std::string line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

IntMatrix parse_matrix_text(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> current;
  std::size_t row_start = 0;
  auto end_row = [&](std::size_t at) {
    if (current.empty()) return;
    if (!rows.empty() && current.size() != rows[0].size()) {
      throw ParseError(line_column(text, row_start) + ": row has " + std::to_string(current.size()) +
                           " entries, expected " + std::to_string(rows[0].size()),
                       at);
    }
    rows.push_back(std::move(current));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n' || c == ';') {
      end_row(pos);
      ++pos;
    } else if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++pos;
    } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      if (current.empty()) row_start = start;
      if (c == '-' || c == '+') ++pos;
      const std::size_t digits = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == digits || (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
                            text[pos] != ';' && text[pos] != ',' && text[pos] != '#')) {
        throw ParseError(line_column(text, start) + ": expected integer", start);
      }
      const std::string token(text.substr(start, pos - start));
      errno = 0;
      char* end = nullptr;
      const long long v = std::strtoll(token.c_str(), &end, 10);
      if (errno == ERANGE) throw ParseError(line_column(text, start) + ": integer out of range", start);
      current.push_back(v);
    } else {
      throw ParseError(line_column(text, pos) + ": unexpected character '" + std::string(1, c) + "'", pos);
    }
  }
  end_row(pos);
  if (rows.empty()) throw ParseError("empty matrix", 0);
  return IntMatrix::from_rows(rows);
}

ExchangeMatrix parse_exchange_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
      throw ParseError(line_column(text, at) + ": malformed JSON", at);
    }
    try {
      return exchange_matrix_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("matrix JSON: ") + e.what(), first);
    }
  }
  IntMatrix m = parse_matrix_text(text);
  if (!m.is_square()) {
    throw ParseError("plain-text matrices must be square (" + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " given); use JSON for stable columns",
                     0);
  }
  return ExchangeMatrix(std::move(m));
}

}  // namespace seedgraph
