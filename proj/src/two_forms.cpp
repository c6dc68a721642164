#include "seedgraph/two_forms.hpp"

#include <stdexcept>

namespace seedgraph {

namespace {

mpq_class q(std::int64_t v) { return mpq_class(mpz_class(static_cast<long>(v))); }

std::string entry_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

RationalMatrix RationalMatrix::from_integers(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = q(m(i, j));
  }
  return r;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

bool RationalMatrix::is_skew_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
  }
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RationalMatrix RationalMatrix::operator*(const mpq_class& c) const {
  RationalMatrix r = *this;
  for (auto& v : r.data_) v *= c;
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<std::vector<std::string>> RationalMatrix::to_rows() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).get_str());
  }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ',';
    s += '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ',';
      s += (*this)(i, j).get_str();
    }
    s += ']';
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

FormBasis compatible_form_space(const ExchangeMatrix& extended) {
  if (extended.has_zero_row()) throw ZeroRowUnsupported("compatible forms need an extended matrix without zero rows");
  const std::size_t n = extended.rank(), m = extended.stable_count(), total = extended.columns();
  const Skewsymmetrizer& sym = extended.symmetrizer();

  FormBasis out;
  for (const auto& block : sym.blocks) {
    RationalMatrix omega(total, total);
    for (auto i : block) {
      for (std::size_t j = 0; j < total; ++j) {
        const mpq_class v = q(sym.d[i]) * q(extended(i, j));
        omega(i, j) = v;
        if (j >= n) omega(j, i) = -v;
      }
    }
    out.basis.push_back(std::move(omega));
  }
  out.block_count = sym.block_count();
  for (std::size_t a = n; a < total; ++a) {
    for (std::size_t b = a + 1; b < total; ++b) {
      RationalMatrix omega(total, total);
      omega(a, b) = 1;
      omega(b, a) = -1;
      out.basis.push_back(std::move(omega));
    }
  }
  out.dimension = out.basis.size();
  if (out.dimension != sym.block_count() + m * (m - 1) / 2) {
    throw std::logic_error("compatible form basis has unexpected size");
  }
  return out;
}

CompatibilityReport verify_compatibility(const RationalMatrix& omega, const ExchangeMatrix& extended) {
  CompatibilityReport r;
  const std::size_t n = extended.rank(), total = extended.columns();
  if (omega.rows() != total || omega.cols() != total) {
    r.reason = "coefficient matrix must be " + std::to_string(total) + " x " + std::to_string(total);
    return r;
  }
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i; j < total; ++j) {
      if (omega(i, j) != -omega(j, i)) {
        r.witness.emplace(i, j);
        r.reason = "not skew-symmetric at " + entry_label(i, j);
        return r;
      }
    }
  }
  // Row proportionality: omega_ij b_ik = omega_ik b_ij.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      for (std::size_t k = j + 1; k < total; ++k) {
        if (omega(i, j) * q(extended(i, k)) != omega(i, k) * q(extended(i, j))) {
          r.witness.emplace(i, extended(i, j) == 0 && omega(i, j) != 0 ? j : k);
          r.reason = "row " + std::to_string(i + 1) + " of the form is not proportional to the matrix row";
          return r;
        }
      }
    }
  }
  // Block-constant lambda with omega[n; n+m] = Lambda D B.
  const Skewsymmetrizer& sym = extended.symmetrizer();
  r.lambda.assign(sym.block_count(), 0);
  std::vector<bool> fixed(sym.block_count(), false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t blk = sym.block_of[i];
    for (std::size_t j = 0; j < total; ++j) {
      const mpq_class dij = q(sym.d[i]) * q(extended(i, j));
      if (dij == 0) {
        if (omega(i, j) != 0) {
          r.witness.emplace(i, j);
          r.reason = "nonzero entry " + entry_label(i, j) + " where the matrix vanishes";
          return r;
        }
        continue;
      }
      const mpq_class lambda = omega(i, j) / dij;
      if (!fixed[blk]) {
        r.lambda[blk] = lambda;
        fixed[blk] = true;
      } else if (r.lambda[blk] != lambda) {
        r.witness.emplace(i, j);
        r.reason = "scalar not constant on the block of row " + std::to_string(i + 1) + " at " + entry_label(i, j);
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

RationalMatrix mutate_form(const RationalMatrix& omega, const ExchangeMatrix& extended, std::size_t k) {
  const std::size_t n = extended.rank(), total = extended.columns();
  if (k >= n) throw BadDirection("direction " + std::to_string(k + 1) + " outside [1," + std::to_string(n) + "]");
  if (auto rep = verify_compatibility(omega, extended); !rep.ok) throw NotCompatible(rep.reason);

  // dx'_k/x'_k = -dx_k/x_k + dlog(M+ + M-); the non-constant part cancels by
  // compatibility, leaving the correction from the positive monomial.
  RationalMatrix out = omega;
  for (std::size_t j = 0; j < total; ++j) {
    if (j == k) continue;
    out(k, j) = -omega(k, j);
    out(j, k) = -omega(j, k);
  }
  for (std::size_t j = 0; j < total; ++j) {
    if (j == k) continue;
    const std::int64_t bkj = extended(k, j);
    for (std::size_t l = 0; l < total; ++l) {
      if (l == k || l == j) continue;
      const std::int64_t bkl = extended(k, l);
      mpq_class v = omega(j, l);
      if (bkj > 0) v += q(bkj) * omega(k, l);
      if (bkl > 0) v -= q(bkl) * omega(k, j);
      out(j, l) = v;
    }
  }
  if (!verify_compatibility(out, matrix_mutate(extended, k)).ok) {
    throw std::logic_error("mutated form lost compatibility");
  }
  return out;
}

RationalMatrix mutate_form(const RationalMatrix& omega, const Seed& s, std::size_t k) {
  return mutate_form(omega, s.matrix(), k);
}

}  // namespace seedgraph
