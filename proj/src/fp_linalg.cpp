#include "qlat/fp_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <utility>

#include "qlat/errors.hpp"

namespace qlat {

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p) {
  std::int64_t base = mod_p(a, p);
  std::int64_t r = 1 % p;
  while (e) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * base % p);
    base = static_cast<std::int64_t>((__int128)base * base % p);
    e >>= 1;
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a = mod_p(a, p);
  if (a == 0) throw PreconditionError("inv_mod: zero has no inverse");
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod_p(t, p);
}

bool is_square_mod(std::int64_t a, std::int64_t p) {
  a = mod_p(a, p);
  if (a == 0) return false;
  if (p == 2) return true;
  return pow_mod(a, static_cast<std::uint64_t>((p - 1) / 2), p) == 1;
}

std::int64_t smallest_nonsquare(std::int64_t p) {
  if (p == 2) throw PreconditionError("smallest_nonsquare: every element of F_2^x is a square");
  for (std::int64_t a = 2; a < p; ++a)
    if (!is_square_mod(a, p)) return a;
  throw InvariantViolation("smallest_nonsquare: no non-square found");
}

FpMatrix FpMatrix::identity(std::size_t n) {
  FpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_columns(std::size_t rows, const std::vector<FpVector>& cols) {
  FpMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

FpVector FpMatrix::column(std::size_t j) const {
  FpVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

FpVector FpMatrix::row(std::size_t i) const {
  return FpVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void FpMatrix::set_column(std::size_t j, const FpVector& v) {
  if (v.size() != rows_) throw PreconditionError("FpMatrix::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << qlat::to_string(row(i));
  }
  os << ']';
  return os.str();
}

FpMatrix mul(const FpMatrix& a, const FpMatrix& b, std::int64_t p) {
  if (a.cols() != b.rows()) throw PreconditionError("F_p matrix product: shape mismatch");
  FpMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = (c(i, j) + aik * b(k, j)) % p;
    }
  return c;
}

FpVector mul(const FpMatrix& a, const FpVector& x, std::int64_t p) {
  if (a.cols() != x.size()) throw PreconditionError("F_p matrix-vector product: shape mismatch");
  FpVector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) s = (s + a(i, k) * x[k]) % p;
    y[i] = s;
  }
  return y;
}

FpMatrix sub(const FpMatrix& a, const FpMatrix& b, std::int64_t p) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("F_p matrix difference: shape mismatch");
  FpMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = mod_p(a(i, j) - b(i, j), p);
  return c;
}

FpVector add(const FpVector& a, const FpVector& b, std::int64_t p) {
  FpVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % p;
  return c;
}

FpVector sub(const FpVector& a, const FpVector& b, std::int64_t p) {
  FpVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_p(a[i] - b[i], p);
  return c;
}

FpVector scale(std::int64_t c, const FpVector& a, std::int64_t p) {
  c = mod_p(c, p);
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i] % p;
  return r;
}

bool is_zero(const FpVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

Echelon row_reduce(const FpMatrix& a, std::int64_t p) {
  FpMatrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    std::int64_t inv = inv_mod(m(r, c), p);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      std::int64_t f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_p(m(i, j) - f * m(r, j), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& a, std::int64_t p) { return row_reduce(a, p).pivots.size(); }

std::size_t rank(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p) {
  if (vectors.empty()) return 0;
  return rank(FpMatrix::from_columns(dim, vectors), p);
}

std::int64_t determinant(const FpMatrix& a, std::int64_t p) {
  if (a.rows() != a.cols()) throw PreconditionError("determinant of a non-square matrix");
  FpMatrix m = a;
  const std::size_t n = m.rows();
  std::int64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = mod_p(-det, p);
    }
    det = det * m(c, c) % p;
    std::int64_t inv = inv_mod(m(c, c), p);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      std::int64_t f = m(i, c) * inv % p;
      for (std::size_t j = c; j < n; ++j) m(i, j) = mod_p(m(i, j) - f * m(c, j), p);
    }
  }
  return det;
}

std::optional<FpMatrix> inverse(const FpMatrix& a, std::int64_t p) {
  if (a.rows() != a.cols()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return FpMatrix(0, 0);
  FpMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = row_reduce(aug, p);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  FpMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

std::vector<FpVector> kernel(const FpMatrix& a, std::int64_t p) {
  Echelon e = row_reduce(a, p);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = mod_p(-e.rref(r, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, std::int64_t p) {
  if (b.size() != a.rows()) throw PreconditionError("solve: right-hand side has the wrong length");
  FpMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = mod_p(b[i], p);
  }
  Echelon e = row_reduce(aug, p);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  FpVector x(a.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(r, a.cols());
  return x;
}

std::vector<FpVector> canonical_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p) {
  if (vectors.empty()) return {};
  FpMatrix m(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = mod_p(vectors[i][j], p);
  Echelon e = row_reduce(m, p);
  std::vector<FpVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.rref.row(r));
  return out;
}

std::vector<FpVector> complete_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p) {
  std::vector<FpVector> out = vectors;
  std::size_t r = rank(out, dim, p);
  if (r != out.size()) throw PreconditionError("complete_basis: vectors are not independent");
  for (std::size_t i = 0; i < dim && out.size() < dim; ++i) {
    FpVector e(dim, 0);
    e[i] = 1;
    out.push_back(e);
    if (rank(out, dim, p) == out.size())
      continue;
    out.pop_back();
  }
  return out;
}

FpVector vector_from_index(std::uint64_t index, std::size_t dim, std::int64_t p) {
  FpVector v(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  return v;
}

std::optional<std::uint64_t> bounded_power(std::int64_t p, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / static_cast<std::uint64_t>(p)) return std::nullopt;
    r *= static_cast<std::uint64_t>(p);
  }
  if (r > cap) return std::nullopt;
  return r;
}

std::string to_string(const FpVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ']';
  return os.str();
}

}  // namespace qlat
