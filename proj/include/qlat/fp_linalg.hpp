#pragma once

// Dense linear algebra over a prime field F_p with machine-word entries.
// Every function takes the prime explicitly; inputs are assumed reduced into
// [0, p) unless stated otherwise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qlat {

using FpVector = std::vector<std::int64_t>;

std::int64_t mod_p(std::int64_t a, std::int64_t p);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p);
/// Nonzero squares of F_p^x (every element is a square when p = 2).
bool is_square_mod(std::int64_t a, std::int64_t p);
/// Smallest non-square of F_p^x (p odd).
std::int64_t smallest_nonsquare(std::int64_t p);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix identity(std::size_t n);
  static FpMatrix from_columns(std::size_t rows, const std::vector<FpVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  FpVector column(std::size_t j) const;
  FpVector row(std::size_t i) const;
  void set_column(std::size_t j, const FpVector& v);
  FpMatrix transpose() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
  friend bool operator<(const FpMatrix& a, const FpMatrix& b) { return a.data_ < b.data_; }

  const std::vector<std::int64_t>& data() const { return data_; }
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

FpMatrix mul(const FpMatrix& a, const FpMatrix& b, std::int64_t p);
FpVector mul(const FpMatrix& a, const FpVector& x, std::int64_t p);
FpMatrix sub(const FpMatrix& a, const FpMatrix& b, std::int64_t p);

FpVector add(const FpVector& a, const FpVector& b, std::int64_t p);
FpVector sub(const FpVector& a, const FpVector& b, std::int64_t p);
FpVector scale(std::int64_t c, const FpVector& a, std::int64_t p);
bool is_zero(const FpVector& v);

/// Row echelon data: the reduced row echelon form and its pivot columns.
struct Echelon {
  FpMatrix rref;
  std::vector<std::size_t> pivots;
};
Echelon row_reduce(const FpMatrix& a, std::int64_t p);

std::size_t rank(const FpMatrix& a, std::int64_t p);
std::size_t rank(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p);
std::int64_t determinant(const FpMatrix& a, std::int64_t p);
std::optional<FpMatrix> inverse(const FpMatrix& a, std::int64_t p);

/// Basis (as a list of vectors) of {x : a x = 0}.
std::vector<FpVector> kernel(const FpMatrix& a, std::int64_t p);
/// Some x with a x = b, if one exists.
std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, std::int64_t p);

/// Canonical basis of a subspace: the nonzero rows of the reduced echelon form
/// of the matrix whose rows are the given vectors.
std::vector<FpVector> canonical_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p);

/// Extends independent vectors to a basis of F_p^dim by appending standard vectors.
std::vector<FpVector> complete_basis(const std::vector<FpVector>& vectors, std::size_t dim, std::int64_t p);

/// The vector whose little-endian base-p digits are given by index.
FpVector vector_from_index(std::uint64_t index, std::size_t dim, std::int64_t p);

/// p^e, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::int64_t p, std::size_t e, std::uint64_t cap);

std::string to_string(const FpVector& v);

}  // namespace qlat
