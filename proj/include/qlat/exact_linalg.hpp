#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, finitely
// generated quotients of Z^n, saturation and lattice intersection.

#include <cstddef>
#include <optional>
#include <vector>

#include "qlat/int_matrix.hpp"

namespace qlat {

struct SmithForm {
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix D;  ///< diagonal with d_1 | d_2 | ..., nonnegative
  IntMatrix V;  ///< unimodular, cols x cols
};

/// U * M * V = D. Only D is canonical; U and V are one admissible choice.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form, in divisibility order.
IntVector elementary_divisors(const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  ///< column-style Hermite form, same shape as the input
  IntMatrix T;  ///< unimodular, cols x cols, with M * T = H
};

/// Column-style Hermite normal form. The nonzero columns of H come first;
/// column j has its pivot (a positive entry) in row r_j with r_0 < r_1 < ...,
/// zeros above the pivot, and every entry to the left of a pivot in the pivot
/// row reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Canonical basis of the column span: the nonzero columns of the Hermite form.
IntMatrix hnf_basis(const IntMatrix& gens);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Basis (as columns) of {x in Z^cols : m x = 0}. The result is saturated.
IntMatrix integer_kernel(const IntMatrix& m);

/// A finitely generated abelian group Z^free_rank + (+)_i Z/d_i.
struct AbelianQuotient {
  std::size_t free_rank = 0;
  IntVector torsion;  ///< elementary divisors d_i > 1 with d_i | d_{i+1}

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Order of the torsion subgroup (the group order when finite).
  Integer torsion_order() const;
  friend bool operator==(const AbelianQuotient&, const AbelianQuotient&) = default;
};

/// Structure of Z^ambient_rank / (column span of gens).
AbelianQuotient quotient_structure(std::size_t ambient_rank, const IntMatrix& gens);

struct Saturation {
  IntMatrix basis;  ///< canonical basis of (span gens (x) Q) intersect Z^n
  bool is_direct_summand = false;
};

Saturation saturate(std::size_t ambient_rank, const IntMatrix& gens);

/// Canonical basis of the intersection of two lattices given by bases
/// (full column rank) in Z^n. Throws PreconditionError on a rank-deficient basis.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Rational variant: the lattices are a/da and b/db. Returns the numerator of
/// the intersection over the common denominator lcm(da, db).
struct ScaledIntersection {
  IntMatrix numerator;
  Integer denominator;
};
ScaledIntersection lattice_intersection(const IntMatrix& a, const Integer& da, const IntMatrix& b,
                                        const Integer& db);

/// Some integer x with a x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// True when v lies in the column span of `basis` over Z.
bool in_lattice(const IntMatrix& basis, const IntVector& v);

}  // namespace qlat
