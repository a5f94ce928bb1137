#pragma once

// Integral quadratic lattices over Z.
//
// A lattice is stored through its upper-triangular half-Gram matrix H, so that
// Q(x) = x^T H x. The bilinear form is [x, y] = Q(x + y) - Q(x) - Q(y), whose
// Gram matrix is B = H + H^T; its diagonal is always even. Keeping Q itself
// (rather than only B) is what makes the 2-adic statements meaningful.

#include <cstddef>
#include <string>
#include <vector>

#include "qlat/exact_linalg.hpp"
#include "qlat/int_matrix.hpp"

namespace qlat {

class QuadLattice {
 public:
  QuadLattice() = default;
  /// Accepts any square matrix; entries below the diagonal are folded into the
  /// upper triangle (the quadratic form only sees h_ij + h_ji).
  explicit QuadLattice(const IntMatrix& half_gram);

  /// Lattice whose bilinear Gram matrix is `gram` (symmetric, even diagonal).
  static QuadLattice from_gram(const IntMatrix& gram);

  std::size_t rank() const { return half_gram_.rows(); }
  const IntMatrix& half_gram() const { return half_gram_; }
  IntMatrix gram() const;

  Integer quad_value(const IntVector& x) const;
  Integer bilinear_value(const IntVector& x, const IntVector& y) const;

  Integer determinant() const { return gram().determinant(); }

  /// Pull back along a basis change: the lattice spanned by the columns of
  /// `basis` with the induced form. `basis` may have fewer columns than rank().
  QuadLattice restrict_to(const IntMatrix& basis) const;

  friend bool operator==(const QuadLattice& a, const QuadLattice& b) { return a.half_gram_ == b.half_gram_; }

 private:
  IntMatrix half_gram_;
};

/// A sublattice given by a basis (columns of full column rank) in ambient coordinates.
struct Sublattice {
  QuadLattice ambient;
  IntMatrix basis;

  std::size_t rank() const { return basis.cols(); }
  /// Induced lattice in the coordinates of `basis`.
  QuadLattice lattice() const { return ambient.restrict_to(basis); }
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// True iff det(B) is a unit mod p.
bool is_self_dual_at(const QuadLattice& l, const Integer& p);

/// Inertia of B via exact rational congruence diagonalization.
/// Throws PreconditionError on a degenerate form.
Signature signature(const QuadLattice& l);

/// {x in L : [x, s] = 0 for all s in S}, with a canonical (Hermite) basis.
Sublattice orthogonal_complement(const QuadLattice& l, const IntMatrix& sub_basis);

/// L^dual / L. Throws PreconditionError on a degenerate form.
AbelianQuotient discriminant_group(const QuadLattice& l);

bool is_even(const QuadLattice& l);
bool is_positive_definite(const QuadLattice& l);

// Standard constructors.
QuadLattice hyperbolic_plane();
QuadLattice e8_lattice();
/// Rank one lattice with Q(v) = m.
QuadLattice rank_one(const Integer& m);
QuadLattice orthogonal_sum(const QuadLattice& a, const QuadLattice& b);
QuadLattice orthogonal_sum(const std::vector<QuadLattice>& parts);
/// Same module, form multiplied by c.
QuadLattice rescale(const QuadLattice& l, const Integer& c);
/// H + H + H + E8 + E8, with the first hyperbolic plane in coordinates 0, 1.
QuadLattice k3_lattice();

/// Named constructor used by the CLI: "hyperbolic", "e8", "k3", "rank1:<m>",
/// or an orthogonal sum such as "hyperbolic+hyperbolic" (the separator may
/// also be "⊥", as in "H⊥H").
QuadLattice standard_lattice(const std::string& name);

}  // namespace qlat
