#pragma once

// Character lattices of split formal tori and diagonalizable groups.
//
// A subgroup of T x T cut out as the kernel of (x, y) -> A(x) / B(y) has
// character group Z^2n / { (A^T c, -B^T c) }. The two projections to T induce
// maps on character groups whose elementary divisors measure how far each
// projection is from an isomorphism.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qlat/exact_linalg.hpp"

namespace qlat {

struct CharLattice {
  std::size_t rank = 0;
  /// Ranks (a, b, c) of the weight -1, 0, +1 blocks, in that coordinate order.
  std::optional<std::array<std::size_t, 3>> weights;

  static CharLattice split(std::size_t a, std::size_t b, std::size_t c);
};

struct DiagGroupKernel {
  AbelianQuotient presentation;  ///< character group of the kernel
  IntVector source_divisors;     ///< elementary divisors of the first projection on characters
  IntVector target_divisors;     ///< same for the second projection
};

/// Kernel of (x, y) -> A(x) B(y)^-1 on T x T for diagonal character matrices.
/// Both diagonals must consist of positive entries.
DiagGroupKernel diagonal_graph_kernel(const IntVector& a_diag, const IntVector& b_diag);

/// The graph {(x, x^p)} on the weight -1 block, the diagonal on weight 0 and
/// {(x^p, x)} on weight +1: A = diag(p 1_a, 1_b, 1_c), B = diag(1_a, 1_b, p 1_c).
DiagGroupKernel qisog_kernel_char(const CharLattice& split, std::int64_t p);

/// The same construction for an element acting by the scalar p^v_i on the
/// i-th weight block (one scalar per block, or a single scalar when the
/// lattice carries no weight decomposition): A = p^max(-v, 0), B = p^max(v, 0).
/// Scalars must be positive powers of p with integer exponent of either sign.
DiagGroupKernel tgm_kernel(const std::vector<mpq_class>& block_scalars, const CharLattice& split, std::int64_t p);

struct CokernelM {
  AbelianQuotient m;
  Integer inj1_index;           ///< [M : image of V0/W]
  bool inj1_injective = false;  ///< V0/W -> M is injective
  bool iso2 = false;            ///< V0/lambda^-1 W~ -> M is an isomorphism
  IntMatrix w_tilde;            ///< lambda(p) V0 n W
};

/// M = (V0/W + V0/lambda^-1 W~) / V0 with V0 = Z^(1+b+1) mapped by
/// z -> ((z_-1, z_0, p z_1), (p z_-1, z_0, z_1)) and lambda(p) = diag(1/p, 1, p).
/// W (columns of w_gens) must be a direct summand whose last coordinates have gcd 1.
CokernelM cokernel_m(const CharLattice& split, const IntMatrix& w_gens, std::int64_t p);

/// Character lattice of Hom between tori of ranks h1 and h0.
CharLattice serre_tate_torus(std::size_t h1, std::size_t h0);

}  // namespace qlat
