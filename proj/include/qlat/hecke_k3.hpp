#pragma once

// Minimal pairs of positive definite lattices, the polarized K3 lattice
// rescaling along a hyperbolic plane, and the lattice-level fibers of the
// Hecke correspondence between special cycles.

#include <cstdint>
#include <vector>

#include "qlat/padic_lattice.hpp"
#include "qlat/quad_lattice.hpp"

namespace qlat {

/// An index-p sublattice Lambda~ of a positive definite Lambda. tilde_basis
/// holds a Hermite basis of Lambda~ in the coordinates of Lambda.
struct MinimalPair {
  QuadLattice lambda;
  IntMatrix tilde_basis;
  std::int64_t p = 2;

  /// Throws PreconditionError when Lambda is not positive definite or the
  /// index is not p.
  void validate() const;
  QuadLattice tilde_lattice() const { return lambda.restrict_to(tilde_basis); }
};

/// Kernels of the surjections Lambda -> F_p, one per projective point of the
/// dual space, in the order of projective_points.
std::vector<MinimalPair> enumerate_index_p_sublattices(const QuadLattice& lambda, std::int64_t p,
                                                       std::uint64_t max_points = kDefaultMaxPoints);

struct PolarizedK3Lattice {
  QuadLattice lattice;
  IntVector xi;

  /// Even, unimodular, rank 22, xi primitive with Q(xi) > 0.
  void validate() const;
  Integer degree() const { return lattice.quad_value(xi); }
};

/// (K3 lattice, e + d f) with (e, f) the first hyperbolic plane.
PolarizedK3Lattice k3_polarized(const Integer& d);

/// Replaces the first hyperbolic pair (e, f) by (p e, f / p) and the class xi
/// by p xi, written in the new basis. The Gram matrix is unchanged, so only
/// the coordinates of xi move: (x0, x1, rest) -> (x0, p^2 x1, p rest).
/// Throws PreconditionError when the result is not primitive.
PolarizedK3Lattice isogeny_step(const PolarizedK3Lattice& in, std::int64_t p);

/// isogeny_step applied to k3_polarized(d): xi has coordinates (1, p^2 d, 0, ...).
PolarizedK3Lattice k3_isogeny(const Integer& d, std::int64_t p);

/// The neighbors N~ of N with N~ n W[1/p] = W~, where W and W~ are the images
/// of Lambda and Lambda~ under `embedding` (columns in N coordinates).
std::vector<PLattice> shrink_fiber(const QuadLattice& n, const IntMatrix& embedding, const MinimalPair& pair);

/// The unique N' adjacent to N~ with N' n W[1/p] = W, where W is the
/// saturation in the ambient lattice of the image W~ of Lambda~.
Recovery grow_unique(const PLattice& n_tilde, const IntMatrix& tilde_embedding);

}  // namespace qlat
