#pragma once

// Self-dual lattices in N[1/p] adjacent to a fixed lattice N that is
// self-dual at p (its p-neighbors), and the W-generic refinement.
//
// Direction convention: lattice_from_line performs the move N -> N~ attached
// to an isotropic line J of N/pN,
//
//     N~ = { x in N : [x, v] = 0 mod p } + Z (v / p),   v a lift of J with Q(v) = 0 mod p^2,
//
// which is p^-1 N(-1) + N(0) + p N(1) for any splitting with N(-1) = Z v.
// recover_lattice performs the inverse move.

#include <cstdint>
#include <optional>
#include <vector>

#include "qlat/fp_quadratic.hpp"
#include "qlat/quad_lattice.hpp"

namespace qlat {

/// Working precision p^k for lifts; QLAT_PRECISION overrides the default of 2.
unsigned default_precision();

/// A sublattice of rank r given as p^-power * (n x r numerator), canonical.
struct ScaledSublattice {
  unsigned power = 0;
  IntMatrix numerator;
  friend bool operator==(const ScaledSublattice&, const ScaledSublattice&) = default;
};
ScaledSublattice make_scaled(std::int64_t p, unsigned power, const IntMatrix& generators);

/// The lattice p^-power * span(numerator) inside N (x) Q, stored canonically:
/// numerator is a full-rank Hermite basis and power is minimal.
class PLattice {
 public:
  PLattice() = default;
  /// Canonicalizes p^-power * span(generators); generators must have full rank.
  PLattice(QuadLattice ambient, std::int64_t p, unsigned power, const IntMatrix& generators);

  const QuadLattice& ambient() const { return ambient_; }
  std::int64_t p() const { return p_; }
  unsigned power() const { return power_; }
  const IntMatrix& numerator() const { return numerator_; }

  /// The induced form in the canonical basis. Throws PreconditionError when
  /// it is not integral.
  QuadLattice form() const;
  /// Integral with p-unit Gram determinant.
  bool is_self_dual() const;
  /// True when every column of `vectors` (ambient integer coordinates) lies in the lattice.
  bool contains(const IntMatrix& vectors) const;
  /// Coordinates of v in the canonical basis, or nullopt when v is not in L.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  /// Index data relative to the ambient lattice N: ([L : L n N], [N : L n N]).
  std::pair<Integer, Integer> indices() const;
  /// L n (span of the columns of w) (x) Q. `w` must be saturated in N.
  ScaledSublattice intersect_span(const IntMatrix& w) const;

  friend bool operator==(const PLattice& a, const PLattice& b) {
    return a.p_ == b.p_ && a.power_ == b.power_ && a.numerator_ == b.numerator_;
  }
  friend bool operator<(const PLattice& a, const PLattice& b) {
    if (a.power_ != b.power_) return a.power_ < b.power_;
    return a.numerator_ < b.numerator_;
  }

 private:
  QuadLattice ambient_;
  std::int64_t p_ = 2;
  unsigned power_ = 0;
  IntMatrix numerator_;
};

FpQuadSpace reduction(const QuadLattice& n, std::int64_t p);

/// v = generator mod p with Q(v) = 0 mod p^k, entries in [0, p^k).
IntVector hensel_lift_line(const QuadLattice& n, std::int64_t p, const ProjLine& line, unsigned k);

struct LambdaSplitting {
  IntVector n_minus;  ///< lift of the line
  IntVector n_plus;   ///< isotropic mod p^precision, [n_minus, n_plus] = 1
  IntMatrix n_zero;   ///< columns spanning the common orthogonal complement mod p^precision
  unsigned precision = 2;
};
/// seed 0 takes the first standard basis vector pairing nontrivially with the
/// line as the complementary direction; other seeds draw it at random.
LambdaSplitting splitting_from_line(const QuadLattice& n, std::int64_t p, const ProjLine& line, unsigned k,
                                    std::uint64_t seed = 0);

PLattice lattice_from_splitting(const QuadLattice& n, std::int64_t p, const LambdaSplitting& s);
PLattice lattice_from_line(const QuadLattice& n, std::int64_t p, const ProjLine& line);
/// Direct formula { x : [x, v] = 0 mod p } + Z v/p, used as an independent check.
PLattice lattice_from_line_direct(const QuadLattice& n, std::int64_t p, const ProjLine& line);

/// The line ((p L n N) + pN) / pN. Throws PreconditionError unless L is a
/// self-dual p-neighbor of its ambient lattice.
ProjLine line_from_lattice(const PLattice& l);

/// Isotropic lines of N/pN outside the bilinear radical.
std::vector<ProjLine> smooth_isotropic_lines(const QuadLattice& n, std::int64_t p,
                                             std::uint64_t max_points = kDefaultMaxPoints);
/// lattice_from_line over smooth_isotropic_lines, in line order. N must be
/// self-dual at p.
std::vector<PLattice> enumerate_neighbors(const QuadLattice& n, std::int64_t p,
                                          std::uint64_t max_points = kDefaultMaxPoints);

/// U with W~ = U + pW: a corank-one summand of W (columns, ambient coordinates).
IntMatrix typing_hyperplane(const IntMatrix& w, const IntMatrix& w_tilde, std::int64_t p);

/// Lines J with J not in W mod p and W -> J^dual surjective; with `u`,
/// additionally [U, J] = 0 mod p.
std::vector<ProjLine> w_generic_lines(const QuadLattice& n, std::int64_t p, const IntMatrix& w,
                                      const std::optional<IntMatrix>& u = std::nullopt,
                                      std::uint64_t max_points = kDefaultMaxPoints);

/// Checks the hypotheses shared by shrink_set and the brute-force path.
void check_shrink_preconditions(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& w_tilde);

/// { N~ neighbor of N : N~ n W[1/p] = W~ } via the typed lines of type U.
std::vector<PLattice> shrink_set(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& w_tilde);
/// Same set, by filtering all neighbors with an exact lattice intersection.
std::vector<PLattice> shrink_set_bruteforce(const QuadLattice& n, std::int64_t p, const IntMatrix& w,
                                            const IntMatrix& w_tilde);
/// Filter step of the brute-force path, reusable over a precomputed neighbor list.
bool meets_span_in(const PLattice& l, const IntMatrix& w, const IntMatrix& w_tilde);

struct Recovery {
  PLattice lattice;
  std::size_t candidates = 0;   ///< isotropic lines of N~/pN~ considered
  std::size_t constructed = 0;  ///< neighbors actually built and intersected with W
  std::size_t survivors = 0;    ///< neighbors N' with N' n W[1/p] = W
};
/// The unique self-dual N' adjacent to N~ with N' n W[1/p] = W. Throws
/// InvariantViolation if the survivor count is not exactly one.
///
/// A survivor N' satisfies pW c pN' n N~, so its line ((pN' n N~) + pN~)/pN~
/// contains the image of pW. By default only lines containing that image are
/// built; `exhaustive` builds and tests every neighbor of N~.
Recovery recover_lattice(const PLattice& n_tilde, const IntMatrix& w, bool exhaustive = false);

/// Number of primitive isotropic vectors mod p^2 satisfying the typed
/// conditions ([U, v] = 0 mod p^2), divided by |(Z/p^2)^x|.
Integer typed_line_count_mod_p2(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& u);

/// Primitive vectors v mod p^2 (entries in [0, p^2)) with Q(v) = 0 mod p^2.
std::vector<FpVector> isotropic_vectors_mod_p2(const QuadLattice& n, std::int64_t p,
                                               std::uint64_t max_vectors = 100'000'000);
/// typed_line_count_mod_p2 over a precomputed isotropic_vectors_mod_p2 list.
Integer typed_line_count_mod_p2(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& u,
                                const std::vector<FpVector>& isotropic_mod_p2);

}  // namespace qlat
