#pragma once

// Quadratic spaces over a prime field F_p, including p = 2.
//
// The form is carried by an upper-triangular half-Gram matrix H with
// Q(x) = x^T H x, and [x, y] = Q(x + y) - Q(x) - Q(y) has Gram H + H^T.
// In characteristic 2 the bilinear form is alternating and does not determine
// Q, which is why every routine here works with Q directly.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qlat/fp_linalg.hpp"
#include "qlat/int_matrix.hpp"

namespace qlat {

class FpQuadSpace {
 public:
  FpQuadSpace() = default;
  /// Entries are reduced mod p; lower-triangular entries are folded upward.
  FpQuadSpace(std::int64_t p, const FpMatrix& half_gram);
  /// Reduction of an integral half-Gram matrix.
  static FpQuadSpace reduce(const IntMatrix& half_gram, std::int64_t p);

  std::int64_t p() const { return p_; }
  std::size_t dim() const { return half_gram_.rows(); }
  const FpMatrix& half_gram() const { return half_gram_; }
  const FpMatrix& gram() const { return gram_; }

  std::int64_t quad_value(const FpVector& x) const;
  std::int64_t bilinear_value(const FpVector& x, const FpVector& y) const;
  /// The linear form [x, .] as a vector (B x).
  FpVector pairing_vector(const FpVector& x) const;

  /// Induced form on the span of the given vectors, in their coordinates.
  FpQuadSpace restrict_to(const std::vector<FpVector>& basis) const;

  friend bool operator==(const FpQuadSpace& a, const FpQuadSpace& b) {
    return a.p_ == b.p_ && a.half_gram_ == b.half_gram_;
  }

 private:
  std::int64_t p_ = 2;
  FpMatrix half_gram_;
  FpMatrix gram_;
};

/// A point of P(V): the generator is scaled so that its first nonzero entry is 1.
struct ProjLine {
  FpVector generator;

  static ProjLine through(const FpVector& v, std::int64_t p);
  friend bool operator==(const ProjLine&, const ProjLine&) = default;
  friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

struct FpIsometry {
  FpQuadSpace space;
  FpMatrix matrix;

  FpVector apply(const FpVector& x) const { return mul(matrix, x, space.p()); }
};

struct Radicals {
  std::vector<FpVector> bilinear;   ///< basis of ker B
  std::vector<FpVector> isotropic;  ///< basis of {v in ker B : Q(v) = 0}
};
Radicals radicals(const FpQuadSpace& v);

/// The isotropic radical is zero (for odd p this is det B != 0; for p = 2 it
/// allows a one-dimensional bilinear radical on which Q is nonzero).
bool is_nondegenerate(const FpQuadSpace& v);
/// det B != 0.
bool is_bilinear_nondegenerate(const FpQuadSpace& v);

/// {x : [x, w] = 0 for all w in W}.
std::vector<FpVector> orthogonal_complement(const FpQuadSpace& v, const std::vector<FpVector>& w);

/// A nonzero isotropic vector, or nullopt. Exhaustive (smallest little-endian
/// index) when p^dim <= 10^6, otherwise a seeded randomized search.
std::optional<FpVector> find_isotropic_vector(const FpQuadSpace& v, std::uint64_t seed = 0);

struct WittDecomposition {
  std::vector<std::pair<FpVector, FpVector>> hyperbolic_pairs;  ///< Q(u) = Q(v) = 0, [u, v] = 1
  std::vector<FpVector> anisotropic_kernel;
  std::vector<FpVector> radical;  ///< bilinear radical
};
WittDecomposition witt_decomposition(const FpQuadSpace& v, std::uint64_t seed = 0);

enum class WittType { Split, NonSplit, Odd };
/// Type of a nondegenerate space: odd dimension, or even with Witt index dim/2
/// (split) or dim/2 - 1 (non-split).
WittType witt_type(const FpQuadSpace& v);
const char* to_string(WittType t);

/// Number of isotropic lines of a nondegenerate space of the given type.
Integer isotropic_line_count(std::size_t dim, WittType type, std::int64_t p);

inline constexpr std::uint64_t kDefaultMaxPoints = 10'000'000;
inline constexpr std::uint64_t kDefaultMaxGroup = 1'000'000;

/// All isotropic lines, sorted. Throws GuardExceeded when the number of
/// projective points exceeds max_points.
std::vector<ProjLine> enumerate_isotropic_lines(const FpQuadSpace& v,
                                                std::uint64_t max_points = kDefaultMaxPoints);

/// Every point of P(span(basis)), sorted, as vectors of the ambient space.
std::vector<ProjLine> projective_points(const std::vector<FpVector>& basis, std::size_t dim, std::int64_t p,
                                        std::uint64_t max_points = kDefaultMaxPoints);

bool is_isometry(const FpQuadSpace& v, const FpMatrix& g);
/// rank(g - 1) mod 2; meaningful for p = 2 and det B != 0.
int dickson_invariant(const FpQuadSpace& v, const FpMatrix& g);
/// Isometry with det 1 (odd p) or trivial Dickson invariant (p = 2, even
/// dimension). In odd dimension over F_2 every isometry counts.
bool in_special_orthogonal(const FpQuadSpace& v, const FpMatrix& g);

/// tau_v(x) = x - ([x, v] / Q(v)) v.
FpIsometry reflection(const FpQuadSpace& v, const FpVector& vec);
/// E_{u,w}(x) = x + [x,u] w - [x,w] u - Q(w) [x,u] u, for isotropic u and w
/// orthogonal to u.
FpIsometry eichler_transvection(const FpQuadSpace& v, const FpVector& u, const FpVector& w);

/// Calls visit(g) for every isometry g of V with g(domain[i]) = images[i].
/// Stops early when visit returns false. Throws GuardExceeded after
/// max_nodes partial extensions.
void for_each_extension(const FpQuadSpace& v, const std::vector<FpVector>& domain,
                        const std::vector<FpVector>& images, const std::function<bool(const FpMatrix&)>& visit,
                        std::uint64_t max_nodes = 20'000'000);

struct WittExtensionOptions {
  std::uint64_t seed = 0;
  std::uint64_t max_group = kDefaultMaxGroup;
};

/// An element g of SO(V) with g(domain[i]) = images[i]. V must have det B != 0,
/// the domain vectors must be independent with codimension at least 2, and
/// the assignment must preserve Q and [.,.]. Throws NotFound when no special
/// orthogonal extension exists (or none is found within the group guard).
FpIsometry witt_extension(const FpQuadSpace& v, const std::vector<FpVector>& domain,
                          const std::vector<FpVector>& images, const WittExtensionOptions& opts = {});

/// Spinor norm class of g, returned as 1 (squares) or the smallest non-square.
/// Computed from an explicit product of reflections. Requires p odd, det B != 0.
std::int64_t spinor_norm(const FpQuadSpace& v, const FpMatrix& g);
/// Reflection vectors v_1, ..., v_k with g = tau_{v_1} ... tau_{v_k}.
std::vector<FpVector> reflection_factorization(const FpQuadSpace& v, const FpMatrix& g);
/// Spinor norm class from the discriminant of the Wall form on (1 - g)V.
std::int64_t spinor_norm_wall(const FpQuadSpace& v, const FpMatrix& g);

/// Reflections in anisotropic vectors of W-perp and Eichler transvections
/// E_{u,w} with u, w in W-perp; all of them fix W pointwise.
std::vector<FpMatrix> stabilizer_generators(const FpQuadSpace& v, const std::vector<FpVector>& w,
                                            std::uint64_t max_points = kDefaultMaxPoints);

struct OrbitResult {
  std::vector<ProjLine> orbit;  ///< orbit of the seed intersected with the universe
  bool used_exhaustive = false;
};
/// Orbit of an isotropic seed line under the pointwise stabilizer of W,
/// intersected with `universe`. When the generated orbit misses part of the
/// universe, the full stabilizer is enumerated (guarded by max_group).
OrbitResult stabilizer_orbit(const FpQuadSpace& v, const std::vector<FpVector>& w, const ProjLine& seed,
                             const std::vector<ProjLine>& universe, std::uint64_t max_group = kDefaultMaxGroup);

/// |SO(V)(F_p)| by the closed formulas. Requires a nondegenerate space.
Integer so_order(const FpQuadSpace& v);
/// |SO(V)(F_p)| by enumerating every isometry.
Integer so_order_exhaustive(const FpQuadSpace& v, std::uint64_t max_nodes = 20'000'000);

/// An element of SO(V) fixing W pointwise whose spinor norm is a non-square,
/// built as tau_a tau_b with a, b in W-perp. Requires p odd and det B != 0.
std::optional<FpIsometry> find_spinor_witness(const FpQuadSpace& v, const std::vector<FpVector>& w,
                                              std::uint64_t max_points = kDefaultMaxPoints);

/// Standard models: H^m, H^(m-1) + anisotropic plane, H^m + <c>.
FpQuadSpace hyperbolic_space(std::size_t pairs, std::int64_t p);
FpQuadSpace model_space(std::size_t dim, WittType type, std::int64_t p, std::int64_t odd_coefficient = 1);

}  // namespace qlat
