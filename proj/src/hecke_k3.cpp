#include "qlat/hecke_k3.hpp"

#include <string>

#include "qlat/errors.hpp"
#include "qlat/exact_linalg.hpp"

namespace qlat {

void MinimalPair::validate() const {
  if (!is_positive_definite(lambda)) throw PreconditionError("minimal pair: Lambda is not positive definite");
  if (tilde_basis.rows() != lambda.rank() || tilde_basis.cols() != lambda.rank())
    throw PreconditionError("minimal pair: Lambda~ must have full rank");
  AbelianQuotient q = quotient_structure(lambda.rank(), tilde_basis);
  if (!(q.free_rank == 0 && q.torsion.size() == 1 && q.torsion[0] == p))
    throw PreconditionError("minimal pair: [Lambda : Lambda~] is not p");
}

std::vector<MinimalPair> enumerate_index_p_sublattices(const QuadLattice& lambda, std::int64_t p,
                                                       std::uint64_t max_points) {
  if (!is_positive_definite(lambda)) throw PreconditionError("index-p sublattices: Lambda is not positive definite");
  const std::size_t r = lambda.rank();
  std::vector<FpVector> standard;
  for (std::size_t i = 0; i < r; ++i) {
    FpVector e(r, 0);
    e[i] = 1;
    standard.push_back(e);
  }
  std::vector<MinimalPair> out;
  for (const ProjLine& functional : projective_points(standard, r, p, max_points)) {
    // The first nonzero entry of a normalized functional is 1, so the kernel
    // is spanned by p e_k and e_j - a_j e_k for j != k.
    const FpVector& a = functional.generator;
    std::size_t k = 0;
    while (a[k] == 0) ++k;
    IntMatrix gens(r, r);
    for (std::size_t j = 0; j < r; ++j) {
      if (j == k) {
        gens(k, j) = Integer(p);
      } else {
        gens(j, j) = 1;
        gens(k, j) = Integer(-a[j]);
      }
    }
    MinimalPair pair{lambda, hnf_basis(gens), p};
    out.push_back(std::move(pair));
  }
  return out;
}

void PolarizedK3Lattice::validate() const {
  if (lattice.rank() != 22) throw PreconditionError("polarized K3 lattice: rank must be 22");
  if (!is_even(lattice)) throw PreconditionError("polarized K3 lattice: lattice is not even");
  if (abs(lattice.determinant()) != 1) throw PreconditionError("polarized K3 lattice: lattice is not unimodular");
  if (xi.size() != 22) throw PreconditionError("polarized K3 lattice: xi has the wrong length");
  if (content(xi) != 1) throw PreconditionError("polarized K3 lattice: xi is not primitive");
  if (degree() <= 0) throw PreconditionError("polarized K3 lattice: Q(xi) must be positive");
}

PolarizedK3Lattice k3_polarized(const Integer& d) {
  if (d < 1) throw PreconditionError("k3 polarization: d must be positive");
  PolarizedK3Lattice out{k3_lattice(), IntVector(22, Integer(0))};
  out.xi[0] = 1;
  out.xi[1] = d;
  return out;
}

PolarizedK3Lattice isogeny_step(const PolarizedK3Lattice& in, std::int64_t p) {
  in.validate();
  PolarizedK3Lattice out{in.lattice, in.xi};
  const Integer pp(p);
  out.xi[1] *= pp * pp;
  for (std::size_t i = 2; i < out.xi.size(); ++i) out.xi[i] *= pp;
  if (content(out.xi) != 1)
    throw PreconditionError("isogeny step: p xi is divisible by p in the rescaled lattice");
  return out;
}

PolarizedK3Lattice k3_isogeny(const Integer& d, std::int64_t p) {
  PolarizedK3Lattice out = isogeny_step(k3_polarized(d), p);
  out.validate();
  return out;
}

namespace {

void check_rank_bound(std::size_t r, std::size_t n) {
  if (2 * r + 4 > n)
    throw PreconditionError("rank(Lambda) = " + std::to_string(r) + " exceeds (rank N - 4)/2 for rank N = " +
                            std::to_string(n));
}

}  // namespace

std::vector<PLattice> shrink_fiber(const QuadLattice& n, const IntMatrix& embedding, const MinimalPair& pair) {
  pair.validate();
  if (embedding.rows() != n.rank() || embedding.cols() != pair.lambda.rank())
    throw PreconditionError("shrink fiber: embedding has the wrong shape");
  if (!saturate(n.rank(), embedding).is_direct_summand)
    throw PreconditionError("shrink fiber: image of Lambda is not a direct summand");
  if (!(n.restrict_to(embedding).gram() == pair.lambda.gram()))
    throw PreconditionError("shrink fiber: embedding is not isometric");
  check_rank_bound(embedding.cols(), n.rank());
  return shrink_set(n, pair.p, embedding, embedding * pair.tilde_basis);
}

Recovery grow_unique(const PLattice& n_tilde, const IntMatrix& tilde_embedding) {
  const std::size_t n = n_tilde.ambient().rank();
  if (tilde_embedding.rows() != n || tilde_embedding.cols() == 0)
    throw PreconditionError("grow: embedding has the wrong shape");
  check_rank_bound(tilde_embedding.cols(), n);
  if (rank(tilde_embedding) != tilde_embedding.cols())
    throw PreconditionError("grow: embedding does not have full rank");
  Saturation sat = saturate(n, tilde_embedding);
  if (!(n_tilde.intersect_span(sat.basis) == make_scaled(n_tilde.p(), 0, tilde_embedding)))
    throw PreconditionError("grow: image of Lambda~ is not a direct summand of N~");
  IntMatrix coords(sat.basis.cols(), tilde_embedding.cols());
  for (std::size_t j = 0; j < tilde_embedding.cols(); ++j) {
    auto x = solve_integer(sat.basis, tilde_embedding.column(j));
    if (!x) throw InvariantViolation("grow: embedding escapes its saturation");
    coords.set_column(j, *x);
  }
  AbelianQuotient in_w = quotient_structure(sat.basis.cols(), coords);
  if (!(in_w.free_rank == 0 && in_w.torsion.size() == 1 && in_w.torsion[0] == n_tilde.p()))
    throw PreconditionError("grow: Lambda~ does not have index p in its saturation");
  return recover_lattice(n_tilde, sat.basis);
}

}  // namespace qlat
