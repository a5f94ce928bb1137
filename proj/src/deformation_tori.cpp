#include "qlat/deformation_tori.hpp"

#include <algorithm>
#include <utility>

#include "qlat/errors.hpp"

namespace qlat {

CharLattice CharLattice::split(std::size_t a, std::size_t b, std::size_t c) {
  return CharLattice{a + b + c, std::array<std::size_t, 3>{a, b, c}};
}

namespace {

// Diagonal of the Smith form of m, padded with zeros to m.cols() entries.
IntVector map_divisors(const IntMatrix& m) {
  IntVector out(m.cols(), Integer(0));
  if (m.rows() == 0) return out;
  SmithForm s = smith_normal_form(m);
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) out[i] = abs(s.D(i, i));
  return out;
}

bool is_power_of(Integer x, std::int64_t p) {
  if (x < 1) return false;
  while (x % p == 0) x /= p;
  return x == 1;
}

// Elementary divisors of the two projections for the kernel of
// (x, y) -> A(x) B(y)^-1 with A, B given by their character matrices.
std::pair<IntVector, IntVector> projection_divisors(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.cols();
  IntMatrix rel = vstack(a.transpose(), -1 * b.transpose());
  // In Smith coordinates y = U x the rows past the rank of rel are the free
  // part of the character group; the projections are read off there.
  SmithForm s = smith_normal_form(rel);
  std::size_t r = 0;
  while (r < n && s.D(r, r) != 0) ++r;
  IntMatrix inc1(2 * n, n), inc2(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    inc1(i, i) = 1;
    inc2(n + i, i) = 1;
  }
  IntMatrix p1 = s.U * inc1;
  IntMatrix p2 = s.U * inc2;
  return {map_divisors(p1.block(r, 0, 2 * n - r, n)), map_divisors(p2.block(r, 0, 2 * n - r, n))};
}

}  // namespace

DiagGroupKernel diagonal_graph_kernel(const IntVector& a_diag, const IntVector& b_diag) {
  if (a_diag.size() != b_diag.size()) throw PreconditionError("graph kernel: diagonals differ in length");
  const std::size_t n = a_diag.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a_diag[i] <= 0 || b_diag[i] <= 0) throw PreconditionError("graph kernel: diagonal entries must be positive");

  DiagGroupKernel out;
  out.presentation = quotient_structure(2 * n, vstack(IntMatrix::diagonal(a_diag), -1 * IntMatrix::diagonal(b_diag)));
  // The kernel splits coordinatewise, so the divisors are reported per
  // coordinate in block order rather than sorted.
  for (std::size_t i = 0; i < n; ++i) {
    auto [src, tgt] = projection_divisors(IntMatrix::diagonal({a_diag[i]}), IntMatrix::diagonal({b_diag[i]}));
    out.source_divisors.push_back(src[0]);
    out.target_divisors.push_back(tgt[0]);
  }
  return out;
}

DiagGroupKernel qisog_kernel_char(const CharLattice& split, std::int64_t p) {
  if (!split.weights) throw PreconditionError("qisog kernel: the character lattice has no weight decomposition");
  const auto [a, b, c] = *split.weights;
  if (a + b + c != split.rank) throw PreconditionError("qisog kernel: weight ranks do not add up to the rank");
  IntVector ad, bd;
  for (std::size_t i = 0; i < a; ++i) ad.push_back(Integer(p)), bd.push_back(Integer(1));
  for (std::size_t i = 0; i < b; ++i) ad.push_back(Integer(1)), bd.push_back(Integer(1));
  for (std::size_t i = 0; i < c; ++i) ad.push_back(Integer(1)), bd.push_back(Integer(p));
  return diagonal_graph_kernel(ad, bd);
}

DiagGroupKernel tgm_kernel(const std::vector<mpq_class>& block_scalars, const CharLattice& split, std::int64_t p) {
  std::vector<std::size_t> blocks;
  if (split.weights) {
    blocks.assign(split.weights->begin(), split.weights->end());
    if (blocks[0] + blocks[1] + blocks[2] != split.rank)
      throw PreconditionError("tgm kernel: weight ranks do not add up to the rank");
  } else {
    blocks = {split.rank};
  }
  if (block_scalars.size() != blocks.size())
    throw PreconditionError("tgm kernel: expected one scalar per weight block");

  IntVector ad, bd;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    mpq_class s = block_scalars[k];
    s.canonicalize();
    const Integer num = s.get_num(), den = s.get_den();
    if (!is_power_of(num, p) || !is_power_of(den, p) || (num != 1 && den != 1))
      throw PreconditionError("tgm kernel: block scalar " + s.get_str() + " is not a power of p");
    for (std::size_t i = 0; i < blocks[k]; ++i) {
      ad.push_back(den);
      bd.push_back(num);
    }
  }
  DiagGroupKernel out = diagonal_graph_kernel(ad, bd);
  for (const IntVector* divs : {&out.source_divisors, &out.target_divisors})
    for (const Integer& d : *divs)
      if (!is_power_of(d, p)) throw InvariantViolation("tgm kernel: projection is not purely inseparable");
  return out;
}

CokernelM cokernel_m(const CharLattice& split, const IntMatrix& w_gens, std::int64_t p) {
  if (!split.weights || (*split.weights)[0] != 1 || (*split.weights)[2] != 1)
    throw PreconditionError("cokernel M: expected weight ranks (1, b, 1)");
  const std::size_t n = split.rank;
  if (n != 2 + (*split.weights)[1] || w_gens.rows() != n || w_gens.cols() == 0)
    throw PreconditionError("cokernel M: W generators have the wrong shape");
  Saturation sat = saturate(n, w_gens);
  if (!sat.is_direct_summand) throw PreconditionError("cokernel M: W is not a direct summand");
  Integer g = 0;
  for (std::size_t j = 0; j < w_gens.cols(); ++j) g = gcd(g, w_gens(n - 1, j));
  if (g != 1) throw PreconditionError("cokernel M: W does not project onto the weight +1 coordinate");
  const IntMatrix w = sat.basis;

  // lambda(p) V0 = (1/p) diag(1, p, ..., p, p^2) Z^n.
  IntVector lam(n, Integer(p));
  lam[0] = 1;
  lam[n - 1] = Integer(p) * p;
  ScaledIntersection wt = lattice_intersection(IntMatrix::diagonal(lam), Integer(p), w, Integer(1));
  CokernelM out;
  out.w_tilde = wt.numerator;
  if (wt.denominator != 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < out.w_tilde.cols(); ++j) {
        if (out.w_tilde(i, j) % wt.denominator != 0) throw InvariantViolation("cokernel M: W~ is not integral");
        out.w_tilde(i, j) /= wt.denominator;
      }
  }
  out.w_tilde = hnf_basis(out.w_tilde);

  // lambda^-1 W~ = diag(p, 1, ..., 1, 1/p) W~; integral because W~ has last coordinates in pZ.
  IntMatrix lw = out.w_tilde;
  for (std::size_t j = 0; j < lw.cols(); ++j) {
    lw(0, j) *= p;
    if (lw(n - 1, j) % p != 0) throw InvariantViolation("cokernel M: lambda^-1 W~ is not integral");
    lw(n - 1, j) /= p;
  }

  const std::size_t r = w.cols();
  IntMatrix rel(2 * n, 2 * r + n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      rel(i, j) = w(i, j);
      rel(n + i, r + j) = lw(i, j);
    }
  for (std::size_t i = 0; i < n; ++i) {
    rel(i, 2 * r + i) = (i == n - 1) ? Integer(p) : Integer(1);
    rel(n + i, 2 * r + i) = (i == 0) ? Integer(p) : Integer(1);
  }
  out.m = quotient_structure(2 * n, rel);

  IntMatrix first = rel.block(0, 0, n, rel.cols());
  IntMatrix second = rel.block(n, 0, n, rel.cols());
  const IntMatrix rel_basis = hnf_basis(rel);

  // [M : image of V0/W] = |Z^n / pr_2(rel)|; the second map is onto iff pr_1(rel) = Z^n.
  AbelianQuotient q2 = quotient_structure(n, second);
  out.inj1_index = q2.is_finite() ? q2.torsion_order() : Integer(0);
  AbelianQuotient q1 = quotient_structure(n, first);

  auto meets_factor = [&](bool first_factor) {
    IntMatrix factor(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) factor(first_factor ? i : n + i, i) = 1;
    return hnf_basis(lattice_intersection(rel_basis, factor));
  };
  auto embed = [&](const IntMatrix& m, bool first_factor) {
    IntMatrix e(2 * n, m.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) e(first_factor ? i : n + i, j) = m(i, j);
    return hnf_basis(e);
  };
  out.inj1_injective = meets_factor(true) == embed(w, true);
  out.iso2 = q1.is_trivial() && meets_factor(false) == embed(lw, false);
  return out;
}

CharLattice serre_tate_torus(std::size_t h1, std::size_t h0) { return CharLattice{h1 * h0, std::nullopt}; }

}  // namespace qlat
