#include "qlat/exact_linalg.hpp"

#include <utility>

#include "qlat/errors.hpp"

namespace qlat {
namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
}

void swap_cols(IntMatrix& a, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
}

// row_i += c * row_k
void add_row(IntMatrix& a, std::size_t i, std::size_t k, const Integer& c) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += c * a(k, j);
}

// col_j += c * col_k
void add_col(IntMatrix& a, std::size_t j, std::size_t k, const Integer& c) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) += c * a(i, k);
}

void negate_row(IntMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
}

void negate_col(IntMatrix& a, std::size_t j) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = -a(i, j);
}

// (col_j, col_k) <- (x col_j + y col_k, u col_j + v col_k)
void combine_cols(IntMatrix& a, std::size_t j, std::size_t k, const Integer& x, const Integer& y,
                  const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer cj = x * a(i, j) + y * a(i, k);
    Integer ck = u * a(i, j) + v * a(i, k);
    a(i, j) = std::move(cj);
    a(i, k) = std::move(ck);
  }
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(nr);
  IntMatrix v = IntMatrix::identity(nc);

  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        if (a(i, j) == 0) continue;
        Integer mag = abs(a(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(a, t, pi);
    swap_rows(u, t, pi);
    swap_cols(a, t, pj);
    swap_cols(v, t, pj);

    for (;;) {
      bool restart = false;
      for (std::size_t i = t + 1; i < nr && !restart; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = -floor_div(a(i, t), a(t, t));
        add_row(a, i, t, q);
        add_row(u, i, t, q);
        if (a(i, t) != 0) {
          swap_rows(a, t, i);
          swap_rows(u, t, i);
          restart = true;
        }
      }
      if (restart) continue;
      for (std::size_t j = t + 1; j < nc && !restart; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = -floor_div(a(t, j), a(t, t));
        add_col(a, j, t, q);
        add_col(v, j, t, q);
        if (a(t, j) != 0) {
          swap_cols(a, t, j);
          swap_cols(v, t, j);
          restart = true;
        }
      }
      if (restart) continue;
      // Row and column are clear; enforce divisibility of the trailing block.
      bool bad = false;
      for (std::size_t i = t + 1; i < nr && !bad; ++i)
        for (std::size_t j = t + 1; j < nc; ++j) {
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row(a, t, i, Integer(1));
            add_row(u, t, i, Integer(1));
            bad = true;
            break;
          }
        }
      if (!bad) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

IntVector elementary_divisors(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  IntVector d;
  for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (s.D(i, i) != 0) d.push_back(s.D(i, i));
  return d;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  IntMatrix h = m;
  IntMatrix t = IntMatrix::identity(nc);
  std::size_t c = 0;
  for (std::size_t r = 0; r < nr && c < nc; ++r) {
    for (std::size_t j = c + 1; j < nc; ++j) {
      if (h(r, j) == 0) continue;
      Integer a = h(r, c), b = h(r, j);
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer bg = b / g, ag = a / g;
      combine_cols(h, c, j, x, y, -bg, ag);
      combine_cols(t, c, j, x, y, -bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_col(h, c);
      negate_col(t, c);
    }
    for (std::size_t k = 0; k < c; ++k) {
      Integer q = -floor_div(h(r, k), h(r, c));
      if (q == 0) continue;
      add_col(h, k, c, q);
      add_col(t, k, c, q);
    }
    ++c;
  }
  return {std::move(h), std::move(t)};
}

namespace {
std::size_t hnf_rank(const IntMatrix& h) {
  std::size_t c = 0;
  while (c < h.cols()) {
    bool nz = false;
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (h(i, c) != 0) {
        nz = true;
        break;
      }
    if (!nz) break;
    ++c;
  }
  return c;
}
}  // namespace

IntMatrix hnf_basis(const IntMatrix& gens) {
  HermiteForm hf = hermite_normal_form(gens);
  std::size_t r = hnf_rank(hf.H);
  return hf.H.block(0, 0, gens.rows(), r);
}

std::size_t rank(const IntMatrix& m) { return hnf_rank(hermite_normal_form(m).H); }

IntMatrix integer_kernel(const IntMatrix& m) {
  HermiteForm hf = hermite_normal_form(m);
  std::size_t r = hnf_rank(hf.H);
  return hf.T.block(0, r, m.cols(), m.cols() - r);
}

Integer AbelianQuotient::torsion_order() const {
  Integer o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

AbelianQuotient quotient_structure(std::size_t ambient_rank, const IntMatrix& gens) {
  if (gens.cols() > 0 && gens.rows() != ambient_rank)
    throw PreconditionError("quotient_structure: generators must have ambient_rank rows");
  AbelianQuotient q;
  if (gens.cols() == 0) {
    q.free_rank = ambient_rank;
    return q;
  }
  IntVector d = elementary_divisors(gens);
  q.free_rank = ambient_rank - d.size();
  for (auto& x : d)
    if (x != 1) q.torsion.push_back(x);
  return q;
}

Saturation saturate(std::size_t ambient_rank, const IntMatrix& gens) {
  if (gens.cols() > 0 && gens.rows() != ambient_rank)
    throw PreconditionError("saturate: generators must have ambient_rank rows");
  Saturation s;
  if (gens.cols() == 0 || gens.is_zero()) {
    s.basis = IntMatrix(ambient_rank, 0);
    s.is_direct_summand = true;
    return s;
  }
  // Left kernel K (rows annihilate the span), then the saturation is ker K.
  IntMatrix left = integer_kernel(gens.transpose()).transpose();
  IntMatrix sat = left.rows() == 0 ? IntMatrix::identity(ambient_rank) : integer_kernel(left);
  s.basis = hnf_basis(sat);
  IntVector d = elementary_divisors(gens);
  s.is_direct_summand = true;
  for (const auto& x : d)
    if (x != 1) s.is_direct_summand = false;
  return s;
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("lattice_intersection: ambient dimension mismatch");
  if (rank(a) != a.cols() || rank(b) != b.cols())
    throw PreconditionError("lattice_intersection: degenerate basis (not of full column rank)");
  const std::size_t n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return IntMatrix(n, 0);
  IntMatrix k = integer_kernel(hstack(a, Integer(-1) * b));
  if (k.cols() == 0) return IntMatrix(n, 0);
  IntMatrix x = k.block(0, 0, a.cols(), k.cols());
  return hnf_basis(a * x);
}

ScaledIntersection lattice_intersection(const IntMatrix& a, const Integer& da, const IntMatrix& b,
                                        const Integer& db) {
  if (da <= 0 || db <= 0) throw PreconditionError("lattice_intersection: denominators must be positive");
  Integer l;
  mpz_lcm(l.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  IntMatrix as = Integer(l / da) * a;
  IntMatrix bs = Integer(l / db) * b;
  return {lattice_intersection(as, bs), l};
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve_integer: right-hand side has the wrong length");
  SmithForm s = smith_normal_form(a);
  IntVector ub = s.U * b;
  IntVector z(a.cols(), Integer(0));
  const std::size_t diag = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer d = i < diag ? s.D(i, i) : Integer(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    z[i] = ub[i] / d;
  }
  return s.V * z;
}

bool in_lattice(const IntMatrix& basis, const IntVector& v) {
  if (v.size() != basis.rows()) throw PreconditionError("in_lattice: length mismatch");
  IntMatrix col = IntMatrix::from_columns(basis.rows(), {v});
  return hnf_basis(basis) == hnf_basis(hstack(basis, col));
}

}  // namespace qlat
