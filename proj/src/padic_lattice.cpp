#include "qlat/padic_lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>

#include "qlat/errors.hpp"

namespace qlat {

unsigned default_precision() {
  if (const char* env = std::getenv("QLAT_PRECISION")) {
    char* end = nullptr;
    long k = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && k >= 2 && k <= 64) return static_cast<unsigned>(k);
  }
  return 2;
}

namespace {

Integer ppow(std::int64_t p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

Integer mod_int(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool all_divisible(const IntMatrix& m, const Integer& d) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!mpz_divisible_p(m(i, j).get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

IntMatrix divide_exact(const IntMatrix& m, const Integer& d) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) mpz_divexact(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), d.get_mpz_t());
  return r;
}

// Canonical p^-power * hnf(gens) with minimal power.
std::pair<unsigned, IntMatrix> canonical(std::int64_t p, unsigned power, const IntMatrix& gens) {
  IntMatrix h = hnf_basis(gens);
  const Integer pp = p;
  while (power > 0 && h.cols() > 0 && all_divisible(h, pp)) {
    h = divide_exact(h, pp);
    --power;
  }
  if (h.cols() == 0) power = 0;
  return {power, std::move(h)};
}

FpVector to_fp(const IntVector& v, std::int64_t p) {
  FpVector out(v.size());
  const Integer pp = p;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_int(v[i], pp).get_si();
  return out;
}

IntVector to_int(const FpVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<long>(v[i]);
  return out;
}

std::vector<FpVector> columns_mod_p(const IntMatrix& m, std::int64_t p) {
  std::vector<FpVector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(to_fp(m.column(j), p));
  return out;
}

}  // namespace

ScaledSublattice make_scaled(std::int64_t p, unsigned power, const IntMatrix& generators) {
  auto [k, h] = canonical(p, power, generators);
  return {k, std::move(h)};
}

// ---------------------------------------------------------------------------
// PLattice

PLattice::PLattice(QuadLattice ambient, std::int64_t p, unsigned power, const IntMatrix& generators)
    : ambient_(std::move(ambient)), p_(p) {
  if (generators.rows() != ambient_.rank()) throw PreconditionError("PLattice: generators have the wrong length");
  auto [k, h] = canonical(p, power, generators);
  if (h.cols() != ambient_.rank()) throw PreconditionError("PLattice: generators do not have full rank");
  power_ = k;
  numerator_ = std::move(h);
}

QuadLattice PLattice::form() const {
  QuadLattice raw = ambient_.restrict_to(numerator_);
  const Integer d = ppow(p_, 2 * power_);
  if (!all_divisible(raw.half_gram(), d)) throw PreconditionError("PLattice: the induced form is not integral");
  return QuadLattice(divide_exact(raw.half_gram(), d));
}

bool PLattice::is_self_dual() const {
  QuadLattice raw = ambient_.restrict_to(numerator_);
  if (!all_divisible(raw.half_gram(), ppow(p_, 2 * power_))) return false;
  return is_self_dual_at(form(), p_);
}

std::optional<IntVector> PLattice::coordinates(const IntVector& v) const {
  // numerator is lower triangular with positive diagonal; solve M c = p^k v.
  const std::size_t n = numerator_.rows();
  if (v.size() != n) throw PreconditionError("PLattice: vector has the wrong length");
  const Integer scale = ppow(p_, power_);
  IntVector c(n);
  for (std::size_t j = 0; j < n; ++j) {
    Integer rhs = scale * v[j];
    for (std::size_t l = 0; l < j; ++l) rhs -= numerator_(j, l) * c[l];
    if (!mpz_divisible_p(rhs.get_mpz_t(), numerator_(j, j).get_mpz_t())) return std::nullopt;
    c[j] = rhs / numerator_(j, j);
  }
  return c;
}

bool PLattice::contains(const IntMatrix& vectors) const {
  if (vectors.rows() != numerator_.rows()) throw PreconditionError("PLattice::contains: vectors have the wrong length");
  for (std::size_t col = 0; col < vectors.cols(); ++col)
    if (!coordinates(vectors.column(col))) return false;
  return true;
}

std::pair<Integer, Integer> PLattice::indices() const {
  const std::size_t n = numerator_.rows();
  IntMatrix meet = lattice_intersection(numerator_, ppow(p_, power_) * IntMatrix::identity(n));
  Integer det_meet = abs(meet.determinant());
  Integer det_l = abs(numerator_.determinant());
  Integer det_n = ppow(p_, power_ * static_cast<unsigned>(n));
  return {det_meet / det_l, det_meet / det_n};
}

ScaledSublattice PLattice::intersect_span(const IntMatrix& w) const {
  if (w.cols() == 0) return {0, IntMatrix(numerator_.rows(), 0)};
  // L lies in p^-k Z^n and W is saturated, so L n W_Q = p^-k (M n W).
  return make_scaled(p_, power_, lattice_intersection(numerator_, w));
}

// ---------------------------------------------------------------------------
// The line <-> lattice correspondence

FpQuadSpace reduction(const QuadLattice& n, std::int64_t p) { return FpQuadSpace::reduce(n.half_gram(), p); }

IntVector hensel_lift_line(const QuadLattice& n, std::int64_t p, const ProjLine& line, unsigned k) {
  if (k < 1) throw PreconditionError("hensel_lift_line: precision must be at least 1");
  if (line.generator.size() != n.rank()) throw PreconditionError("hensel_lift_line: line has the wrong dimension");
  const IntMatrix gram = n.gram();
  const Integer pp = p;
  IntVector v = to_int(line.generator);
  if (!mpz_divisible_p(n.quad_value(v).get_mpz_t(), pp.get_mpz_t()))
    throw PreconditionError("hensel_lift_line: the line is not isotropic");
  FpVector bv = to_fp(gram * v, p);
  auto it = std::find_if(bv.begin(), bv.end(), [](std::int64_t x) { return x != 0; });
  if (it == bv.end()) throw PreconditionError("hensel_lift_line: non-smooth point, no canonical lift");
  const std::size_t i0 = static_cast<std::size_t>(it - bv.begin());
  // y = e_{i0} has [v, y] = (Bv)_{i0}, a unit mod p for every lift of the line.
  const std::int64_t pairing_inv = inv_mod(*it, p);
  for (unsigned j = 1; j < k; ++j) {
    const Integer pj = ppow(p, j);
    Integer q = n.quad_value(v);
    if (!mpz_divisible_p(q.get_mpz_t(), pj.get_mpz_t()))
      throw InvariantViolation("hensel_lift_line: lift lost its precision");
    Integer t = mod_int(Integer(-(q / pj) * pairing_inv), pp);
    v[i0] += pj * t;
  }
  const Integer pk = ppow(p, k);
  for (auto& x : v) x = mod_int(x, pk);
  if (!mpz_divisible_p(n.quad_value(v).get_mpz_t(), pk.get_mpz_t()))
    throw InvariantViolation("hensel_lift_line: verification of the lift failed");
  return v;
}

LambdaSplitting splitting_from_line(const QuadLattice& n, std::int64_t p, const ProjLine& line, unsigned k,
                                    std::uint64_t seed) {
  if (k < 2) throw PreconditionError("splitting_from_line: precision must be at least 2");
  const std::size_t dim = n.rank();
  const Integer pk = ppow(p, k);
  const Integer pp = p;
  IntVector v = hensel_lift_line(n, p, line, k);

  IntVector y(dim, Integer(0));
  if (seed == 0) {
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, Integer(0));
      e[i] = 1;
      if (!mpz_divisible_p(n.bilinear_value(v, e).get_mpz_t(), pp.get_mpz_t())) {
        y = e;
        break;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    for (;;) {
      for (auto& x : y) x = static_cast<long>(rng() % static_cast<std::uint64_t>(p));
      if (!mpz_divisible_p(n.bilinear_value(v, y).get_mpz_t(), pp.get_mpz_t())) break;
    }
  }
  Integer a = mod_int(n.bilinear_value(v, y), pk);
  Integer a_inv;
  mpz_invert(a_inv.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
  for (auto& x : y) x = mod_int(x * a_inv, pk);
  const Integer qy = n.quad_value(y);
  for (std::size_t i = 0; i < dim; ++i) y[i] = mod_int(y[i] - qy * v[i], pk);

  // Complete (v, y) to a basis mod p with standard vectors and project those
  // onto the orthogonal complement of the pair.
  std::vector<FpVector> pair{to_fp(v, p), to_fp(y, p)};
  std::vector<FpVector> full = complete_basis(pair, dim, p);
  std::vector<IntVector> zero;
  for (std::size_t t = 2; t < full.size(); ++t) {
    IntVector e = to_int(full[t]);
    Integer ey = n.bilinear_value(e, y), ev = n.bilinear_value(e, v);
    IntVector x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = mod_int(e[i] - ey * v[i] - ev * y[i], pk);
    zero.push_back(std::move(x));
  }
  return {std::move(v), std::move(y), IntMatrix::from_columns(dim, zero), k};
}

PLattice lattice_from_splitting(const QuadLattice& n, std::int64_t p, const LambdaSplitting& s) {
  if (s.precision < 2) throw PreconditionError("lattice_from_splitting: precision must be at least 2");
  const std::size_t dim = n.rank();
  // p N~ = Z n_minus + p N(0) + p^2 N.
  std::vector<IntVector> gens{s.n_minus};
  const Integer pp = p, p2 = ppow(p, 2);
  for (std::size_t j = 0; j < s.n_zero.cols(); ++j) gens.push_back(scale(pp, s.n_zero.column(j)));
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = p2;
    gens.push_back(std::move(e));
  }
  return PLattice(n, p, 1, IntMatrix::from_columns(dim, gens));
}

PLattice lattice_from_line(const QuadLattice& n, std::int64_t p, const ProjLine& line) {
  return lattice_from_splitting(n, p, splitting_from_line(n, p, line, default_precision()));
}

PLattice lattice_from_line_direct(const QuadLattice& n, std::int64_t p, const ProjLine& line) {
  const std::size_t dim = n.rank();
  IntVector v = hensel_lift_line(n, p, line, 2);
  FpMatrix row(1, dim);
  FpVector bv = to_fp(n.gram() * v, p);
  for (std::size_t i = 0; i < dim; ++i) row(0, i) = bv[i];
  const Integer pp = p;
  std::vector<IntVector> gens{v};
  for (const auto& k : kernel(row, p)) gens.push_back(scale(pp, to_int(k)));
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = pp * pp;
    gens.push_back(std::move(e));
  }
  return PLattice(n, p, 1, IntMatrix::from_columns(dim, gens));
}

ProjLine line_from_lattice(const PLattice& l) {
  const std::int64_t p = l.p();
  const std::size_t n = l.ambient().rank();
  if (!is_self_dual_at(l.ambient(), p)) throw PreconditionError("line_from_lattice: ambient lattice is not self-dual at p");
  if (!l.is_self_dual()) throw PreconditionError("line_from_lattice: lattice is not self-dual at p");
  auto [up, down] = l.indices();
  if (up != p || down != p) throw PreconditionError("line_from_lattice: lattice is not a p-neighbor of its ambient lattice");
  IntMatrix meet;
  if (l.power() == 0) {
    meet = Integer(p) * l.numerator();
  } else {
    const Integer d = ppow(p, l.power() - 1);
    meet = divide_exact(lattice_intersection(l.numerator(), d * IntMatrix::identity(n)), d);
  }
  std::vector<FpVector> image = canonical_basis(columns_mod_p(meet, p), n, p);
  if (image.size() != 1) throw InvariantViolation("line_from_lattice: (pL n N) mod p is not a line");
  return ProjLine::through(image.front(), p);
}

std::vector<ProjLine> smooth_isotropic_lines(const QuadLattice& n, std::int64_t p, std::uint64_t max_points) {
  FpQuadSpace v = reduction(n, p);
  std::vector<ProjLine> out;
  for (auto& l : enumerate_isotropic_lines(v, max_points))
    if (!is_zero(v.pairing_vector(l.generator))) out.push_back(std::move(l));
  return out;
}

std::vector<PLattice> enumerate_neighbors(const QuadLattice& n, std::int64_t p, std::uint64_t max_points) {
  if (!is_self_dual_at(n, p)) throw PreconditionError("neighbors: N is not self-dual at p");
  std::vector<PLattice> out;
  for (const auto& l : smooth_isotropic_lines(n, p, max_points)) out.push_back(lattice_from_line(n, p, l));
  return out;
}

// ---------------------------------------------------------------------------
// W-generic lines and the two directions of the shrink/grow correspondence

namespace {

void require_summand(const QuadLattice& n, const IntMatrix& w, const char* what) {
  if (w.rows() != n.rank()) throw PreconditionError(std::string(what) + ": basis has the wrong number of rows");
  if (w.cols() == 0) return;
  if (rank(w) != w.cols()) throw PreconditionError(std::string(what) + ": basis is not of full column rank");
  if (!saturate(n.rank(), w).is_direct_summand)
    throw PreconditionError(std::string(what) + ": sublattice is not a direct summand");
}

// Coordinates C with w * C = gens.
IntMatrix coordinates_in(const IntMatrix& w, const IntMatrix& gens) {
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto c = solve_integer(w, gens.column(j));
    if (!c) throw PreconditionError("sublattice generators do not lie in W");
    cols.push_back(std::move(*c));
  }
  return IntMatrix::from_columns(w.cols(), cols);
}

}  // namespace

IntMatrix typing_hyperplane(const IntMatrix& w, const IntMatrix& w_tilde, std::int64_t p) {
  const std::size_t r = w.cols();
  if (r == 0) throw PreconditionError("typing_hyperplane: W must be nonzero");
  IntMatrix c = coordinates_in(w, w_tilde);
  AbelianQuotient q = quotient_structure(r, c);
  if (!(q.free_rank == 0 && q.torsion.size() == 1 && q.torsion[0] == p))
    throw PreconditionError("typing_hyperplane: W~ must have index p in W");
  // W~ / pW is the kernel of a functional a on W/pW; U = ker(a) over Z.
  FpMatrix ct(c.cols(), r);
  for (std::size_t i = 0; i < c.cols(); ++i)
    for (std::size_t j = 0; j < r; ++j) ct(i, j) = mod_int(c(j, i), Integer(p)).get_si();
  std::vector<FpVector> a = kernel(ct, p);
  if (a.size() != 1) throw InvariantViolation("typing_hyperplane: W~ mod p is not a hyperplane");
  IntMatrix a_row(1, r);
  for (std::size_t j = 0; j < r; ++j) a_row(0, j) = static_cast<long>(a[0][j]);
  IntMatrix u_coords = integer_kernel(a_row);
  if (u_coords.cols() == 0) return IntMatrix(w.rows(), 0);
  return hnf_basis(w * u_coords);
}

std::vector<ProjLine> w_generic_lines(const QuadLattice& n, std::int64_t p, const IntMatrix& w,
                                      const std::optional<IntMatrix>& u, std::uint64_t max_points) {
  require_summand(n, w, "w_generic_lines");
  const std::size_t r = w.cols();
  FpQuadSpace v = reduction(n, p);
  std::vector<FpVector> wbar = columns_mod_p(w, p);
  std::vector<FpVector> ubar;
  if (u) {
    if (u->cols() + 1 != r) throw PreconditionError("w_generic_lines: U must have corank one in W");
    require_summand(n, *u, "w_generic_lines");
    for (std::size_t j = 0; j < u->cols(); ++j)
      if (!solve_integer(w, u->column(j))) throw PreconditionError("w_generic_lines: U is not contained in W");
    ubar = columns_mod_p(*u, p);
  }
  std::vector<ProjLine> out;
  for (auto& line : smooth_isotropic_lines(n, p, max_points)) {
    const FpVector& x = line.generator;
    std::vector<FpVector> span = wbar;
    span.push_back(x);
    if (rank(span, n.rank(), p) != r + 1) continue;
    FpVector bx = v.pairing_vector(x);
    auto pairs_with = [&](const FpVector& y) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) s = (s + y[i] * bx[i]) % p;
      return s != 0;
    };
    if (r > 0 && std::none_of(wbar.begin(), wbar.end(), pairs_with)) continue;
    if (std::any_of(ubar.begin(), ubar.end(), pairs_with)) continue;
    out.push_back(std::move(line));
  }
  return out;
}

void check_shrink_preconditions(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& w_tilde) {
  if (!is_self_dual_at(n, p)) throw PreconditionError("shrink: N is not self-dual at p");
  require_summand(n, w, "shrink");
  if (w.cols() == 0) throw PreconditionError("shrink: W must be nonzero");
  if (2 * w.cols() + 3 > n.rank()) throw PreconditionError("shrink: rank(W) must be at most (rank(N) - 3) / 2");
  if (n.restrict_to(w).determinant() == 0) throw PreconditionError("shrink: the form on W is degenerate");
  if (w_tilde.rows() != n.rank()) throw PreconditionError("shrink: W~ has the wrong number of rows");
  typing_hyperplane(w, w_tilde, p);
}

std::vector<PLattice> shrink_set(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& w_tilde) {
  check_shrink_preconditions(n, p, w, w_tilde);
  IntMatrix u = typing_hyperplane(w, w_tilde, p);
  std::vector<PLattice> out;
  for (const auto& line : w_generic_lines(n, p, w, u)) out.push_back(lattice_from_line(n, p, line));
  return out;
}

bool meets_span_in(const PLattice& l, const IntMatrix& w, const IntMatrix& w_tilde) {
  return l.intersect_span(w) == make_scaled(l.p(), 0, w_tilde);
}

std::vector<PLattice> shrink_set_bruteforce(const QuadLattice& n, std::int64_t p, const IntMatrix& w,
                                            const IntMatrix& w_tilde) {
  check_shrink_preconditions(n, p, w, w_tilde);
  std::vector<PLattice> out;
  for (auto& nb : enumerate_neighbors(n, p))
    if (meets_span_in(nb, w, w_tilde)) out.push_back(std::move(nb));
  return out;
}

Recovery recover_lattice(const PLattice& n_tilde, const IntMatrix& w, bool exhaustive) {
  const QuadLattice& n = n_tilde.ambient();
  const std::int64_t p = n_tilde.p();
  require_summand(n, w, "recover_lattice");
  if (w.cols() == 0) throw PreconditionError("recover_lattice: W must be nonzero");
  if (!n_tilde.is_self_dual()) throw PreconditionError("recover_lattice: N~ is not self-dual at p");
  auto [up, down] = n_tilde.indices();
  if (up != p || down != p) throw PreconditionError("recover_lattice: N~ is not a p-neighbor of the ambient lattice");
  ScaledSublattice meet = n_tilde.intersect_span(w);
  if (meet.power != 0 || meet.numerator.cols() != w.cols())
    throw PreconditionError("recover_lattice: N~ n W[1/p] is not a sublattice of W");
  AbelianQuotient q = quotient_structure(w.cols(), coordinates_in(w, meet.numerator));
  if (!(q.free_rank == 0 && q.torsion.size() == 1 && q.torsion[0] == p))
    throw PreconditionError("recover_lattice: N~ n W[1/p] does not have index p in W");

  // Image of pW in N~/pN~; a survivor's line must contain it.
  std::optional<ProjLine> forced;
  if (!exhaustive) {
    std::vector<FpVector> image;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      auto c = n_tilde.coordinates(scale(Integer(p), w.column(j)));
      if (!c) throw InvariantViolation("recover_lattice: pW is not contained in N~");
      FpVector r = to_fp(*c, p);
      if (!is_zero(r)) image.push_back(std::move(r));
    }
    if (image.empty() || rank(image, n.rank(), p) != 1)
      throw InvariantViolation("recover_lattice: the image of pW in N~/pN~ is not a line");
    forced = ProjLine::through(image.front(), p);
  }

  // Neighbors of N~, computed in the coordinates of its canonical basis.
  const QuadLattice form = n_tilde.form();
  const ScaledSublattice target = make_scaled(p, 0, w);
  Recovery rec;
  for (const auto& line : smooth_isotropic_lines(form, p)) {
    ++rec.candidates;
    if (forced && !(line == *forced)) continue;
    ++rec.constructed;
    PLattice local = lattice_from_line(form, p, line);
    PLattice candidate(n, p, n_tilde.power() + local.power(), n_tilde.numerator() * local.numerator());
    if (!candidate.contains(w)) continue;
    if (!(candidate.intersect_span(w) == target)) continue;
    if (rec.survivors++ == 0) rec.lattice = candidate;
  }
  if (rec.survivors != 1)
    throw InvariantViolation("recover_lattice: expected exactly one survivor, found " + std::to_string(rec.survivors));
  return rec;
}

// ---------------------------------------------------------------------------
// Typed lines over Z/p^2

std::vector<FpVector> isotropic_vectors_mod_p2(const QuadLattice& n, std::int64_t p, std::uint64_t max_vectors) {
  const std::int64_t m = p * p;
  const std::size_t dim = n.rank();
  auto total = bounded_power(m, dim, max_vectors);
  if (!total) throw GuardExceeded("isotropic_vectors_mod_p2: too many vectors mod p^2");
  FpMatrix h(dim, dim);
  const Integer mm = m;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) h(i, j) = mod_int(n.half_gram()(i, j), mm).get_si();
  std::vector<FpVector> out;
  FpVector x(dim, 0);
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    if (idx > 0) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (++x[i] < m) break;
        x[i] = 0;
      }
    }
    bool primitive = std::any_of(x.begin(), x.end(), [&](std::int64_t c) { return c % p != 0; });
    if (!primitive) continue;
    std::int64_t q = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      std::int64_t row = 0;
      for (std::size_t j = i; j < dim; ++j) row = (row + h(i, j) * x[j]) % m;
      q = (q + x[i] * row) % m;
    }
    if (q == 0) out.push_back(x);
  }
  return out;
}

Integer typed_line_count_mod_p2(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& u,
                                const std::vector<FpVector>& isotropic_mod_p2) {
  require_summand(n, w, "typed_line_count_mod_p2");
  if (u.cols() + 1 != w.cols()) throw PreconditionError("typed_line_count_mod_p2: U must have corank one in W");
  const std::int64_t m = p * p;
  const std::size_t dim = n.rank();
  const IntMatrix gram = n.gram();
  // Rows of the pairings with W (mod p) and with U (mod p^2).
  auto pairing_rows = [&](const IntMatrix& basis, std::int64_t mod) {
    std::vector<FpVector> rows;
    IntMatrix bt = basis.transpose() * gram;
    for (std::size_t i = 0; i < bt.rows(); ++i) {
      FpVector r(dim);
      for (std::size_t j = 0; j < dim; ++j) r[j] = mod_int(bt(i, j), Integer(mod)).get_si();
      rows.push_back(std::move(r));
    }
    return rows;
  };
  std::vector<FpVector> w_rows = pairing_rows(w, p);
  std::vector<FpVector> u_rows = pairing_rows(u, m);
  std::vector<FpVector> wbar = columns_mod_p(w, p);
  auto dotm = [](const FpVector& a, const FpVector& b, std::int64_t mod) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = (s + a[i] * b[i]) % mod;
    return s;
  };
  Integer count = 0;
  for (const auto& x : isotropic_mod_p2) {
    FpVector xbar(dim);
    for (std::size_t i = 0; i < dim; ++i) xbar[i] = x[i] % p;
    if (!w_rows.empty() && std::all_of(w_rows.begin(), w_rows.end(), [&](const FpVector& r) { return dotm(r, xbar, p) == 0; }))
      continue;
    if (std::any_of(u_rows.begin(), u_rows.end(), [&](const FpVector& r) { return dotm(r, x, m) != 0; })) continue;
    std::vector<FpVector> span = wbar;
    span.push_back(xbar);
    if (rank(span, dim, p) != w.cols() + 1) continue;
    ++count;
  }
  const Integer units = Integer(p) * (p - 1);
  if (!mpz_divisible_p(count.get_mpz_t(), units.get_mpz_t()))
    throw InvariantViolation("typed_line_count_mod_p2: vector count is not divisible by |(Z/p^2)^x|");
  return count / units;
}

Integer typed_line_count_mod_p2(const QuadLattice& n, std::int64_t p, const IntMatrix& w, const IntMatrix& u) {
  return typed_line_count_mod_p2(n, p, w, u, isotropic_vectors_mod_p2(n, p));
}

}  // namespace qlat
