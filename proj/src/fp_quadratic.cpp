#include "qlat/fp_quadratic.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "qlat/errors.hpp"

namespace qlat {

// ---------------------------------------------------------------------------
// FpQuadSpace

FpQuadSpace::FpQuadSpace(std::int64_t p, const FpMatrix& half_gram) : p_(p) {
  if (p < 2 || p > (std::int64_t{1} << 31)) throw PreconditionError("FpQuadSpace: p must be a prime below 2^31");
  if (half_gram.rows() != half_gram.cols()) throw PreconditionError("FpQuadSpace: half-Gram matrix must be square");
  const std::size_t n = half_gram.rows();
  half_gram_ = FpMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t a = std::min(i, j), b = std::max(i, j);
      half_gram_(a, b) = mod_p(half_gram_(a, b) + mod_p(half_gram(i, j), p), p);
    }
  gram_ = FpMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram_(i, j) = (half_gram_(i, j) + half_gram_(j, i)) % p;
}

FpQuadSpace FpQuadSpace::reduce(const IntMatrix& half_gram, std::int64_t p) {
  FpMatrix h(half_gram.rows(), half_gram.cols());
  Integer pp = p;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), half_gram(i, j).get_mpz_t(), pp.get_mpz_t());
      h(i, j) = r.get_si();
    }
  return FpQuadSpace(p, h);
}

std::int64_t FpQuadSpace::quad_value(const FpVector& x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw PreconditionError("quad_value: vector length does not match the dimension");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = i; j < n; ++j) row = (row + half_gram_(i, j) * x[j]) % p_;
    s = (s + x[i] * row) % p_;
  }
  return s;
}

std::int64_t FpQuadSpace::bilinear_value(const FpVector& x, const FpVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw PreconditionError("bilinear_value: length mismatch");
  FpVector bx = pairing_vector(x);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < dim(); ++i) s = (s + bx[i] * y[i]) % p_;
  return s;
}

FpVector FpQuadSpace::pairing_vector(const FpVector& x) const { return mul(gram_, x, p_); }

FpQuadSpace FpQuadSpace::restrict_to(const std::vector<FpVector>& basis) const {
  const std::size_t r = basis.size();
  FpMatrix h(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    h(i, i) = quad_value(basis[i]);
    for (std::size_t j = i + 1; j < r; ++j) h(i, j) = bilinear_value(basis[i], basis[j]);
  }
  return FpQuadSpace(p_, h);
}

ProjLine ProjLine::through(const FpVector& v, std::int64_t p) {
  auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
  if (it == v.end()) throw PreconditionError("ProjLine: the zero vector spans no line");
  std::int64_t inv = inv_mod(*it, p);
  return {scale(inv, v, p)};
}

// ---------------------------------------------------------------------------
// Radicals, complements, isotropic vectors

namespace {

FpVector combine(const std::vector<FpVector>& basis, const FpVector& coeffs, std::size_t dim, std::int64_t p) {
  FpVector out(dim, 0);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    if (coeffs[t] == 0) continue;
    for (std::size_t i = 0; i < dim; ++i) out[i] = (out[i] + coeffs[t] * basis[t][i]) % p;
  }
  return out;
}

std::vector<FpVector> combine_all(const std::vector<FpVector>& basis, const std::vector<FpVector>& coeffs,
                                  std::size_t dim, std::int64_t p) {
  std::vector<FpVector> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(combine(basis, c, dim, p));
  return out;
}

std::vector<FpVector> standard_basis(std::size_t n) {
  std::vector<FpVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    FpVector e(n, 0);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

std::int64_t square_class(std::int64_t a, std::int64_t p) {
  return is_square_mod(a, p) ? 1 : smallest_nonsquare(p);
}

std::vector<std::int64_t> random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t p) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
  return v;
}

constexpr std::uint64_t kExhaustiveLimit = 1'000'000;

// Nonzero x in span(s) with Q(x) = 0 and [x, span(s)] != 0.
std::optional<FpVector> find_isotropic_nonradical(const FpQuadSpace& v, const std::vector<FpVector>& s,
                                                  std::mt19937_64& rng) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (s.empty()) return std::nullopt;
  FpQuadSpace vs = v.restrict_to(s);
  const std::size_t k = s.size();
  auto good = [&](const FpVector& x) { return vs.quad_value(x) == 0 && !is_zero(vs.pairing_vector(x)); };

  if (auto total = bounded_power(p, k, kExhaustiveLimit)) {
    for (std::uint64_t idx = 1; idx < *total; ++idx) {
      FpVector x = vector_from_index(idx, k, p);
      if (good(x)) return combine(s, x, n, p);
    }
    return std::nullopt;
  }

  std::vector<FpVector> rad = kernel(vs.gram(), p);
  const std::size_t nd = k - rad.size();
  if (nd >= 3) {
    // A nondegenerate part of dimension >= 3 is isotropic; roughly one random
    // vector in p is a solution.
    const std::uint64_t tries = std::min<std::uint64_t>(50'000'000, 64 * static_cast<std::uint64_t>(p) + 100'000);
    for (std::uint64_t t = 0; t < tries; ++t) {
      FpVector x = random_vector(rng, k, p);
      if (good(x)) return combine(s, x, n, p);
    }
    throw NotFound("find_isotropic_vector: randomized search exhausted its budget");
  }
  std::vector<FpVector> full = complete_basis(rad, k, p);
  std::vector<FpVector> comp(full.begin() + static_cast<std::ptrdiff_t>(rad.size()), full.end());
  if (comp.empty()) return std::nullopt;
  if (p == 2) {
    auto it = std::find_if(rad.begin(), rad.end(), [&](const FpVector& r) { return vs.quad_value(r) != 0; });
    if (it != rad.end()) {
      FpVector c = comp.front();
      if (vs.quad_value(c) != 0) c = add(c, *it, p);
      return combine(s, c, n, p);
    }
  }
  for (const auto& line : projective_points(comp, k, p)) {
    if (vs.quad_value(line.generator) == 0) return combine(s, line.generator, n, p);
  }
  return std::nullopt;
}

}  // namespace

Radicals radicals(const FpQuadSpace& v) {
  Radicals r;
  r.bilinear = kernel(v.gram(), v.p());
  if (v.p() != 2) {
    r.isotropic = r.bilinear;
    return r;
  }
  // Over F_2, Q restricted to the bilinear radical is additive and a^2 = a,
  // so it is a linear functional there.
  if (r.bilinear.empty()) return r;
  FpMatrix f(1, r.bilinear.size());
  for (std::size_t i = 0; i < r.bilinear.size(); ++i) f(0, i) = v.quad_value(r.bilinear[i]);
  r.isotropic = combine_all(r.bilinear, kernel(f, 2), v.dim(), 2);
  return r;
}

bool is_nondegenerate(const FpQuadSpace& v) { return radicals(v).isotropic.empty(); }

bool is_bilinear_nondegenerate(const FpQuadSpace& v) { return determinant(v.gram(), v.p()) != 0; }

std::vector<FpVector> orthogonal_complement(const FpQuadSpace& v, const std::vector<FpVector>& w) {
  if (w.empty()) return standard_basis(v.dim());
  FpMatrix rows(w.size(), v.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    FpVector bw = v.pairing_vector(w[i]);
    for (std::size_t j = 0; j < v.dim(); ++j) rows(i, j) = bw[j];
  }
  return kernel(rows, v.p());
}

std::optional<FpVector> find_isotropic_vector(const FpQuadSpace& v, std::uint64_t seed) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (auto total = bounded_power(p, n, kExhaustiveLimit)) {
    for (std::uint64_t idx = 1; idx < *total; ++idx) {
      FpVector x = vector_from_index(idx, n, p);
      if (v.quad_value(x) == 0) return x;
    }
    return std::nullopt;
  }
  Radicals r = radicals(v);
  if (!r.isotropic.empty()) return r.isotropic.front();
  std::mt19937_64 rng(seed);
  return find_isotropic_nonradical(v, standard_basis(n), rng);
}

WittDecomposition witt_decomposition(const FpQuadSpace& v, std::uint64_t seed) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  std::mt19937_64 rng(seed);
  WittDecomposition out;
  std::vector<FpVector> s = standard_basis(n);
  while (auto u = find_isotropic_nonradical(v, s, rng)) {
    FpVector w;
    for (const auto& b : s) {
      std::int64_t c = v.bilinear_value(*u, b);
      if (c != 0) {
        w = scale(inv_mod(c, p), b, p);
        break;
      }
    }
    FpVector pair = sub(w, scale(v.quad_value(w), *u, p), p);
    // Project the remaining space onto the orthogonal complement of the plane.
    std::vector<FpVector> projected;
    for (const auto& b : s) {
      FpVector x = sub(b, scale(v.bilinear_value(b, pair), *u, p), p);
      x = sub(x, scale(v.bilinear_value(b, *u), pair, p), p);
      projected.push_back(x);
    }
    s = canonical_basis(projected, n, p);
    out.hyperbolic_pairs.emplace_back(*u, pair);
  }
  if (!s.empty()) {
    FpQuadSpace vs = v.restrict_to(s);
    std::vector<FpVector> rad = kernel(vs.gram(), p);
    std::vector<FpVector> full = complete_basis(rad, s.size(), p);
    for (std::size_t i = 0; i < full.size(); ++i) {
      FpVector x = combine(s, full[i], n, p);
      if (i < rad.size())
        out.radical.push_back(x);
      else
        out.anisotropic_kernel.push_back(x);
    }
  }
  return out;
}

WittType witt_type(const FpQuadSpace& v) {
  if (!is_nondegenerate(v)) throw PreconditionError("witt_type: the space is degenerate");
  if (v.dim() % 2 == 1) return WittType::Odd;
  WittDecomposition wd = witt_decomposition(v);
  if (2 * wd.hyperbolic_pairs.size() == v.dim()) return WittType::Split;
  if (wd.anisotropic_kernel.size() != 2)
    throw InvariantViolation("witt_type: anisotropic kernel of an even nondegenerate space must have dimension 0 or 2");
  return WittType::NonSplit;
}

const char* to_string(WittType t) {
  switch (t) {
    case WittType::Split:
      return "split";
    case WittType::NonSplit:
      return "non-split";
    case WittType::Odd:
      return "odd";
  }
  return "?";
}

namespace {
Integer ipow(std::int64_t p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}
}  // namespace

Integer isotropic_line_count(std::size_t dim, WittType type, std::int64_t p) {
  const unsigned long m = dim / 2;
  switch (type) {
    case WittType::Odd:
      if (dim % 2 == 0) throw PreconditionError("isotropic_line_count: odd type needs odd dimension");
      return (ipow(p, 2 * m) - 1) / (p - 1);
    case WittType::Split:
      if (dim % 2 == 1) throw PreconditionError("isotropic_line_count: split type needs even dimension");
      if (m == 0) return 0;
      return (ipow(p, m - 1) + 1) * (ipow(p, m) - 1) / (p - 1);
    case WittType::NonSplit:
      if (dim % 2 == 1 || m == 0) throw PreconditionError("isotropic_line_count: non-split type needs even dimension >= 2");
      return (ipow(p, m - 1) - 1) * (ipow(p, m) + 1) / (p - 1);
  }
  return 0;
}

std::vector<ProjLine> projective_points(const std::vector<FpVector>& basis, std::size_t dim, std::int64_t p,
                                        std::uint64_t max_points) {
  const std::size_t k = basis.size();
  std::vector<ProjLine> out;
  if (k == 0) return out;
  auto total = bounded_power(p, k, max_points * static_cast<std::uint64_t>(p));
  if (!total || (*total - 1) / static_cast<std::uint64_t>(p - 1) > max_points)
    throw GuardExceeded("projective point enumeration exceeds the configured limit");
  out.reserve((*total - 1) / static_cast<std::uint64_t>(p - 1));
  // Coefficient vectors whose last nonzero entry is 1 represent each point once.
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::uint64_t free = *bounded_power(p, lead, *total);
    for (std::uint64_t idx = 0; idx < free; ++idx) {
      FpVector c = vector_from_index(idx, k, p);
      c[lead] = 1;
      out.push_back(ProjLine::through(combine(basis, c, dim, p), p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjLine> enumerate_isotropic_lines(const FpQuadSpace& v, std::uint64_t max_points) {
  std::vector<ProjLine> all = projective_points(standard_basis(v.dim()), v.dim(), v.p(), max_points);
  std::vector<ProjLine> out;
  for (auto& l : all)
    if (v.quad_value(l.generator) == 0) out.push_back(std::move(l));
  return out;
}

// ---------------------------------------------------------------------------
// Isometries

bool is_isometry(const FpQuadSpace& v, const FpMatrix& g) {
  const std::size_t n = v.dim();
  if (g.rows() != n || g.cols() != n) return false;
  if (rank(g, v.p()) != n) return false;
  std::vector<FpVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(g.column(j));
  for (std::size_t i = 0; i < n; ++i) {
    if (v.quad_value(cols[i]) != v.half_gram()(i, i)) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (v.bilinear_value(cols[i], cols[j]) != v.gram()(i, j)) return false;
  }
  return true;
}

int dickson_invariant(const FpQuadSpace& v, const FpMatrix& g) {
  return static_cast<int>(rank(sub(g, FpMatrix::identity(v.dim()), v.p()), v.p()) % 2);
}

bool in_special_orthogonal(const FpQuadSpace& v, const FpMatrix& g) {
  if (!is_isometry(v, g)) return false;
  if (v.p() != 2) return determinant(g, v.p()) == 1;
  if (v.dim() % 2 == 1) return true;
  return dickson_invariant(v, g) == 0;
}

FpIsometry reflection(const FpQuadSpace& v, const FpVector& vec) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  std::int64_t q = v.quad_value(vec);
  if (q == 0) throw PreconditionError("reflection: the vector is isotropic");
  FpVector bv = v.pairing_vector(vec);
  if (is_zero(bv)) throw PreconditionError("reflection: the vector lies in the bilinear radical");
  std::int64_t qi = inv_mod(q, p);
  FpMatrix m = FpMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = mod_p(m(i, j) - qi * vec[i] % p * bv[j], p);
  return {v, m};
}

FpIsometry eichler_transvection(const FpQuadSpace& v, const FpVector& u, const FpVector& w) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (v.quad_value(u) != 0) throw PreconditionError("eichler_transvection: u must be isotropic");
  if (v.bilinear_value(u, w) != 0) throw PreconditionError("eichler_transvection: w must be orthogonal to u");
  FpVector bu = v.pairing_vector(u);
  FpVector bw = v.pairing_vector(w);
  std::int64_t qw = v.quad_value(w);
  FpMatrix m = FpMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t t = m(i, j) + w[i] * bu[j] % p - u[i] * bw[j] % p - qw * u[i] % p * bu[j] % p;
      m(i, j) = mod_p(t, p);
    }
  return {v, m};
}

namespace {

struct ExtensionProblem {
  const FpQuadSpace& v;
  std::vector<FpVector> basis;  // completed domain basis x_1..x_n
  FpMatrix basis_inverse;
  std::size_t fixed = 0;        // number of prescribed images
};

ExtensionProblem make_problem(const FpQuadSpace& v, const std::vector<FpVector>& domain,
                              const std::vector<FpVector>& images) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (domain.size() != images.size()) throw PreconditionError("extension: domain and image counts differ");
  for (const auto& x : domain)
    if (x.size() != n) throw PreconditionError("extension: domain vector has the wrong length");
  for (const auto& y : images)
    if (y.size() != n) throw PreconditionError("extension: image vector has the wrong length");
  if (rank(domain, n, p) != domain.size()) throw PreconditionError("extension: domain vectors are dependent");
  if (rank(images, n, p) != images.size()) throw PreconditionError("extension: image vectors are dependent");
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (v.quad_value(domain[i]) != v.quad_value(images[i]))
      throw PreconditionError("extension: the assignment does not preserve Q");
    for (std::size_t j = i + 1; j < domain.size(); ++j)
      if (v.bilinear_value(domain[i], domain[j]) != v.bilinear_value(images[i], images[j]))
        throw PreconditionError("extension: the assignment does not preserve the bilinear form");
  }
  ExtensionProblem prob{v, complete_basis(domain, n, p), {}, domain.size()};
  prob.basis_inverse = *inverse(FpMatrix::from_columns(n, prob.basis), p);
  return prob;
}

// Affine space of y with [y, y_i] = [x_j, x_i] for the chosen images y_i.
struct AffineSpace {
  FpVector base;
  std::vector<FpVector> directions;
};

std::optional<AffineSpace> step_constraints(const ExtensionProblem& prob, const std::vector<FpVector>& chosen,
                                            std::size_t j) {
  const std::int64_t p = prob.v.p();
  const std::size_t n = prob.v.dim();
  if (chosen.empty()) {
    FpVector zero(n, 0);
    return AffineSpace{zero, standard_basis(n)};
  }
  FpMatrix a(chosen.size(), n);
  FpVector rhs(chosen.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    FpVector by = prob.v.pairing_vector(chosen[i]);
    for (std::size_t c = 0; c < n; ++c) a(i, c) = by[c];
    rhs[i] = prob.v.bilinear_value(prob.basis[j], prob.basis[i]);
  }
  auto base = solve(a, rhs, p);
  if (!base) return std::nullopt;
  return AffineSpace{*base, kernel(a, p)};
}

bool admissible(const ExtensionProblem& prob, const std::vector<FpVector>& chosen, std::size_t j,
                const FpVector& y) {
  if (prob.v.quad_value(y) != prob.v.quad_value(prob.basis[j])) return false;
  std::vector<FpVector> all = chosen;
  all.push_back(y);
  return rank(all, prob.v.dim(), prob.v.p()) == all.size();
}

FpMatrix assemble(const ExtensionProblem& prob, const std::vector<FpVector>& chosen) {
  return mul(FpMatrix::from_columns(prob.v.dim(), chosen), prob.basis_inverse, prob.v.p());
}

}  // namespace

void for_each_extension(const FpQuadSpace& v, const std::vector<FpVector>& domain,
                        const std::vector<FpVector>& images, const std::function<bool(const FpMatrix&)>& visit,
                        std::uint64_t max_nodes) {
  ExtensionProblem prob = make_problem(v, domain, images);
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  std::uint64_t nodes = 0;
  std::vector<FpVector> chosen = images;

  std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
    if (++nodes > max_nodes) throw GuardExceeded("extension enumeration exceeds the configured limit");
    if (j == n) return visit(assemble(prob, chosen));
    auto space = step_constraints(prob, chosen, j);
    if (!space) return true;
    auto total = bounded_power(p, space->directions.size(), max_nodes);
    if (!total) throw GuardExceeded("extension enumeration exceeds the configured limit");
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
      FpVector y = add(space->base, combine(space->directions, vector_from_index(idx, space->directions.size(), p), n, p), p);
      if (!admissible(prob, chosen, j, y)) continue;
      chosen.push_back(y);
      bool go_on = dfs(j + 1);
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  dfs(prob.fixed);
}

FpIsometry witt_extension(const FpQuadSpace& v, const std::vector<FpVector>& domain,
                          const std::vector<FpVector>& images, const WittExtensionOptions& opts) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (!is_bilinear_nondegenerate(v)) throw PreconditionError("witt_extension: the bilinear form is degenerate");
  if (domain.size() + 2 > n) throw PreconditionError("witt_extension: the subspace must have codimension at least 2");
  ExtensionProblem prob = make_problem(v, domain, images);

  // Greedy extension over the completed basis. Witt's theorem guarantees every
  // partial isometry extends, so each step has a solution.
  std::mt19937_64 rng(opts.seed);
  std::vector<FpVector> chosen = images;
  for (std::size_t j = prob.fixed; j < n; ++j) {
    auto space = step_constraints(prob, chosen, j);
    if (!space) throw InvariantViolation("witt_extension: inconsistent pairing constraints");
    const std::size_t d = space->directions.size();
    std::optional<FpVector> pick;
    if (auto total = bounded_power(p, d, kExhaustiveLimit)) {
      for (std::uint64_t idx = 0; idx < *total && !pick; ++idx) {
        FpVector y = add(space->base, combine(space->directions, vector_from_index(idx, d, p), n, p), p);
        if (admissible(prob, chosen, j, y)) pick = y;
      }
    } else {
      for (std::uint64_t t = 0; t < 10'000'000 && !pick; ++t) {
        FpVector y = add(space->base, combine(space->directions, random_vector(rng, d, p), n, p), p);
        if (admissible(prob, chosen, j, y)) pick = y;
      }
    }
    if (!pick) throw NotFound("witt_extension: no extension step found");
    chosen.push_back(*pick);
  }
  FpMatrix g = assemble(prob, chosen);

  auto verified = [&](const FpMatrix& m) {
    if (!in_special_orthogonal(v, m)) return false;
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (mul(m, domain[i], p) != images[i]) return false;
    return true;
  };
  if (verified(g)) return {v, g};

  // Correct the determinant (Dickson invariant) by a reflection that fixes the
  // image subspace pointwise.
  std::vector<FpVector> perp = orthogonal_complement(v, images);
  auto anisotropic = [&](const FpVector& x) { return v.quad_value(x) != 0; };
  // Q vanishing on a basis and on all pairwise sums vanishes identically, so
  // this scan finds an anisotropic vector whenever one exists.
  std::optional<FpVector> a;
  for (std::size_t i = 0; i < perp.size() && !a; ++i) {
    if (anisotropic(perp[i])) a = perp[i];
    for (std::size_t j = i + 1; j < perp.size() && !a; ++j) {
      FpVector s = add(perp[i], perp[j], p);
      if (anisotropic(s)) a = s;
    }
  }
  if (a) {
    FpMatrix h = mul(reflection(v, *a).matrix, g, p);
    if (!verified(h)) throw InvariantViolation("witt_extension: corrected extension failed verification");
    return {v, h};
  }

  // W2-perp is totally singular: search every extension for one in SO.
  std::optional<FpMatrix> found;
  for_each_extension(
      v, domain, images,
      [&](const FpMatrix& m) {
        if (in_special_orthogonal(v, m)) {
          found = m;
          return false;
        }
        return true;
      },
      opts.max_group * 20);
  if (!found) throw NotFound("witt_extension: no extension of the isometry lies in the special orthogonal group");
  return {v, *found};
}

// ---------------------------------------------------------------------------
// Spinor norm

std::vector<FpVector> reflection_factorization(const FpQuadSpace& v, const FpMatrix& g) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (p == 2) throw PreconditionError("reflection_factorization: characteristic 2 is not supported");
  if (!is_bilinear_nondegenerate(v)) throw PreconditionError("reflection_factorization: degenerate space");
  if (!is_isometry(v, g)) throw PreconditionError("reflection_factorization: not an isometry");

  // Each round picks an anisotropic x in the working space U (the orthogonal
  // complement of the vectors fixed so far), makes h fix x with at most two
  // reflections inside U, then shrinks U to U n x^perp. The current h always
  // fixes U^perp pointwise and so preserves U.
  std::vector<FpVector> left;  // tau_{l_k} ... tau_{l_1} g = h, so g = tau_{l_1} ... tau_{l_k} at the end
  std::vector<FpVector> fixed;
  FpMatrix h = g;

  auto anisotropic_candidates = [&](const std::vector<FpVector>& basis) {
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      out.push_back(basis[i]);
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        out.push_back(add(basis[i], basis[j], p));
        out.push_back(sub(basis[i], basis[j], p));
      }
    }
    std::erase_if(out, [&](const FpVector& x) { return v.quad_value(x) == 0; });
    return out;
  };

  // Returns the reflection vector that makes hh fix x (empty if hx = x), or
  // nothing when hx - x is isotropic and nonzero.
  auto settle = [&](const FpMatrix& hh, const FpVector& x) -> std::optional<std::optional<FpVector>> {
    FpVector d = sub(mul(hh, x, p), x, p);
    if (is_zero(d)) return std::optional<FpVector>{};
    if (v.quad_value(d) != 0) return std::optional<FpVector>{d};
    return std::nullopt;
  };

  while (fixed.size() < n) {
    std::vector<FpVector> u = orthogonal_complement(v, fixed);
    std::vector<FpVector> cands = anisotropic_candidates(u);
    if (cands.empty()) throw InvariantViolation("reflection_factorization: working space has no anisotropic vector");

    bool done = false;
    for (const auto& x : cands) {
      if (auto r = settle(h, x)) {
        if (*r) {
          left.push_back(**r);
          h = mul(reflection(v, **r).matrix, h, p);
        }
        fixed.push_back(x);
        done = true;
        break;
      }
    }
    // Every candidate moves along an isotropic direction; one extra
    // reflection inside U breaks that.
    for (std::size_t i = 0; !done && i < cands.size(); ++i) {
      FpMatrix t = mul(reflection(v, cands[i]).matrix, h, p);
      for (const auto& x : cands) {
        if (auto r = settle(t, x)) {
          left.push_back(cands[i]);
          h = t;
          if (*r) {
            left.push_back(**r);
            h = mul(reflection(v, **r).matrix, h, p);
          }
          fixed.push_back(x);
          done = true;
          break;
        }
      }
    }
    if (!done) throw InvariantViolation("reflection_factorization: no admissible reflection found");
  }
  if (!(h == FpMatrix::identity(n))) throw InvariantViolation("reflection_factorization: residual is not the identity");
  return left;
}

std::int64_t spinor_norm(const FpQuadSpace& v, const FpMatrix& g) {
  const std::int64_t p = v.p();
  std::int64_t prod = 1;
  for (const auto& r : reflection_factorization(v, g)) prod = prod * v.quad_value(r) % p;
  return square_class(prod, p);
}

std::int64_t spinor_norm_wall(const FpQuadSpace& v, const FpMatrix& g) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  if (p == 2) throw PreconditionError("spinor_norm_wall: characteristic 2 is not supported");
  if (!is_isometry(v, g)) throw PreconditionError("spinor_norm_wall: not an isometry");
  FpMatrix one_minus_g = sub(FpMatrix::identity(n), g, p);
  std::vector<FpVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(one_minus_g.column(j));
  std::vector<FpVector> image = canonical_basis(cols, n, p);
  const std::size_t r = image.size();
  if (r == 0) return 1;
  std::vector<FpVector> pre;
  for (const auto& w : image) pre.push_back(*solve(one_minus_g, w, p));
  FpMatrix chi(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) chi(i, j) = v.bilinear_value(image[i], pre[j]);
  std::int64_t d = determinant(chi, p);
  if (d == 0) throw InvariantViolation("spinor_norm_wall: Wall form is degenerate");
  return square_class(d, p);
}

// ---------------------------------------------------------------------------
// Stabilizers and orbits

std::vector<FpMatrix> stabilizer_generators(const FpQuadSpace& v, const std::vector<FpVector>& w,
                                            std::uint64_t max_points) {
  const std::int64_t p = v.p();
  const std::size_t n = v.dim();
  std::vector<FpVector> perp = orthogonal_complement(v, w);
  std::vector<ProjLine> points = projective_points(perp, n, p, max_points);
  std::set<FpMatrix> gens;
  const FpMatrix id = FpMatrix::identity(n);
  for (const auto& pt : points) {
    const FpVector& x = pt.generator;
    if (is_zero(v.pairing_vector(x))) continue;
    if (v.quad_value(x) != 0) {
      gens.insert(reflection(v, x).matrix);
      continue;
    }
    std::vector<FpVector> w_and_u = w;
    w_and_u.push_back(x);
    for (const auto& y : orthogonal_complement(v, w_and_u)) {
      FpMatrix e = eichler_transvection(v, x, y).matrix;
      if (e != id) gens.insert(std::move(e));
    }
  }
  return {gens.begin(), gens.end()};
}

OrbitResult stabilizer_orbit(const FpQuadSpace& v, const std::vector<FpVector>& w, const ProjLine& seed,
                             const std::vector<ProjLine>& universe, std::uint64_t max_group) {
  const std::int64_t p = v.p();
  if (seed.generator.size() != v.dim() || is_zero(seed.generator))
    throw PreconditionError("stabilizer_orbit: seed is not a line of the space");
  if (v.quad_value(seed.generator) != 0) throw PreconditionError("stabilizer_orbit: seed line is not isotropic");
  std::set<ProjLine> target(universe.begin(), universe.end());

  std::vector<FpMatrix> gens = stabilizer_generators(v, w);
  std::set<ProjLine> seen{seed};
  std::deque<ProjLine> queue{seed};
  while (!queue.empty()) {
    ProjLine cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      ProjLine next = ProjLine::through(mul(g, cur.generator, p), p);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  OrbitResult res;
  for (const auto& l : seen)
    if (target.count(l)) res.orbit.push_back(l);
  if (res.orbit.size() == target.size()) return res;

  // The generated subgroup may be proper; fall back to the whole stabilizer.
  std::vector<FpVector> wb = canonical_basis(w, v.dim(), p);
  std::set<ProjLine> full;
  std::uint64_t count = 0;
  for_each_extension(
      v, wb, wb,
      [&](const FpMatrix& g) {
        if (++count > max_group) throw GuardExceeded("stabilizer_orbit: stabilizer exceeds the group guard");
        full.insert(ProjLine::through(mul(g, seed.generator, p), p));
        return true;
      },
      max_group * 20);
  res.orbit.clear();
  for (const auto& l : full)
    if (target.count(l)) res.orbit.push_back(l);
  res.used_exhaustive = true;
  return res;
}

// ---------------------------------------------------------------------------
// Orders and witnesses

Integer so_order(const FpQuadSpace& v) {
  if (!is_nondegenerate(v)) throw PreconditionError("so_order: the space is degenerate");
  const std::int64_t q = v.p();
  const unsigned long m = v.dim() / 2;
  WittType t = witt_type(v);
  Integer prod = 1;
  if (t == WittType::Odd) {
    for (unsigned long i = 1; i <= m; ++i) prod *= ipow(q, 2 * i) - 1;
    return ipow(q, m * m) * prod;
  }
  if (m == 0) return 1;
  for (unsigned long i = 1; i < m; ++i) prod *= ipow(q, 2 * i) - 1;
  Integer middle = t == WittType::Split ? Integer(ipow(q, m) - 1) : Integer(ipow(q, m) + 1);
  return ipow(q, m * (m - 1)) * middle * prod;
}

Integer so_order_exhaustive(const FpQuadSpace& v, std::uint64_t max_nodes) {
  Integer count = 0;
  for_each_extension(
      v, {}, {},
      [&](const FpMatrix& g) {
        if (in_special_orthogonal(v, g)) ++count;
        return true;
      },
      max_nodes);
  return count;
}

std::optional<FpIsometry> find_spinor_witness(const FpQuadSpace& v, const std::vector<FpVector>& w,
                                              std::uint64_t max_points) {
  const std::int64_t p = v.p();
  if (p == 2) throw PreconditionError("find_spinor_witness: characteristic 2 is not supported");
  if (!is_bilinear_nondegenerate(v)) throw PreconditionError("find_spinor_witness: degenerate space");
  std::vector<FpVector> perp = orthogonal_complement(v, w);
  std::optional<FpVector> square, nonsquare;
  for (const auto& pt : projective_points(perp, v.dim(), p, max_points)) {
    std::int64_t q = v.quad_value(pt.generator);
    if (q == 0) continue;
    auto& slot = is_square_mod(q, p) ? square : nonsquare;
    if (!slot) slot = pt.generator;
    if (square && nonsquare) break;
  }
  if (!square || !nonsquare) return std::nullopt;
  FpMatrix g = mul(reflection(v, *square).matrix, reflection(v, *nonsquare).matrix, p);
  for (const auto& x : w)
    if (mul(g, x, p) != x) throw InvariantViolation("find_spinor_witness: witness moves W");
  if (!in_special_orthogonal(v, g) || spinor_norm(v, g) == 1)
    throw InvariantViolation("find_spinor_witness: witness failed verification");
  return FpIsometry{v, g};
}

FpQuadSpace hyperbolic_space(std::size_t pairs, std::int64_t p) {
  FpMatrix h(2 * pairs, 2 * pairs);
  for (std::size_t i = 0; i < pairs; ++i) h(2 * i, 2 * i + 1) = 1;
  return FpQuadSpace(p, h);
}

FpQuadSpace model_space(std::size_t dim, WittType type, std::int64_t p, std::int64_t odd_coefficient) {
  const std::size_t m = dim / 2;
  FpMatrix h(dim, dim);
  switch (type) {
    case WittType::Split:
      if (dim % 2) throw PreconditionError("model_space: split type needs even dimension");
      return hyperbolic_space(m, p);
    case WittType::NonSplit: {
      if (dim % 2 || dim == 0) throw PreconditionError("model_space: non-split type needs even dimension >= 2");
      for (std::size_t i = 0; i + 1 < m; ++i) h(2 * i, 2 * i + 1) = 1;
      const std::size_t a = dim - 2;
      if (p == 2) {
        h(a, a) = 1;
        h(a, a + 1) = 1;
        h(a + 1, a + 1) = 1;
      } else {
        h(a, a) = 1;
        h(a + 1, a + 1) = mod_p(-smallest_nonsquare(p), p);
      }
      return FpQuadSpace(p, h);
    }
    case WittType::Odd:
      if (dim % 2 == 0) throw PreconditionError("model_space: odd type needs odd dimension");
      if (mod_p(odd_coefficient, p) == 0) throw PreconditionError("model_space: coefficient must be a unit");
      for (std::size_t i = 0; i < m; ++i) h(2 * i, 2 * i + 1) = 1;
      h(dim - 1, dim - 1) = mod_p(odd_coefficient, p);
      return FpQuadSpace(p, h);
  }
  throw PreconditionError("model_space: unknown type");
}

}  // namespace qlat
