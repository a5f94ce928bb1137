#include "qlat/quad_lattice.hpp"

#include <array>
#include <sstream>
#include <utility>

#include "qlat/errors.hpp"

namespace qlat {

QuadLattice::QuadLattice(const IntMatrix& half_gram) {
  if (!half_gram.is_square()) throw PreconditionError("QuadLattice: half-Gram matrix must be square");
  const std::size_t n = half_gram.rows();
  half_gram_ = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i <= j)
        half_gram_(i, j) += half_gram(i, j);
      else
        half_gram_(j, i) += half_gram(i, j);
    }
}

QuadLattice QuadLattice::from_gram(const IntMatrix& gram) {
  if (!gram.is_square()) throw PreconditionError("from_gram: Gram matrix must be square");
  const std::size_t n = gram.rows();
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!mpz_even_p(gram(i, i).get_mpz_t()))
      throw PreconditionError("from_gram: diagonal entries of an integral quadratic form's Gram must be even");
    h(i, i) = gram(i, i) / 2;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram(i, j) != gram(j, i)) throw PreconditionError("from_gram: Gram matrix must be symmetric");
      h(i, j) = gram(i, j);
    }
  }
  return QuadLattice(h);
}

IntMatrix QuadLattice::gram() const { return half_gram_ + half_gram_.transpose(); }

Integer QuadLattice::quad_value(const IntVector& x) const {
  if (x.size() != rank()) throw PreconditionError("quad_value: vector length does not match the rank");
  Integer s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = i; j < rank(); ++j) row += half_gram_(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

Integer QuadLattice::bilinear_value(const IntVector& x, const IntVector& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw PreconditionError("bilinear_value: vector length does not match the rank");
  Integer s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = i; j < rank(); ++j) {
      const Integer& h = half_gram_(i, j);
      if (h == 0) continue;
      s += h * (x[i] * y[j] + x[j] * y[i]);
    }
  return s;
}

QuadLattice QuadLattice::restrict_to(const IntMatrix& basis) const {
  if (basis.rows() != rank()) throw PreconditionError("restrict_to: basis has the wrong number of rows");
  const std::size_t r = basis.cols();
  std::vector<IntVector> cols;
  cols.reserve(r);
  for (std::size_t j = 0; j < r; ++j) cols.push_back(basis.column(j));
  IntMatrix h(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    h(i, i) = quad_value(cols[i]);
    for (std::size_t j = i + 1; j < r; ++j) h(i, j) = bilinear_value(cols[i], cols[j]);
  }
  return QuadLattice(h);
}

bool is_self_dual_at(const QuadLattice& l, const Integer& p) {
  Integer d = l.determinant();
  return !mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t());
}

Signature signature(const QuadLattice& l) {
  const std::size_t n = l.rank();
  IntMatrix g = l.gram();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  auto add_index = [&](std::size_t k, std::size_t j) {  // e_k <- e_k + e_j
    for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
    for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
  };

  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) throw PreconditionError("signature: degenerate quadratic form");
        add_index(k, j);
      }
    }
    const mpq_class pivot = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / pivot;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= f * a[r][k];
    }
    if (pivot > 0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

Sublattice orthogonal_complement(const QuadLattice& l, const IntMatrix& sub_basis) {
  if (sub_basis.rows() != l.rank()) throw PreconditionError("orthogonal_complement: basis has the wrong number of rows");
  if (sub_basis.cols() == 0) return {l, IntMatrix::identity(l.rank())};
  IntMatrix pairing = sub_basis.transpose() * l.gram();
  IntMatrix k = integer_kernel(pairing);
  return {l, k.cols() == 0 ? k : hnf_basis(k)};
}

AbelianQuotient discriminant_group(const QuadLattice& l) {
  IntMatrix g = l.gram();
  if (g.determinant() == 0) throw PreconditionError("discriminant_group: degenerate quadratic form");
  return quotient_structure(l.rank(), g);
}

bool is_even(const QuadLattice& l) {
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (!mpz_even_p(g(i, i).get_mpz_t())) return false;
  return true;
}

bool is_positive_definite(const QuadLattice& l) {
  if (l.rank() == 0) return true;
  if (l.determinant() == 0) return false;
  return signature(l).positive == l.rank();
}

QuadLattice hyperbolic_plane() { return QuadLattice(IntMatrix{{0, 1}, {0, 0}}); }

QuadLattice e8_lattice() {
  // Cartan matrix of E8 (Bourbaki labelling), positive definite.
  IntMatrix h(8, 8);
  for (std::size_t i = 0; i < 8; ++i) h(i, i) = 1;
  const std::array<std::pair<int, int>, 7> edges{{{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}};
  for (auto [i, j] : edges) h(i, j) = -1;
  return QuadLattice(h);
}

QuadLattice rank_one(const Integer& m) {
  if (m == 0) throw PreconditionError("rank_one: the form value must be nonzero");
  IntMatrix h(1, 1);
  h(0, 0) = m;
  return QuadLattice(h);
}

QuadLattice orthogonal_sum(const QuadLattice& a, const QuadLattice& b) {
  return QuadLattice(direct_sum(a.half_gram(), b.half_gram()));
}

QuadLattice orthogonal_sum(const std::vector<QuadLattice>& parts) {
  IntMatrix h(0, 0);
  for (const auto& p : parts) h = direct_sum(h, p.half_gram());
  return QuadLattice(h);
}

QuadLattice rescale(const QuadLattice& l, const Integer& c) {
  if (c == 0) throw PreconditionError("rescale: the scale factor must be nonzero");
  return QuadLattice(c * l.half_gram());
}

QuadLattice k3_lattice() {
  QuadLattice h = hyperbolic_plane();
  QuadLattice e8 = e8_lattice();
  return orthogonal_sum({h, h, h, e8, e8});
}

namespace {

QuadLattice named_summand(const std::string& token) {
  auto at = token.find('@');
  if (at != std::string::npos) {
    Integer c;
    if (c.set_str(token.substr(at + 1), 10) != 0) throw PreconditionError("bad rescale factor in '" + token + "'");
    return rescale(named_summand(token.substr(0, at)), c);
  }
  if (token == "hyperbolic" || token == "H") return hyperbolic_plane();
  if (token == "e8" || token == "E8") return e8_lattice();
  if (token == "k3" || token == "K3") return k3_lattice();
  if (token.rfind("rank1:", 0) == 0) {
    Integer m;
    if (m.set_str(token.substr(6), 10) != 0) throw PreconditionError("bad rank-one value in '" + token + "'");
    return rank_one(m);
  }
  throw PreconditionError("unknown standard lattice '" + token + "'");
}

}  // namespace

QuadLattice standard_lattice(const std::string& name) {
  std::string normalized = name;
  const std::string perp = "\u22a5";
  for (auto pos = normalized.find(perp); pos != std::string::npos; pos = normalized.find(perp))
    normalized.replace(pos, perp.size(), "+");
  std::vector<QuadLattice> parts;
  std::stringstream ss(normalized);
  std::string token;
  while (std::getline(ss, token, '+')) {
    if (token.empty()) throw PreconditionError("empty summand in '" + name + "'");
    parts.push_back(named_summand(token));
  }
  if (parts.empty()) throw PreconditionError("empty lattice name");
  return orthogonal_sum(parts);
}

}  // namespace qlat
