#include "qlat/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qlat/deformation_tori.hpp"
#include "qlat/errors.hpp"
#include "qlat/exact_linalg.hpp"
#include "qlat/hecke_k3.hpp"
#include "qlat/padic_lattice.hpp"

namespace qlat {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string suite) { report_.suite = std::move(suite); }

  void pass() { ++report_.instances; }
  void fail(std::string input, std::string expected, std::string actual) {
    ++report_.instances;
    ++report_.failures;
    failures_.push_back({std::move(input), std::move(expected), std::move(actual)});
  }
  void check(bool ok, const std::string& input, const std::string& expected, const std::string& actual) {
    if (ok)
      pass();
    else
      fail(input, expected, actual);
  }
  void skip() { ++report_.skipped; }

  VerifyReport finish(std::size_t max_details) {
    std::sort(failures_.begin(), failures_.end(), [](const VerifyDetail& a, const VerifyDetail& b) {
      return std::tie(a.input, a.expected, a.actual) < std::tie(b.input, b.expected, b.actual);
    });
    if (failures_.size() > max_details) failures_.resize(max_details);
    report_.details = std::move(failures_);
    return report_;
  }

 private:
  VerifyReport report_;
  std::vector<VerifyDetail> failures_;
};

std::vector<std::int64_t> primes(const VerifyOptions& opts, std::vector<std::int64_t> defaults) {
  if (opts.p) return {*opts.p};
  return defaults;
}

std::string hyperbolic_name(std::size_t m) {
  std::string s;
  for (std::size_t i = 0; i < m; ++i) s += (i ? "+H" : "H");
  return s;
}

QuadLattice hyperbolic_sum(std::size_t m) { return orthogonal_sum(std::vector<QuadLattice>(m, hyperbolic_plane())); }

std::string join(const std::vector<FpVector>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + to_string(vs[i]);
  return s + "]";
}

// Primitive vectors with entries in {-1, 0, 1}, first nonzero entry 1, and
// Q in {+-1, +-2, +-3}.
std::vector<IntVector> box_vectors(const QuadLattice& n) {
  const std::size_t r = n.rank();
  std::vector<IntVector> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= 3;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    IntVector v(r);
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < r; ++i, t /= 3) v[i] = static_cast<long>(t % 3) - 1;
    std::size_t k = 0;
    while (k < r && v[k] == 0) ++k;
    if (k == r || v[k] < 0) continue;
    Integer q = n.quad_value(v);
    if (q == 0 || abs(q) > 3) continue;
    out.push_back(std::move(v));
  }
  return out;
}

// All k-dimensional subspaces of F_p^n, as reduced echelon bases.
void for_each_subspace(std::size_t n, std::size_t k, std::int64_t p,
                       const std::function<void(const std::vector<FpVector>&)>& visit) {
  std::vector<std::size_t> pivots(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t start) {
    if (i == k) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t row = 0; row < k; ++row)
        for (std::size_t col = pivots[row] + 1; col < n; ++col)
          if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free.emplace_back(row, col);
      std::vector<FpVector> basis(k, FpVector(n, 0));
      std::function<void(std::size_t)> fill = [&](std::size_t f) {
        if (f == free.size()) {
          visit(basis);
          return;
        }
        for (std::int64_t x = 0; x < p; ++x) {
          basis[free[f].first][free[f].second] = x;
          fill(f + 1);
        }
        basis[free[f].first][free[f].second] = 0;
      };
      for (std::size_t row = 0; row < k; ++row) basis[row][pivots[row]] = 1;
      fill(0);
      return;
    }
    for (std::size_t c = start; c + (k - i) <= n; ++c) {
      pivots[i] = c;
      choose(i + 1, c + 1);
    }
  };
  choose(0, 0);
}

std::uint64_t subspace_count(std::size_t n, std::size_t k, std::int64_t p) {
  std::uint64_t count = 0;
  for_each_subspace(n, k, p, [&](const std::vector<FpVector>&) { ++count; });
  return count;
}

struct NamedSpace {
  std::string name;
  FpQuadSpace space;
};

// One representative of each isometry class of spaces with det B != 0 (for
// p = 2 these exist only in even dimension).
std::vector<NamedSpace> model_classes(std::size_t dim, std::int64_t p) {
  std::vector<NamedSpace> out;
  if (dim % 2 == 0) {
    out.push_back({"split" + std::to_string(dim), model_space(dim, WittType::Split, p)});
    out.push_back({"nonsplit" + std::to_string(dim), model_space(dim, WittType::NonSplit, p)});
  } else if (p != 2) {
    out.push_back({"odd" + std::to_string(dim) + "/1", model_space(dim, WittType::Odd, p, 1)});
    const std::int64_t eps = smallest_nonsquare(p);
    out.push_back({"odd" + std::to_string(dim) + "/" + std::to_string(eps), model_space(dim, WittType::Odd, p, eps)});
  }
  return out;
}

std::vector<FpVector> all_vectors(std::size_t dim, std::int64_t p) {
  std::uint64_t total = *bounded_power(p, dim, ~0ULL);
  std::vector<FpVector> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(vector_from_index(i, dim, p));
  return out;
}

bool is_totally_singular(const FpQuadSpace& v, const std::vector<FpVector>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (v.quad_value(basis[i]) != 0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (v.bilinear_value(basis[i], basis[j]) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

VerifyReport neighbor_bijection(const VerifyOptions& opts) {
  Recorder rec("neighbor-bijection");
  const std::size_t max_rank = opts.max_rank.value_or(6);
  for (std::size_t m = 1; 2 * m <= max_rank; ++m) {
    const QuadLattice n = hyperbolic_sum(m);
    for (std::int64_t p : primes(opts, {2, 3, 5})) {
      const std::string tag = "N=" + hyperbolic_name(m) + " p=" + std::to_string(p);
      const FpQuadSpace v = reduction(n, p);

      // Brute force over every projective point.
      std::vector<ProjLine> brute;
      for (const FpVector& x : all_vectors(2 * m, p)) {
        if (is_zero(x)) continue;
        std::size_t k = 0;
        while (x[k] == 0) ++k;
        if (x[k] != 1) continue;
        if (v.quad_value(x) == 0 && !is_zero(v.pairing_vector(x))) brute.push_back(ProjLine{x});
      }
      std::sort(brute.begin(), brute.end());

      const std::vector<ProjLine> lines = smooth_isotropic_lines(n, p, opts.max_points);
      const std::vector<PLattice> nbs = enumerate_neighbors(n, p, opts.max_points);
      std::set<PLattice> distinct(nbs.begin(), nbs.end());
      rec.check(nbs.size() == brute.size() && lines == brute && distinct.size() == nbs.size(), tag + " count",
                std::to_string(brute.size()) + " distinct neighbors",
                std::to_string(nbs.size()) + " neighbors, " + std::to_string(distinct.size()) + " distinct");

      const PLattice base(n, p, 0, IntMatrix::identity(n.rank()));
      for (std::size_t i = 0; i < nbs.size() && i < lines.size(); ++i) {
        const PLattice& l = nbs[i];
        std::vector<std::string> bad;
        if (!l.is_self_dual()) bad.push_back("not self-dual");
        if (l.indices() != std::make_pair(Integer(p), Integer(p))) bad.push_back("indices");
        const ProjLine back = line_from_lattice(l);
        if (!(back == lines[i])) bad.push_back("line->lattice->line");
        if (!(lattice_from_line(n, p, back) == l)) bad.push_back("lattice->line->lattice");
        if (!(lattice_from_line_direct(n, p, lines[i]) == l)) bad.push_back("direct formula");
        LambdaSplitting s = splitting_from_line(n, p, lines[i], default_precision(), opts.seed + 1);
        if (!(lattice_from_splitting(n, p, s) == l)) bad.push_back("splitting dependence");
        if (l == base) bad.push_back("equals N");
        std::string actual;
        for (const auto& b : bad) actual += (actual.empty() ? "" : ", ") + b;
        rec.check(bad.empty(), tag + " line=" + to_string(lines[i].generator), "round trips are identities",
                  actual);
      }
    }
  }
  return rec.finish(opts.max_details);
}

// Instances of the shrink suites: N = H^m with 2 + 3 <= 2m, rank one W from the box, W~ = pW.
struct ShrinkInstance {
  std::string tag;
  QuadLattice n;
  std::int64_t p;
  IntMatrix w, w_tilde;
  const std::vector<PLattice>* neighbors;
};

void for_each_shrink_instance(const VerifyOptions& opts, const std::function<void(const ShrinkInstance&)>& visit) {
  const std::size_t max_rank = opts.max_rank.value_or(6);
  for (std::size_t m = 3; 2 * m <= max_rank; ++m) {
    const QuadLattice n = hyperbolic_sum(m);
    const std::vector<IntVector> box = box_vectors(n);
    for (std::int64_t p : primes(opts, {2, 3})) {
      const std::vector<PLattice> nbs = enumerate_neighbors(n, p, opts.max_points);
      for (const IntVector& v : box) {
        IntMatrix w = IntMatrix::from_columns(n.rank(), {v});
        ShrinkInstance inst{"N=" + hyperbolic_name(m) + " p=" + std::to_string(p) + " W=" + to_string(v), n, p, w,
                            Integer(p) * w, &nbs};
        visit(inst);
      }
    }
  }
}

VerifyReport nice_cochar(const VerifyOptions& opts) {
  Recorder rec("nice-cochar");
  for_each_shrink_instance(opts, [&](const ShrinkInstance& in) {
    std::vector<PLattice> typed = shrink_set(in.n, in.p, in.w, in.w_tilde);
    std::vector<PLattice> brute;
    for (const PLattice& l : *in.neighbors)
      if (meets_span_in(l, in.w, in.w_tilde)) brute.push_back(l);
    std::set<PLattice> a(typed.begin(), typed.end()), b(brute.begin(), brute.end());
    rec.check(a == b && a.size() == typed.size() && !a.empty(), in.tag,
              "brute-force set of size " + std::to_string(b.size()),
              "typed-line set of size " + std::to_string(a.size()) + (a == b ? "" : " (different)"));
  });
  return rec.finish(opts.max_details);
}

VerifyReport unique_growth(const VerifyOptions& opts) {
  Recorder rec("unique-growth");
  for_each_shrink_instance(opts, [&](const ShrinkInstance& in) {
    const PLattice base(in.n, in.p, 0, IntMatrix::identity(in.n.rank()));
    std::vector<PLattice> fiber = shrink_set(in.n, in.p, in.w, in.w_tilde);
    if (fiber.empty()) rec.fail(in.tag, "nonempty fiber", "empty fiber");
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      const std::string tag = in.tag + " member=" + std::to_string(i);
      try {
        Recovery r = recover_lattice(fiber[i], in.w);
        rec.check(r.survivors == 1 && r.lattice == base, tag, "one survivor equal to N",
                  std::to_string(r.survivors) + " survivors" + (r.lattice == base ? "" : ", not N"));
      } catch (const InvariantViolation& e) {
        rec.fail(tag, "one survivor equal to N", e.what());
      }
    }
  });
  return rec.finish(opts.max_details);
}

VerifyReport transitivity(const VerifyOptions& opts) {
  Recorder rec("transitivity");
  std::mt19937_64 rng(opts.seed);
  for_each_shrink_instance(opts, [&](const ShrinkInstance& in) {
    const FpQuadSpace v = reduction(in.n, in.p);
    const IntMatrix u = typing_hyperplane(in.w, in.w_tilde, in.p);
    const std::vector<ProjLine> universe = w_generic_lines(in.n, in.p, in.w, u, opts.max_points);
    if (universe.empty()) {
      rec.fail(in.tag, "nonempty typed-line set", "empty");
      return;
    }
    std::vector<FpVector> wbar;
    for (std::size_t j = 0; j < in.w.cols(); ++j) {
      FpVector x(in.w.rows());
      for (std::size_t i = 0; i < in.w.rows(); ++i) x[i] = mod_p(in.w(i, j).get_si(), in.p);
      wbar.push_back(x);
    }
    const ProjLine& seed = universe[rng() % universe.size()];
    OrbitResult orbit = stabilizer_orbit(v, wbar, seed, universe, opts.max_group);
    rec.check(orbit.orbit.size() == universe.size(), in.tag + " seed=" + to_string(seed.generator),
              "orbit of size " + std::to_string(universe.size()), "orbit of size " + std::to_string(orbit.orbit.size()));
  });
  return rec.finish(opts.max_details);
}

VerifyReport witt_extension_suite(const VerifyOptions& opts) {
  Recorder rec("witt-extension");
  const std::size_t max_rank = opts.max_rank.value_or(4);
  for (std::int64_t p : primes(opts, {2, 3})) {
    for (std::size_t dim = 3; dim <= max_rank; ++dim) {
      const std::vector<FpVector> vecs = all_vectors(dim, p);
      for (const NamedSpace& model : model_classes(dim, p)) {
        const FpQuadSpace& v = model.space;
        for (std::size_t k = 1; k + 2 <= dim; ++k) {
          for_each_subspace(dim, k, p, [&](const std::vector<FpVector>& domain) {
            // Every k-tuple of independent vectors with the same values of Q and [.,.].
            std::vector<FpVector> images;
            std::function<void()> extend = [&] {
              const std::size_t j = images.size();
              if (j == k) {
                const std::string tag = "p=" + std::to_string(p) + " V=" + model.name + " W=" + join(domain) +
                                        " images=" + join(images);
                try {
                  FpIsometry g = witt_extension(v, domain, images, {opts.seed, opts.max_group});
                  bool maps = true;
                  for (std::size_t i = 0; i < k; ++i) maps = maps && g.apply(domain[i]) == images[i];
                  const bool ok = maps && is_isometry(v, g.matrix) && in_special_orthogonal(v, g.matrix);
                  rec.check(ok, tag, "SO element extending the isometry", "returned element fails verification");
                } catch (const NotFound& e) {
                  std::string actual = e.what();
                  if (2 * k == dim && is_totally_singular(v, domain)) actual += " (domain is a maximal totally singular subspace)";
                  rec.fail(tag, "SO element extending the isometry", actual);
                }
                return;
              }
              for (const FpVector& x : vecs) {
                if (v.quad_value(x) != v.quad_value(domain[j])) continue;
                bool ok = true;
                for (std::size_t i = 0; i < j && ok; ++i) ok = v.bilinear_value(x, images[i]) == v.bilinear_value(domain[j], domain[i]);
                if (!ok) continue;
                images.push_back(x);
                if (rank(images, dim, p) == images.size()) extend();
                images.pop_back();
              }
            };
            extend();
          });
        }
      }
    }
  }
  return rec.finish(opts.max_details);
}

VerifyReport cokernel_m_suite(const VerifyOptions& opts) {
  Recorder rec("cokernel-m");
  std::mt19937_64 rng(opts.seed);
  const std::size_t max_b = opts.max_rank ? (*opts.max_rank >= 2 ? std::min<std::size_t>(*opts.max_rank - 2, 8) : 0) : 8;
  const std::vector<std::int64_t> ps = primes(opts, {2, 3, 5});
  for (int instance = 0; instance < 200; ++instance) {
    const std::int64_t p = ps[rng() % ps.size()];
    const std::size_t b = rng() % (max_b + 1);
    const std::size_t n = b + 2;
    IntMatrix w;
    for (;;) {
      const std::size_t r = 1 + rng() % n;
      w = IntMatrix(n, r);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j) w(i, j) = static_cast<long>(rng() % 5) - 2;
      Integer g = 0;
      for (std::size_t j = 0; j < r; ++j) g = gcd(g, w(n - 1, j));
      if (g == 1 && rank(w) == r && saturate(n, w).is_direct_summand) break;
    }
    std::ostringstream tag;
    tag << "p=" << p << " b=" << b << " W=" << w.to_string();
    CokernelM c = cokernel_m(CharLattice::split(1, b, 1), w, p);
    std::ostringstream actual;
    actual << "inj1_index=" << c.inj1_index << " iso2=" << (c.iso2 ? "true" : "false")
           << " injective=" << (c.inj1_injective ? "true" : "false");
    rec.check(c.inj1_index == p && c.iso2 && c.inj1_injective, tag.str(),
              "inj1_index=" + std::to_string(p) + " iso2=true injective=true", actual.str());
  }
  return rec.finish(opts.max_details);
}

VerifyReport k3_degree(const VerifyOptions& opts) {
  Recorder rec("k3-degree");
  const Signature sig_u = signature(k3_lattice());
  for (std::int64_t p : primes(opts, {2, 3})) {
    for (long d = 1; d <= 5; ++d) {
      const std::string tag = "d=" + std::to_string(d) + " p=" + std::to_string(p);
      PolarizedK3Lattice k = k3_isogeny(Integer(d), p);
      const Integer pp(p);
      std::vector<std::string> bad;
      if (abs(k.lattice.determinant()) != 1) bad.push_back("not unimodular");
      if (!is_even(k.lattice)) bad.push_back("not even");
      if (!(signature(k.lattice) == sig_u)) bad.push_back("signature");
      if (k.degree() != pp * pp * d) bad.push_back("Q(xi)=" + k.degree().get_str());
      if (content(k.xi) != 1) bad.push_back("xi not primitive");
      Sublattice perp = orthogonal_complement(k.lattice, IntMatrix::from_columns(22, {k.xi}));
      AbelianQuotient disc = discriminant_group(perp.lattice());
      const Integer order = 2 * pp * pp * d;
      if (!(disc.free_rank == 0 && disc.torsion.size() == 1 && disc.torsion[0] == order))
        bad.push_back("disc(xi-perp)=" + to_string(disc.torsion));
      if (isogeny_step(k, p).degree() != pp * pp * pp * pp * d) bad.push_back("composition degree");
      std::string actual;
      for (const auto& b : bad) actual += (actual.empty() ? "" : ", ") + b;
      rec.check(bad.empty(), tag, "unimodular even lattice, Q(xi)=" + Integer(pp * pp * d).get_str() + ", disc Z/" + order.get_str(),
                actual);
    }
  }
  return rec.finish(opts.max_details);
}

VerifyReport lang_counts(const VerifyOptions& opts) {
  Recorder rec("lang-counts");
  const std::size_t max_rank = opts.max_rank.value_or(6);
  for (std::size_t m = 1; 2 * m <= max_rank; ++m) {
    const QuadLattice n = hyperbolic_sum(m);
    const std::vector<IntVector> box = box_vectors(n);
    for (std::int64_t p : primes(opts, {2, 3})) {
      const std::vector<FpVector> lifts = isotropic_vectors_mod_p2(n, p);
      const IntMatrix u(n.rank(), 0);
      for (const IntVector& v : box) {
        const std::string tag = "N=" + hyperbolic_name(m) + " p=" + std::to_string(p) + " W=" + to_string(v);
        const IntMatrix w = IntMatrix::from_columns(n.rank(), {v});
        const Integer lines(static_cast<unsigned long>(w_generic_lines(n, p, w, u, opts.max_points).size()));
        Integer scale_factor;
        mpz_ui_pow_ui(scale_factor.get_mpz_t(), static_cast<unsigned long>(p), n.rank() - 2);
        const Integer expected = lines * scale_factor;
        const Integer actual = typed_line_count_mod_p2(n, p, w, u, lifts);
        rec.check(expected == actual, tag, expected.get_str(), actual.get_str());
      }
    }
  }
  return rec.finish(opts.max_details);
}

VerifyReport spinor_surjectivity(const VerifyOptions& opts) {
  Recorder rec("spinor-surjectivity");
  const std::size_t max_rank = opts.max_rank.value_or(6);
  std::mt19937_64 rng(opts.seed);
  for (std::int64_t p : primes(opts, {3, 5, 7})) {
    if (p == 2) throw PreconditionError("spinor-surjectivity: p must be odd");
    for (std::size_t dim = 3; dim <= max_rank; ++dim) {
      for (const NamedSpace& model : model_classes(dim, p)) {
        const FpQuadSpace& v = model.space;
        for (std::size_t k = 1; k + 3 <= dim; ++k) {
          // Small families are enumerated; large ones are sampled.
          std::vector<std::vector<FpVector>> subspaces;
          if (subspace_count(dim, k, p) <= 400) {
            for_each_subspace(dim, k, p, [&](const std::vector<FpVector>& b) { subspaces.push_back(b); });
          } else {
            std::set<std::vector<FpVector>> seen;
            while (seen.size() < 60) {
              std::vector<FpVector> gens(k, FpVector(dim));
              for (auto& g : gens)
                for (auto& x : g) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
              if (rank(gens, dim, p) == k) seen.insert(canonical_basis(gens, dim, p));
            }
            subspaces.assign(seen.begin(), seen.end());
          }
          for (const auto& w : subspaces) {
            // W-perp modulo its radical must have dimension at least 2.
            std::vector<FpVector> gram_rows;
            for (const auto& a : w) {
              FpVector row;
              for (const auto& b : w) row.push_back(v.bilinear_value(a, b));
              gram_rows.push_back(row);
            }
            const std::size_t radical_dim = k - rank(gram_rows, k, p);
            if (dim - k - radical_dim < 2) {
              rec.skip();
              continue;
            }
            const std::string tag = "p=" + std::to_string(p) + " V=" + model.name + " W=" + join(w);
            std::optional<FpIsometry> g = find_spinor_witness(v, w, opts.max_points);
            if (!g) {
              rec.fail(tag, "element of nontrivial spinor norm fixing W", "none found");
              continue;
            }
            bool fixes = true;
            for (const auto& x : w) fixes = fixes && g->apply(x) == x;
            const bool ok = fixes && is_isometry(v, g->matrix) && in_special_orthogonal(v, g->matrix) &&
                            spinor_norm(v, g->matrix) != 1 && spinor_norm_wall(v, g->matrix) != 1;
            rec.check(ok, tag, "element of nontrivial spinor norm fixing W", "witness fails verification");
          }
        }
      }
    }
  }
  return rec.finish(opts.max_details);
}

VerifyReport quadric_counts(const VerifyOptions& opts) {
  Recorder rec("quadric-counts");
  const std::size_t max_rank = opts.max_rank.value_or(6);
  std::mt19937_64 rng(opts.seed);
  for (std::int64_t p : primes(opts, {2, 3, 5})) {
    for (std::size_t dim = 1; dim <= max_rank; ++dim) {
      std::vector<NamedSpace> spaces = model_classes(dim, p);
      if (p == 2 && dim % 2 == 1) spaces.push_back({"odd" + std::to_string(dim), model_space(dim, WittType::Odd, p)});
      for (int attempt = 0, found = 0; found < 4 && attempt < 200; ++attempt) {
        FpMatrix h(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = i; j < dim; ++j) h(i, j) = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        FpQuadSpace v(p, h);
        if (!is_nondegenerate(v)) continue;
        spaces.push_back({"random" + std::to_string(found++) + ":" + h.to_string(), v});
      }
      for (const NamedSpace& s : spaces) {
        const std::string tag = "p=" + std::to_string(p) + " dim=" + std::to_string(dim) + " V=" + s.name;
        const WittType t = witt_type(s.space);
        const Integer expected = isotropic_line_count(dim, t, p);
        const Integer actual(static_cast<unsigned long>(enumerate_isotropic_lines(s.space, opts.max_points).size()));
        rec.check(expected == actual, tag, expected.get_str() + " (" + to_string(t) + ")", actual.get_str());
      }
    }
  }
  return rec.finish(opts.max_details);
}

using SuiteFn = VerifyReport (*)(const VerifyOptions&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"neighbor-bijection", neighbor_bijection},   {"nice-cochar", nice_cochar},
      {"unique-growth", unique_growth},             {"witt-extension", witt_extension_suite},
      {"cokernel-m", cokernel_m_suite},             {"k3-degree", k3_degree},
      {"lang-counts", lang_counts},                 {"transitivity", transitivity},
      {"spinor-surjectivity", spinor_surjectivity}, {"quadric-counts", quadric_counts},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "neighbor-bijection", "nice-cochar",         "unique-growth", "witt-extension", "cokernel-m",
      "k3-degree",          "lang-counts",         "transitivity",  "spinor-surjectivity", "quadric-counts",
  };
  return names;
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& opts) {
  auto it = suites().find(name);
  if (it == suites().end()) throw PreconditionError("unknown verification suite '" + name + "'");
  return it->second(opts);
}

Json report_to_json(const VerifyReport& r) {
  Json out;
  out["suite"] = r.suite;
  out["instances"] = r.instances;
  out["failures"] = r.failures;
  out["skipped"] = r.skipped;
  Json details = Json::array();
  for (const auto& d : r.details) details.push_back({{"input", d.input}, {"expected", d.expected}, {"actual", d.actual}});
  out["details"] = details;
  return out;
}

}  // namespace qlat
