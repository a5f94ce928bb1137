#include <doctest.h>

#include <random>

#include "qlat/errors.hpp"
#include "qlat/fp_quadratic.hpp"

using namespace qlat;

namespace {

FpQuadSpace diagonal(std::int64_t p, const std::vector<std::int64_t>& d) {
  FpMatrix h(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) h(i, i) = d[i];
  return FpQuadSpace(p, h);
}

FpMatrix product(const std::vector<FpMatrix>& ms, std::int64_t p) {
  FpMatrix out = FpMatrix::identity(ms.front().rows());
  for (const auto& m : ms) out = mul(out, m, p);
  return out;
}

}  // namespace

TEST_CASE("radicals") {
  CHECK(radicals(hyperbolic_space(2, 3)).bilinear.empty());
  Radicals r = radicals(diagonal(2, {1}));
  CHECK(r.bilinear.size() == 1);
  CHECK(r.isotropic.empty());
  CHECK(is_nondegenerate(diagonal(2, {1})));
  CHECK_FALSE(is_bilinear_nondegenerate(diagonal(2, {1})));
  Radicals h2 = radicals(hyperbolic_space(1, 2));
  CHECK(h2.bilinear.empty());
  CHECK(h2.isotropic.empty());
  CHECK_FALSE(is_nondegenerate(diagonal(3, {1, 0})));
}

TEST_CASE("isotropic vectors") {
  CHECK(find_isotropic_vector(hyperbolic_space(1, 5)) == FpVector{1, 0});
  CHECK_FALSE(find_isotropic_vector(diagonal(3, {1, 1})));
  CHECK(find_isotropic_vector(diagonal(3, {1, 1, 1})) == FpVector{1, 1, 1});
}

TEST_CASE("Witt decompositions and types") {
  WittDecomposition hh = witt_decomposition(hyperbolic_space(2, 3));
  CHECK(hh.hyperbolic_pairs.size() == 2);
  CHECK(hh.anisotropic_kernel.empty());
  WittDecomposition d3 = witt_decomposition(diagonal(3, {1, 1, 1}));
  CHECK(d3.hyperbolic_pairs.size() == 1);
  CHECK(d3.anisotropic_kernel.size() == 1);
  WittDecomposition x2 = witt_decomposition(diagonal(2, {1}));
  CHECK(x2.hyperbolic_pairs.empty());
  CHECK(x2.radical.size() == 1);
  CHECK(witt_type(hyperbolic_space(2, 5)) == WittType::Split);
  CHECK(witt_type(diagonal(3, {1, 1})) == WittType::NonSplit);
  CHECK(witt_type(diagonal(5, {1, 4})) == WittType::Split);
  CHECK(witt_type(model_space(4, WittType::NonSplit, 2)) == WittType::NonSplit);
}

TEST_CASE("isotropic line enumeration") {
  auto h = enumerate_isotropic_lines(hyperbolic_space(1, 3));
  REQUIRE(h.size() == 2);
  CHECK(h[0].generator == FpVector{0, 1});
  CHECK(h[1].generator == FpVector{1, 0});
  for (std::int64_t p : {2, 3, 5}) CHECK(enumerate_isotropic_lines(hyperbolic_space(2, p)).size() == std::size_t((p + 1) * (p + 1)));
  CHECK(enumerate_isotropic_lines(diagonal(3, {1, 1, 1})).size() == 4);
  CHECK_THROWS_AS(enumerate_isotropic_lines(hyperbolic_space(3, 5), 100), GuardExceeded);

  // Closed forms, frozen: split 6 over F_2 has 35 lines, non-split 6 over F_3 has 112.
  CHECK(isotropic_line_count(6, WittType::Split, 2) == 35);
  CHECK(isotropic_line_count(6, WittType::NonSplit, 3) == 112);
  CHECK(isotropic_line_count(5, WittType::Odd, 3) == 40);
  CHECK(enumerate_isotropic_lines(model_space(6, WittType::NonSplit, 3)).size() == 112);
}

TEST_CASE("reflections and transvections") {
  FpQuadSpace h = hyperbolic_space(1, 3);
  FpIsometry t = reflection(h, {1, 1});
  CHECK(t.apply({1, 0}) == FpVector{0, 2});
  CHECK(determinant(t.matrix, 3) == 2);
  CHECK(is_isometry(h, t.matrix));
  CHECK_THROWS_AS(reflection(h, {1, 0}), PreconditionError);

  FpQuadSpace hh = hyperbolic_space(2, 3);
  FpIsometry e = eichler_transvection(hh, {1, 0, 0, 0}, {0, 0, 1, 0});
  CHECK(e.apply({1, 0, 0, 0}) == FpVector{1, 0, 0, 0});
  CHECK(in_special_orthogonal(hh, e.matrix));
  FpMatrix two = mul(reflection(hh, {1, 1, 0, 0}).matrix, reflection(hh, {0, 0, 1, 2}).matrix, 3);
  CHECK(in_special_orthogonal(hh, two));
}

TEST_CASE("Witt extension") {
  FpQuadSpace hh = hyperbolic_space(2, 3);
  SUBCASE("identity assignment") {
    FpIsometry g = witt_extension(hh, {{1, 0, 0, 0}}, {{1, 0, 0, 0}});
    CHECK(g.matrix == FpMatrix::identity(4));
  }
  SUBCASE("e1 to e2") {
    FpIsometry g = witt_extension(hh, {{1, 0, 0, 0}}, {{0, 0, 1, 0}});
    CHECK(g.apply({1, 0, 0, 0}) == FpVector{0, 0, 1, 0});
    CHECK(is_isometry(hh, g.matrix));
    CHECK(in_special_orthogonal(hh, g.matrix));
  }
  SUBCASE("characteristic two, Q(u) = 1") {
    FpQuadSpace v = hyperbolic_space(2, 2);
    FpIsometry g = witt_extension(v, {{1, 1, 0, 0}}, {{0, 0, 1, 1}});
    CHECK(g.apply({1, 1, 0, 0}) == FpVector{0, 0, 1, 1});
    CHECK(in_special_orthogonal(v, g.matrix));
  }
  SUBCASE("half-dimensional totally singular planes in opposite rulings") {
    // <e1, e2> and <e1, f2> lie in different families of planes, and every
    // isometry of the quadric exchanging the families has determinant -1.
    CHECK_THROWS_AS(witt_extension(hh, {{1, 0, 0, 0}, {0, 0, 1, 0}}, {{1, 0, 0, 0}, {0, 0, 0, 1}}), NotFound);
  }
  SUBCASE("inconsistent assignment") {
    CHECK_THROWS_AS(witt_extension(hh, {{1, 0, 0, 0}}, {{1, 1, 0, 0}}), PreconditionError);
  }
}

TEST_CASE("spinor norms") {
  FpQuadSpace h = hyperbolic_space(1, 3);
  CHECK(spinor_norm(h, FpMatrix::identity(2)) == 1);
  CHECK(spinor_norm(h, reflection(h, {1, 1}).matrix) == 1);
  CHECK(spinor_norm(h, reflection(h, {1, 2}).matrix) == 2);
  FpMatrix minus_id = mul(reflection(h, {1, 1}).matrix, reflection(h, {1, 2}).matrix, 3);
  CHECK(minus_id(0, 0) == 2);
  CHECK(minus_id(1, 1) == 2);
  CHECK(minus_id(0, 1) == 0);
  CHECK(spinor_norm(h, minus_id) == 2);
  CHECK(spinor_norm_wall(h, minus_id) == 2);

  // Multiplicativity on random products of reflections, and agreement with
  // the Wall form.
  FpQuadSpace v = model_space(5, WittType::Odd, 5, 2);
  std::mt19937_64 rng(7);
  auto random_element = [&] {
    std::vector<FpMatrix> factors;
    while (factors.size() < 1 + rng() % 5) {
      FpVector x(5);
      for (auto& c : x) c = static_cast<std::int64_t>(rng() % 5);
      if (v.quad_value(x) != 0) factors.push_back(reflection(v, x).matrix);
    }
    return product(factors, 5);
  };
  for (int i = 0; i < 100; ++i) {
    FpMatrix g = random_element(), k = random_element();
    std::int64_t a = spinor_norm(v, g), b = spinor_norm(v, k);
    std::int64_t expected = is_square_mod(a * b, 5) ? 1 : smallest_nonsquare(5);
    CHECK(spinor_norm(v, mul(g, k, 5)) == expected);
    CHECK(spinor_norm_wall(v, g) == a);
  }
}

TEST_CASE("stabilizer orbits") {
  FpQuadSpace v = hyperbolic_space(3, 2);
  std::vector<FpVector> w{{1, 1, 0, 0, 0, 0}};
  ProjLine seed{{0, 0, 1, 0, 0, 0}};
  OrbitResult one = stabilizer_orbit(v, w, seed, {seed});
  CHECK(one.orbit == std::vector<ProjLine>{seed});
  CHECK_THROWS_AS(stabilizer_orbit(v, w, ProjLine{{1, 1, 0, 0, 0, 0}}, {}), PreconditionError);
}

TEST_CASE("orthogonal group orders") {
  CHECK(so_order(hyperbolic_space(1, 3)) == 2);
  CHECK(so_order(diagonal(3, {1, 1, 1})) == 24);
  CHECK(so_order(diagonal(3, {1, 1})) == 4);
  CHECK(so_order(hyperbolic_space(2, 3)) == 576);
  CHECK(so_order_exhaustive(hyperbolic_space(2, 3)) == 576);
  CHECK(so_order_exhaustive(diagonal(3, {1, 1, 1})) == 24);
  CHECK(so_order_exhaustive(model_space(4, WittType::NonSplit, 2)) == so_order(model_space(4, WittType::NonSplit, 2)));
  CHECK_THROWS_AS(so_order(diagonal(3, {1, 0})), PreconditionError);
}

TEST_CASE("spinor witnesses") {
  FpQuadSpace v = hyperbolic_space(2, 5);
  std::vector<FpVector> w{{1, 0, 0, 0}};
  auto g = find_spinor_witness(v, w);
  REQUIRE(g);
  CHECK(g->apply(w[0]) == w[0]);
  CHECK(in_special_orthogonal(v, g->matrix));
  CHECK(spinor_norm(v, g->matrix) == smallest_nonsquare(5));
}
