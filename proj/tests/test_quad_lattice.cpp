#include <doctest.h>

#include "qlat/errors.hpp"
#include "qlat/quad_lattice.hpp"

using namespace qlat;

TEST_CASE("values on the hyperbolic plane") {
  QuadLattice h = hyperbolic_plane();
  IntVector e{Integer(1), Integer(0)}, f{Integer(0), Integer(1)};
  CHECK(h.quad_value(e) == 0);
  CHECK(h.quad_value(f) == 0);
  CHECK(h.bilinear_value(e, f) == 1);
  CHECK(h.quad_value(IntVector(2, Integer(0))) == 0);
  CHECK(h.quad_value(IntVector{Integer(2), Integer(3)}) == 6);
}

TEST_CASE("lower entries fold into the upper triangle") {
  QuadLattice a(IntMatrix{{1, 0}, {3, 2}});
  CHECK(a.half_gram() == IntMatrix({{1, 3}, {0, 2}}));
  CHECK(a.gram() == IntMatrix({{2, 3}, {3, 4}}));
  CHECK(QuadLattice::from_gram(IntMatrix{{2, 3}, {3, 4}}) == a);
  CHECK_THROWS_AS(QuadLattice::from_gram(IntMatrix{{1, 0}, {0, 2}}), PreconditionError);
}

TEST_CASE("self-duality") {
  for (long p : {2, 3, 5, 7}) {
    CHECK(is_self_dual_at(hyperbolic_plane(), p));
    CHECK(is_self_dual_at(e8_lattice(), p));
  }
  CHECK_FALSE(is_self_dual_at(rank_one(3), 2));
  CHECK_FALSE(is_self_dual_at(rank_one(3), 3));
  CHECK(is_self_dual_at(rank_one(3), 5));
}

TEST_CASE("signatures") {
  CHECK(signature(hyperbolic_plane()) == Signature{1, 1});
  CHECK(signature(e8_lattice()) == Signature{8, 0});
  CHECK(signature(k3_lattice()) == Signature{19, 3});
  CHECK(signature(rank_one(-4)) == Signature{0, 1});
  CHECK_THROWS_AS(signature(QuadLattice(IntMatrix(2, 2))), PreconditionError);
}

TEST_CASE("E8 and K3 invariants") {
  QuadLattice e8 = e8_lattice();
  CHECK(e8.determinant() == 1);
  CHECK(is_even(e8));
  CHECK(is_positive_definite(e8));
  CHECK(discriminant_group(e8).is_trivial());
  QuadLattice k3 = k3_lattice();
  CHECK(k3.rank() == 22);
  CHECK(abs(k3.determinant()) == 1);
  CHECK(discriminant_group(k3).is_trivial());
}

TEST_CASE("orthogonal complements") {
  QuadLattice hh = orthogonal_sum(hyperbolic_plane(), hyperbolic_plane());
  Sublattice c = orthogonal_complement(hh, IntMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}});
  CHECK(c.basis == IntMatrix({{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
  CHECK(c.lattice() == hyperbolic_plane());

  // <e - d f> in the K3 lattice, d = 1: rank 21, signature (19, 2).
  IntVector v(22, Integer(0));
  v[0] = 1;
  v[1] = -1;
  Sublattice l1 = orthogonal_complement(k3_lattice(), IntMatrix::from_columns(22, {v}));
  CHECK(l1.rank() == 21);
  CHECK(signature(l1.lattice()) == Signature{19, 2});

  v[1] = -2;
  Sublattice l2 = orthogonal_complement(k3_lattice(), IntMatrix::from_columns(22, {v}));
  CHECK(discriminant_group(l2.lattice()).torsion == IntVector{Integer(4)});
}

TEST_CASE("discriminant groups of rank one lattices") {
  for (long d : {1, 2, 3, 6}) CHECK(discriminant_group(rank_one(d)).torsion == IntVector{Integer(2 * d)});
  CHECK(discriminant_group(hyperbolic_plane()).is_trivial());
}

TEST_CASE("named lattices") {
  CHECK(standard_lattice("H+H") == orthogonal_sum(hyperbolic_plane(), hyperbolic_plane()));
  CHECK(standard_lattice("H⊥H") == standard_lattice("hyperbolic+hyperbolic"));
  CHECK(standard_lattice("rank1:5").half_gram() == IntMatrix({{5}}));
  CHECK(standard_lattice("H@2").gram() == IntMatrix({{0, 2}, {2, 0}}));
  CHECK(standard_lattice("k3").rank() == 22);
  CHECK_THROWS_AS(standard_lattice("nonsense"), PreconditionError);
  CHECK_THROWS_AS(standard_lattice("H++H"), PreconditionError);
}
