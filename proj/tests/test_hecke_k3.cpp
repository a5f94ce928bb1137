#include <doctest.h>

#include "qlat/errors.hpp"
#include "qlat/hecke_k3.hpp"

using namespace qlat;

namespace {

QuadLattice identity_form(std::size_t r) { return orthogonal_sum(std::vector<QuadLattice>(r, rank_one(1))); }

}  // namespace

TEST_CASE("index-p sublattices") {
  CHECK(enumerate_index_p_sublattices(rank_one(1), 2).size() == 1);
  CHECK(enumerate_index_p_sublattices(identity_form(2), 2).size() == 3);
  CHECK(enumerate_index_p_sublattices(identity_form(2), 3).size() == 4);
  CHECK(enumerate_index_p_sublattices(identity_form(3), 3).size() == 13);
  for (const auto& pair : enumerate_index_p_sublattices(identity_form(2), 3)) {
    CHECK_NOTHROW(pair.validate());
    CHECK(pair.tilde_lattice().determinant() == 36);
  }
  CHECK_THROWS_AS(enumerate_index_p_sublattices(hyperbolic_plane(), 2), PreconditionError);
}

TEST_CASE("minimal pair validation") {
  MinimalPair bad{rank_one(1), IntMatrix{{4}}, 2};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  MinimalPair good{rank_one(1), IntMatrix{{2}}, 2};
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("K3 isogeny degrees") {
  PolarizedK3Lattice a = k3_isogeny(Integer(1), 2);
  CHECK(a.degree() == 4);
  CHECK(a.xi[0] == 1);
  CHECK(a.xi[1] == 4);
  for (std::size_t i = 2; i < 22; ++i) CHECK(a.xi[i] == 0);
  CHECK(signature(a.lattice) == Signature{19, 3});
  CHECK_NOTHROW(a.validate());

  PolarizedK3Lattice b = k3_isogeny(Integer(3), 2);
  CHECK(b.degree() == 12);
  Sublattice c = orthogonal_complement(b.lattice, IntMatrix::from_columns(22, {b.xi}));
  AbelianQuotient dg = discriminant_group(c.lattice());
  CHECK(dg.torsion == IntVector{Integer(24)});

  CHECK(k3_isogeny(Integer(5), 3).degree() == 45);
  CHECK(isogeny_step(k3_isogeny(Integer(2), 3), 3).degree() == 2 * 81);
  CHECK_THROWS_AS(k3_polarized(Integer(0)), PreconditionError);
}

TEST_CASE("shrink and grow on H^3") {
  QuadLattice n = orthogonal_sum({hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane()});
  MinimalPair pair = enumerate_index_p_sublattices(rank_one(1), 2).front();
  IntMatrix emb = IntMatrix::from_columns(6, {{Integer(1), Integer(1), Integer(0), Integer(0), Integer(0), Integer(0)}});
  auto fiber = shrink_fiber(n, emb, pair);
  CHECK(fiber.size() == 20);
  for (const auto& l : fiber) {
    Recovery r = grow_unique(l, emb * pair.tilde_basis);
    CHECK(r.lattice == PLattice(n, 2, 0, IntMatrix::identity(6)));
    CHECK(r.survivors == 1);
  }
  CHECK_THROWS_WITH_AS(shrink_fiber(n, Integer(2) * emb, pair), doctest::Contains("not a direct summand"),
                       PreconditionError);
  CHECK_THROWS_AS(shrink_fiber(orthogonal_sum(hyperbolic_plane(), hyperbolic_plane()), IntMatrix(4, 1), pair),
                  PreconditionError);
}
