#include <doctest.h>

#include "qlat/errors.hpp"
#include "qlat/serialize.hpp"

using namespace qlat;

TEST_CASE("integers") {
  CHECK(integer_to_json(Integer(-7)) == Json(-7));
  Integer big("123456789012345678901234567890");
  CHECK(integer_to_json(big).is_string());
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(integer_from_json(Json("-12")) == -12);
  CHECK_THROWS_AS(integer_from_json(Json("12x")), PreconditionError);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), PreconditionError);
}

TEST_CASE("matrices") {
  IntMatrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(matrix_to_json(m).dump() == "[[1,2,3],[4,5,6]]");
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK(matrix_from_json(Json::array(), 4).cols() == 4);
  CHECK_THROWS_AS(matrix_from_json(parse_document("[[1,2],[3]]")), PreconditionError);
}

TEST_CASE("round trips") {
  QuadLattice k3 = k3_lattice();
  CHECK(lattice_from_json(lattice_to_json(k3)) == k3);

  FpQuadSpace v = model_space(5, WittType::Odd, 3, 2);
  CHECK(space_from_json(space_to_json(v)) == v);

  QuadLattice n = orthogonal_sum(hyperbolic_plane(), hyperbolic_plane());
  for (const auto& l : enumerate_neighbors(n, 3)) CHECK(plattice_from_json(plattice_to_json(l)) == l);

  for (const auto& pair : enumerate_index_p_sublattices(orthogonal_sum(rank_one(1), rank_one(2)), 3)) {
    MinimalPair back = minimal_pair_from_json(minimal_pair_to_json(pair));
    CHECK(back.lambda == pair.lambda);
    CHECK(back.tilde_basis == pair.tilde_basis);
    CHECK(back.p == 3);
  }

  PolarizedK3Lattice x = k3_isogeny(Integer(2), 5);
  PolarizedK3Lattice y = polarized_from_json(polarized_to_json(x));
  CHECK(y.lattice == x.lattice);
  CHECK(y.xi == x.xi);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_document("{"), PreconditionError);
  CHECK_THROWS_AS(lattice_from_json(parse_document(R"({"rank": 2})")), PreconditionError);
  CHECK_THROWS_AS(lattice_from_json(parse_document(R"({"rank": 3, "half_gram": [[0,1],[0,0]]})")), PreconditionError);
  CHECK_THROWS_AS(space_from_json(parse_document(R"({"p": 1, "dim": 1, "half_gram": [[1]]})")), PreconditionError);
}
