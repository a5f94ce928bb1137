#include <doctest.h>

#include "qlat/deformation_tori.hpp"
#include "qlat/errors.hpp"

using namespace qlat;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("graph kernels of diagonal maps") {
  DiagGroupKernel k = diagonal_graph_kernel(iv({1, 2}), iv({3, 1}));
  CHECK(k.presentation.free_rank == 2);
  CHECK(k.source_divisors == iv({3, 1}));
  CHECK(k.target_divisors == iv({1, 2}));
  CHECK_THROWS_AS(diagonal_graph_kernel(iv({1}), iv({1, 1})), PreconditionError);
  CHECK_THROWS_AS(diagonal_graph_kernel(iv({0}), iv({1})), PreconditionError);
}

TEST_CASE("quasi-isogeny kernels") {
  DiagGroupKernel k = qisog_kernel_char(CharLattice::split(1, 2, 1), 3);
  CHECK(k.source_divisors == iv({1, 1, 1, 3}));
  CHECK(k.target_divisors == iv({3, 1, 1, 1}));
  CHECK(k.presentation.free_rank == 4);

  DiagGroupKernel one = qisog_kernel_char(CharLattice::split(1, 0, 0), 2);
  CHECK(one.source_divisors == iv({1}));
  CHECK(one.target_divisors == iv({2}));

  CHECK_THROWS_AS(qisog_kernel_char(CharLattice{3, std::nullopt}, 2), PreconditionError);
}

TEST_CASE("kernels of block scalars") {
  DiagGroupKernel lam = tgm_kernel({mpq_class(1, 3), mpq_class(1), mpq_class(3)}, CharLattice::split(1, 2, 1), 3);
  CHECK(lam.source_divisors == iv({1, 1, 1, 3}));
  CHECK(lam.target_divisors == iv({3, 1, 1, 1}));

  DiagGroupKernel scalar = tgm_kernel({mpq_class(3), mpq_class(3), mpq_class(3)}, CharLattice::split(1, 1, 1), 3);
  CHECK(scalar.source_divisors == iv({3, 3, 3}));
  CHECK(scalar.target_divisors == iv({1, 1, 1}));

  CHECK_THROWS_AS(tgm_kernel({mpq_class(2)}, CharLattice::split(1, 0, 0), 3), PreconditionError);
  CHECK_THROWS_AS(tgm_kernel({mpq_class(1)}, CharLattice::split(1, 1, 0), 3), PreconditionError);
}

TEST_CASE("the cokernel M") {
  CokernelM a = cokernel_m(CharLattice::split(1, 1, 1), IntMatrix{{0}, {0}, {1}}, 2);
  CHECK(a.inj1_index == 2);
  CHECK(a.iso2);
  CHECK(a.inj1_injective);

  CokernelM b = cokernel_m(CharLattice::split(1, 2, 1), IntMatrix{{1}, {1}, {0}, {1}}, 3);
  CHECK(b.inj1_index == 3);
  CHECK(b.iso2);

  CHECK_THROWS_AS(cokernel_m(CharLattice::split(2, 1, 1), IntMatrix{{0}, {0}, {0}, {1}}, 2), PreconditionError);
  CHECK_THROWS_AS(cokernel_m(CharLattice::split(1, 1, 1), IntMatrix{{0}, {0}, {2}}, 2), PreconditionError);
  CHECK_THROWS_AS(cokernel_m(CharLattice::split(1, 1, 1), IntMatrix{{1}, {0}, {0}}, 2), PreconditionError);
}

TEST_CASE("Serre-Tate tori") {
  CHECK(serre_tate_torus(3, 2).rank == 6);
  CHECK_FALSE(serre_tate_torus(3, 2).weights);
  CHECK(serre_tate_torus(0, 5).rank == 0);
}
