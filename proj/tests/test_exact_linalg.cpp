#include <doctest.h>

#include <set>

#include "qlat/errors.hpp"
#include "qlat/exact_linalg.hpp"

using namespace qlat;

namespace {

bool is_unimodular(const IntMatrix& m) { return abs(m.determinant()) == 1; }

// Number of cosets of span(gens) in Z^2 meeting the box [0, b)^2, counted by
// reducing box points to the Hermite fundamental domain.
std::size_t cosets_in_box(const IntMatrix& gens, long b) {
  IntMatrix h = hnf_basis(gens);
  std::set<std::pair<long, long>> reps;
  for (long x = 0; x < b; ++x)
    for (long y = 0; y < b; ++y) {
      // h is lower triangular with positive diagonal.
      Integer a = x, c = y;
      Integer q0 = a / h(0, 0);
      if (a - q0 * h(0, 0) < 0) q0 -= 1;
      a -= q0 * h(0, 0);
      c -= q0 * h(1, 0);
      Integer r = c % h(1, 1);
      if (r < 0) r += h(1, 1);
      reps.insert({a.get_si(), r.get_si()});
    }
  return reps.size();
}

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  SUBCASE("identity") {
    SmithForm s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
  }
  SUBCASE("diag(2,3) becomes diag(1,6)") {
    IntMatrix m{{2, 0}, {0, 3}};
    SmithForm s = smith_normal_form(m);
    CHECK(s.D == IntMatrix({{1, 0}, {0, 6}}));
    CHECK(s.U * m * s.V == s.D);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
  }
  SUBCASE("zero matrix") {
    SmithForm s = smith_normal_form(IntMatrix(2, 2));
    CHECK(s.D.is_zero());
  }
  SUBCASE("rectangular with divisibility chain") {
    IntMatrix m{{4, 6, 2}, {8, 12, 10}};
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(elementary_divisors(m) == IntVector{Integer(2), Integer(6)});
  }
}

TEST_CASE("hermite normal form") {
  CHECK(hnf_basis(IntMatrix::identity(3)) == IntMatrix::identity(3));
  CHECK(hnf_basis(IntMatrix{{2, 3}, {0, 0}}) == IntMatrix({{1}, {0}}));
  CHECK(hnf_basis(IntMatrix{{5, 0}, {0, 5}}) == IntMatrix({{5, 0}, {0, 5}}));
  IntMatrix m{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  HermiteForm h = hermite_normal_form(m);
  CHECK(m * h.T == h.H);
  CHECK(is_unimodular(h.T));
}

TEST_CASE("quotient structure") {
  CHECK(quotient_structure(2, IntMatrix::identity(2)).is_trivial());
  for (long p : {2, 3, 5}) {
    AbelianQuotient q = quotient_structure(1, IntMatrix{{p}});
    CHECK(q.torsion == IntVector{Integer(p)});
  }
  IntMatrix g{{2, 0}, {0, 6}};
  AbelianQuotient q = quotient_structure(2, g);
  CHECK(q.torsion == IntVector{Integer(2), Integer(6)});
  CHECK(q.torsion_order() == 12);
  CHECK(cosets_in_box(g, 12) == 12);
  CHECK(quotient_structure(3, IntMatrix{{1}, {0}, {0}}).free_rank == 2);
}

TEST_CASE("saturation and direct summands") {
  CHECK(saturate(2, IntMatrix{{2, 1}, {1, 1}}).is_direct_summand);
  Saturation s = saturate(2, IntMatrix{{3}, {0}});
  CHECK_FALSE(s.is_direct_summand);
  CHECK(s.basis == IntMatrix({{1}, {0}}));
  CHECK(saturate(2, IntMatrix{{1}, {3}}).is_direct_summand);
}

TEST_CASE("lattice intersection") {
  CHECK(lattice_intersection(IntMatrix::identity(2), IntMatrix::identity(2)) == IntMatrix::identity(2));
  CHECK(lattice_intersection(IntMatrix{{2, 0}, {0, 1}}, IntMatrix{{1, 0}, {0, 2}}) == IntMatrix({{2, 0}, {0, 2}}));
  CHECK(lattice_intersection(IntMatrix{{1}, {1}}, IntMatrix{{1}, {-1}}).cols() == 0);
  ScaledIntersection si = lattice_intersection(IntMatrix{{1}, {0}}, Integer(2), IntMatrix{{1}, {0}}, Integer(3));
  CHECK(si.denominator == 6);
  CHECK(si.numerator == IntMatrix({{6}, {0}}));
  CHECK_THROWS_AS(lattice_intersection(IntMatrix{{1, 2}, {1, 2}}, IntMatrix::identity(2)), PreconditionError);
}

TEST_CASE("kernels and integer solutions") {
  IntMatrix a{{1, 2, 3}};
  IntMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());
  CHECK(saturate(3, k).is_direct_summand);
  auto x = solve_integer(IntMatrix{{2, 0}, {0, 3}}, IntVector{Integer(4), Integer(9)});
  REQUIRE(x);
  CHECK(*x == IntVector{Integer(2), Integer(3)});
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{Integer(3)}));
  CHECK(in_lattice(IntMatrix{{2, 0}, {0, 3}}, IntVector{Integer(4), Integer(-3)}));
  CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
}
