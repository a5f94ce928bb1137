#include <doctest.h>

#include <set>

#include "qlat/errors.hpp"
#include "qlat/padic_lattice.hpp"

using namespace qlat;

namespace {

QuadLattice h_power(std::size_t m) { return orthogonal_sum(std::vector<QuadLattice>(m, hyperbolic_plane())); }

IntMatrix column(const IntVector& v) { return IntMatrix::from_columns(v.size(), {v}); }

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("neighbor counts") {
  CHECK(enumerate_neighbors(hyperbolic_plane(), 2).size() == 2);
  CHECK(enumerate_neighbors(hyperbolic_plane(), 7).size() == 2);
  CHECK(enumerate_neighbors(h_power(2), 2).size() == 9);
  CHECK(enumerate_neighbors(h_power(3), 2).size() == 35);
  CHECK(enumerate_neighbors(h_power(2), 5).size() == 36);
}

TEST_CASE("the neighbor through the line of e") {
  for (std::int64_t p : {2, 3, 5}) {
    QuadLattice h = hyperbolic_plane();
    PLattice l = lattice_from_line(h, p, ProjLine{{1, 0}});
    PLattice expected(h, p, 1, IntMatrix{{1, 0}, {0, p * p}});
    CHECK(l == expected);
    CHECK(l.is_self_dual());
    CHECK(l.contains(IntMatrix{{1}, {0}}));
    CHECK_FALSE(l.contains(IntMatrix{{0}, {1}}));
    CHECK(l.indices() == std::pair<Integer, Integer>(Integer(p), Integer(p)));
    CHECK(line_from_lattice(l) == ProjLine{{1, 0}});
  }
}

TEST_CASE("coordinates") {
  QuadLattice h = hyperbolic_plane();
  PLattice l = lattice_from_line(h, 3, ProjLine{{1, 0}});
  auto c = l.coordinates(iv({1, 0}));
  REQUIRE(c);
  CHECK(*c == iv({3, 0}));
  CHECK_FALSE(l.coordinates(iv({0, 1})));
}

TEST_CASE("line and lattice round trips") {
  for (std::int64_t p : {2, 3, 5}) {
    QuadLattice n = h_power(2);
    auto lines = smooth_isotropic_lines(n, p);
    auto nbs = enumerate_neighbors(n, p);
    REQUIRE(lines.size() == nbs.size());
    std::set<PLattice> distinct(nbs.begin(), nbs.end());
    CHECK(distinct.size() == nbs.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      CHECK(line_from_lattice(nbs[i]) == lines[i]);
      CHECK(lattice_from_line_direct(n, p, lines[i]) == nbs[i]);
      for (std::uint64_t seed : {1u, 9u})
        CHECK(lattice_from_splitting(n, p, splitting_from_line(n, p, lines[i], 3, seed)) == nbs[i]);
    }
  }
}

TEST_CASE("shrink set against brute force") {
  QuadLattice n = h_power(3);
  IntMatrix w = column(iv({1, 1, 0, 0, 0, 0}));
  for (std::int64_t p : {2, 3}) {
    IntMatrix wt = Integer(p) * w;
    auto fast = shrink_set(n, p, w, wt);
    auto slow = shrink_set_bruteforce(n, p, w, wt);
    CHECK(std::set<PLattice>(fast.begin(), fast.end()) == std::set<PLattice>(slow.begin(), slow.end()));
    for (const auto& l : fast) {
      CHECK(meets_span_in(l, w, wt));
      Recovery quick = recover_lattice(l, w);
      Recovery full = recover_lattice(l, w, true);
      CHECK(quick.lattice == PLattice(n, p, 0, IntMatrix::identity(6)));
      CHECK(full.lattice == quick.lattice);
      CHECK(quick.survivors == 1);
      CHECK(full.survivors == 1);
      CHECK(quick.constructed <= full.constructed);
    }
  }
  CHECK(shrink_set(n, 2, w, Integer(2) * w).size() == 20);
}

TEST_CASE("typed line counts modulo p^2") {
  QuadLattice n = h_power(3);
  IntMatrix w = column(iv({1, 1, 0, 0, 0, 0}));
  IntMatrix u(6, 0);
  // Frozen: 320 = 20 * 2^4 and 7290 = 90 * 3^4.
  CHECK(w_generic_lines(n, 2, w, u).size() == 20);
  CHECK(typed_line_count_mod_p2(n, 2, w, u) == 320);
  CHECK(w_generic_lines(n, 3, w, u).size() == 90);
  CHECK(typed_line_count_mod_p2(n, 3, w, u) == 7290);
}

TEST_CASE("preconditions") {
  QuadLattice n = h_power(3);
  IntMatrix w = column(iv({1, 1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(shrink_set(n, 2, w, w), PreconditionError);
  CHECK_THROWS_AS(shrink_set(n, 2, Integer(2) * w, Integer(4) * w), PreconditionError);
  CHECK_THROWS_AS(lattice_from_line(n, 2, ProjLine{{1, 1, 0, 0, 0, 0}}), PreconditionError);
  CHECK_THROWS_AS(PLattice(n, 2, 0, IntMatrix::identity(5)), PreconditionError);
  CHECK_THROWS_AS(enumerate_neighbors(rank_one(2), 2), PreconditionError);
}
