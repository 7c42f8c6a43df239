#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "loday/simplicial.hpp"

using namespace loday;

TEST_CASE("minimal circle levels") {
  auto s = sphere(1, 3);
  std::vector<int> sizes;
  for (int q = 0; q <= 3; ++q) sizes.push_back(s.level_size(q));
  CHECK(sizes == std::vector<int>{1, 2, 3, 4});
  CHECK(s.nondegenerate_count(0) == 1);
  CHECK(s.nondegenerate_count(1) == 1);
  CHECK(s.nondegenerate_count(2) == 0);
  CHECK(s.validate().empty());
}

TEST_CASE("minimal two-sphere levels") {
  auto s = sphere(2, 2);
  CHECK(s.level_size(0) == 1);
  CHECK(s.level_size(1) == 1);
  CHECK(s.level_size(2) == 2);
  CHECK(s.nondegenerate_count(2) == 1);
  CHECK(s.validate().empty());
}

TEST_CASE("sphere truncation below the cell dimension is rejected") {
  CHECK_THROWS_AS(sphere(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(sphere(3, 2), std::invalid_argument);
}

TEST_CASE("two-cell circle") {
  auto c = circle_two_cells(1);
  CHECK(c.level_size(0) == 2);
  CHECK(c.level_size(1) == 4);
  CHECK(c.nondegenerate_count(1) == 2);
  CHECK(c.euler_characteristic() == 0);
  CHECK(c.validate().empty());
  auto cp = circle_two_cells(2, /*parallel=*/true);
  CHECK(cp.validate().empty());
  CHECK(cp.euler_characteristic() == 0);
}

TEST_CASE("products of circles") {
  auto t2 = torus(2, 3);
  for (int q = 0; q <= 3; ++q) CHECK(t2.level_size(q) == (q + 1) * (q + 1));
  CHECK(t2.validate().empty());
  auto t3 = torus(3, 2);
  CHECK(t3.level_size(2) == 27);
  CHECK(t3.validate().empty());
}

TEST_CASE("product with a point changes nothing") {
  auto s = sphere(1, 3);
  auto p = product(s, point_space(3));
  CHECK(p.validate().empty());
  for (int q = 0; q <= 3; ++q) {
    CHECK(p.level_size(q) == s.level_size(q));
    CHECK(p.nondegenerate_count(q) == s.nondegenerate_count(q));
  }
  // incidence transports along the identification (x, pt) -> x
  for (int q = 1; q <= 3; ++q)
    for (int i = 0; i <= q; ++i)
      for (int x = 0; x < s.level_size(q); ++x) CHECK(p.face(q, i, x) == s.face(q, i, x));
}

TEST_CASE("wedges") {
  auto w = wedge(sphere(1, 2), sphere(1, 2));
  CHECK(w.level_size(1) == 3);
  CHECK(w.nondegenerate_count(1) == 2);
  CHECK(w.validate().empty());
  auto wp = wedge(sphere(1, 2), point_space(2));
  for (int q = 0; q <= 2; ++q) CHECK(wp.level_size(q) == sphere(1, 2).level_size(q));

  auto b = torus_cell_bouquet(2, 2);
  long positive = 0;
  for (int q = 1; q <= 2; ++q) positive += b.nondegenerate_count(q);
  CHECK(positive == 3);  // two circles and one two-cell
  CHECK(b.validate().empty());
}

TEST_CASE("wedge and product sizes are associative up to relabeling") {
  auto a = sphere(1, 2), b = sphere(2, 2), c = sphere(1, 2);
  auto l = wedge(wedge(a, b), c);
  auto r = wedge(a, wedge(b, c));
  for (int q = 0; q <= 2; ++q) {
    CHECK(l.level_size(q) == r.level_size(q));
    CHECK(l.nondegenerate_count(q) == r.nondegenerate_count(q));
  }
  auto lp = product(product(a, b), c);
  auto rp = product(a, product(b, c));
  for (int q = 0; q <= 2; ++q) CHECK(lp.level_size(q) == rp.level_size(q));
}

TEST_CASE("validator names a corrupted identity") {
  auto s = sphere(2, 4);
  CHECK(s.validate().empty());
  s.faces[2][0][1] = s.faces[2][0][1] == 0 ? 0 : 0;  // keep valid; now corrupt for real below
  auto bad = s;
  // reroute one face of a nondegenerate simplex
  bad.faces[3][1][2] = (bad.faces[3][1][2] + 1) % bad.level_size(2);
  auto report = bad.validate();
  REQUIRE_FALSE(report.empty());
  bool mentions_identity = false;
  for (const auto& line : report)
    if (line.find("identity") != std::string::npos || line.find("image") != std::string::npos ||
        line.find("flag") != std::string::npos)
      mentions_identity = true;
  CHECK(mentions_identity);
}

TEST_CASE("constant simplicial sets are levelwise constant and degenerate") {
  auto c = constant_set(3, {"a", "b", "c"}, 0, 3);
  CHECK(c.validate().empty());
  for (int q = 0; q <= 3; ++q) CHECK(c.level_size(q) == 3);
  CHECK(c.nondegenerate_count(2) == 0);
}

TEST_CASE("finite groups validate") {
  CHECK(FiniteGroup::cyclic(5).validate().empty());
  auto g = FiniteGroup::cyclic(3);
  g.table[4] = 0;  // break the group law
  CHECK_FALSE(g.validate().empty());
}

TEST_CASE("twisting functions propagate and validate") {
  auto s = sphere(1, 4);
  auto g = FiniteGroup::cyclic(3);
  auto tau = TwistingFunction::on_edges(s, g, 1);
  CHECK(tau.validate(s).empty());
  // the degenerate edge carries the identity
  for (int b = 0; b < s.level_size(1); ++b)
    if (s.is_degenerate(1, b)) CHECK(tau.at(1, b) == g.identity);
  // breaking one value breaks the rules
  auto bad = tau;
  bad.tau[2][1] = g.mul(bad.tau[2][1], 1);
  CHECK_FALSE(bad.validate(s).empty());
  auto trivial = TwistingFunction::trivial(s, g);
  CHECK(trivial.validate(s).empty());
}

TEST_CASE("edge swap is simplicial only for the parallel orientation") {
  auto g = FiniteGroup::cyclic(2);
  std::vector<std::vector<int>> swap_edges = {{0, 1, 2, 3}, {0, 1, 3, 2}};
  auto par = circle_two_cells(3, /*parallel=*/true);
  auto act = SimplicialAction::from_generator_permutation(par, g, swap_edges);
  CHECK(act.validate(par).empty());
  auto cyc = circle_two_cells(3, /*parallel=*/false);
  auto bad = SimplicialAction::from_generator_permutation(cyc, g, swap_edges);
  CHECK_FALSE(bad.validate(cyc).empty());
}

TEST_CASE("twisted product with a trivial twist is the product") {
  auto f = constant_set(2, {"e", "g"}, 0, 3);
  auto b = sphere(1, 3);
  auto g = FiniteGroup::cyclic(2);
  auto tcp = twisted_cartesian_product(f, b, TwistingFunction::trivial(b, g), SimplicialAction::left_translation(f, g));
  auto prod = product(b, f);  // same sizes either way around
  for (int q = 0; q <= 3; ++q) CHECK(tcp.level_size(q) == prod.level_size(q));
  CHECK(tcp.validate().empty());
}

TEST_CASE("circle covers are circles with n nondegenerate edges") {
  for (int n : {2, 3}) {
    auto e = circle_cover(n, 3);
    CHECK(e.validate().empty());
    CHECK(e.nondegenerate_count(0) == n);
    CHECK(e.nondegenerate_count(1) == n);
    CHECK(e.nondegenerate_count(2) == 0);
    CHECK(e.euler_characteristic() == 0);
  }
}

TEST_CASE("the klein bottle model validates") {
  auto k = klein_bottle(3);
  CHECK(k.validate().empty());
  CHECK(k.euler_characteristic() == 0);
  CHECK(k.level_size(1) == 4 * 2);
}

TEST_CASE("mismatched truncations are rejected") {
  CHECK_THROWS_AS(product(sphere(1, 2), sphere(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(wedge(sphere(1, 2), sphere(1, 3)), std::invalid_argument);
}

TEST_CASE("random combinations of constructors validate") {
  std::mt19937 rng(11);
  auto random_space = [&](int trunc, auto&& self, int depth) -> SimplicialSet {
    int pick = static_cast<int>(rng() % (depth > 1 ? 2 : 4));
    switch (pick) {
      case 0:
        return sphere(1 + static_cast<int>(rng() % std::min(2, trunc)), trunc);
      case 1:
        return circle_two_cells(trunc, rng() % 2 == 0);
      case 2:
        return product(self(trunc, self, depth + 1), self(trunc, self, depth + 1));
      default:
        return wedge(self(trunc, self, depth + 1), self(trunc, self, depth + 1));
    }
  };
  for (int trial = 0; trial < 12; ++trial) {
    auto s = random_space(3, random_space, 0);
    INFO("trial " << trial);
    CHECK(s.validate().empty());
  }
}

TEST_CASE("random level-one twist assignments derive consistently on two-cell circles") {
  std::mt19937 rng(23);
  auto g = FiniteGroup::cyclic(4);
  auto c = circle_two_cells(3);
  for (int trial = 0; trial < 12; ++trial) {
    // degenerate edges must carry the identity; nondegenerate edges are free
    std::vector<int> level1(c.level_size(1), g.identity);
    for (int e = 0; e < c.level_size(1); ++e)
      if (!c.is_degenerate(1, e)) level1[e] = static_cast<int>(rng() % g.order);
    auto tau = TwistingFunction::derive(c, g, level1);
    INFO("trial " << trial);
    CHECK(tau.validate(c).empty());
  }
}

TEST_CASE("invalid twists are rejected by the twisted product") {
  auto f = constant_set(2, {"e", "g"}, 0, 2);
  auto b = sphere(1, 2);
  auto g = FiniteGroup::cyclic(2);
  auto tau = TwistingFunction::on_edges(b, g, 1);
  tau.tau[2][0] = 1 - tau.tau[2][0];  // violate the composition rule
  CHECK_THROWS_AS(twisted_cartesian_product(f, b, tau, SimplicialAction::left_translation(f, g)),
                  std::invalid_argument);
}
