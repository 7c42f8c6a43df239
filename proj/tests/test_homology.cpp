#include <catch2/catch_amalgamated.hpp>

#include "loday/loday_complex.hpp"
#include "oracles.hpp"

using namespace loday;

namespace {
const FieldDesc Q = FieldDesc::rationals();
}

TEST_CASE("differential block ranks agree with the dense oracle") {
  auto s = std::make_shared<SimplicialSet>(sphere(1, 4));
  LodayComplex<Rational> c(LodaySpec<Rational>::reduced(s, poly_weight_capped<Rational>(Q, 3), 3, 3));
  for (int q = 1; q <= 4; ++q)
    for (int w = 0; w <= 3; ++w) {
      const auto& m = c.differential(q, 0, w);
      CHECK(sparse_rank(m) == oracle::dense_rank(m));
    }
  // the named block: level-2, weight-2 differential
  const auto& m22 = c.differential(2, 0, 2);
  CHECK(sparse_rank(m22) == oracle::dense_rank(m22));
}

TEST_CASE("sphere homology tables") {
  auto a = poly_weight_capped<Rational>(Q, 3);
  {
    auto s = std::make_shared<SimplicialSet>(sphere(1, 4));
    auto t = LodayComplex<Rational>(LodaySpec<Rational>::reduced(s, a, 3, 3)).homology(3, 3);
    CHECK(t.degree_vector(3) == std::vector<long>{1, 1, 0, 0});
    CHECK(t.dim(1, 1) == 1);  // the degree-1 class has weight 1
  }
  {
    auto s = std::make_shared<SimplicialSet>(sphere(2, 5));
    auto t = LodayComplex<Rational>(LodaySpec<Rational>::reduced(s, a, 4, 3)).homology(4, 3);
    CHECK(t.degree_vector(4) == std::vector<long>{1, 0, 1, 0, 1});
    CHECK(t.dim(2, 1) == 1);
    CHECK(t.dim(4, 2) == 1);  // weight w sits in degree 2w
  }
  {
    auto s = std::make_shared<SimplicialSet>(sphere(1, 5));
    auto trunc = truncated_poly<Rational>(Q, 2);
    auto t = LodayComplex<Rational>(LodaySpec<Rational>::reduced(s, trunc, 4, 4)).homology(4, 4);
    CHECK(t.degree_vector(4) == std::vector<long>{1, 1, 1, 1, 1});
    for (int d = 1; d <= 4; ++d) CHECK(t.dim(d, d) == 1);  // degree equals weight throughout
  }
}

TEST_CASE("euler characteristics are consistent per weight") {
  // when the differential entering the certified range from above vanishes
  // on a weight, the alternating sums of chain and homology dims agree there
  auto s = std::make_shared<SimplicialSet>(sphere(1, 4));
  auto a = truncated_poly<Rational>(Q, 2);
  LodayComplex<Rational> c(LodaySpec<Rational>::reduced(s, a, 3, 3));
  int checked = 0;
  for (int w = 0; w <= 3; ++w) {
    if (!c.differential(4, 0, w).is_zero()) continue;  // precondition of the check
    ++checked;
    long chain = 0, hom = 0;
    for (int d = 0; d <= 3; ++d) {
      long sgn = d % 2 == 0 ? 1 : -1;
      chain += sgn * c.basis_dim(d, 0, w);
      hom += sgn * c.block_homology(d, 0, w);
    }
    CHECK(chain == hom);
  }
  CHECK(checked > 0);
}

TEST_CASE("table comparison reports the first divergence") {
  HomologyTable a, b;
  a.set(0, 0, 1);
  a.set(1, 1, 2);
  b.set(0, 0, 1);
  b.set(1, 1, 3);
  b.set(2, 1, 1);
  auto self = compare_tables(a, a, 2, 2);
  CHECK(self.equal);
  auto cmp = compare_tables(a, b, 2, 2);
  REQUIRE_FALSE(cmp.equal);
  REQUIRE(cmp.first.has_value());
  CHECK(cmp.first->degree == 1);
  CHECK(cmp.first->weight == 1);
  CHECK(cmp.first->lhs == 2);
  CHECK(cmp.first->rhs == 3);
}

TEST_CASE("homology tables over prime fields reduce compatibly in spot checks") {
  // the circle over the truncated algebra has integral classes, so the mod-p
  // dimensions match the rational ones here
  auto s = std::make_shared<SimplicialSet>(sphere(1, 3));
  auto tq = LodayComplex<Rational>(LodaySpec<Rational>::reduced(s, truncated_poly<Rational>(Q, 2), 2, 2))
                .homology(2, 2);
  auto tp = LodayComplex<Fp>(LodaySpec<Fp>::reduced(s, truncated_poly<Fp>(FieldDesc::prime_field(5), 2), 2, 2))
                .homology(2, 2);
  CHECK(tq.dims == tp.dims);
}
