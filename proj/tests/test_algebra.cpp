#include <catch2/catch_amalgamated.hpp>

#include "loday/algebra.hpp"
#include "loday/io.hpp"

using namespace loday;

namespace {
const FieldDesc Q = FieldDesc::rationals();
}

TEST_CASE("truncated polynomial algebras") {
  auto a = truncated_poly<Rational>(Q, 2);
  CHECK(a.validate().empty());
  CHECK(a.product(1, 1)->empty());  // t * t = 0
  CHECK(a.aug[1].is_zero());
  CHECK(a.aug[0] == Rational(1));

  auto b = truncated_poly<Fp>(FieldDesc::prime_field(5), 3);
  CHECK(b.validate().empty());
  CHECK(*b.product(1, 1) == b.term(2));   // t * t = t^2
  CHECK(b.product(1, 2)->empty());        // t * t^2 = 0
  CHECK_THROWS_AS(truncated_poly<Rational>(Q, 0), std::invalid_argument);
}

TEST_CASE("weight-capped polynomial algebra flags overflow") {
  auto a = poly_weight_capped<Rational>(Q, 3);
  CHECK(a.validate().empty());
  CHECK(*a.product(1, 2) == a.term(3));  // t * t^2 = t^3
  CHECK_FALSE(a.product(2, 2).has_value());
  CHECK_THROWS_AS(a.mul(a.term(2), a.term(2)), AlgebraOverflow);
  CHECK(a.aug[1].is_zero());
}

TEST_CASE("quotient by a polynomial without constant term") {
  // q(t) = t^2 reduces to the truncated algebra
  auto pure = quotient_by_poly<Rational>(Q, {Rational(0), Rational(1)});
  CHECK(pure.weight_graded);
  CHECK(pure.product(1, 1)->empty());

  // q(t) = t^2 + t: t*t = -t
  auto a = quotient_by_poly<Rational>(Q, {Rational(1), Rational(1)});
  CHECK_FALSE(a.weight_graded);
  REQUIRE(a.product(1, 1).has_value());
  CHECK(*a.product(1, 1) == StructureConstantAlgebra<Rational>::LinComb{{1, Rational(-1)}});
  CHECK(a.validate().empty());

  // q(t) = t^3 + 2t: associativity on all triples
  auto b = quotient_by_poly<Rational>(Q, {Rational(2), Rational(0), Rational(1)});
  CHECK(b.validate().empty());

  CHECK_THROWS_AS(quotient_by_poly<Rational>(Q, {Rational(1), Rational(0)}), std::invalid_argument);
}

TEST_CASE("free graded-commutative algebras") {
  std::vector<std::vector<int>> expo;
  auto a = free_graded_commutative<Rational>(Q, {{"x", 0, 1}, {"ex", 1, 1}}, 1, 3, &expo);
  CHECK(a.validate().empty());
  int x = a.basis_index("x"), ex = a.basis_index("ex");
  CHECK(a.product(ex, ex)->empty());          // exterior square
  CHECK(*a.product(x, ex) == *a.product(ex, x));  // even-odd commute without sign

  auto b = free_graded_commutative<Rational>(Q, {{"x2", 2, 1}, {"y3", 3, 1}}, 5, 5);
  CHECK(b.validate().empty());
  int y3 = b.basis_index("y3");
  CHECK(b.product(y3, y3)->empty());
  CHECK(*b.product(b.basis_index("x2"), y3) == *b.product(y3, b.basis_index("x2")));

  // dimensions of Q[x2] (x) Lambda(y3) in degrees 0..5, counted independently
  std::vector<long> dims(6, 0);
  for (int i = 0; i < b.dim(); ++i)
    if (b.degree(i) <= 5) dims[b.degree(i)]++;
  CHECK(dims == std::vector<long>{1, 0, 1, 1, 1, 1});
}

TEST_CASE("odd generators anticommute") {
  auto a = free_graded_commutative<Rational>(Q, {{"u", 1, 1}, {"v", 1, 1}}, 2, 2);
  int u = a.basis_index("u"), v = a.basis_index("v");
  auto uv = *a.product(u, v);
  auto vu = *a.product(v, u);
  REQUIRE(uv.size() == 1);
  REQUIRE(vu.size() == 1);
  CHECK(uv.front().first == vu.front().first);
  CHECK(uv.front().second == -vu.front().second);
}

TEST_CASE("tensor products") {
  auto t = truncated_poly<Fp>(FieldDesc::prime_field(3), 2);
  auto tt = tensor(t, t);
  CHECK(tt.dim() == 4);
  CHECK(tt.validate().empty());
  CHECK(tt.unit == 0);
  CHECK(tt.aug[tt.unit] == Fp(1, 3));
}

TEST_CASE("cyclic tensor power rotation is a valid action") {
  auto t = truncated_poly<Fp>(FieldDesc::prime_field(3), 2);
  auto [t2, rot2] = cyclic_tensor_power(t, 2);
  CHECK(rot2.validate(t2).empty());
  auto [t3, rot3] = cyclic_tensor_power(t, 3);
  CHECK(rot3.validate(t3).empty());
}

TEST_CASE("rotation carries the Koszul sign on odd factors") {
  auto ext = free_graded_commutative<Rational>(Q, {{"e", 1, 1}}, 1, 1);
  auto [e2, rot] = cyclic_tensor_power(ext, 2);
  // rotating e (x) e moves an odd factor past an odd factor
  int idx = ext.basis_index("e") * ext.dim() + ext.basis_index("e");
  const auto& im = rot.image(1, idx);
  REQUIRE(im.size() == 1);
  CHECK(im.front().first == idx);
  CHECK(im.front().second == Rational(-1));
  CHECK(rot.validate(e2).empty());
}

TEST_CASE("diagonal sign action validates, bad maps do not") {
  std::vector<std::vector<int>> expo;
  auto a = free_graded_commutative<Rational>(Q, {{"x", 0, 1}, {"ex", 1, 1}}, 1, 2, &expo);
  std::vector<StructureConstantAlgebra<Rational>::LinComb> gen;
  for (int i = 0; i < a.dim(); ++i)
    gen.push_back({{i, Rational(expo[i][1] % 2 == 0 ? 1 : -1)}});
  auto flip = GroupActionOnAlgebra<Rational>::cyclic_from_generator(a, 2, gen);
  CHECK(flip.validate(a).empty());

  // sending 1 to t is not an algebra map
  auto t = truncated_poly<Rational>(Q, 2);
  std::vector<StructureConstantAlgebra<Rational>::LinComb> bad{t.term(1), t.term(1)};
  auto act = GroupActionOnAlgebra<Rational>::cyclic_from_generator(t, 2, bad);
  CHECK_FALSE(act.validate(t).empty());
}

TEST_CASE("weight additivity holds on every product") {
  auto a = free_graded_commutative<Rational>(Q, {{"x", 0, 1}, {"ex", 1, 1}}, 1, 3);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const auto& p = a.product(i, j);
      if (!p) continue;
      for (const auto& [k, c] : *p) {
        CHECK(a.weight(k) == a.weight(i) + a.weight(j));
        CHECK(a.degree(k) == a.degree(i) + a.degree(j));
      }
    }
}

TEST_CASE("algebra serialization round-trips") {
  auto a = free_graded_commutative<Rational>(Q, {{"x", 0, 1}, {"ex", 1, 1}}, 1, 2);
  auto j = algebra_to_json(a);
  auto back = algebra_from_json<Rational>(j);
  CHECK(back.validate().empty());
  CHECK(back.dim() == a.dim());
  CHECK(back.unit == a.unit);
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) CHECK(a.product(i, k) == back.product(i, k));
  CHECK(a.aug == back.aug);

  auto p = poly_weight_capped<Fp>(FieldDesc::prime_field(3), 2);
  auto back2 = algebra_from_json<Fp>(algebra_to_json(p));
  CHECK(back2.validate().empty());
  CHECK_FALSE(back2.product(2, 2).has_value());  // overflow survives the round trip
}
