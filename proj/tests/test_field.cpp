#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loday/field.hpp"

using namespace loday;

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(2, 5);
  CHECK((a + b).str() == "11/15");
  CHECK((a * b).str() == "2/15");
  CHECK((a - a).is_zero());
  CHECK((a / b).str() == "5/6");
  CHECK((-a).str() == "-1/3");
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational serialization round-trips exactly") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    Rational r(num(rng), den(rng));
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
}

TEST_CASE("prime field arithmetic") {
  FieldDesc f5 = FieldDesc::prime_field(5);
  Fp a(3, 5), b(4, 5);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 2);
  CHECK((a - b).value() == 4);
  CHECK((a / b).value() == 2);  // 3 * 4^{-1} = 3 * 4 = 12 = 2
  CHECK((-a).value() == 2);
  CHECK_THROWS_AS(a / Fp(0, 5), std::domain_error);
  CHECK(scalar_parse<Fp>(f5, "7").value() == 2);
  CHECK(scalar_parse<Fp>(f5, "1/2").value() == 3);
  CHECK_THROWS_AS(a + Fp(1, 7), std::invalid_argument);
}

TEST_CASE("detached zero adopts a modulus") {
  Fp z;  // default: zero without a modulus yet
  CHECK(z.is_zero());
  Fp a(2, 7);
  CHECK((z + a).value() == 2);
  CHECK((z * a).is_zero());
  Fp acc;
  acc += a;
  acc += a;
  CHECK(acc.value() == 4);
}

TEST_CASE("minus one equals one in characteristic two") {
  Fp one(1, 2);
  CHECK(-one == one);
}

TEST_CASE("field descriptors") {
  CHECK(FieldDesc::rationals().name() == "Q");
  CHECK(FieldDesc::prime_field(3).name() == "F3");
  CHECK_THROWS_AS(FieldDesc::prime_field(4), std::invalid_argument);
  CHECK_THROWS_AS(FieldDesc::prime_field(1), std::invalid_argument);
  CHECK(FieldDesc::parse("F7").characteristic == 7);
  CHECK(FieldDesc::parse("Q").is_rational());
}
