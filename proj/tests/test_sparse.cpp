#include <catch2/catch_amalgamated.hpp>

#include "loday/sparse.hpp"
#include "oracles.hpp"

using namespace loday;

namespace {

template <class K>
SparseMatrix<K> identity(const FieldDesc& f, int n) {
  SparseMatrix<K> m(n, n);
  for (int i = 0; i < n; ++i) m.set_column(i, {{i, scalar_from_long<K>(f, 1)}});
  return m;
}

}  // namespace

TEST_CASE("rank of identity and zero matrices") {
  FieldDesc q = FieldDesc::rationals();
  CHECK(sparse_rank(identity<Rational>(q, 3)) == 3);
  SparseMatrix<Rational> z(4, 6);
  CHECK(sparse_rank(z) == 0);
  CHECK(kernel_dim(z) == 6);
}

TEST_CASE("sparse rank agrees with the dense oracle") {
  FieldDesc q = FieldDesc::rationals();
  FieldDesc f7 = FieldDesc::prime_field(7);
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto mq = oracle::random_matrix<Rational>(q, 15, 20, 0.2, seed);
    CHECK(sparse_rank(mq) == oracle::dense_rank(mq));
    auto mp = oracle::random_matrix<Fp>(f7, 18, 11, 0.3, seed + 100);
    CHECK(sparse_rank(mp) == oracle::dense_rank(mp));
  }
}

TEST_CASE("rank is invariant under transposition") {
  FieldDesc q = FieldDesc::rationals();
  for (unsigned seed = 1; seed <= 6; ++seed) {
    auto m = oracle::random_matrix<Rational>(q, 9, 23, 0.25, seed);
    CHECK(sparse_rank(m) == sparse_rank(sparse_transpose(m)));
  }
}

TEST_CASE("solve finds exact witnesses") {
  FieldDesc q = FieldDesc::rationals();
  for (unsigned seed = 1; seed <= 8; ++seed) {
    auto m = oracle::random_matrix<Rational>(q, 14, 10, 0.3, seed);
    // b = M x for a known x must be solvable, and the witness must reproduce b
    SparseVec<Rational> x{{1, Rational(2, 3)}, {4, Rational(-1)}, {7, Rational(5)}};
    auto b = m.apply(x);
    auto z = sparse_solve(m, b);
    REQUIRE(z.has_value());
    CHECK(m.apply(*z) == b);
  }
}

TEST_CASE("solve certifies unsolvable systems") {
  FieldDesc q = FieldDesc::rationals();
  // column space misses row 2 entirely
  SparseMatrix<Rational> m(3, 2);
  m.set_column(0, {{0, Rational(1)}});
  m.set_column(1, {{0, Rational(2)}, {1, Rational(1)}});
  SparseVec<Rational> b{{2, Rational(1)}};
  CHECK_FALSE(sparse_solve(m, b).has_value());
  // and the rank certificate: appending b raises the rank
  SparseMatrix<Rational> mb(3, 3);
  mb.set_column(0, m.col[0]);
  mb.set_column(1, m.col[1]);
  mb.set_column(2, b);
  CHECK(sparse_rank(mb) == sparse_rank(m) + 1);
}

TEST_CASE("solving the zero target gives the zero witness") {
  FieldDesc q = FieldDesc::rationals();
  auto m = oracle::random_matrix<Rational>(q, 6, 6, 0.4, 3);
  auto z = sparse_solve(m, {});
  REQUIRE(z.has_value());
  CHECK(z->empty());
}

TEST_CASE("axpy merges and cancels") {
  SparseVec<Rational> a{{0, Rational(1)}, {2, Rational(3)}};
  SparseVec<Rational> b{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(-3)}};
  sparse_axpy(a, Rational(1), b);
  CHECK(a == SparseVec<Rational>{{0, Rational(2)}, {1, Rational(1)}});
}
