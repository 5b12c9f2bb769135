#include <doctest.h>

#include "support.hpp"

using namespace maxplus;
using namespace fixtures;

TEST_SUITE("semiring") {

TEST_CASE("scalar laws on epsilon and unit") {
  const auto eps = Scalar<Rational>::epsilon();
  const auto e = Scalar<Rational>::unit();
  const Scalar<Rational> a(q(7, 3));
  CHECK(oplus(eps, a) == a);
  CHECK(otimes(eps, a).is_epsilon());
  CHECK(otimes(e, a) == a);
  CHECK(oplus(a, a) == a);
  CHECK(eps < a);
  CHECK_FALSE(a < eps);
}

TEST_CASE("decimal literals are read exactly") {
  CHECK(parse_number<Rational>("0.1") == q(1, 10));
  CHECK(parse_number<Rational>("-1e-3") == q(-1, 1000));
  CHECK(parse_number<Rational>("6/4") == q(3, 2));
  CHECK(parse_number<double>("0.1") == 0.1);
  CHECK(parse_number<double>("1/3") == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK_THROWS_AS(parse_number<Rational>("1/0"), InputError);
  CHECK_THROWS_AS(parse_number<Rational>("abc"), InputError);
}

TEST_CASE("mat_mul examples") {
  const auto a = M("0 -1; -1 0");
  CHECK(mat_mul(a, a) == a);
  CHECK(mat_mul(a, Matrix<Rational>::identity(2)) == a);
  const auto swap = M("eps 0; 0 eps");
  CHECK(mat_mul(swap, swap) == Matrix<Rational>::identity(2));
  CHECK_THROWS_AS(mat_mul(a, Matrix<Rational>::identity(3)), InputError);
}

TEST_CASE("mat_vec examples") {
  const auto a = cjn({1, 2, 3});
  const auto x = V({-2, -3, 0});
  CHECK(mat_vec(a, x) == V({1, 0, 3}));
  CHECK(mat_vec(a, x) == scale(Scalar<Rational>(Rational(3)), x));
  CHECK(mat_vec(Matrix<Rational>::identity(3), x) == x);
  CHECK_THROWS_AS(mat_vec(a, V({0, 0})), InputError);
}

TEST_CASE("mat_power and mat_oplus examples") {
  const auto swap = M("eps 0; 0 eps");
  CHECK(mat_power(swap, 2) == Matrix<Rational>::identity(2));
  CHECK(mat_power(swap, 3) == swap);
  const auto a = M("0 -1; -1 0");
  CHECK(mat_power(a, 5) == a);
  CHECK(mat_power(a, 1) == a);
  CHECK(mat_power(a, 0) == Matrix<Rational>::identity(2));
  CHECK(mat_oplus(a, a) == a);
  CHECK(mat_oplus(a, Matrix<Rational>(2)) == a);
  CHECK(mat_oplus(a, M("-5 3; eps 0")) == M("0 3; -1 0"));
}

TEST_CASE("row-finiteness predicates") {
  const auto a = M("1 eps; eps eps");
  CHECK_FALSE(a.is_row_finite());
  CHECK(a.first_epsilon_row() == 1u);
  CHECK(M("eps 0; 0 eps").is_row_finite());
  CHECK(Matrix<Rational>(3).is_all_epsilon());
}

TEST_CASE("semiring laws on sampled scalars and matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const auto a = random_matrix(rng, k, 0.3);
    const auto b = random_matrix(rng, k, 0.3);
    const auto c = random_matrix(rng, k, 0.3);
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    CHECK(mat_oplus(mat_oplus(a, b), c) == mat_oplus(a, mat_oplus(b, c)));
    CHECK(mat_mul(a, mat_oplus(b, c)) == mat_oplus(mat_mul(a, b), mat_mul(a, c)));
    CHECK(mat_mul(mat_oplus(a, b), c) == mat_oplus(mat_mul(a, c), mat_mul(b, c)));
    CHECK(mat_mul(Matrix<Rational>(k), a).is_all_epsilon());
    CHECK(mat_mul(Matrix<Rational>::identity(k), a) == a);

    const auto u = random_vector(rng, k);
    const auto v = random_vector(rng, k);
    CHECK(mat_vec(a, vec_oplus(u, v)) == vec_oplus(mat_vec(a, u), mat_vec(a, v)));

    const unsigned long m = 1 + trial % 3;
    const unsigned long n = 1 + trial % 5;
    CHECK(mat_power(a, m + n) == mat_mul(mat_power(a, m), mat_power(a, n)));
  }
}

TEST_CASE("float associativity within tolerance") {
  Rng rng(5);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 4;
    std::vector<Matrix<double>> abc(3, Matrix<double>(k));
    for (auto& m : abc) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = Scalar<double>(entry(rng) / 3.0);
      }
    }
    CHECK(nearly_equal(mat_mul(mat_mul(abc[0], abc[1]), abc[2]),
                       mat_mul(abc[0], mat_mul(abc[1], abc[2])), 1e-12));
  }
}

TEST_CASE("compact matrix text form") {
  const auto a = M("1, eps; -1/2 0");
  CHECK(a(0, 1).is_epsilon());
  CHECK(a(1, 0).value() == q(-1, 2));
  CHECK_THROWS_AS(M("1 2; 3"), InputError);
}

}
