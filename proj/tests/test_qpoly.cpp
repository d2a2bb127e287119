#include <catch2/catch_amalgamated.hpp>

#include "qcube/qpoly.hpp"
#include "qcube/serialize.hpp"
#include "test_util.hpp"

using namespace qcube;

namespace {
QPoly poly(std::initializer_list<long> cs, int valuation = 0) {
  std::vector<mpz_class> v;
  for (long c : cs) v.emplace_back(c);
  return QPoly::from_coeffs(valuation, std::move(v));
}
}  // namespace

TEST_CASE("q-integers") {
  CHECK(qint(0) == QPoly());
  CHECK(qint(1) == QPoly(1));
  CHECK(qint(3) == poly({1, 1, 1}));
  CHECK_THROWS_AS(qint(-1), std::invalid_argument);
}

TEST_CASE("Gaussian binomials against an independent subspace census") {
  // counts of k-dim subspaces of F_p^n, enumerated on explicit vector sets
  auto census42 = test::subspace_census(4, 2);
  CHECK(census42[2] == 35);
  CHECK(qbinom(4, 2).eval(mpz_class(2)) == 35);
  CHECK(qbinom(4, 2) == poly({1, 1, 2, 1, 1}));

  auto census33 = test::subspace_census(3, 3);
  long total = 0;
  for (auto [dim, count] : census33) total += count;
  CHECK(total == 28);
  mpz_class sym_total = 0;
  for (int k = 0; k <= 3; ++k) sym_total += qbinom(3, k).eval(mpz_class(3));
  CHECK(sym_total == 28);
  for (auto [dim, count] : census33)
    CHECK(qbinom(3, dim).eval(mpz_class(3)) == count);

  CHECK(qbinom(5, 0) == QPoly(1));
  CHECK(qbinom(3, -1) == QPoly());
  CHECK(qbinom(3, 4) == QPoly());
}

TEST_CASE("qbinom symmetry and q-Pascal consistency") {
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n, k);
      CHECK(qbinom(n, k) == qbinom(n, n - k));
      if (n >= 1)
        CHECK(qbinom(n, k) == qbinom(n - 1, k - 1) + qbinom(n - 1, k).shifted(k));
    }
}

TEST_CASE("qbinom at q=1 is the ordinary binomial") {
  auto pascal = test::pascal_triangle(30);
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(qbinom(n, k).eval(mpz_class(1)) ==
            pascal[static_cast<size_t>(n)][static_cast<size_t>(k)]);
}

TEST_CASE("basic arithmetic examples") {
  QPoly one_q = poly({1, 1});
  CHECK(one_q * one_q == poly({1, 2, 1}));
  QPoly x = poly({3, 0, -7, 2});
  CHECK(x - x == QPoly());
  CHECK((x - x).valuation() == 0);
  CHECK((x - x).coeffs().empty());
  // Laurent support
  CHECK(QPoly::monomial(1, -1) * QPoly::monomial(1, 1) == QPoly(1));
  QPoly lau = poly({2, 0, 5}, -3);
  CHECK(lau.valuation() == -3);
  CHECK(lau.degree() == -1);
  CHECK(lau.coeff(-3) == 2);
  CHECK(lau.coeff(-1) == 5);
  CHECK(lau.coeff(0) == 0);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    QPoly a = test::random_poly(rng, 64, true);
    QPoly b = test::random_poly(rng, 64, true);
    QPoly c = test::random_poly(rng, 64, true);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a - a == QPoly());
  }
}

TEST_CASE("evaluation") {
  CHECK(poly({1, 1, 1}).eval(mpz_class(2)) == 7);
  CHECK(QPoly().eval(mpz_class(5)) == 0);
  CHECK(QPoly().eval(mpq_class(5)) == 0);

  mpq_class half(1, 2);
  CHECK(poly({1, 2}).eval(half) == 2);  // 1 + 2*(1/2)

  // Laurent evaluation
  QPoly lau = QPoly::monomial(3, -2);  // 3 q^-2
  CHECK(lau.eval(mpq_class(2)) == mpq_class(3, 4));
  CHECK_THROWS_AS(lau.eval(mpq_class(0)), std::domain_error);
  CHECK_THROWS_AS(lau.eval(mpz_class(2)), std::domain_error);

  CHECK(poly({4, 3, 1}).eval(2.0) == Catch::Approx(14.0));
  CHECK(QPoly::monomial(1, -1).eval(2.0) == Catch::Approx(0.5));
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 20);
  for (int trial = 0; trial < 30; ++trial) {
    QPoly a = test::random_poly(rng, 32);
    QPoly b = test::random_poly(rng, 32);
    mpq_class q0(num(rng), den(rng));
    q0.canonicalize();
    CHECK((a * b).eval(q0) == a.eval(q0) * b.eval(q0));
    CHECK((a + b).eval(q0) == a.eval(q0) + b.eval(q0));
  }
}

TEST_CASE("nonnegativity predicate") {
  CHECK(poly({4, 3, 1}).is_nonneg());
  CHECK_FALSE(poly({-1, 1}).is_nonneg());
  CHECK(QPoly().is_nonneg());
}

TEST_CASE("string rendering") {
  CHECK(poly({4, 3, 1}).str() == "4+3q+q^2");
  CHECK(QPoly().str() == "0");
  CHECK(QPoly(1).str() == "1");
  CHECK(poly({0, 1}).str() == "q");
  CHECK(poly({1, -1}).str() == "1-q");
  CHECK(QPoly::monomial(2, -2).str() == "2q^-2");
  CHECK(poly({1}, 10).str(true) == "q^{10}");
}

TEST_CASE("q-factorial") {
  CHECK(qfactorial(0) == QPoly(1));
  CHECK(qfactorial(1) == QPoly(1));
  CHECK(qfactorial(3) == poly({1, 2, 2, 1}));  // [1][2][3]
}

TEST_CASE("JSON serialization shape") {
  json j = to_json(poly({4, 3, 1}));
  CHECK(j["valuation"] == 0);
  CHECK(j["coeffs"] == json::array({"4", "3", "1"}));
  json z = to_json(QPoly());
  CHECK(z["valuation"] == 0);
  CHECK(z["coeffs"].empty());
  // big coefficients survive as decimal strings
  mpz_class big("123456789012345678901234567890");
  json bj = to_json(QPoly(big));
  CHECK(bj["coeffs"][0] == "123456789012345678901234567890");
}

TEST_CASE("pow") {
  CHECK(pow(poly({1, 1}), 2) == poly({1, 2, 1}));
  CHECK(pow(poly({1, 1}), 0) == QPoly(1));
  CHECK(pow(QPoly(), 3) == QPoly());
}
