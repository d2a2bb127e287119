#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "qcube/signed_sets.hpp"
#include "qcube/treecount.hpp"

using namespace qcube;

namespace {

QPoly poly(std::initializer_list<long> cs) {
  std::vector<mpz_class> v;
  for (long c : cs) v.emplace_back(c);
  return QPoly::from_coeffs(0, std::move(v));
}

using MaskPair = std::pair<uint32_t, uint32_t>;

std::set<MaskPair> as_set(int n) {
  std::set<MaskPair> out;
  for (const auto& s : *signed_sets(n)) out.insert({s.plain, s.barred});
  return out;
}

// summand of the generating polynomial for one explicit element
mpz_class term_of(const SignedSet& x, int n, const std::vector<mpz_class>& xs,
                  const std::vector<mpz_class>& ys, const mpz_class& z) {
  mpz_class acc = 1;
  for (int i = 1; i <= n; ++i) {
    if (x.plain & (1u << (i - 1))) acc *= xs[static_cast<size_t>(i - 1)];
    if (x.barred & (1u << (i - 1))) acc *= ys[static_cast<size_t>(i - 1)];
  }
  for (int e = 0; e < (n - x.size()) / 2; ++e) acc *= z;
  return acc;
}

}  // namespace

TEST_CASE("small families match the defining recursion") {
  CHECK(as_set(0) == std::set<MaskPair>{{0u, 0u}});
  CHECK(as_set(1) == std::set<MaskPair>{{0b1u, 0u}, {0u, 0b1u}});
  // S(2): {}, {1,2}, {1bar,2}, {1bar,2bar}
  CHECK(as_set(2) == std::set<MaskPair>{{0u, 0u}, {0b11u, 0u}, {0b10u, 0b01u}, {0u, 0b11u}});
  // S(3): {1},{1bar},{3},{3bar},{1,2,3},{1bar,2,3},{1bar,2bar,3},{1bar,2bar,3bar}
  CHECK(as_set(3) == std::set<MaskPair>{{0b001u, 0u},
                                        {0u, 0b001u},
                                        {0b100u, 0u},
                                        {0u, 0b100u},
                                        {0b111u, 0u},
                                        {0b110u, 0b001u},
                                        {0b100u, 0b011u},
                                        {0u, 0b111u}});
}

TEST_CASE("deterministic recursion order") {
  const auto& s2 = *signed_sets(2);
  REQUIRE(s2.size() == 4);
  CHECK(s2[0] == SignedSet{0b11u, 0u});   // {1,2}
  CHECK(s2[1] == SignedSet{0b10u, 0b1u}); // {1bar,2}
  CHECK(s2[2] == SignedSet{0u, 0b11u});   // {1bar,2bar}
  CHECK(s2[3] == SignedSet{0u, 0u});      // {} from S(0)
}

TEST_CASE("family sizes and element invariants") {
  for (int n = 0; n <= 20; ++n) {
    auto s = signed_sets(n);
    CHECK(s->size() == (1ull << n));
    size_t without_n = 0;
    for (const auto& x : *s) {
      CHECK((x.plain & x.barred) == 0u);
      CHECK(x.size() <= n);
      CHECK((n - x.size()) % 2 == 0);
      if (n >= 1 && !(x.plain & (1u << (n - 1)))) ++without_n;
    }
    if (n >= 1) CHECK(without_n == (1ull << (n - 1)));
  }
  CHECK_THROWS_AS(signed_sets(25), guard_error);
  CHECK_THROWS_AS(signed_sets(-1), std::invalid_argument);
}

TEST_CASE("generating polynomial, explicit structure at n = 2") {
  // distinct values keep the four summands apart:
  // z + x1 x2 + y1 x2 + y1 y2
  std::vector<mpz_class> xs{2, 3}, ys{5, 7};
  mpz_class z = 11;
  CHECK(signed_set_poly<mpz_class>(2, xs, ys, z) == 11 + 2 * 3 + 5 * 3 + 5 * 7);
  // distinct monomials show the same four-term structure symbolically
  std::vector<QPoly> xq{QPoly::monomial(1, 1), QPoly::monomial(1, 3)};
  std::vector<QPoly> yq{QPoly::monomial(1, 9), QPoly::monomial(1, 27)};
  QPoly p2 = signed_set_poly<QPoly>(2, xq, yq, QPoly::monomial(1, 81));
  CHECK(p2 == QPoly::monomial(1, 81) + QPoly::monomial(1, 4) +
                  QPoly::monomial(1, 12) + QPoly::monomial(1, 36));
}

TEST_CASE("generating polynomial edge cases") {
  std::vector<mpz_class> ones{1, 1, 1, 1};
  CHECK(signed_set_poly<mpz_class>(0, ones, ones, mpz_class(9)) == 1);
  CHECK(signed_set_poly<mpz_class>(1, ones, ones, mpz_class(9)) == 2);
  CHECK_THROWS_AS(signed_set_poly<mpz_class>(5, ones, ones, mpz_class(1)),
                  std::invalid_argument);
}

TEST_CASE("substitution sequences") {
  auto d31 = descending_qints(3, 1);
  REQUIRE(d31.size() == 4);
  CHECK(d31[0] == qint(2));
  CHECK(d31[1] == qint(1));
  CHECK(d31[2] == QPoly());
  CHECK(d31[3] == QPoly());
  auto e31 = ascending_qints(3, 1);
  CHECK(e31[0] == qint(1));
  CHECK(e31[1] == qint(2));
  CHECK(e31[2] == QPoly());
  auto d30 = descending_qints(3, 0);
  CHECK(d30[0] == qint(3));
  CHECK(d30[1] == qint(2));
  CHECK(d30[2] == qint(1));
  CHECK(d30[3] == QPoly());  // [0]
  auto d21 = descending_qints(2, 1);
  auto e21 = ascending_qints(2, 1);
  CHECK(d21[0] == qint(1));
  CHECK(e21[0] == qint(1));
  CHECK(d21[1] == QPoly());
  CHECK_THROWS_AS(descending_qints(3, 2), std::invalid_argument);
}

TEST_CASE("positive route reproduces the factor polynomials") {
  CHECK(factor_poly_via_sets(3, 1, 1) == poly({4, 3, 1}));
  CHECK(factor_poly_via_sets(5, 2, 3) == qint(2) + qint(3));
  CHECK(factor_poly_via_sets(5, 2, 2) == poly({4, 8, 7, 4, 1}));
  CHECK(factor_poly_via_sets(6, 3, 4) == QPoly(1));  // j = n-k+1
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; 2 * k <= n; ++k)
      for (int j = k; j <= n - k + 1; ++j) {
        CAPTURE(n, k, j);
        QPoly via = factor_poly_via_sets(n, k, j);
        CHECK(via == factor_poly(n, k, j));
        CHECK(via.is_nonneg());
      }
  CHECK_THROWS_AS(factor_poly_via_sets(4, 1, 0), std::invalid_argument);
}

TEST_CASE("three-term recurrence holds on random substitutions") {
  for (int n = 1; n <= 8; ++n) CHECK(recurrence_identity_check(n, 10, 42));
  CHECK_THROWS_AS(recurrence_identity_check(0, 5), std::invalid_argument);
}

TEST_CASE("a corrupted sum violates the recurrence") {
  // drop one summand from P(n+1) and the identity must fail
  const int n = 3;
  std::vector<mpz_class> xs{2, 3, 5, 7}, ys{11, 13, 17, 19};
  mpz_class z = 23;
  mpz_class pn1 = signed_set_poly<mpz_class>(n + 1, xs, ys, z);
  mpz_class pn = signed_set_poly<mpz_class>(n, xs, ys, z);
  mpz_class pn0 = signed_set_poly<mpz_class>(n - 1, xs, ys, z);
  mpz_class rhs = (xs[n] + ys[n]) * pn - (xs[n - 1] * ys[n] - z) * pn0;
  CHECK(pn1 == rhs);
  const auto& family = *signed_sets(n + 1);
  mpz_class corrupted = pn1 - term_of(family.front(), n + 1, xs, ys, z);
  CHECK(corrupted != rhs);  // all substitutions positive, term nonzero
}

TEST_CASE("classical product specialization") {
  // n=3, k=1: P(2, (2,1), (1,2), 3) = 3 + 2 + 1 + 2 = 8 = 2^2 * 1 * 2
  std::vector<mpz_class> d{2, 1}, e{1, 2};
  CHECK(signed_set_poly<mpz_class>(2, d, e, mpz_class(3)) == 8);
  CHECK(classical_product_check(3, 1));
  CHECK(classical_product_check(2, 1));
  CHECK(classical_product_check(4, 2));
  for (int n = 2; n <= 14; ++n)
    for (int k = 1; 2 * k <= n; ++k) CHECK(classical_product_check(n, k));
  CHECK_THROWS_AS(classical_product_check(4, 0), std::invalid_argument);
}
