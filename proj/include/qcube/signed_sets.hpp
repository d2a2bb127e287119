#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcube/qpoly.hpp"

namespace qcube {

/// An element of the signed-set family S(n): a subset of
/// {1..n} u {1-bar..n-bar}, stored as two bitmasks (bit i-1 <=> element i).
/// No index appears both plain and barred, and |X| has the parity of n.
struct SignedSet {
  uint32_t plain = 0;
  uint32_t barred = 0;

  int size() const { return std::popcount(plain) + std::popcount(barred); }
  bool operator==(const SignedSet& o) const {
    return plain == o.plain && barred == o.barred;
  }
};

inline constexpr int kSignedSetMaxN = 24;  // 2^n elements; memory guard

/// The family S(n), built by the recursion
///   S(0) = {{}}, S(1) = {{1},{1-bar}},
///   S(n+1) = {X+{n+1} : X in S(n)}
///          u {X+{(n+1)-bar} : X in S(n), plain n not in X}
///          u S(n-1),
/// in exactly that order (deterministic). Memoized across calls.
inline std::shared_ptr<const std::vector<SignedSet>> signed_sets(int n) {
  if (n < 0) throw std::invalid_argument("signed_sets: n >= 0");
  if (n > kSignedSetMaxN)
    throw guard_error("signed_sets: n > " + std::to_string(kSignedSetMaxN));
  static std::mutex mu;
  static std::vector<std::shared_ptr<const std::vector<SignedSet>>> levels;
  std::lock_guard<std::mutex> lock(mu);
  if (levels.empty()) {
    levels.push_back(std::make_shared<const std::vector<SignedSet>>(
        std::vector<SignedSet>{SignedSet{}}));
    levels.push_back(std::make_shared<const std::vector<SignedSet>>(
        std::vector<SignedSet>{SignedSet{1u, 0u}, SignedSet{0u, 1u}}));
  }
  while (static_cast<int>(levels.size()) <= n) {
    int m = static_cast<int>(levels.size());  // building S(m) from S(m-1), S(m-2)
    const auto& prev = *levels[static_cast<size_t>(m - 1)];
    const auto& prev2 = *levels[static_cast<size_t>(m - 2)];
    std::vector<SignedSet> out;
    out.reserve(prev.size() * 2);
    const uint32_t newbit = 1u << (m - 1);
    const uint32_t lastbit = 1u << (m - 2);
    for (const auto& x : prev) out.push_back({x.plain | newbit, x.barred});
    for (const auto& x : prev)
      if (!(x.plain & lastbit)) out.push_back({x.plain, x.barred | newbit});
    out.insert(out.end(), prev2.begin(), prev2.end());
    levels.push_back(std::make_shared<const std::vector<SignedSet>>(std::move(out)));
  }
  return levels[static_cast<size_t>(n)];
}

/// Generating polynomial over S(n): for each X the product of xs[i-1] over
/// plain i, times ys[i-1] over barred i, times z^((n-|X|)/2). Works over any
/// commutative ring type with 0/1 literals, + and * (QPoly, mpz_class, ...).
///
/// Products are built level by level along the S(n) recursion, so the whole
/// sum costs one ring multiplication per element.
template <class T>
T signed_set_poly(int n, const std::vector<T>& xs, const std::vector<T>& ys,
                  const T& z) {
  if (n < 0) throw std::invalid_argument("signed_set_poly: n >= 0");
  if (static_cast<int>(xs.size()) < n || static_cast<int>(ys.size()) < n)
    throw std::invalid_argument("signed_set_poly: need n variables");
  if (n == 0) return T{1};
  std::vector<T> prev{T{1}};          // products for S(0)
  std::vector<T> cur{xs[0], ys[0]};   // products for S(1)
  for (int l = 1; l < n; ++l) {
    const auto& sl = *signed_sets(l);
    std::vector<T> next;
    next.reserve(cur.size() * 2);
    const uint32_t lastbit = 1u << (l - 1);
    for (size_t i = 0; i < sl.size(); ++i) next.push_back(cur[i] * xs[l]);
    for (size_t i = 0; i < sl.size(); ++i)
      if (!(sl[i].plain & lastbit)) next.push_back(cur[i] * ys[l]);
    for (const auto& p : prev) next.push_back(p);
    prev = std::move(cur);
    cur = std::move(next);
  }
  const auto& sn = *signed_sets(n);
  std::vector<T> zpow(static_cast<size_t>(n / 2) + 1);
  zpow[0] = T{1};
  for (size_t e = 1; e < zpow.size(); ++e) zpow[e] = zpow[e - 1] * z;
  T acc{0};
  for (size_t i = 0; i < sn.size(); ++i)
    acc += cur[i] * zpow[static_cast<size_t>((n - sn[i].size()) / 2)];
  return acc;
}

/// Substitution sequence ([n-k], [n-k-1], ..., [k], 0, ..., 0), length n+1.
inline std::vector<QPoly> descending_qints(int n, int k) {
  if (k < 0 || 2 * k > n) throw std::invalid_argument("descending_qints: 0 <= k <= n/2");
  std::vector<QPoly> d(static_cast<size_t>(n) + 1);
  for (int i = 0; n - k - i >= k; ++i) d[static_cast<size_t>(i)] = qint(n - k - i);
  return d;
}

/// Substitution sequence ([k], [k+1], ..., [n-k], 0, ..., 0), length n+1.
inline std::vector<QPoly> ascending_qints(int n, int k) {
  if (k < 0 || 2 * k > n) throw std::invalid_argument("ascending_qints: 0 <= k <= n/2");
  std::vector<QPoly> e(static_cast<size_t>(n) + 1);
  for (int i = 0; k + i <= n - k; ++i) e[static_cast<size_t>(i)] = qint(k + i);
  return e;
}

/// Positive route to factor_poly(n,k,j): evaluates the generating polynomial
/// on m = n-k-j+1 positions with x_i = [n-k-i+1], y_i = [k+i-1] and
/// z = [k][n-k+1]. Every summand has nonnegative coefficients, so the result
/// is manifestly coefficient-nonnegative. Must equal factor_poly exactly.
inline QPoly factor_poly_via_sets(int n, int k, int j) {
  if (n < 0 || k < 0 || 2 * k > n || j < k || j > n - k + 1)
    throw std::invalid_argument("factor_poly_via_sets: (n,k,j) out of range");
  int m = n - k - j + 1;
  return signed_set_poly<QPoly>(m, descending_qints(n, k), ascending_qints(n, k),
                                qint(k) * qint(n - k + 1));
}

/// Checks the three-term recurrence
///   P(n+1) = (x_{n+1}+y_{n+1}) P(n) - (x_n y_{n+1} - z) P(n-1)
/// on `trials` independent uniform integer substitutions in [-1000, 1000],
/// evaluated exactly. A sound polynomial-identity test when repeated.
inline bool recurrence_identity_check(int n, int trials, unsigned seed = 0) {
  if (n < 1 || n > 16)
    throw std::invalid_argument("recurrence_identity_check: 1 <= n <= 16");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int t = 0; t < trials; ++t) {
    std::vector<mpz_class> xs, ys;
    for (int i = 0; i <= n; ++i) {
      xs.emplace_back(dist(rng));
      ys.emplace_back(dist(rng));
    }
    mpz_class z(dist(rng));
    mpz_class lhs = signed_set_poly<mpz_class>(n + 1, xs, ys, z);
    mpz_class pn = signed_set_poly<mpz_class>(n, xs, ys, z);
    mpz_class pn1 = signed_set_poly<mpz_class>(n - 1, xs, ys, z);
    mpz_class rhs = (xs[static_cast<size_t>(n)] + ys[static_cast<size_t>(n)]) * pn -
                    (xs[static_cast<size_t>(n - 1)] * ys[static_cast<size_t>(n)] - z) * pn1;
    if (lhs != rhs) return false;
  }
  return true;
}

/// Classical specialization: with integer sequences d = (n-k, ..., k),
/// e = (k, ..., n-k) and z = k(n-k+1), the generating polynomial equals
/// 2^(n-2k+1) * k * (k+1) * ... * (n-k). Exact integer comparison.
inline bool classical_product_check(int n, int k) {
  if (k < 1 || 2 * k > n)
    throw std::invalid_argument("classical_product_check: 1 <= k <= n/2");
  int m = n - 2 * k + 1;
  std::vector<mpz_class> d, e;
  for (int i = 0; i < m; ++i) {
    d.emplace_back(n - k - i);
    e.emplace_back(k + i);
  }
  mpz_class z = mpz_class(k) * (n - k + 1);
  mpz_class lhs = signed_set_poly<mpz_class>(m, d, e, z);
  mpz_class rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 2, static_cast<unsigned long>(m));
  for (int j = k; j <= n - k; ++j) rhs *= j;
  return lhs == rhs;
}

}  // namespace qcube
