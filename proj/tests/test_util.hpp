#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "qcube/qpoly.hpp"

namespace qcube::test {

/// Random polynomial with arbitrary-precision coefficients (up to ~96 bits,
/// signed), degree <= max_degree; occasionally the zero polynomial.
inline QPoly random_poly(std::mt19937& rng, int max_degree = 64,
                         bool laurent = false) {
  std::uniform_int_distribution<int> len_dist(0, max_degree + 1);
  std::uniform_int_distribution<uint64_t> word;
  std::uniform_int_distribution<int> small(0, 9), sign(0, 1), val_dist(-8, 8);
  int len = len_dist(rng);
  std::vector<mpz_class> cs;
  for (int i = 0; i < len; ++i) {
    mpz_class c(word(rng));
    c <<= 32;
    c += static_cast<unsigned long>(word(rng) & 0xffffffffu);
    if (small(rng) < 3) c = small(rng);  // mix in small/zero coefficients
    if (sign(rng)) c = -c;
    cs.push_back(std::move(c));
  }
  return QPoly::from_coeffs(laurent ? val_dist(rng) : 0, std::move(cs));
}

/// Independent census of the subspaces of F_p^n, organized dim -> count.
/// Works on explicit vector sets (BFS over span closures); shares no code
/// with the lattice enumeration it is used to validate.
inline std::map<int, long> subspace_census(int n, int p) {
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  // vectors encoded as base-p integers
  auto add = [&](long a, long b) {
    long out = 0, mul = 1;
    for (int i = 0; i < n; ++i) {
      out += ((a % p + b % p) % p) * mul;
      a /= p;
      b /= p;
      mul *= p;
    }
    return out;
  };
  auto scale = [&](long a, int c) {
    long out = 0, mul = 1;
    for (int i = 0; i < n; ++i) {
      out += (a % p * c % p) * mul;
      a /= p;
      mul *= p;
    }
    return out;
  };
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> queue;
  std::vector<long> zero{0};
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto s = queue.back();
    queue.pop_back();
    std::set<long> members(s.begin(), s.end());
    for (long v = 1; v < total; ++v) {
      if (members.count(v)) continue;
      std::set<long> bigger;
      for (long a : s)
        for (int c = 0; c < p; ++c) bigger.insert(add(a, scale(v, c)));
      std::vector<long> key(bigger.begin(), bigger.end());
      if (seen.insert(key).second) queue.push_back(key);
    }
  }
  std::map<int, long> census;
  for (const auto& s : seen) {
    int dim = 0;
    long size = static_cast<long>(s.size());
    while (size > 1) {
      size /= p;
      ++dim;
    }
    ++census[dim];
  }
  return census;
}

/// Ordinary Pascal triangle, independent of the gmp binomial.
inline std::vector<std::vector<long>> pascal_triangle(int nmax) {
  std::vector<std::vector<long>> t(static_cast<size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    t[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      t[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          t[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
          t[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
  }
  return t;
}

}  // namespace qcube::test
