#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcube/grassmann.hpp"
#include "qcube/matrix.hpp"
#include "qcube/qpoly.hpp"
#include "qcube/spectral.hpp"

namespace qcube {

/// Image type of the block diagonalization: one dense real block per
/// k = 0..floor(n/2), block k of size p_k = n-2k+1 with rows and columns
/// indexed by the ranks k..n-k.
struct BlockDiagonal {
  int n = 0;
  std::vector<Matrix<double>> blocks;

  int block_size(int k) const { return n - 2 * k + 1; }
};

/// Exact Laurent-polynomial scalar carried by block k of the image of the
/// orbit-basis element (i, j, t):
///   sum_u (-1)^(u-t) q^(C(u-t,2) - k u) [u t][n-2k, u-k][n-k-u, i-u][n-k-u, j-u],
/// the sum effectively running over max(k,t) <= u <= min(i, j, n-k).
inline QPoly image_scalar_poly(int n, int i, int j, int k, int t) {
  if (n < 0 || i < 0 || j < 0 || k < 0 || t < 0 || i > n || j > n || k > n || t > n)
    throw std::invalid_argument("image_scalar_poly: indices in 0..n");
  QPoly acc;
  int lo = std::max(k, t);
  int hi = std::min({i, j, n - k});
  for (int u = lo; u <= hi; ++u) {
    int e = (u - t) * (u - t - 1) / 2 - k * u;
    QPoly term = QPoly::monomial((u - t) % 2 == 0 ? 1 : -1, e) * qbinom(u, t) *
                 qbinom(n - 2 * k, u - k) * qbinom(n - k - u, i - u) *
                 qbinom(n - k - u, j - u);
    acc += term;
  }
  return acc;
}

/// Eigenvalue polynomial of the q-Johnson scheme on i-dimensional
/// subspaces: tau_{i,t,k} as an exact polynomial in q.
inline QPoly johnson_eigenvalue_poly(int n, int i, int t, int k) {
  if (n < 0 || i < 0 || 2 * i > n || t < 0 || t > i || k < 0 || k > i)
    throw std::invalid_argument("johnson_eigenvalue_poly: need i <= n/2, t,k <= i");
  QPoly acc;
  for (int u = std::max(t, k); u <= i; ++u) {
    int e = (u - t) * (u - t - 1) / 2 + k * (i - u);
    acc += QPoly::monomial((u - t) % 2 == 0 ? 1 : -1, e) * qbinom(u, t) *
           qbinom(n - k - u, i - u) * qbinom(i - k, i - u);
  }
  return acc;
}

/// All valid orbit-basis triples (i, j, t); there are C(n+3, 3) of them.
inline std::vector<std::array<int, 3>> orbit_basis_triples(int n) {
  std::vector<std::array<int, 3>> out;
  for (int t = 0; t <= n; ++t)
    for (int i = t; i <= n; ++i)
      for (int j = t; i + j - t <= n; ++j) out.push_back({i, j, t});
  return out;
}

/// Image of the orbit-basis element (i, j, t) under the block
/// diagonalization, evaluated at a real q0 > 1: block k is zero unless
/// k <= i, j <= n-k, and otherwise equals
///   q0^(k(i+j)/2) [n-2k, i-k]^(-1/2) [n-2k, j-k]^(-1/2) beta * E_{i,j,k}.
inline BlockDiagonal orbit_image(int n, int i, int j, int t, double q0) {
  SubspaceLattice::require_valid_triple(n, i, j, t);
  BlockDiagonal bd;
  bd.n = n;
  for (int k = 0; 2 * k <= n; ++k) {
    int pk = n - 2 * k + 1;
    Matrix<double> block(static_cast<size_t>(pk), static_cast<size_t>(pk));
    if (k <= std::min(i, j) && std::max(i, j) <= n - k) {
      double scalar = std::pow(q0, 0.5 * k * (i + j)) /
                      std::sqrt(qbinom(n - 2 * k, i - k).eval(q0)) /
                      std::sqrt(qbinom(n - 2 * k, j - k).eval(q0)) *
                      image_scalar_poly(n, i, j, k, t).eval(q0);
      block(static_cast<size_t>(i - k), static_cast<size_t>(j - k)) = scalar;
    }
    bd.blocks.push_back(std::move(block));
  }
  return bd;
}

/// Exact dimension count: sum of squared block sizes equals C(n+3, 3).
inline bool block_dimension_check(int n) {
  if (n < 0) throw std::invalid_argument("block_dimension_check: n >= 0");
  long lhs = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    long pk = n - 2 * k + 1;
    lhs += pk * pk;
  }
  return mpz_class(lhs) == binom(n + 3, 3);
}

/// Deterministic core of the q-binomial inversion identity: given any
/// sequence a_0..a_n, forms b_t = sum_u [u t] a_u and verifies
/// a_t = sum_u (-1)^(u-t) q^C(u-t,2) [u t] b_u, all arithmetic exact.
inline bool qbinomial_inversion_roundtrip(const std::vector<QPoly>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<QPoly> b(a.size());
  for (int t = 0; t <= n; ++t)
    for (int u = t; u <= n; ++u)
      b[static_cast<size_t>(t)] += qbinom(u, t) * a[static_cast<size_t>(u)];
  for (int t = 0; t <= n; ++t) {
    QPoly rec;
    for (int u = t; u <= n; ++u)
      rec += QPoly::monomial((u - t) % 2 == 0 ? 1 : -1, (u - t) * (u - t - 1) / 2) *
             qbinom(u, t) * b[static_cast<size_t>(u)];
    if (rec != a[static_cast<size_t>(t)]) return false;
  }
  return true;
}

/// The inversion identity on random exact polynomial sequences.
inline bool qbinomial_inversion_check(int n, unsigned seed = 0) {
  if (n < 0 || n > 10)
    throw std::invalid_argument("qbinomial_inversion_check: 0 <= n <= 10");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> cdist(-9, 9);
  std::uniform_int_distribution<int> ddist(0, 5);
  std::vector<QPoly> a;
  for (int t = 0; t <= n; ++t) {
    std::vector<mpz_class> cs;
    int deg = ddist(rng);
    for (int d = 0; d <= deg; ++d) cs.emplace_back(cdist(rng));
    a.push_back(QPoly::from_coeffs(0, std::move(cs)));
  }
  return qbinomial_inversion_roundtrip(a);
}

namespace detail {

inline bool close_rel(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// Spectrum check for the q-Johnson scheme: for each i <= n/2 and t <= i,
/// the orbit block M^t_{i,i} over the lattice at prime p must have spectrum
/// { tau_{i,t,k}(p) with multiplicity (qbinom(n,k)-qbinom(n,k-1))(p) },
/// k = 0..i, within `tol` after sorting.
inline bool johnson_spectrum_check(int n, int p, double tol = 1e-6) {
  auto lat = SubspaceLattice::get(n, p);
  for (int i = 0; 2 * i <= n; ++i)
    for (int t = 0; t <= i; ++t) {
      auto block = lat->orbit_block(i, i, t);
      auto actual = jacobi_eigenvalues(to_double(block));
      std::vector<double> expected;
      for (int k = 0; k <= i; ++k) {
        mpz_class tv = johnson_eigenvalue_poly(n, i, t, k).eval(mpz_class(p));
        mpz_class mult = (qbinom(n, k) - qbinom(n, k - 1)).eval(mpz_class(p));
        for (long c = 0; c < mult.get_si(); ++c) expected.push_back(tv.get_d());
      }
      std::sort(expected.begin(), expected.end());
      if (expected.size() != actual.size()) return false;
      for (size_t s = 0; s < actual.size(); ++s)
        if (std::abs(expected[s] - actual[s]) > tol) return false;
    }
  return true;
}

/// Homomorphism check at q0 = p: for sampled orbit-basis pairs with
/// matching inner dimension, the blockwise product of images equals the
/// image of the oracle structure-constant expansion, and the trace of the
/// orbit matrix equals sum_k q_k * trace(block k of its image).
inline bool homomorphism_check(int n, int p, int samples, unsigned seed = 0,
                               double rtol = 1e-8) {
  auto lat = SubspaceLattice::get(n, p);
  auto triples = orbit_basis_triples(n);
  const double q0 = static_cast<double>(p);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, triples.size() - 1);

  std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> pairs;
  // exhaustive when small, sampled otherwise
  size_t all_pairs = 0;
  for (const auto& a : triples)
    for (const auto& b : triples)
      if (a[1] == b[0]) ++all_pairs;
  if (all_pairs <= static_cast<size_t>(samples)) {
    for (const auto& a : triples)
      for (const auto& b : triples)
        if (a[1] == b[0]) pairs.push_back({a, b});
  } else {
    while (pairs.size() < static_cast<size_t>(samples)) {
      auto a = triples[pick(rng)];
      auto b = triples[pick(rng)];
      if (a[1] != b[0]) continue;
      pairs.push_back({a, b});
    }
  }

  std::vector<mpz_class> qk;  // multiplicities at p
  for (int k = 0; 2 * k <= n; ++k)
    qk.push_back((qbinom(n, k) - qbinom(n, k - 1)).eval(mpz_class(p)));

  for (const auto& [a, b] : pairs) {
    auto [i, j, t1] = a;
    auto [j2, l, t2] = b;
    auto cs = structure_constants(n, p, i, j, t1, j2, l, t2);
    auto pa = orbit_image(n, i, j, t1, q0);
    auto pb = orbit_image(n, j2, l, t2, q0);
    for (int k = 0; 2 * k <= n; ++k) {
      auto lhs = pa.blocks[static_cast<size_t>(k)] * pb.blocks[static_cast<size_t>(k)];
      Matrix<double> rhs(lhs.rows(), lhs.cols());
      for (const auto& [s, c] : cs) {
        if (!SubspaceLattice::valid_triple(n, i, l, s)) continue;
        rhs += orbit_image(n, i, l, s, q0).blocks[static_cast<size_t>(k)] *
               static_cast<double>(c);
      }
      for (size_t r = 0; r < lhs.rows(); ++r)
        for (size_t c = 0; c < lhs.cols(); ++c)
          if (!detail::close_rel(lhs(r, c), rhs(r, c), rtol)) return false;
    }
    // trace identity for the first element of the pair
    double want = 0.0;
    if (i == j && t1 == i) want = static_cast<double>(lat->dim_count(i));
    double got = 0.0;
    for (int k = 0; 2 * k <= n; ++k)
      got += qk[static_cast<size_t>(k)].get_d() *
             pa.blocks[static_cast<size_t>(k)].trace();
    if (!detail::close_rel(got, want, rtol)) return false;
  }
  return true;
}

/// Ties the block diagonalization back to the tridiagonal blocks: the
/// Laplacian written in the orbit basis as deg - U - D, pushed through the
/// block map, must reproduce laplacian_block(n, k, q0) for every k.
inline bool laplacian_block_consistency_check(int n, double q0, double tol = 1e-8) {
  for (int k = 0; 2 * k <= n; ++k) {
    int pk = n - 2 * k + 1;
    Matrix<double> acc(static_cast<size_t>(pk), static_cast<size_t>(pk));
    for (int i = k; i <= n - k; ++i) {
      double deg = qint(i).eval(q0) + qint(n - i).eval(q0);
      acc += orbit_image(n, i, i, i, q0).blocks[static_cast<size_t>(k)] * deg;
    }
    for (int i = k; i < n - k; ++i) {
      acc -= orbit_image(n, i + 1, i, i, q0).blocks[static_cast<size_t>(k)];
      acc -= orbit_image(n, i, i + 1, i, q0).blocks[static_cast<size_t>(k)];
    }
    auto want = to_dense(laplacian_block(n, k, q0));
    for (size_t r = 0; r < want.rows(); ++r)
      for (size_t c = 0; c < want.cols(); ++c)
        if (!detail::close_rel(acc(r, c), want(r, c), tol)) return false;
  }
  return true;
}

}  // namespace qcube
