#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcube/grassmann.hpp"
#include "qcube/matrix.hpp"
#include "qcube/qpoly.hpp"
#include "qcube/treecount.hpp"

namespace qcube {

/// Symmetric tridiagonal Laplacian block acting on the ranks k..n-k of a
/// symmetric Jordan chain, evaluated at a real point q0. diag[i] holds the
/// entry at rank j = k+i, offdiag[i] the entry coupling ranks k+i, k+i+1.
/// For k < n/2 every off-diagonal entry is strictly negative, so all
/// eigenvalues of the block are simple.
struct TridiagonalBlock {
  int n = 0, k = 0;
  double q0 = 0.0;
  std::vector<double> diag;
  std::vector<double> offdiag;

  int size() const { return static_cast<int>(diag.size()); }
  double max_norm() const {
    double m = 0.0;
    for (double d : diag) m = std::max(m, std::abs(d));
    for (double e : offdiag) m = std::max(m, std::abs(e));
    return m;
  }
};

/// Block for ranks k..n-k: diagonal [j]+[n-j], off-diagonal coupling of
/// ranks j, j+1 equal to -sqrt(q0^k [j+1-k][n-k-j]).
inline TridiagonalBlock laplacian_block(int n, int k, double q0) {
  if (n < 0 || k < 0 || 2 * k > n)
    throw std::invalid_argument("laplacian_block: 0 <= k <= n/2");
  TridiagonalBlock b;
  b.n = n;
  b.k = k;
  b.q0 = q0;
  const double qk = std::pow(q0, k);
  for (int j = k; j <= n - k; ++j) {
    b.diag.push_back(qint(j).eval(q0) + qint(n - j).eval(q0));
    if (j < n - k)
      b.offdiag.push_back(
          -std::sqrt(qk * qint(j + 1 - k).eval(q0) * qint(n - k - j).eval(q0)));
  }
  return b;
}

inline Matrix<double> to_dense(const TridiagonalBlock& b) {
  const size_t m = static_cast<size_t>(b.size());
  Matrix<double> a(m, m);
  for (size_t i = 0; i < m; ++i) {
    a(i, i) = b.diag[i];
    if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = b.offdiag[i];
  }
  return a;
}

namespace detail {

// three-term expansion along the first column; also reports the largest
// intermediate magnitude (the cancellation scale of the recursion)
inline std::pair<double, double> trailing_minor_det_scaled(const TridiagonalBlock& b,
                                                           int j_start) {
  if (j_start < b.k || j_start > b.n - b.k + 1)
    throw std::invalid_argument("trailing_minor_det: j out of range");
  double det2 = 1.0;  // det for j = n-k+1
  double det1 = 1.0;
  double scale = 1.0;
  for (int j = b.n - b.k; j >= j_start; --j) {
    size_t i = static_cast<size_t>(j - b.k);
    double off2 = (j <= b.n - b.k - 1) ? b.offdiag[i] * b.offdiag[i] : 0.0;
    double det = b.diag[i] * det1 - off2 * det2;
    scale = std::max({scale, std::abs(b.diag[i] * det1), std::abs(off2 * det2)});
    det2 = det1;
    det1 = det;
  }
  return {det1, scale};
}

}  // namespace detail

/// Determinant of the trailing principal submatrix on ranks j_start..n-k.
/// The empty matrix (j_start = n-k+1) has determinant 1.
inline double trailing_minor_det(const TridiagonalBlock& b, int j_start) {
  return detail::trailing_minor_det_scaled(b, j_start).first;
}

/// |det of trailing block - factor_poly(n,k,j)(q0)| <= rtol * scale, where
/// scale is |expected| except at the singular j = 0 corner (expected value
/// exactly 0), where the recursion's own cancellation scale is the only
/// meaningful yardstick for double precision.
inline bool det_identity_check(int n, int k, int j, double q0, double rtol = 1e-8) {
  TridiagonalBlock b = laplacian_block(n, k, q0);
  auto [got, cancel_scale] = detail::trailing_minor_det_scaled(b, j);
  double want = factor_poly(n, k, j).eval(q0);
  double denom = std::max(std::abs(want), 1.0);
  if (want == 0.0) denom = std::max(denom, cancel_scale);
  return std::abs(got - want) <= rtol * denom;
}

/// Length ratio along an orthogonal symmetric Jordan chain starting at
/// rank k: sqrt(q0^k [u+1-k][n-k-u]) evaluated at q0.
inline double chain_singular_value(int n, int k, int u, double q0) {
  if (k < 0 || 2 * k > n || u < k || u >= n - k)
    throw std::invalid_argument("chain_singular_value: need k <= u < n-k");
  return std::sqrt(std::pow(q0, k) * qint(u + 1 - k).eval(q0) *
                   qint(n - k - u).eval(q0));
}

/// Exact polynomial identities behind the singular values, for every
/// 0 <= k <= n/2 and k <= u < n-k:
///  (a) q^k [u+1-k][n-k-u] = [u+1][n-u] - [k][n-k+1]
///  (b) [u+1-k] [n-2k, u+1-k] = [n-k-u] [n-2k, u-k]   (square-free form of
///      the alternate singular-value expression, denominators cleared)
inline bool singular_value_identity_check(int n) {
  for (int k = 0; 2 * k <= n; ++k)
    for (int u = k; u < n - k; ++u) {
      QPoly lhs_a = QPoly::monomial(1, k) * qint(u + 1 - k) * qint(n - k - u);
      QPoly rhs_a = qint(u + 1) * qint(n - u) - qint(k) * qint(n - k + 1);
      if (lhs_a != rhs_a) return false;
      QPoly lhs_b = qint(u + 1 - k) * qbinom(n - 2 * k, u + 1 - k);
      QPoly rhs_b = qint(n - k - u) * qbinom(n - 2 * k, u - k);
      if (lhs_b != rhs_b) return false;
    }
  return true;
}

namespace detail {

/// Number of eigenvalues of the block strictly below x (Sturm count).
inline int sturm_count_below(const TridiagonalBlock& b, double x) {
  const int m = b.size();
  int cnt = 0;
  double q = 1.0;
  const double tiny = 1e-300;
  for (int i = 0; i < m; ++i) {
    double e2 = (i > 0) ? b.offdiag[static_cast<size_t>(i - 1)] *
                              b.offdiag[static_cast<size_t>(i - 1)]
                        : 0.0;
    q = b.diag[static_cast<size_t>(i)] - x - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = tiny;
    if (q < 0.0) ++cnt;
  }
  return cnt;
}

}  // namespace detail

/// All eigenvalues of the block, ascending, by bisection on Sturm counts.
/// Guaranteed absolute accuracy 1e-10 times the matrix max-norm; the
/// bisection actually runs to ~1e-13 * norm so the -1e-9 positive
/// semidefiniteness slack stays meaningful on large-norm blocks.
inline std::vector<double> block_eigenvalues(const TridiagonalBlock& b) {
  const int m = b.size();
  if (m == 0) return {};
  double norm = b.max_norm();
  if (norm == 0.0) return std::vector<double>(static_cast<size_t>(m), 0.0);
  const double tol = 1e-13 * norm;
  // Gershgorin enclosure
  double lo = b.diag[0], hi = b.diag[0];
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(b.offdiag[static_cast<size_t>(i - 1)]);
    if (i + 1 < m) r += std::abs(b.offdiag[static_cast<size_t>(i)]);
    lo = std::min(lo, b.diag[static_cast<size_t>(i)] - r);
    hi = std::max(hi, b.diag[static_cast<size_t>(i)] + r);
  }
  std::vector<double> eig;
  for (int idx = 0; idx < m; ++idx) {
    double a = lo, c = hi;
    for (int iter = 0; iter < 200 && c - a > tol; ++iter) {
      double mid = 0.5 * (a + c);
      if (detail::sturm_count_below(b, mid) <= idx)
        a = mid;
      else
        c = mid;
    }
    eig.push_back(0.5 * (a + c));
  }
  return eig;
}

/// Rebuilds the full Laplacian spectrum of the order-(n,p) lattice graph
/// from the tridiagonal blocks: block k contributes its eigenvalues with
/// multiplicity qbinom(n,k) - qbinom(n,k-1) evaluated at p. Compares, after
/// sorting, with a dense Jacobi eigensolve of the brute-force Laplacian.
inline bool spectrum_reconstruction_check(int n, int p, double tol = 1e-6) {
  mpz_class total = 0;
  for (int k = 0; k <= n; ++k) total += qbinom(n, k).eval(mpz_class(p));
  if (total > 400)
    throw guard_error("spectrum_reconstruction_check: dense eigensolve budget is "
                      "400 vertices, lattice has " + total.get_str());
  auto lat = SubspaceLattice::get(n, p);
  std::vector<double> predicted;
  for (int k = 0; 2 * k <= n; ++k) {
    auto eig = block_eigenvalues(laplacian_block(n, k, static_cast<double>(p)));
    mpz_class mult = (qbinom(n, k) - qbinom(n, k - 1)).eval(mpz_class(p));
    for (double x : eig)
      for (long c = 0; c < mult.get_si(); ++c) predicted.push_back(x);
  }
  std::sort(predicted.begin(), predicted.end());
  auto actual = jacobi_eigenvalues(to_double(lat->laplacian()));
  if (predicted.size() != actual.size()) return false;
  for (size_t i = 0; i < actual.size(); ++i)
    if (std::abs(predicted[i] - actual[i]) > tol) return false;
  return true;
}

struct ScanBlock {
  int k = 0;
  std::vector<double> eigenvalues;
};

struct ScanEntry {
  int n = 0;
  double q = 0.0;
  std::vector<ScanBlock> blocks;
  double min_cross_block_gap = 0.0;
  int distinct_count = 0;
  int conjectured_count = 0;
};

/// Exploratory scan of block spectra: per (n, q0) reports all block
/// eigenvalues, the smallest gap between eigenvalues of *different* blocks,
/// and the observed vs conjectured number of distinct eigenvalues
/// ((floor(n/2)+1) * (ceil(n/2)+1)). Report only; never a pass/fail gate.
inline std::vector<ScanEntry> distinct_eigenvalue_scan(int n_max,
                                                       const std::vector<double>& qs) {
  std::vector<ScanEntry> out;
  for (int n = 1; n <= n_max; ++n)
    for (double q0 : qs) {
      ScanEntry e;
      e.n = n;
      e.q = q0;
      std::vector<std::pair<double, int>> all;  // (eigenvalue, block)
      for (int k = 0; 2 * k <= n; ++k) {
        ScanBlock sb;
        sb.k = k;
        sb.eigenvalues = block_eigenvalues(laplacian_block(n, k, q0));
        for (double x : sb.eigenvalues) all.push_back({x, k});
        e.blocks.push_back(std::move(sb));
      }
      std::sort(all.begin(), all.end());
      double scale = std::max(1.0, std::abs(all.back().first));
      double gap = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i + 1 < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
          if (all[i].second == all[j].second) continue;
          gap = std::min(gap, std::abs(all[j].first - all[i].first));
        }
      e.min_cross_block_gap = all.size() > 1 ? gap : 0.0;
      int distinct = all.empty() ? 0 : 1;
      for (size_t i = 1; i < all.size(); ++i)
        if (all[i].first - all[i - 1].first > 1e-9 * scale) ++distinct;
      e.distinct_count = distinct;
      e.conjectured_count = (n / 2 + 1) * ((n + 1) / 2 + 1);
      out.push_back(std::move(e));
    }
  return out;
}

}  // namespace qcube
