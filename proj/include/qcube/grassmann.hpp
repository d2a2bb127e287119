#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcube/matrix.hpp"
#include "qcube/qpoly.hpp"

namespace qcube {

inline constexpr int kDefaultVertexGuard = 1500;

/// Vertex guard for the brute-force lattice; overridable via the
/// QCUBE_GUARD_VERTICES environment variable.
inline int vertex_guard() {
  if (const char* s = std::getenv("QCUBE_GUARD_VERTICES")) {
    long v = std::atol(s);
    if (v > 0) return static_cast<int>(v);
  }
  return kDefaultVertexGuard;
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// A subspace of F_p^n in reduced row-echelon form. RREF is a unique normal
/// form, so structural equality is subspace equality. Rows are stored
/// row-major as values in [0, p).
class Subspace {
 public:
  Subspace(int n, int p, std::vector<uint8_t> rref_rows)
      : n_(n), p_(p), rows_(std::move(rref_rows)) {
    if (n <= 0 || rows_.size() % static_cast<size_t>(n) != 0)
      throw std::invalid_argument("Subspace: bad row data");
  }

  int ambient_dim() const { return n_; }
  int field() const { return p_; }
  int dim() const { return static_cast<int>(rows_.size()) / n_; }
  uint8_t entry(int r, int c) const {
    return rows_[static_cast<size_t>(r) * n_ + c];
  }
  const std::vector<uint8_t>& rows() const { return rows_; }

  bool operator==(const Subspace& o) const {
    return n_ == o.n_ && p_ == o.p_ && rows_ == o.rows_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// Canonical order: (dim, pivot columns, entries lexicographic).
  bool operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    auto piv = pivot_columns(), opiv = o.pivot_columns();
    if (piv != opiv) return piv < opiv;
    return rows_ < o.rows_;
  }

  std::vector<int> pivot_columns() const {
    std::vector<int> piv;
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < n_; ++c)
        if (entry(r, c) != 0) {
          piv.push_back(c);
          break;
        }
    return piv;
  }

  /// Reduces v in place against the RREF rows; returns true iff v reduces
  /// to zero (i.e. v was in the span).
  bool reduces_to_zero(std::vector<uint8_t>& v) const {
    for (int r = 0; r < dim(); ++r) {
      int c = 0;
      while (c < n_ && entry(r, c) == 0) ++c;
      if (c == n_ || v[static_cast<size_t>(c)] == 0) continue;
      int f = v[static_cast<size_t>(c)];  // pivot entry is 1
      for (int j = c; j < n_; ++j)
        v[static_cast<size_t>(j)] =
            static_cast<uint8_t>((v[static_cast<size_t>(j)] + p_ * p_ - f * entry(r, j)) % p_);
    }
    for (auto x : v)
      if (x) return false;
    return true;
  }

  bool contains(const Subspace& x) const {
    if (x.n_ != n_ || x.p_ != p_)
      throw std::invalid_argument("Subspace::contains: ambient mismatch");
    for (int r = 0; r < x.dim(); ++r) {
      std::vector<uint8_t> v(x.rows_.begin() + static_cast<long>(r) * n_,
                             x.rows_.begin() + static_cast<long>(r + 1) * n_);
      if (!reduces_to_zero(v)) return false;
    }
    return true;
  }

 private:
  int n_, p_;
  std::vector<uint8_t> rows_;  // dim x n, RREF
};

/// dim(X) + dim(Y) - rank([X; Y]) via Gaussian elimination over F_p.
inline int intersection_dim(const Subspace& x, const Subspace& y) {
  if (x.ambient_dim() != y.ambient_dim() || x.field() != y.field())
    throw std::invalid_argument("intersection_dim: ambient mismatch");
  const int n = x.ambient_dim(), p = x.field();
  std::vector<std::vector<int>> m;
  for (int r = 0; r < x.dim(); ++r) {
    std::vector<int> row(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) row[static_cast<size_t>(c)] = x.entry(r, c);
    m.push_back(std::move(row));
  }
  for (int r = 0; r < y.dim(); ++r) {
    std::vector<int> row(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) row[static_cast<size_t>(c)] = y.entry(r, c);
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (int c = 0; c < n && rank < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(piv)]);
    // normalize pivot to 1
    int inv = 1;
    int pv = m[static_cast<size_t>(rank)][static_cast<size_t>(c)];
    for (int t = 1; t < p; ++t)
      if (pv * t % p == 1) {
        inv = t;
        break;
      }
    for (int j = c; j < n; ++j)
      m[static_cast<size_t>(rank)][static_cast<size_t>(j)] =
          m[static_cast<size_t>(rank)][static_cast<size_t>(j)] * inv % p;
    for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
      int f = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < n; ++j)
        m[static_cast<size_t>(r)][static_cast<size_t>(j)] =
            (m[static_cast<size_t>(r)][static_cast<size_t>(j)] + p * p -
             f * m[static_cast<size_t>(rank)][static_cast<size_t>(j)]) %
            p;
    }
    ++rank;
  }
  return x.dim() + y.dim() - rank;
}

/// The full subspace lattice of F_p^n with everything the brute-force
/// checks need precomputed: canonical vertex order, per-dimension offsets,
/// and the intersection-dimension table. Built once per (n, p) and shared.
class SubspaceLattice {
 public:
  static std::shared_ptr<const SubspaceLattice> get(int n, int p) {
    if (n < 1) throw std::invalid_argument("SubspaceLattice: n >= 1");
    if (!is_prime(p))
      throw std::invalid_argument("SubspaceLattice: p must be prime");
    // count vertices symbolically before enumerating anything
    mpz_class total = 0;
    for (int k = 0; k <= n; ++k) total += qbinom(n, k).eval(mpz_class(p));
    if (total > vertex_guard())
      throw guard_error("SubspaceLattice: " + total.get_str() +
                        " vertices exceeds guard " + std::to_string(vertex_guard()));
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SubspaceLattice>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({n, p});
    if (it != memo.end()) return it->second;
    auto ptr = std::shared_ptr<const SubspaceLattice>(new SubspaceLattice(n, p));
    memo.emplace(std::make_pair(n, p), ptr);
    return ptr;
  }

  int ambient_dim() const { return n_; }
  int field() const { return p_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const Subspace& vertex(int i) const { return verts_[static_cast<size_t>(i)]; }
  const std::vector<Subspace>& vertices() const { return verts_; }

  int dim_offset(int k) const { return offsets_[static_cast<size_t>(k)]; }
  int dim_count(int k) const {
    return offsets_[static_cast<size_t>(k) + 1] - offsets_[static_cast<size_t>(k)];
  }

  int inter_dim(int i, int j) const {
    return inter_[static_cast<size_t>(i) * verts_.size() + static_cast<size_t>(j)];
  }

  /// Graph Laplacian in the canonical vertex order (exact integers).
  IntMatrix laplacian() const {
    const int v = vertex_count();
    IntMatrix m(static_cast<size_t>(v), static_cast<size_t>(v));
    for (int i = 0; i < v; ++i) {
      long deg = 0;
      for (int j = 0; j < v; ++j) {
        if (adjacent(i, j)) {
          m(static_cast<size_t>(i), static_cast<size_t>(j)) = -1;
          ++deg;
        }
      }
      m(static_cast<size_t>(i), static_cast<size_t>(i)) = deg;
    }
    return m;
  }

  bool adjacent(int i, int j) const {
    const auto& x = verts_[static_cast<size_t>(i)];
    const auto& y = verts_[static_cast<size_t>(j)];
    int dx = x.dim(), dy = y.dim();
    if (std::abs(dx - dy) != 1) return false;
    return inter_dim(i, j) == std::min(dx, dy);
  }

  /// Up operator in the standard basis: entry (X, Y) = 1 iff X covers Y.
  Matrix<long long> up_matrix() const {
    const int v = vertex_count();
    Matrix<long long> m(static_cast<size_t>(v), static_cast<size_t>(v));
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j)
        if (verts_[static_cast<size_t>(i)].dim() ==
                verts_[static_cast<size_t>(j)].dim() + 1 &&
            adjacent(i, j))
          m(static_cast<size_t>(i), static_cast<size_t>(j)) = 1;
    return m;
  }

  Matrix<long long> down_matrix() const { return up_matrix().transpose(); }

  /// Orbit-basis matrix: entry (X, Y) = 1 iff dim X = i, dim Y = j and
  /// dim(X cap Y) = t; zero elsewhere. Full vertex-set indexing.
  Matrix<long long> orbit_matrix(int i, int j, int t) const {
    require_valid_triple(n_, i, j, t);
    const int v = vertex_count();
    Matrix<long long> m(static_cast<size_t>(v), static_cast<size_t>(v));
    for (int a = dim_offset(i); a < dim_offset(i + 1); ++a)
      for (int b = dim_offset(j); b < dim_offset(j + 1); ++b)
        if (inter_dim(a, b) == t)
          m(static_cast<size_t>(a), static_cast<size_t>(b)) = 1;
    return m;
  }

  /// The (dim i) x (dim j) block of orbit_matrix, dense.
  Matrix<long long> orbit_block(int i, int j, int t) const {
    require_valid_triple(n_, i, j, t);
    Matrix<long long> m(static_cast<size_t>(dim_count(i)),
                        static_cast<size_t>(dim_count(j)));
    int oi = dim_offset(i), oj = dim_offset(j);
    for (int a = 0; a < dim_count(i); ++a)
      for (int b = 0; b < dim_count(j); ++b)
        if (inter_dim(oi + a, oj + b) == t)
          m(static_cast<size_t>(a), static_cast<size_t>(b)) = 1;
    return m;
  }

  static bool valid_triple(int n, int i, int j, int t) {
    return t >= 0 && i - t >= 0 && j - t >= 0 && i + j - t <= n;
  }
  static void require_valid_triple(int n, int i, int j, int t) {
    if (!valid_triple(n, i, j, t))
      throw std::invalid_argument("orbit matrix: invalid (i,j,t) triple");
  }

 private:
  SubspaceLattice(int n, int p) : n_(n), p_(p) {
    enumerate();
    build_intersections();
  }

  void enumerate() {
    // all RREF matrices, by dimension then pivot pattern then entries
    for (int k = 0; k <= n_; ++k) {
      std::vector<int> piv(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) piv[static_cast<size_t>(i)] = i;
      bool more = (k <= n_);
      while (more && k > 0) {
        emit_pattern(k, piv);
        // next k-combination of {0..n-1} in lex order
        int i = k - 1;
        while (i >= 0 && piv[static_cast<size_t>(i)] == n_ - k + i) --i;
        if (i < 0) {
          more = false;
        } else {
          ++piv[static_cast<size_t>(i)];
          for (int j = i + 1; j < k; ++j)
            piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
        }
      }
      if (k == 0) verts_.emplace_back(n_, p_, std::vector<uint8_t>{});
    }
    std::sort(verts_.begin(), verts_.end());
    offsets_.assign(static_cast<size_t>(n_) + 2, 0);
    for (const auto& s : verts_) ++offsets_[static_cast<size_t>(s.dim()) + 1];
    for (size_t k = 1; k < offsets_.size(); ++k) offsets_[k] += offsets_[k - 1];
  }

  void emit_pattern(int k, const std::vector<int>& piv) {
    // free cells: (r, c) with c > piv[r], c not a pivot column
    std::vector<std::pair<int, int>> cells;
    std::vector<bool> is_piv(static_cast<size_t>(n_), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    for (int r = 0; r < k; ++r)
      for (int c = piv[static_cast<size_t>(r)] + 1; c < n_; ++c)
        if (!is_piv[static_cast<size_t>(c)]) cells.push_back({r, c});
    std::vector<uint8_t> vals(cells.size(), 0);
    while (true) {
      std::vector<uint8_t> rows(static_cast<size_t>(k) * n_, 0);
      for (int r = 0; r < k; ++r)
        rows[static_cast<size_t>(r) * n_ + piv[static_cast<size_t>(r)]] = 1;
      for (size_t c = 0; c < cells.size(); ++c)
        rows[static_cast<size_t>(cells[c].first) * n_ + cells[c].second] = vals[c];
      verts_.emplace_back(n_, p_, std::move(rows));
      // odometer
      size_t pos = cells.size();
      while (pos > 0 && vals[pos - 1] == p_ - 1) vals[--pos] = 0;
      if (pos == 0) break;
      ++vals[pos - 1];
    }
  }

  void build_intersections() {
    const size_t v = verts_.size();
    inter_.assign(v * v, 0);
    for (size_t i = 0; i < v; ++i) {
      inter_[i * v + i] = static_cast<uint8_t>(verts_[i].dim());
      for (size_t j = i + 1; j < v; ++j) {
        auto d = static_cast<uint8_t>(intersection_dim(verts_[i], verts_[j]));
        inter_[i * v + j] = d;
        inter_[j * v + i] = d;
      }
    }
  }

  int n_, p_;
  std::vector<Subspace> verts_;
  std::vector<int> offsets_;
  std::vector<uint8_t> inter_;
};

/// All subspaces of F_p^n in canonical order (grouped by dimension).
inline std::vector<Subspace> enumerate_subspaces(int n, int p) {
  return SubspaceLattice::get(n, p)->vertices();
}

inline IntMatrix laplacian(int n, int p) {
  return SubspaceLattice::get(n, p)->laplacian();
}

/// Number of spanning trees by the matrix-tree theorem: exact determinant
/// of the Laplacian with the zero-subspace row and column removed.
inline mpz_class matrix_tree_count(int n, int p) {
  auto lat = SubspaceLattice::get(n, p);
  IntMatrix l = lat->laplacian();
  const size_t v = l.rows();
  std::vector<size_t> keep;
  for (size_t i = 1; i < v; ++i) keep.push_back(i);  // vertex 0 = zero subspace
  return bareiss_determinant(l.submatrix(keep, keep));
}

inline Matrix<long long> up_matrix(int n, int p) {
  return SubspaceLattice::get(n, p)->up_matrix();
}
inline Matrix<long long> down_matrix(int n, int p) {
  return SubspaceLattice::get(n, p)->down_matrix();
}

/// Verifies UD - DU = H entrywise, with H diagonal acting on a vertex of
/// dimension k by [k] - [n-k] evaluated at q = p.
inline bool commutator_check(int n, int p) {
  auto lat = SubspaceLattice::get(n, p);
  auto u = lat->up_matrix();
  auto d = lat->down_matrix();
  auto lhs = u * d - d * u;
  const int v = lat->vertex_count();
  for (int i = 0; i < v; ++i) {
    int k = lat->vertex(i).dim();
    long long h = (qint(k) - qint(n - k)).eval(mpz_class(p)).get_si();
    for (int j = 0; j < v; ++j) {
      long long want = (i == j) ? h : 0;
      if (lhs(static_cast<size_t>(i), static_cast<size_t>(j)) != want) return false;
    }
  }
  return true;
}

inline Matrix<long long> orbit_matrix(int n, int p, int i, int j, int t) {
  return SubspaceLattice::get(n, p)->orbit_matrix(i, j, t);
}

/// Expands the product M^{t1}_{i,j} * M^{t2}_{j2,l} in the orbit basis:
/// returns {s -> c_s} with the product equal to sum_s c_s M^s_{i,l}.
/// Returns an empty map when j != j2 (the product is zero). Verifies that
/// product entries are constant on every orbit class and throws
/// std::runtime_error("orbit inconsistency ...") if they are not.
inline std::map<int, long long> structure_constants(int n, int p, int i, int j,
                                                    int t1, int j2, int l, int t2) {
  auto lat = SubspaceLattice::get(n, p);
  SubspaceLattice::require_valid_triple(n, i, j, t1);
  SubspaceLattice::require_valid_triple(n, j2, l, t2);
  if (j != j2) return {};
  auto a = lat->orbit_block(i, j, t1);
  auto b = lat->orbit_block(j2, l, t2);
  auto prod = a * b;
  std::map<int, long long> out;
  int oi = lat->dim_offset(i), ol = lat->dim_offset(l);
  for (int r = 0; r < lat->dim_count(i); ++r)
    for (int c = 0; c < lat->dim_count(l); ++c) {
      int s = lat->inter_dim(oi + r, ol + c);
      long long val = prod(static_cast<size_t>(r), static_cast<size_t>(c));
      auto it = out.find(s);
      if (it == out.end())
        out.emplace(s, val);
      else if (it->second != val)
        throw std::runtime_error(
            "orbit inconsistency: product not constant on class s=" +
            std::to_string(s));
    }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

/// Entrywise verification, over the lattice at q = p, of the orbit-basis
/// inversion: M^t_{i,j} = sum_u (-1)^{u-t} q^C(u-t,2) [u t] M^u_{i,u} M^u_{u,j}.
/// Samples `samples` valid triples (exhaustive when there are fewer).
inline bool inversion_identity_check(int n, int p, int samples, unsigned seed = 0) {
  auto lat = SubspaceLattice::get(n, p);
  std::vector<std::array<int, 3>> triples;
  for (int t = 0; t <= n; ++t)
    for (int i = t; i <= n; ++i)
      for (int j = t; i + j - t <= n; ++j)
        triples.push_back({i, j, t});
  std::mt19937 rng(seed);
  if (static_cast<int>(triples.size()) > samples) {
    std::shuffle(triples.begin(), triples.end(), rng);
    triples.resize(static_cast<size_t>(samples));
  }
  mpz_class q(p);
  for (auto [i, j, t] : triples) {
    auto lhs = lat->orbit_block(i, j, t);
    Matrix<long long> rhs(lhs.rows(), lhs.cols());
    for (int u = t; u <= std::min(i, j); ++u) {
      mpz_class coef = qbinom(u, t).eval(q);
      mpz_class qp;
      mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>((u - t) * (u - t - 1) / 2));
      coef *= qp;
      long long c = coef.get_si() * (((u - t) % 2 == 0) ? 1 : -1);
      auto term = lat->orbit_block(i, u, u) * lat->orbit_block(u, j, u);
      rhs += term * c;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

/// Graph edge list in text form, one edge per line:
/// "dimX rrefX dimY rrefY" with rref rows comma-separated digit strings.
inline std::string edge_list_text(int n, int p) {
  auto lat = SubspaceLattice::get(n, p);
  auto fmt = [&](const Subspace& s) {
    std::string out;
    for (int r = 0; r < s.dim(); ++r) {
      if (r) out += ",";
      for (int c = 0; c < n; ++c) out += static_cast<char>('0' + s.entry(r, c));
    }
    if (s.dim() == 0) out = "-";
    return out;
  };
  std::string out;
  const int v = lat->vertex_count();
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (lat->adjacent(i, j)) {
        const auto& x = lat->vertex(i);
        const auto& y = lat->vertex(j);
        out += std::to_string(x.dim()) + " " + fmt(x) + " " + std::to_string(y.dim()) +
               " " + fmt(y) + "\n";
      }
  return out;
}

}  // namespace qcube
