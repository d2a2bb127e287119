// Acceptance suite: one criterion per case, each printed as a single
// PASS/FAIL line with its runtime. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qcube/checks.hpp"
#include "qcube/commutant.hpp"
#include "qcube/grassmann.hpp"
#include "qcube/serialize.hpp"
#include "qcube/signed_sets.hpp"
#include "qcube/spectral.hpp"
#include "qcube/treecount.hpp"

using namespace qcube;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<std::pair<bool, std::string>()> body;
};

// matrix-tree count of the ordinary n-cube on subsets, built directly from
// bitmask adjacency; independent of both the formula and the lattice oracle
mpz_class boolean_cube_tree_count(int n) {
  const int v = 1 << n;
  IntMatrix l(static_cast<size_t>(v), static_cast<size_t>(v));
  for (int x = 0; x < v; ++x) {
    l(static_cast<size_t>(x), static_cast<size_t>(x)) = n;
    for (int b = 0; b < n; ++b)
      l(static_cast<size_t>(x), static_cast<size_t>(x ^ (1 << b))) = -1;
  }
  std::vector<size_t> keep;
  for (int i = 1; i < v; ++i) keep.push_back(static_cast<size_t>(i));
  return bareiss_determinant(l.submatrix(keep, keep));
}

std::pair<bool, std::string> criterion_reference_table() {
  std::string m = checks::reference_table_mismatch();
  return {m.empty(), m.empty() ? "n = 1..5 coefficients exact" : m};
}

std::pair<bool, std::string> criterion_oracle_equality() {
  for (int n = 1; n <= 4; ++n)
    for (int p : {2, 3}) {
      mpz_class formula = evaluate_factored(spanning_tree_formula(n), p);
      mpz_class oracle = matrix_tree_count(n, p);
      if (formula != oracle)
        return {false, "mismatch at n=" + std::to_string(n) + ", p=" + std::to_string(p)};
    }
  return {true, "formula == matrix-tree for (n,p) in {1..4}x{2,3}"};
}

std::pair<bool, std::string> criterion_classical_bridge() {
  for (int n = 1; n <= 10; ++n) {
    if (evaluate_factored(spanning_tree_formula(n), 1) != hypercube_tree_count(n))
      return {false, "q=1 bridge fails at n=" + std::to_string(n)};
    if (evaluate_factored(hypercube_tree_factored(n), 1) != hypercube_tree_count(n))
      return {false, "reformulation fails at n=" + std::to_string(n)};
  }
  if (boolean_cube_tree_count(2) != 4) return {false, "cube n=2 is not 4"};
  if (boolean_cube_tree_count(3) != 384) return {false, "cube n=3 is not 384"};
  mpz_class c4 = boolean_cube_tree_count(4);
  if (c4 != hypercube_tree_count(4))
    return {false, "cube n=4 disagrees with the product formula"};
  return {true, "n <= 10 exact; cube matrix-tree gives 4, 384, " + c4.get_str()};
}

std::pair<bool, std::string> criterion_positivity() {
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; 2 * k <= n; ++k)
      for (int j = k; j <= n - k + 1; ++j)
        if (factor_poly_via_sets(n, k, j) != factor_poly(n, k, j))
          return {false, "two routes differ at (" + std::to_string(n) + "," +
                             std::to_string(k) + "," + std::to_string(j) + ")"};
  for (int n = 0; n <= 16; ++n)
    for (int k = 0; 2 * k <= n; ++k)
      for (int j = k; j <= n - k + 1; ++j)
        if (!factor_poly(n, k, j).is_nonneg())
          return {false, "negative coefficient at (" + std::to_string(n) + "," +
                             std::to_string(k) + "," + std::to_string(j) + ")"};
  return {true, "two routes equal (n <= 12), coefficients nonnegative (n <= 16)"};
}

std::pair<bool, std::string> criterion_signed_sets() {
  for (int n = 0; n <= 16; ++n) {
    auto s = signed_sets(n);
    if (s->size() != (1ull << n)) return {false, "|S(n)| wrong at n=" + std::to_string(n)};
    if (n >= 1) {
      size_t without = 0;
      for (const auto& x : *s)
        if (!(x.plain & (1u << (n - 1)))) ++without;
      if (without != (1ull << (n - 1)))
        return {false, "complement count wrong at n=" + std::to_string(n)};
    }
  }
  for (int n = 1; n <= 16; ++n)
    if (!recurrence_identity_check(n, 10, static_cast<unsigned>(n)))
      return {false, "recurrence fails at n=" + std::to_string(n)};
  return {true, "sizes and recurrence (10 trials per n) for n <= 16"};
}

std::pair<bool, std::string> criterion_det_identity() {
  for (double q0 : {2.0, 3.0})
    for (int n = 1; n <= 8; ++n)
      for (int k = 0; 2 * k <= n; ++k)
        for (int j = k; j <= n - k + 1; ++j)
          if (!det_identity_check(n, k, j, q0, 1e-8))
            return {false, "det mismatch at (" + std::to_string(n) + "," +
                               std::to_string(k) + "," + std::to_string(j) +
                               "), q0=" + std::to_string(q0)};
  return {true, "all (k,j), n <= 8, q0 in {2,3}, rtol 1e-8"};
}

std::pair<bool, std::string> criterion_sv_identities() {
  for (int n = 1; n <= 20; ++n)
    if (!singular_value_identity_check(n))
      return {false, "identity fails at n=" + std::to_string(n)};
  return {true, "both forms exact for n <= 20"};
}

std::pair<bool, std::string> criterion_spectrum() {
  for (auto [n, p] :
       std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}})
    if (!spectrum_reconstruction_check(n, p, 1e-6))
      return {false,
              "reconstruction fails at (" + std::to_string(n) + "," + std::to_string(p) + ")"};
  return {true, "block multiset == dense spectrum, 1e-6, five (n,p) pairs"};
}

std::pair<bool, std::string> criterion_commutant() {
  for (int n = 0; n <= 50; ++n)
    if (!block_dimension_check(n)) return {false, "dimension identity at n=" + std::to_string(n)};
  for (int n = 0; n <= 10; ++n)
    if (!qbinomial_inversion_check(n, static_cast<unsigned>(n)))
      return {false, "inversion fails at n=" + std::to_string(n)};
  for (int n = 1; n <= 4; ++n)
    for (int p : {2, 3}) {
      if (!commutator_check(n, p))
        return {false, "[U,D] != H at (" + std::to_string(n) + "," + std::to_string(p) + ")"};
      if (!homomorphism_check(n, p, 50, 7))
        return {false, "homomorphism fails at (" + std::to_string(n) + "," +
                           std::to_string(p) + ")"};
      if (!johnson_spectrum_check(n, p, 1e-6))
        return {false, "Johnson spectrum fails at (" + std::to_string(n) + "," +
                           std::to_string(p) + ")"};
    }
  for (int n = 1; n <= 6; ++n)
    for (double q0 : {2.0, 3.0})
      if (!laplacian_block_consistency_check(n, q0, 1e-8))
        return {false, "block consistency fails at n=" + std::to_string(n)};
  return {true, "dimension, inversion, commutator, homomorphism, spectra, blocks"};
}

std::pair<bool, std::string> criterion_scaling() {
  auto t0 = std::chrono::steady_clock::now();
  FactoredExpr e = spanning_tree_formula(50);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 10.0) return {false, "n=50 took " + std::to_string(secs) + " s"};
  std::string sizes = "json bytes:";
  size_t last = 0;
  for (int n : {10, 20, 30, 40, 50}) {
    size_t bytes = to_json(spanning_tree_formula(n)).dump().size();
    sizes += " n=" + std::to_string(n) + ":" + std::to_string(bytes);
    last = bytes;
  }
  if (last >= 100u * 1024 * 1024) return {false, "n=50 output exceeds 100 MB"};
  char buf[64];
  std::snprintf(buf, sizeof buf, "; n=50 in %.2f s", secs);
  return {true, sizes + buf};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "reference-table reproduction (n = 1..5)", 1.0, criterion_reference_table},
      {2, "oracle equality over prime fields", 60.0, criterion_oracle_equality},
      {3, "classical bridge at q = 1", 30.0, criterion_classical_bridge},
      {4, "positive-route equality and nonnegativity", 60.0, criterion_positivity},
      {5, "signed-set structure and recurrence", 30.0, criterion_signed_sets},
      {6, "tridiagonal determinant identity", 10.0, criterion_det_identity},
      {7, "singular-value identities (exact)", 5.0, criterion_sv_identities},
      {8, "spectrum reconstruction", 30.0, criterion_spectrum},
      {9, "commutant block diagonalization", 120.0, criterion_commutant},
      {10, "good-formula scaling at n = 50", 15.0, criterion_scaling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string info;
    try {
      std::tie(ok, info) = c.body();
    } catch (const std::exception& e) {
      ok = false;
      info = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      ok = false;
      info += " [exceeded " + std::to_string(c.limit_seconds) + " s limit]";
    }
    if (!ok) ++failures;
    std::printf("%s  criterion %2d: %s (%.2f s) — %s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, info.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
