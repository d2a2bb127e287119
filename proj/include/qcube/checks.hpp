#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qcube/commutant.hpp"
#include "qcube/grassmann.hpp"
#include "qcube/signed_sets.hpp"
#include "qcube/spectral.hpp"
#include "qcube/treecount.hpp"

namespace qcube {

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "guard"
  std::string info;
  double ms = 0.0;

  bool failed() const { return status == "fail"; }
};

struct NamedCheck {
  std::string name;
  std::function<std::pair<bool, std::string>()> fn;
};

/// Runs checks on up to `jobs` worker threads; guard_error maps to status
/// "guard" (reported, not fatal), any other exception to "fail". Results
/// are merged deterministically by check name.
inline std::vector<CheckResult> run_checks(const std::vector<NamedCheck>& checks,
                                           int jobs = 1) {
  std::vector<CheckResult> results(checks.size());
  auto run_one = [&](size_t idx) {
    const auto& c = checks[idx];
    CheckResult r;
    r.name = c.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, info] = c.fn();
      r.status = ok ? "pass" : "fail";
      r.info = info;
    } catch (const guard_error& e) {
      r.status = "guard";
      r.info = e.what();
    } catch (const std::exception& e) {
      r.status = "fail";
      r.info = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    results[idx] = std::move(r);
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < checks.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < checks.size(); i = next.fetch_add(1))
          run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  std::sort(results.begin(), results.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return results;
}

namespace checks {

inline int cap(int user_nmax, int spec_default) {
  return user_nmax > 0 ? std::min(user_nmax, spec_default) : spec_default;
}

/// The first five rows of the factored spanning-tree table, frozen.
/// Returns an empty string on success, else a description of the mismatch.
inline std::string reference_table_mismatch() {
  struct Row {
    int n;
    std::vector<std::pair<std::vector<long>, std::vector<long>>> factors;  // base, exp coeffs
  };
  auto poly = [](const std::vector<long>& cs) {
    std::vector<mpz_class> v(cs.begin(), cs.end());
    return QPoly::from_coeffs(0, std::move(v));
  };
  const std::vector<Row> rows = {
      {1, {}},
      {2, {{{2}, {0, 1}}}},
      {3, {{{4, 3, 1}, {0, 1, 1}}}},
      {4, {{{8, 12, 12, 10, 4, 2}, {0, 1, 1, 1}}, {{2, 2}, {0, 0, 1, 0, 1}}}},
      {5,
       {{{16, 36, 53, 65, 69, 58, 42, 26, 13, 5, 1}, {0, 1, 1, 1, 1}},
        {{4, 8, 7, 4, 1}, {0, 0, 1, 1, 1, 1, 1}}}},
  };
  for (const auto& row : rows) {
    FactoredExpr e = spanning_tree_formula(row.n);
    if (e.leading != qfactorial(row.n)) return "n=" + std::to_string(row.n) + " leading";
    if (e.factors.size() != row.factors.size())
      return "n=" + std::to_string(row.n) + " factor count";
    for (size_t f = 0; f < row.factors.size(); ++f) {
      if (e.factors[f].base != poly(row.factors[f].first))
        return "n=" + std::to_string(row.n) + " base " + std::to_string(f);
      if (e.factors[f].exponent != poly(row.factors[f].second))
        return "n=" + std::to_string(row.n) + " exponent " + std::to_string(f);
    }
  }
  return {};
}

inline std::vector<NamedCheck> formula_suite(int nmax, const std::vector<int>& primes,
                                             long max_bits = kDefaultMaxBits) {
  std::vector<NamedCheck> out;
  out.push_back({"formula/reference-table", [] {
                   auto m = reference_table_mismatch();
                   return std::make_pair(m.empty(), m.empty() ? "n=1..5 exact" : m);
                 }});
  out.push_back({"formula/f0-product", [n = cap(nmax, 20)] {
                   for (int m = 0; m <= n; ++m)
                     if (factor_poly(m, 0, 1) != qfactorial(m))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"formula/classical-factored", [n = cap(nmax, 10)] {
                   for (int m = 1; m <= n; ++m)
                     if (evaluate_factored(hypercube_tree_factored(m), 1) !=
                         hypercube_tree_count(m))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"formula/q1-bridge", [n = cap(nmax, 10)] {
                   for (int m = 1; m <= n; ++m)
                     if (evaluate_factored(spanning_tree_formula(m), 1) !=
                         hypercube_tree_count(m))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"formula/classical-q1-factor", [n = cap(nmax, 12)] {
                   // at q=1 each factor base equals 2^(n-2k+1) k(k+1)...(n-k)
                   for (int m = 2; m <= n; ++m)
                     for (int k = 1; 2 * k <= m; ++k) {
                       mpz_class want;
                       mpz_ui_pow_ui(want.get_mpz_t(), 2,
                                     static_cast<unsigned long>(m - 2 * k + 1));
                       for (int j = k; j <= m - k; ++j) want *= j;
                       if (factor_poly(m, k, k).eval(mpz_class(1)) != want)
                         return std::make_pair(false, "n=" + std::to_string(m) +
                                                          ",k=" + std::to_string(k));
                     }
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  for (int p : primes)
    for (int n = 1; n <= cap(nmax, 5); ++n)
      out.push_back({"formula/oracle-equality-n" + std::to_string(n) + "-p" +
                         std::to_string(p),
                     [n, p, max_bits] {
                       mpz_class formula =
                           evaluate_factored(spanning_tree_formula(n), p, max_bits);
                       mpz_class oracle = matrix_tree_count(n, p);
                       return std::make_pair(formula == oracle,
                                             formula.get_str() +
                                                 (formula == oracle ? " == " : " != ") +
                                                 oracle.get_str());
                     }});
  return out;
}

inline std::vector<NamedCheck> positivity_suite(int nmax) {
  std::vector<NamedCheck> out;
  out.push_back({"positivity/exponents", [n = cap(nmax, 20)] {
                   for (int m = 1; m <= n; ++m)
                     for (int k = 1; 2 * k <= m; ++k)
                       if (!(qbinom(m, k) - qbinom(m, k - 1)).is_nonneg())
                         return std::make_pair(false, "n=" + std::to_string(m) +
                                                          ",k=" + std::to_string(k));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"positivity/factor-polys", [n = cap(nmax, 16)] {
                   for (int m = 0; m <= n; ++m)
                     for (int k = 0; 2 * k <= m; ++k)
                       for (int j = k; j <= m - k + 1; ++j)
                         if (!factor_poly(m, k, j).is_nonneg())
                           return std::make_pair(false, "(" + std::to_string(m) + "," +
                                                            std::to_string(k) + "," +
                                                            std::to_string(j) + ")");
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"positivity/two-route-equality", [n = cap(nmax, 12)] {
                   for (int m = 0; m <= n; ++m)
                     for (int k = 0; 2 * k <= m; ++k)
                       for (int j = k; j <= m - k + 1; ++j) {
                         QPoly via = factor_poly_via_sets(m, k, j);
                         if (via != factor_poly(m, k, j) || !via.is_nonneg())
                           return std::make_pair(false, "(" + std::to_string(m) + "," +
                                                            std::to_string(k) + "," +
                                                            std::to_string(j) + ")");
                       }
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  return out;
}

inline std::vector<NamedCheck> signedsets_suite(int nmax, unsigned seed) {
  std::vector<NamedCheck> out;
  out.push_back({"signedsets/counts", [n = cap(nmax, 16)] {
                   for (int m = 0; m <= n; ++m) {
                     auto s = signed_sets(m);
                     if (s->size() != (1ull << m))
                       return std::make_pair(false, "size at n=" + std::to_string(m));
                     if (m >= 1) {
                       size_t without = 0;
                       const uint32_t bit = 1u << (m - 1);
                       for (const auto& x : *s)
                         if (!(x.plain & bit)) ++without;
                       if (without != (1ull << (m - 1)))
                         return std::make_pair(false,
                                               "count without n at n=" + std::to_string(m));
                     }
                   }
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"signedsets/element-invariants", [n = cap(nmax, 16)] {
                   for (int m = 0; m <= n; ++m)
                     for (const auto& x : *signed_sets(m)) {
                       if (x.plain & x.barred)
                         return std::make_pair(false, "overlap at n=" + std::to_string(m));
                       if (x.size() > m || (m - x.size()) % 2 != 0)
                         return std::make_pair(false, "parity at n=" + std::to_string(m));
                     }
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"signedsets/recurrence", [n = cap(nmax, 16), seed] {
                   for (int m = 1; m <= n; ++m)
                     if (!recurrence_identity_check(m, 10, seed + static_cast<unsigned>(m)))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "10 trials per n<=" + std::to_string(n));
                 }});
  out.push_back({"signedsets/classical-product", [n = cap(nmax, 16)] {
                   for (int m = 2; m <= n; ++m)
                     for (int k = 1; 2 * k <= m; ++k)
                       if (!classical_product_check(m, k))
                         return std::make_pair(false, "n=" + std::to_string(m) +
                                                          ",k=" + std::to_string(k));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  return out;
}

inline std::vector<NamedCheck> spectral_suite(int nmax) {
  std::vector<NamedCheck> out;
  out.push_back({"spectral/det-identity", [n = cap(nmax, 8)] {
                   for (double q0 : {2.0, 3.0})
                     for (int m = 1; m <= n; ++m)
                       for (int k = 0; 2 * k <= m; ++k)
                         for (int j = k; j <= m - k + 1; ++j)
                           if (!det_identity_check(m, k, j, q0))
                             return std::make_pair(false,
                                                   "(" + std::to_string(m) + "," +
                                                       std::to_string(k) + "," +
                                                       std::to_string(j) + ") q0=" +
                                                       std::to_string(q0));
                   return std::make_pair(true, "n<=" + std::to_string(n) + ", q0 in {2,3}");
                 }});
  out.push_back({"spectral/sv-identities", [n = cap(nmax, 20)] {
                   for (int m = 1; m <= n; ++m)
                     if (!singular_value_identity_check(m))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "exact, n<=" + std::to_string(n));
                 }});
  out.push_back({"spectral/block-psd", [n = cap(nmax, 8)] {
                   for (double q0 : {2.0, 3.0})
                     for (int m = 1; m <= n; ++m)
                       for (int k = 0; 2 * k <= m; ++k) {
                         auto eig = block_eigenvalues(laplacian_block(m, k, q0));
                         for (size_t s = 0; s < eig.size(); ++s) {
                           if (eig[s] < -1e-9)
                             return std::make_pair(false, "negative eigenvalue n=" +
                                                              std::to_string(m));
                           if (s > 0 && eig[s] <= eig[s - 1])
                             return std::make_pair(false, "non-simple spectrum n=" +
                                                              std::to_string(m));
                         }
                       }
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  const std::vector<std::pair<int, int>> pairs = {{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  for (auto [n, p] : pairs) {
    if (n > cap(nmax, 3)) continue;
    out.push_back({"spectral/reconstruction-n" + std::to_string(n) + "-p" +
                       std::to_string(p),
                   [n = n, p = p] {
                     return std::make_pair(spectrum_reconstruction_check(n, p),
                                           std::string("tol 1e-6"));
                   }});
  }
  return out;
}

inline std::vector<NamedCheck> commutant_suite(int nmax, const std::vector<int>& primes,
                                               unsigned seed, int samples = 50) {
  std::vector<NamedCheck> out;
  out.push_back({"commutant/dimension", [n = cap(nmax, 50)] {
                   for (int m = 0; m <= n; ++m)
                     if (!block_dimension_check(m))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"commutant/qbinomial-inversion", [n = cap(nmax, 10), seed] {
                   for (int m = 0; m <= n; ++m)
                     if (!qbinomial_inversion_check(m, seed + static_cast<unsigned>(m)))
                       return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"commutant/beta-symmetry", [n = cap(nmax, 8)] {
                   for (int m = 1; m <= n; ++m)
                     for (int i = 0; i <= m; ++i)
                       for (int j = 0; j <= i; ++j)
                         for (int k = 0; 2 * k <= m; ++k)
                           for (int t = 0; t <= m; ++t)
                             if (image_scalar_poly(m, i, j, k, t) !=
                                 image_scalar_poly(m, j, i, k, t))
                               return std::make_pair(false, "n=" + std::to_string(m));
                   return std::make_pair(true, "n<=" + std::to_string(n));
                 }});
  out.push_back({"commutant/laplacian-blocks", [n = cap(nmax, 6)] {
                   for (double q0 : {2.0, 3.0})
                     for (int m = 1; m <= n; ++m)
                       if (!laplacian_block_consistency_check(m, q0))
                         return std::make_pair(false, "n=" + std::to_string(m) + " q0=" +
                                                          std::to_string(q0));
                   return std::make_pair(true, "n<=" + std::to_string(n) + ", 1e-8");
                 }});
  for (int p : primes) {
    if (p != 2 && p != 3) continue;
    for (int n = 1; n <= cap(nmax, 4); ++n) {
      std::string tag = "-n" + std::to_string(n) + "-p" + std::to_string(p);
      out.push_back({"commutant/commutator" + tag, [n, p] {
                       return std::make_pair(commutator_check(n, p),
                                             std::string("[U,D] = H exact"));
                     }});
      out.push_back({"commutant/oracle-inversion" + tag, [n, p, seed] {
                       return std::make_pair(inversion_identity_check(n, p, 12, seed),
                                             std::string("12 sampled triples"));
                     }});
      out.push_back({"commutant/homomorphism" + tag, [n, p, samples, seed] {
                       return std::make_pair(homomorphism_check(n, p, samples, seed),
                                             std::to_string(samples) + " sampled pairs");
                     }});
      out.push_back({"commutant/johnson-spectrum" + tag, [n, p] {
                       return std::make_pair(johnson_spectrum_check(n, p),
                                             std::string("tol 1e-6"));
                     }});
    }
  }
  return out;
}

inline std::vector<NamedCheck> all_suites(int nmax, const std::vector<int>& primes,
                                          unsigned seed) {
  std::vector<NamedCheck> out;
  auto append = [&out](std::vector<NamedCheck> v) {
    for (auto& c : v) out.push_back(std::move(c));
  };
  append(formula_suite(nmax, primes));
  append(positivity_suite(nmax));
  append(signedsets_suite(nmax, seed));
  append(spectral_suite(nmax));
  append(commutant_suite(nmax, primes, seed));
  return out;
}

}  // namespace checks
}  // namespace qcube
