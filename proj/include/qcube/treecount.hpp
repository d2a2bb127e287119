#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcube/qpoly.hpp"

namespace qcube {

/// One factor of a product-with-exponents expression.
struct Factor {
  QPoly base;
  QPoly exponent;
};

/// Spanning-tree count in "good formula" shape: a leading polynomial times
/// a product of base^exponent factors, everything kept symbolic in q.
/// Expansion into a plain integer is opt-in and bit-size guarded.
struct FactoredExpr {
  int n = 0;
  QPoly leading;
  std::vector<Factor> factors;
};

inline constexpr long kDefaultMaxBits = 1L << 20;

namespace detail {

/// Whole descending chain of factor polynomials for fixed (n, k), indexed
/// by j - k for j = k .. n-k+1. Memoized; lock covers growth and lookup.
inline std::shared_ptr<const std::vector<QPoly>> factor_chain(int n, int k) {
  if (n < 0 || k < 0 || 2 * k > n)
    throw std::invalid_argument("factor_poly: need 0 <= k <= n/2");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<QPoly>>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;

  const int lo = k, hi = n - k + 1;
  std::vector<QPoly> chain(static_cast<size_t>(hi - lo + 1));
  auto at = [&](int j) -> QPoly& { return chain[static_cast<size_t>(j - lo)]; };
  at(hi) = QPoly(1);
  if (hi - 1 >= lo) at(hi - 1) = qint(k) + qint(n - k);
  for (int j = hi - 2; j >= lo; --j) {
    QPoly drop = QPoly::monomial(1, k) * qint(j + 1 - k) * qint(n - k - j);
    at(j) = (qint(j) + qint(n - j)) * at(j + 1) - drop * at(j + 2);
  }
  auto ptr = std::make_shared<const std::vector<QPoly>>(std::move(chain));
  memo.emplace(std::make_pair(n, k), ptr);
  return ptr;
}

}  // namespace detail

/// Factor polynomial of the spanning-tree formula: the determinant of the
/// trailing principal block of the rank-(k..n-k) Laplacian block, computed
/// by the three-term recurrence descending from j = n-k+1.
/// Valid for 0 <= k <= n/2 and k <= j <= n-k+1.
inline QPoly factor_poly(int n, int k, int j) {
  if (n < 0 || k < 0 || 2 * k > n || j < k || j > n - k + 1)
    throw std::invalid_argument("factor_poly: (n,k,j) out of range");
  return (*detail::factor_chain(n, k))[static_cast<size_t>(j - k)];
}

/// The full spanning-tree formula for the subspace-lattice graph on
/// dimension n: leading factor [1][2]...[n], and for each k = 1..n/2 the
/// factor factor_poly(n,k,k) raised to qbinom(n,k) - qbinom(n,k-1).
/// Runs in time polynomial in n.
inline FactoredExpr spanning_tree_formula(int n) {
  if (n < 0) throw std::invalid_argument("spanning_tree_formula: n >= 0");
  FactoredExpr e;
  e.n = n;
  e.leading = qfactorial(n);
  for (int k = 1; 2 * k <= n; ++k)
    e.factors.push_back({factor_poly(n, k, k), qbinom(n, k) - qbinom(n, k - 1)});
  return e;
}

/// Expands a factored expression at an integer point q0 >= 1. Refuses with
/// guard_error when the estimated bit size of the result exceeds max_bits
/// (the expanded count has exponentially many bits in n).
inline mpz_class evaluate_factored(const FactoredExpr& e, const mpz_class& q0,
                                   long max_bits = kDefaultMaxBits) {
  if (q0 < 1) throw std::invalid_argument("evaluate_factored: q0 >= 1 required");
  mpz_class leading_val = e.leading.eval(q0);
  struct Term {
    mpz_class base;
    mpz_class exp;
  };
  std::vector<Term> terms;
  mpz_class bits = leading_val == 0 ? 1 : mpz_sizeinbase(leading_val.get_mpz_t(), 2);
  for (const auto& f : e.factors) {
    mpz_class ev = f.exponent.eval(q0);
    if (ev < 0)
      throw std::domain_error("evaluate_factored: negative exponent at q0");
    mpz_class bv = f.base.eval(q0);
    if (ev == 0 || bv == 1) continue;
    if (bv == 0) return 0;
    bits += ev * static_cast<unsigned long>(mpz_sizeinbase(bv.get_mpz_t(), 2));
    terms.push_back({std::move(bv), std::move(ev)});
  }
  if (bits > max_bits)
    throw guard_error("evaluate_factored: result too large (~" + bits.get_str() +
                      " bits > max_bits " + std::to_string(max_bits) + ")");
  mpz_class acc = leading_val;
  mpz_class p;
  for (const auto& t : terms) {
    mpz_pow_ui(p.get_mpz_t(), t.base.get_mpz_t(), t.exp.get_ui());
    acc *= p;
  }
  return acc;
}

/// Classical hypercube spanning-tree count: prod_{k=2..n} (2k)^C(n,k).
inline mpz_class hypercube_tree_count(int n) {
  if (n < 1) throw std::invalid_argument("hypercube_tree_count: n >= 1");
  mpz_class acc = 1, p;
  for (int k = 2; k <= n; ++k) {
    mpz_class b = 2 * k;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), binom(n, k).get_ui());
    acc *= p;
  }
  return acc;
}

/// The same count reorganized as n! * prod_k (prod_{j=k..n-k} 2j)^(C(n,k)-C(n,k-1)),
/// mirroring the factored q-formula at q = 1. All entries are constants.
inline FactoredExpr hypercube_tree_factored(int n) {
  if (n < 1) throw std::invalid_argument("hypercube_tree_factored: n >= 1");
  FactoredExpr e;
  e.n = n;
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  e.leading = QPoly(fact);
  for (int k = 1; 2 * k <= n; ++k) {
    mpz_class inner = 1;
    for (int j = k; j <= n - k; ++j) inner *= 2 * j;
    e.factors.push_back({QPoly(inner), QPoly(binom(n, k) - binom(n, k - 1))});
  }
  return e;
}

namespace detail {

/// Renders an exponent polynomial the way the factored formula is usually
/// displayed: pull out the q-power, e.g. q+q^2 -> "q(1+q)".
inline std::string exponent_display(const QPoly& e) {
  if (e.is_zero()) return "0";
  int v = e.valuation();
  QPoly rest = e.shifted(-v);
  std::string qpart;
  if (v == 1)
    qpart = "q";
  else if (v != 0)
    qpart = "q^" + (std::to_string(v).size() > 1 ? "{" + std::to_string(v) + "}"
                                                 : std::to_string(v));
  if (rest == QPoly(1)) return qpart.empty() ? "1" : qpart;
  std::string rs = rest.str(true);
  if (rest.coeffs().size() == 1 && qpart.empty()) return rs;
  return qpart + "(" + rs + ")";
}

}  // namespace detail

/// LaTeX-ish rendering, e.g. "[2][3](4+3q+q^2)^{q(1+q)}". When the leading
/// polynomial is exactly [1][2]...[n] it is shown in bracket form.
inline std::string to_latex(const FactoredExpr& e) {
  std::string out;
  if (e.leading == qfactorial(e.n)) {
    for (int k = 2; k <= e.n; ++k) out += "[" + std::to_string(k) + "]";
    if (out.empty()) out = "1";
  } else {
    out = e.leading.str(true);
    if (e.leading.coeffs().size() > 1 && !e.factors.empty()) out = "(" + out + ")";
  }
  for (const auto& f : e.factors) {
    std::string base = f.base.str(true);
    if (f.base.coeffs().size() > 1) base = "(" + base + ")";
    out += base + "^{" + detail::exponent_display(f.exponent) + "}";
  }
  if (out.empty()) out = "1";
  return out;
}

/// Plain-text rendering of a factored expression.
inline std::string to_text(const FactoredExpr& e) {
  std::string out = e.leading.str();
  if (e.leading.coeffs().size() > 1 && !e.factors.empty()) out = "(" + out + ")";
  for (const auto& f : e.factors)
    out += " * (" + f.base.str() + ")^(" + f.exponent.str() + ")";
  return out;
}

}  // namespace qcube
