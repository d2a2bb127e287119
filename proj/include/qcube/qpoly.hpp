#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcube {

/// Thrown when a computation would exceed a resource guard (vertex limits,
/// bit-size limits). Callers that drive verification suites catch this and
/// report the breach per-check instead of aborting the run.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial in one variable q over arbitrary-precision integers.
///
/// Canonical form: the zero polynomial has empty coeffs and valuation 0;
/// otherwise coeffs.front() and coeffs.back() are nonzero and coeffs[i] is
/// the coefficient of q^(valuation + i). Valuation may be negative.
/// All arithmetic is exact; equality is structural.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c) : QPoly(mpz_class(c)) {}  // NOLINT: implicit by design
  QPoly(mpz_class c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }

  static QPoly monomial(mpz_class c, int exponent) {
    QPoly p;
    if (c != 0) {
      p.valuation_ = exponent;
      p.coeffs_.push_back(std::move(c));
    }
    return p;
  }

  /// Builds from a dense coefficient run starting at `valuation`;
  /// normalizes to canonical form.
  static QPoly from_coeffs(int valuation, std::vector<mpz_class> coeffs) {
    QPoly p;
    p.valuation_ = valuation;
    p.coeffs_ = std::move(coeffs);
    p.normalize();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int valuation() const { return valuation_; }
  /// Highest exponent present; 0 for the zero polynomial.
  int degree() const {
    return coeffs_.empty() ? 0 : valuation_ + static_cast<int>(coeffs_.size()) - 1;
  }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  const mpz_class& coeff(int exponent) const {
    static const mpz_class kZero = 0;
    long idx = static_cast<long>(exponent) - valuation_;
    if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<size_t>(idx)];
  }

  bool operator==(const QPoly& o) const {
    return valuation_ == o.valuation_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  QPoly operator-() const {
    QPoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  QPoly& operator+=(const QPoly& o) { return add_scaled(o, 1); }
  QPoly& operator-=(const QPoly& o) { return add_scaled(o, -1); }

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    QPoly r;
    r.valuation_ = a.valuation_ + b.valuation_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                   b.coeffs_[j].get_mpz_t());
    }
    r.normalize();
    return r;
  }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  QPoly& operator*=(const mpz_class& c) {
    if (c == 0) return *this = QPoly();
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  friend QPoly operator*(QPoly a, const mpz_class& c) { return a *= c; }
  friend QPoly operator*(const mpz_class& c, QPoly a) { return a *= c; }

  /// Multiplies by q^e (exponent shift, may go negative).
  QPoly shifted(int e) const {
    QPoly r(*this);
    if (!r.is_zero()) r.valuation_ += e;
    return r;
  }

  /// Exact evaluation over the rationals. Requires q0 != 0 when the
  /// valuation is negative.
  mpq_class eval(const mpq_class& q0) const {
    if (is_zero()) return 0;
    if (valuation_ < 0 && q0 == 0)
      throw std::domain_error("QPoly::eval: q0 = 0 with negative valuation");
    mpq_class acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q0 + mpq_class(coeffs_[i]);
    if (valuation_ != 0) {
      mpq_class qe = 1;
      mpq_class base = valuation_ > 0 ? q0 : mpq_class(1) / q0;
      for (int e = std::abs(valuation_); e > 0; --e) qe *= base;
      acc *= qe;
    }
    return acc;
  }

  /// Exact evaluation at an integer point; requires valuation >= 0.
  mpz_class eval(const mpz_class& q0) const {
    if (is_zero()) return 0;
    if (valuation_ < 0)
      throw std::domain_error("QPoly::eval(mpz): negative valuation");
    mpz_class acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q0 + coeffs_[i];
    for (int e = valuation_; e > 0; --e) acc *= q0;
    return acc;
  }

  /// Approximate evaluation (Horner) in double precision.
  double eval(double q0) const {
    if (is_zero()) return 0.0;
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q0 + coeffs_[i].get_d();
    if (valuation_ != 0) acc *= std::pow(q0, valuation_);
    return acc;
  }

  /// True iff every coefficient is >= 0.
  bool is_nonneg() const {
    for (const auto& c : coeffs_)
      if (c < 0) return false;
    return true;
  }

  /// Renders like "4+3q+q^2" (ascending exponents). With latex_braces,
  /// multi-character exponents are wrapped: "q^{10}".
  std::string str(bool latex_braces = false) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      const mpz_class& c = coeffs_[i];
      if (c == 0) continue;
      int e = valuation_ + static_cast<int>(i);
      std::string mag = mpz_class(abs(c)).get_str();
      if (out.empty())
        out += (c < 0) ? "-" : "";
      else
        out += (c < 0) ? "-" : "+";
      if (e == 0) {
        out += mag;
      } else {
        if (mag != "1") out += mag;
        out += "q";
        if (e != 1) {
          std::string es = std::to_string(e);
          if (latex_braces && (es.size() > 1)) es = "{" + es + "}";
          out += "^" + es;
        }
      }
    }
    return out;
  }

 private:
  QPoly& add_scaled(const QPoly& o, int sign) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = (sign > 0) ? o : -o;
      return *this;
    }
    int lo = std::min(valuation_, o.valuation_);
    int hi = std::max(degree(), o.degree());
    std::vector<mpz_class> out(static_cast<size_t>(hi - lo + 1));
    for (size_t i = 0; i < coeffs_.size(); ++i)
      out[static_cast<size_t>(valuation_ - lo) + i] = coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) {
      auto& slot = out[static_cast<size_t>(o.valuation_ - lo) + i];
      if (sign > 0)
        slot += o.coeffs_[i];
      else
        slot -= o.coeffs_[i];
    }
    valuation_ = lo;
    coeffs_ = std::move(out);
    normalize();
    return *this;
  }

  void normalize() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    size_t tail = coeffs_.size();
    while (tail > lead && coeffs_[tail - 1] == 0) --tail;
    if (lead == tail) {
      coeffs_.clear();
      valuation_ = 0;
      return;
    }
    if (tail != coeffs_.size()) coeffs_.resize(tail);
    if (lead != 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      valuation_ += static_cast<int>(lead);
    }
  }

  int valuation_ = 0;
  std::vector<mpz_class> coeffs_;
};

inline QPoly pow(const QPoly& a, unsigned long e) {
  QPoly acc(1);
  QPoly base = a;
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return acc;
}

/// q-integer [k] = 1 + q + ... + q^(k-1); [0] = 0.
inline QPoly qint(int k) {
  if (k < 0) throw std::invalid_argument("qint: k must be nonnegative");
  return QPoly::from_coeffs(0, std::vector<mpz_class>(static_cast<size_t>(k), 1));
}

/// Gaussian binomial coefficient, 0 when k < 0 or k > n, computed by the
/// q-Pascal recurrence [n k] = [n-1 k-1] + q^k [n-1 k].
/// The memoized triangle behaves as write-once/read-many; safe for
/// concurrent callers (the lock covers both growth and lookup).
inline QPoly qbinom(int n, int k) {
  if (n < 0) throw std::invalid_argument("qbinom: n must be nonnegative");
  if (k < 0 || k > n) return {};
  if (k == 0 || k == n) return QPoly(1);
  static std::mutex mu;
  static std::vector<std::vector<QPoly>> triangle;  // triangle[m][j], 0 <= j <= m
  std::lock_guard<std::mutex> lock(mu);
  if (triangle.empty()) triangle.push_back({QPoly(1)});
  while (static_cast<int>(triangle.size()) <= n) {
    int m = static_cast<int>(triangle.size());
    const auto& prev = triangle.back();
    std::vector<QPoly> row(static_cast<size_t>(m) + 1);
    row[0] = QPoly(1);
    row[static_cast<size_t>(m)] = QPoly(1);
    for (int j = 1; j < m; ++j)
      row[static_cast<size_t>(j)] =
          prev[static_cast<size_t>(j - 1)] + prev[static_cast<size_t>(j)].shifted(j);
    triangle.push_back(std::move(row));
  }
  return triangle[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

/// q-factorial [1][2]...[n]; empty product 1.
inline QPoly qfactorial(int n) {
  if (n < 0) throw std::invalid_argument("qfactorial: n must be nonnegative");
  QPoly acc(1);
  for (int k = 2; k <= n; ++k) acc *= qint(k);
  return acc;
}

/// Ordinary binomial coefficient as an exact integer (0 outside range).
inline mpz_class binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

}  // namespace qcube
