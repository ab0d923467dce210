#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ptosc/jet.hpp"
#include "ptosc/poly.hpp"
#include "ptosc/pt_model.hpp"

namespace ptosc {

/// Exact fraction of 64-bit integers, always normalized (gcd 1, positive
/// denominator). Arithmetic throws OverflowError instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT: implicit integer lift
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return {-num_, den_, normalized_tag{}}; }
  bool operator==(const Rational&) const = default;

 private:
  struct normalized_tag {};
  Rational(long long n, long long d, normalized_tag) : num_(n), den_(d) {}

  long long num_ = 0;
  long long den_ = 1;
};

/// Exact complex number with rational real and imaginary parts.
struct CRat {
  Rational re{};
  Rational im{};

  static CRat real(Rational r) { return {r, Rational(0)}; }
  static CRat imag(Rational i) { return {Rational(0), i}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string str() const { return "(" + re.str() + " + " + im.str() + " i)"; }

  CRat operator-() const { return {-re, -im}; }
  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRat operator*(const Rational& r, const CRat& c) { return {r * c.re, r * c.im}; }
  bool operator==(const CRat&) const = default;
};

/// The two term families closed under commutation with F = x^2 p + p x^2:
/// plain powers x^a, and powers sandwiched between momenta p x^a p.
enum class TermKind { XPow = 0, PXPowP = 1 };

struct OpTerm {
  TermKind kind = TermKind::XPow;
  int power = 0;
  CRat coeff{};
};

/// Finite linear combination of x^a and p x^a p terms with exact complex
/// rational coefficients. Normal form: at most one term per (kind, power),
/// zero coefficients dropped, canonical order x^a ascending then p x^a p
/// ascending.
class OperatorSum {
 public:
  OperatorSum() = default;

  static OperatorSum x_pow(int power, CRat c);
  static OperatorSum p_x_pow_p(int power, CRat c);
  /// h = 1/2 p x^0 p + 1/2 x^2, the harmonic oscillator.
  static OperatorSum harmonic();

  void add_term(TermKind kind, int power, const CRat& c);
  OperatorSum& operator+=(const OperatorSum& o);
  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  OperatorSum scaled(const CRat& c) const;

  bool empty() const { return terms_.empty(); }
  std::vector<OpTerm> terms() const;
  bool operator==(const OperatorSum&) const = default;

  /// Golden-test dump: one term per line,
  /// `(re_num/re_den + im_num/im_den i) * x^a` or `... * p x^a p`.
  std::string dump() const;

 private:
  std::map<std::pair<int, int>, CRat> terms_;  // key (kind, power)
};

/// Exact commutator with F = x^2 p + p x^2, applied termwise:
///   [F, x^n]     = -2in x^{n+1}
///   [F, p x^n p] = i(8-2n) p x^{n+1} p - 2in x^{n-1}
/// The x^{n-1} piece carries a factor n, so n = 0 never produces a negative
/// power; both families are closed.
OperatorSum commute_F(const OperatorSum& t);

/// Operator-valued polynomial in eps: grade k holds the exact coefficient
/// operator of eps^k.
class EpsSeries {
 public:
  explicit EpsSeries(int order) : grades_(order + 1) {}

  int order() const { return static_cast<int>(grades_.size()) - 1; }
  OperatorSum& grade(int k) { return grades_.at(k); }
  const OperatorSum& grade(int k) const { return grades_.at(k); }
  bool operator==(const EpsSeries&) const = default;
  std::string dump() const;

 private:
  std::vector<OperatorSum> grades_;
};

/// Nested-commutator reconstruction h + sum_k (eps^k/k!) C_k with
/// C_0 = h and C_k = [F, C_{k-1}], as an exact eps-graded series.
/// order <= 16.
EpsSeries bch_series(int order);

/// Taylor expansion of 1/2 p s^4 p + 4 eps^2 s^2 + x^2/2s^2 in powers of
/// eps: the p-sandwich and s^2 blocks terminate at eps^4, the x^2/2s^2
/// geometric series contributes (m+1)/2 (-2i)^m x^{m+2} at every grade m.
/// order <= 32.
EpsSeries target_expansion(int order);

/// Pointwise action of one term on a 2-jet: x^a scales the value;
/// p x^a p f = -d/dx(x^a f') = -(a x^{a-1} f' + x^a f'').
Complex apply_term(TermKind kind, int power, const Jet2C& f, Complex x);
Complex apply_sum(const OperatorSum& sum, const Jet2C& f, Complex x);

/// Hard cap on lemma series length; geometric convergence makes longer
/// sums pointless while the polynomial degree keeps growing.
inline constexpr int kLemmaTermCap = 200;

/// Terms f_0..f_N of e^{eps F} U expanded as a series, built by the exact
/// polynomial recurrence f_{k+1} = -(mu/(k+1)) [x f_k + x^2 f_k'] with
/// mu = 2i eps. deg(f_k) = deg(U) + k.
struct LemmaSeries {
  PolyC U0;
  std::vector<PolyC> terms;
  Complex mu{};
};

LemmaSeries build_lemma_series(const PolyC& U, const PTSystem& sys, int n_terms);

/// Partial sum sum_{k<=n_terms} f_k(x). Converges only for |2 eps x| < 1;
/// outside the disc throws ConvergenceDomainError.
Complex lemma_series_sum(const PolyC& U, const PTSystem& sys, Complex x, int n_terms);

/// The closed form the series converges to: (1/s) U(x/s).
Complex lemma_closed_form(const PolyC& U, const PTSystem& sys, Complex x);

}  // namespace ptosc
