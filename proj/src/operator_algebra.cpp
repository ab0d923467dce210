#include "ptosc/operator_algebra.hpp"

#include <cmath>
#include <numeric>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("Rational: 64-bit multiplication overflow");
  }
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("Rational: 64-bit addition overflow");
  }
  return r;
}

long long gcd_ll(long long a, long long b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DivisionByZeroJet("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = n == 0 ? d : gcd_ll(n, d);
  num_ = n / g;
  den_ = d / g;
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  // Reduce by the denominator gcd first to delay overflow.
  const long long g = gcd_ll(a.den_, b.den_);
  const long long bd = b.den_ / g;
  const long long n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
  return Rational(n, checked_mul(a.den_, bd));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-cancel before multiplying.
  const long long g1 = a.num_ == 0 ? 1 : gcd_ll(a.num_, b.den_);
  const long long g2 = b.num_ == 0 ? 1 : gcd_ll(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                  checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DivisionByZeroJet("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

OperatorSum OperatorSum::x_pow(int power, CRat c) {
  OperatorSum s;
  s.add_term(TermKind::XPow, power, c);
  return s;
}

OperatorSum OperatorSum::p_x_pow_p(int power, CRat c) {
  OperatorSum s;
  s.add_term(TermKind::PXPowP, power, c);
  return s;
}

OperatorSum OperatorSum::harmonic() {
  OperatorSum h;
  h.add_term(TermKind::PXPowP, 0, CRat::real(Rational(1, 2)));
  h.add_term(TermKind::XPow, 2, CRat::real(Rational(1, 2)));
  return h;
}

void OperatorSum::add_term(TermKind kind, int power, const CRat& c) {
  if (c.is_zero()) return;
  const auto key = std::make_pair(static_cast<int>(kind), power);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
  for (const auto& [key, c] : o.terms_) {
    add_term(static_cast<TermKind>(key.first), key.second, c);
  }
  return *this;
}

OperatorSum OperatorSum::scaled(const CRat& c) const {
  OperatorSum s;
  if (c.is_zero()) return s;
  for (const auto& [key, coeff] : terms_) s.terms_.emplace(key, c * coeff);
  return s;
}

std::vector<OpTerm> OperatorSum::terms() const {
  std::vector<OpTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    out.push_back({static_cast<TermKind>(key.first), key.second, c});
  }
  return out;
}

std::string OperatorSum::dump() const {
  if (terms_.empty()) return "0\n";
  std::string out;
  for (const auto& t : terms()) {
    out += t.coeff.str();
    out += t.kind == TermKind::XPow ? " * x^" + std::to_string(t.power)
                                    : " * p x^" + std::to_string(t.power) + " p";
    out += '\n';
  }
  return out;
}

OperatorSum commute_F(const OperatorSum& t) {
  OperatorSum out;
  for (const auto& term : t.terms()) {
    const int n = term.power;
    if (term.kind == TermKind::XPow) {
      // [F, x^n] = -2in x^{n+1}
      out.add_term(TermKind::XPow, n + 1, CRat::imag(Rational(-2) * Rational(n)) * term.coeff);
    } else {
      // [F, p x^n p] = i(8-2n) p x^{n+1} p - 2in x^{n-1}
      out.add_term(TermKind::PXPowP, n + 1,
                   CRat::imag(Rational(8 - 2LL * n)) * term.coeff);
      if (n >= 1) {
        out.add_term(TermKind::XPow, n - 1,
                     CRat::imag(Rational(-2) * Rational(n)) * term.coeff);
      }
    }
  }
  return out;
}

std::string EpsSeries::dump() const {
  std::string out;
  for (int k = 0; k <= order(); ++k) {
    out += "eps^" + std::to_string(k) + ":\n";
    const std::string body = grade(k).dump();
    // indent each line
    std::size_t pos = 0;
    while (pos < body.size()) {
      const std::size_t nl = body.find('\n', pos);
      out += "  " + body.substr(pos, nl - pos) + "\n";
      pos = nl + 1;
    }
  }
  return out;
}

EpsSeries bch_series(int order) {
  if (order < 0 || order > 16) {
    throw IndexTooLarge("bch_series: order must be in [0, 16]");
  }
  EpsSeries series(order);
  OperatorSum t = OperatorSum::harmonic();  // (1/k!) C_k, starting at C_0 = h
  series.grade(0) = t;
  for (int k = 1; k <= order; ++k) {
    t = commute_F(t).scaled(CRat::real(Rational(1, k)));
    series.grade(k) = t;
  }
  return series;
}

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int j = 1; j <= k; ++j) r = r * Rational(n - j + 1) / Rational(j);
  return r;
}

// (2i)^j and (-2i)^j as exact complex rationals.
CRat two_i_pow(int j, bool negative) {
  CRat acc = CRat::real(Rational(1));
  const CRat f = CRat::imag(Rational(negative ? -2 : 2));
  for (int i = 0; i < j; ++i) acc = acc * f;
  return acc;
}

}  // namespace

EpsSeries target_expansion(int order) {
  if (order < 0 || order > 32) {
    throw IndexTooLarge("target_expansion: order must be in [0, 32]");
  }
  EpsSeries series(order);

  // 1/2 p (1 + 2i eps x)^4 p: binomial, grades 0..4.
  for (int j = 0; j <= std::min(4, order); ++j) {
    const CRat c = Rational(1, 2) * binomial(4, j) * two_i_pow(j, false);
    series.grade(j) += OperatorSum::p_x_pow_p(j, c);
  }

  // 4 eps^2 (1 + 2i eps x)^2: grades 2..4.
  for (int j = 0; j <= std::min(2, order - 2); ++j) {
    const CRat c = Rational(4) * binomial(2, j) * two_i_pow(j, false);
    series.grade(j + 2) += OperatorSum::x_pow(j, c);
  }

  // x^2/2 * 1/s^2 with 1/s^2 = sum_m (m+1) (-2i eps x)^m: every grade.
  for (int m = 0; m <= order; ++m) {
    const CRat c = Rational(m + 1, 2) * two_i_pow(m, true);
    series.grade(m) += OperatorSum::x_pow(m + 2, c);
  }

  return series;
}

Complex apply_term(TermKind kind, int power, const Jet2C& f, Complex x) {
  Complex xp(1);  // x^power
  for (int i = 0; i < power; ++i) xp *= x;
  if (kind == TermKind::XPow) return xp * f.v;
  Complex xpm1(1);  // x^{power-1}
  for (int i = 0; i + 1 < power; ++i) xpm1 *= x;
  const Complex first = power == 0 ? Complex(0) : double(power) * xpm1 * f.d1;
  return -(first + xp * f.d2);
}

Complex apply_sum(const OperatorSum& sum, const Jet2C& f, Complex x) {
  Complex acc(0);
  for (const auto& t : sum.terms()) {
    acc += t.coeff.to_complex() * apply_term(t.kind, t.power, f, x);
  }
  return acc;
}

LemmaSeries build_lemma_series(const PolyC& U, const PTSystem& sys, int n_terms) {
  if (n_terms < 0 || n_terms > kLemmaTermCap) {
    throw IndexTooLarge("build_lemma_series: term count must be in [0, 200]");
  }
  LemmaSeries series;
  series.U0 = U;
  series.mu = Complex(0, 2.0 * sys.epsilon);
  series.terms.reserve(n_terms + 1);
  series.terms.push_back(U);
  for (int k = 0; k < n_terms; ++k) {
    const PolyC& f = series.terms.back();
    PolyC next = f.times_x(1) + f.derivative().times_x(2);
    next *= -series.mu / double(k + 1);
    series.terms.push_back(std::move(next));
  }
  return series;
}

Complex lemma_series_sum(const PolyC& U, const PTSystem& sys, Complex x, int n_terms) {
  if (std::abs(2.0 * sys.epsilon * x) >= 1.0) {
    throw ConvergenceDomainError("lemma_series_sum: |2 eps x| >= 1 diverges");
  }
  const LemmaSeries series = build_lemma_series(U, sys, n_terms);
  Complex acc(0);
  for (const PolyC& f : series.terms) acc += f(x);
  return acc;
}

Complex lemma_closed_form(const PolyC& U, const PTSystem& sys, Complex x) {
  const Complex s = sys.s(x);
  if (std::abs(s) <= kPoleFloor) {
    throw PoleError("lemma_closed_form: evaluation at the pole x = i/2eps");
  }
  return U(x / s) / s;
}

}  // namespace ptosc
