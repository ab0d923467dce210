#pragma once

#include <cmath>
#include <complex>

#include "ptosc/errors.hpp"

namespace ptosc {

using Complex = std::complex<double>;

/// Denominator floor below which jet_div reports a genuine zero divisor
/// rather than underflow noise.
inline constexpr double kDivFloor = 1e-300;

/// Largest real part accepted by jet_exp before exp() overflows a double.
inline constexpr double kExpArgMax = 700.0;

/// Value and first two derivatives of a function at a point (a 2-jet).
///
/// Jets propagate exact derivatives through arithmetic: Leibniz rule for
/// products, quotient rule for division, chain rule for composition. Two
/// derivative slots are carried because every operator in this library is
/// second order.
template <typename Scalar>
struct Jet2 {
  Scalar v{};   // f(x)
  Scalar d1{};  // f'(x)
  Scalar d2{};  // f''(x)

  /// Lift of a constant: derivatives vanish.
  static Jet2 constant(const Scalar& c) { return {c, Scalar(0), Scalar(0)}; }

  /// Lift of the coordinate itself: v = x, d1 = 1, d2 = 0.
  static Jet2 variable(const Scalar& x) { return {x, Scalar(1), Scalar(0)}; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  Jet2& operator*=(const Scalar& c) {
    v *= c;
    d1 *= c;
    d2 *= c;
    return *this;
  }
};

using Jet2C = Jet2<Complex>;

template <typename S>
Jet2<S> operator+(Jet2<S> a, const Jet2<S>& b) {
  return a += b;
}

template <typename S>
Jet2<S> operator-(Jet2<S> a, const Jet2<S>& b) {
  return a -= b;
}

template <typename S>
Jet2<S> operator-(const Jet2<S>& a) {
  return {-a.v, -a.d1, -a.d2};
}

template <typename S>
Jet2<S> operator*(Jet2<S> a, const S& c) {
  return a *= c;
}

template <typename S>
Jet2<S> operator*(const S& c, Jet2<S> a) {
  return a *= c;
}

/// Product jet via the Leibniz rule: (fg)'' = f''g + 2f'g' + fg''.
template <typename S>
Jet2<S> jet_mul(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + S(2) * a.d1 * b.d1 + a.v * b.d2};
}

template <typename S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
  return jet_mul(a, b);
}

/// Quotient jet. Solves (q*b) = a order by order, so jet_mul(jet_div(a,b), b)
/// reproduces a up to roundoff. Throws DivisionByZeroJet when |b.v| is below
/// `floor`.
template <typename S>
Jet2<S> jet_div(const Jet2<S>& a, const Jet2<S>& b, double floor = kDivFloor) {
  if (std::abs(b.v) <= floor) {
    throw DivisionByZeroJet("jet_div: divisor value below zero floor");
  }
  Jet2<S> q;
  q.v = a.v / b.v;
  q.d1 = (a.d1 - q.v * b.d1) / b.v;
  q.d2 = (a.d2 - q.v * b.d2 - S(2) * q.d1 * b.d1) / b.v;
  return q;
}

template <typename S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
  return jet_div(a, b);
}

/// exp composed with a jet: v = e^a, d1 = a' e^a, d2 = (a'' + a'^2) e^a.
/// Throws OverflowError once Re(a.v) exceeds the double exponent range.
template <typename S>
Jet2<S> jet_exp(const Jet2<S>& a) {
  if (std::real(a.v) > kExpArgMax) {
    throw OverflowError("jet_exp: exponent real part exceeds overflow guard");
  }
  using std::exp;
  const S e = exp(a.v);
  return {e, a.d1 * e, (a.d2 + a.d1 * a.d1) * e};
}

}  // namespace ptosc
