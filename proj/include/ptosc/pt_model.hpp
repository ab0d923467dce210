#pragma once

#include <cmath>
#include <utility>

#include "ptosc/errors.hpp"
#include "ptosc/hermite.hpp"
#include "ptosc/jet.hpp"

namespace ptosc {

/// |s(x)| (or |t(x)|, |sigma(x)|) below this counts as sitting on the pole.
/// Much larger than the jet_div underflow floor: a model evaluation this
/// close to x = i/2eps is meaningless even though the division would still
/// produce finite numbers.
inline constexpr double kPoleFloor = 1e-12;

/// The deformed-oscillator system: one real parameter eps, with
/// s(x) = 1 + 2i eps x and its real-axis conjugate sbar(x) = 1 - 2i eps x.
/// The deformation factor s has a single zero at x = i/2eps.
struct PTSystem {
  double epsilon = 0.0;

  Complex s(Complex x) const { return 1.0 + Complex(0, 2.0 * epsilon) * x; }
  Complex sbar(Complex x) const { return 1.0 - Complex(0, 2.0 * epsilon) * x; }

  bool has_pole() const { return epsilon != 0.0; }

  /// Location of the zero of s, i/(2 eps). Only defined for eps != 0.
  Complex pole() const {
    if (!has_pole()) throw PoleError("PTSystem::pole: undefined for epsilon = 0");
    return Complex(0, 1.0 / (2.0 * epsilon));
  }
};

/// Oscillator level n with its normalization A_n = (sqrt(pi) 2^n n!)^{-1/2}.
struct EigenState {
  int n = 0;
  double norm_A = 0.0;

  explicit EigenState(int level) : n(level) {
    if (n < 0 || n > kHermiteMaxN) {
      throw IndexTooLarge("EigenState: level must be in [0, 64]");
    }
    double a = std::pow(M_PI, -0.25);
    for (int k = 1; k <= n; ++k) a /= std::sqrt(2.0 * k);
    norm_A = a;
  }
};

/// Oscillator eigenvalue E_n = n + 1/2.
inline double energy(const EigenState& state) { return state.n + 0.5; }

/// Jet of s(x): value 1 + 2i eps x, slope 2i eps, curvature 0.
inline Jet2C s_jet(const PTSystem& sys, Complex x) {
  return {sys.s(x), Complex(0, 2.0 * sys.epsilon), Complex(0)};
}

/// Jet of the oscillator state psi_n(x) = A_n H_n(x) e^{-x^2/2}.
inline Jet2C psi_jet(const EigenState& state, Complex x) {
  const Jet2C u = Jet2C::variable(x);
  const Jet2C gauss = jet_exp(Complex(-0.5) * jet_mul(u, u));
  return Complex(state.norm_A) * jet_mul(hermite_jet(state.n, u), gauss);
}

/// Jet of the deformed state phi_n(x) = (A_n / s) H_n(x/s) e^{-x^2/2s^2}.
///
/// Built from the jet of w = 1/s; the argument jet u = x/s uses the exact
/// simplification u' = 1/s^2 = w^2 (since s - 2i eps x = 1), and the
/// Gaussian exponent is -u^2/2. Throws PoleError at x = i/2eps.
inline Jet2C phi_jet(const PTSystem& sys, const EigenState& state, Complex x) {
  const Jet2C s = s_jet(sys, x);
  if (std::abs(s.v) <= kPoleFloor) {
    throw PoleError("phi_jet: evaluation at the pole x = i/2eps");
  }
  const Jet2C w = jet_div(Jet2C::constant(Complex(1)), s);  // 1/s
  const Jet2C w2 = jet_mul(w, w);                           // 1/s^2
  const Jet2C u = {x * w.v, w2.v, w2.d1};                   // x/s
  const Jet2C gauss = jet_exp(Complex(-0.5) * jet_mul(u, u));
  return Complex(state.norm_A) * jet_mul(jet_mul(w, hermite_jet(state.n, u)), gauss);
}

/// Value of phi_n without the derivative bookkeeping (quadrature hot path).
inline Complex phi_value(const PTSystem& sys, const EigenState& state, Complex x) {
  const Complex s = sys.s(x);
  if (std::abs(s) <= kPoleFloor) {
    throw PoleError("phi_value: evaluation at the pole x = i/2eps");
  }
  const Complex u = x / s;
  const Complex g = -0.5 * u * u;
  if (std::real(g) > kExpArgMax) {
    throw OverflowError("phi_value: Gaussian factor overflows");
  }
  return state.norm_A / s * hermite(state.n, u) * std::exp(g);
}

/// Pointwise action of H = 1/2 p s^4 p + 4 eps^2 s^2 + x^2/2s^2 on a
/// jet-valued function f, with p = -i d/dx. Expanding the derivative of
/// s^4 (namely 8i eps s^3) gives
///   (Hf)(x) = -1/2 (8i eps s^3 f' + s^4 f'') + 4 eps^2 s^2 f + x^2 f / 2s^2.
template <typename F>
Complex apply_H(const PTSystem& sys, F&& f, Complex x) {
  const Complex s = sys.s(x);
  if (std::abs(s) <= kPoleFloor) {
    throw PoleError("apply_H: evaluation at the pole x = i/2eps");
  }
  const Jet2C j = std::forward<F>(f)(x);
  const Complex s2 = s * s;
  const Complex s3 = s2 * s;
  const Complex s4 = s2 * s2;
  const Complex eps(sys.epsilon, 0);
  return -0.5 * (Complex(0, 8) * eps * s3 * j.d1 + s4 * j.d2) +
         4.0 * eps * eps * s2 * j.v + x * x * j.v / (2.0 * s2);
}

/// PT action on a function sampled along the real axis: (PT f)(x) = conj(f(-x)).
template <typename F>
Complex pt_apply(F&& f, double x) {
  return std::conj(std::forward<F>(f)(-x));
}

/// C action in closed form: (C f)(x) = (1/t) f(-x/t) with t = 1 + 4i eps x,
/// i.e. e^{2 eps F} P with the doubled deformation parameter.
template <typename F>
Complex c_apply(const PTSystem& sys, F&& f, Complex x) {
  const Complex t = 1.0 + Complex(0, 4.0 * sys.epsilon) * x;
  if (std::abs(t) <= kPoleFloor) {
    throw PoleError("c_apply: evaluation at the pole x = i/4eps");
  }
  return std::forward<F>(f)(-x / t) / t;
}

/// Closed form of e^{a eps F} U at x: (1/sigma) U(x/sigma) with
/// sigma = 1 + 2i (a eps) x. a = 1 gives e^{eps F}, a = 2 gives e^{2 eps F}.
template <typename F>
Complex expF_apply(const PTSystem& sys, double a, F&& U, Complex x) {
  const Complex sigma = 1.0 + Complex(0, 2.0 * a * sys.epsilon) * x;
  if (std::abs(sigma) <= kPoleFloor) {
    throw PoleError("expF_apply: evaluation at the pole of 1/sigma");
  }
  return std::forward<F>(U)(x / sigma) / sigma;
}

}  // namespace ptosc
