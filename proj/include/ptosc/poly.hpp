#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptosc/jet.hpp"

namespace ptosc {

/// Dense complex polynomial, coefficients stored in ascending powers.
/// Trailing exact zeros are trimmed; the zero polynomial has an empty
/// coefficient list and degree -1.
class PolyC {
 public:
  PolyC() = default;
  explicit PolyC(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyC constant(Complex c) { return PolyC({c}); }
  static PolyC identity() { return PolyC({Complex(0), Complex(1)}); }

  const std::vector<Complex>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  /// Horner evaluation at a complex point.
  Complex operator()(Complex x) const {
    Complex acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  PolyC derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = double(i) * c_[i];
    return PolyC(std::move(d));
  }

  /// Multiplication by x^k.
  PolyC times_x(int k = 1) const {
    if (k < 0) throw std::invalid_argument("PolyC::times_x: negative shift");
    if (is_zero() || k == 0) return *this;
    std::vector<Complex> s(c_.size() + static_cast<std::size_t>(k), Complex(0));
    for (std::size_t i = 0; i < c_.size(); ++i) s[i + k] = c_[i];
    return PolyC(std::move(s));
  }

  PolyC& operator+=(const PolyC& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolyC& operator-=(const PolyC& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  PolyC& operator*=(Complex s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend PolyC operator+(PolyC a, const PolyC& b) { return a += b; }
  friend PolyC operator-(PolyC a, const PolyC& b) { return a -= b; }
  friend PolyC operator*(PolyC a, Complex s) { return a *= s; }
  friend PolyC operator*(Complex s, PolyC a) { return a *= s; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Complex(0)) c_.pop_back();
  }

  std::vector<Complex> c_;
};

}  // namespace ptosc
