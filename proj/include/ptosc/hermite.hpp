#pragma once

#include "ptosc/errors.hpp"
#include "ptosc/jet.hpp"

namespace ptosc {

/// Above this index the double-precision three-term recurrence starts losing
/// digits for |z| around 10, so we refuse instead of degrading silently.
inline constexpr int kHermiteMaxN = 64;

namespace detail {

inline void check_hermite_index(int n) {
  if (n < 0) throw IndexTooLarge("hermite: index must be non-negative");
  if (n > kHermiteMaxN) {
    throw IndexTooLarge("hermite: index above accuracy cap 64");
  }
}

/// H_n, H_{n-1}, H_{n-2} in one recurrence pass (entries for negative
/// indices are zero).
template <typename S>
struct HermiteTriple {
  S h, hm1, hm2;
};

template <typename S>
HermiteTriple<S> hermite_triple(int n, const S& z) {
  S hm2(0), hm1(0), h(1);
  for (int k = 0; k < n; ++k) {
    hm2 = hm1;
    hm1 = h;
    h = S(2) * z * hm1 - S(2) * S(k) * hm2;
  }
  return {h, hm1, hm2};
}

}  // namespace detail

/// Physicists' Hermite polynomial H_n(z) via H_{k+1} = 2 z H_k - 2 k H_{k-1}.
template <typename S>
S hermite(int n, const S& z) {
  detail::check_hermite_index(n);
  return detail::hermite_triple(n, z).h;
}

/// 2-jet of H_n along a jet argument, using H_n' = 2n H_{n-1} and
/// H_n'' = 4n(n-1) H_{n-2} with the chain rule.
template <typename S>
Jet2<S> hermite_jet(int n, const Jet2<S>& u) {
  detail::check_hermite_index(n);
  const auto t = detail::hermite_triple(n, u.v);
  const S hp = S(2) * S(n) * t.hm1;
  const S hpp = S(4) * S(n) * S(n - 1) * t.hm2;
  return {t.h, hp * u.d1, hpp * u.d1 * u.d1 + hp * u.d2};
}

}  // namespace ptosc
