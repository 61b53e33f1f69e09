#pragma once

#include "pvtau/numeric.hpp"

namespace pvtau {

// Principal branch: imaginary part in (-pi, pi].
template <class C> C log_gamma(const C& z);

// log G(1+z), principal branch.
template <class C> C log_barnes_g(const C& z);

// G(1+z)/G(1-z).
template <class C> C g_hat(const C& z);

template <class C> C gamma_fn(const C& z) { using std::exp; return exp(log_gamma(z)); }

template <class T> T pochhammer(const T& a, int n) {
  T r(1);
  for (int i = 0; i < n; ++i) r = r * (a + T(i));
  return r;
}

// x(x-1)...(x-k+1)/k!; S is the scalar ring when T is a series type.
template <class T, class S = T> T gen_binomial(const T& x, int k) {
  T r(1);
  for (int i = 0; i < k; ++i) r = r * (x - T(S(i))) * (S(1) / S(i + 1));
  return r;
}

}  // namespace pvtau
