#pragma once

#include <map>
#include <vector>

#include "pvtau/conformal_blocks.hpp"
#include "pvtau/laurent.hpp"
#include "pvtau/special_fn.hpp"

namespace pvtau {

constexpr int dk_max_exact = 4;
constexpr int dk_max_float = 6;

template <class R> using lseries = laurent_series<R>;

template <class R> bool is_exact_ring() { return std::is_same_v<R, rational>; }

// Regular coefficient with theta1=(L+thetastar)/2, sigma=L/2+nu and the outer
// momenta (L-thetastar)/2, theta0 placed as in the irregular limit.
template <class R>
lseries<R> cb_coeff_in_lambda(const partition& l, const partition& m, const R& thetat, const R& thetastar,
                              const R& nu, const R& theta0, const R& beta, int depth) {
  const R half = R(1) / R(2);
  cb_params<lseries<R>, R> p;
  p.theta1 = lseries<R>::linear(half, thetastar * half);
  p.thetat = lseries<R>(thetat);
  p.sigma = lseries<R>::linear(half, nu);
  p.thetainf = lseries<R>(theta0);
  p.theta0 = lseries<R>::linear(half, -thetastar * half);
  p.beta = beta;
  return regular_cb_coeff(l, m, p, depth);
}

template <class R> struct dk_result {
  std::vector<R> d;           // D_0..D_K
  double max_residual = 0;    // largest relative positive-power remainder (float rings)
  int depth = 0;
};

inline int default_dk_depth(int order) { return 2 * order + 3; }

template <class R>
dk_result<R> dk_coefficients(const R& thetat, const R& thetastar, const R& nu, const R& theta0, const R& beta, int order,
                             int depth = -1) {
  const int kmax = is_exact_ring<R>() ? dk_max_exact : dk_max_float;
  if (order < 0 || order > kmax)
    throw error(errc::config, "dk_coefficients: order " + std::to_string(order) + " outside [0," +
                                  std::to_string(kmax) + "]");
  if (depth < 0) depth = default_dk_depth(order);
  dk_result<R> res;
  res.depth = depth;
  const R q = q_of(beta);
  const R a = (thetastar - q) / R(2) + thetat;
  const lseries<R> top = lseries<R>::linear(a + nu, (a + nu) * (a - nu));

  std::vector<std::vector<lseries<R>>> f(order + 1);
  for (int l = 0; l <= order; ++l)
    for (const auto& [lam, mu] : pairs_of_size(l))
      f[l].push_back(cb_coeff_in_lambda(lam, mu, thetat, thetastar, nu, theta0, beta, depth));

  for (int k = 0; k <= order; ++k) {
    lseries<R> total;
    std::map<int, double> scale;
    for (int l = 0; l <= k; ++l) {
      lseries<R> b = gen_binomial<lseries<R>, R>(top, k - l);
      if ((k - l) % 2) b = -b;
      for (const auto& fl : f[l]) {
        lseries<R> term = (b * fl).shifted(k);
        if constexpr (!std::is_same_v<R, rational>)
          for (int j = 1; j <= term.lead(); ++j) scale[j] += magnitude(term.coeff(j));
        total += term;
      }
    }
    if (total.valid_low() > 0)
      throw error(errc::cancellation_failure, "dk_coefficients: depth " + std::to_string(depth) +
                                                  " too small to resolve order " + std::to_string(k));
    for (int j = 1; j <= total.lead(); ++j) {
      R c = total.coeff(j);
      if constexpr (std::is_same_v<R, rational>) {
        if (c != R(0))
          throw error(errc::cancellation_failure,
                      "dk_coefficients: order " + std::to_string(k) + " keeps a nonzero L^" + std::to_string(j) + " term");
      } else {
        double rel = scale[j] > 0 ? magnitude(c) / scale[j] : 0.0;
        res.max_residual = std::max(res.max_residual, rel);
        if (rel > 1e-9)
          throw error(errc::cancellation_failure, "dk_coefficients: order " + std::to_string(k) + " leaves L^" +
                                                      std::to_string(j) + " at relative size " + format_sci(rel));
      }
    }
    res.d.push_back(total.coeff(0));
  }
  return res;
}

// t^{thetastar^2/2-2nu^2} e^{(thetastar/2+nu)t} sum_k d[k] t^{-k}
template <class C> C confluent_cb2_sum(const std::vector<C>& d, const C& thetastar, const C& nu, const C& t) {
  using std::exp;
  using std::log;
  C s(0), p(1), inv = C(1) / t;
  for (const auto& x : d) {
    s += x * p;
    p *= inv;
  }
  return exp((thetastar * thetastar / C(2) - C(2) * nu * nu) * log(t) + (thetastar / C(2) + nu) * t) * s;
}

template <class C>
C confluent_cb2_series(const C& thetat, const C& thetastar, const C& nu, const C& theta0, const C& t, int order,
                       const C& beta = C(1)) {
  auto d = dk_coefficients(thetat, thetastar, nu, theta0, beta, order).d;
  return confluent_cb2_sum(d, thetastar, nu, t);
}

}  // namespace pvtau
