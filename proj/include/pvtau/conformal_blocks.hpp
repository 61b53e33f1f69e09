#pragma once

#include <vector>

#include "pvtau/error.hpp"
#include "pvtau/numeric.hpp"
#include "pvtau/partitions.hpp"

namespace pvtau {

constexpr int cb_max_order = 10;

// T is the coefficient ring (scalar or series in L); S is the scalar ring of beta.
template <class T, class S = T> struct cb_params {
  T theta0, thetat, theta1, thetainf, sigma;
  S beta = S(1);
  T thetastar = T(S(0));  // confluent blocks only
};

template <class S> S q_of(const S& beta) { return beta - S(1) / beta; }
template <class S> S central_charge(const S& beta) {
  S q = q_of(beta);
  return S(1) - S(6) * q * q;
}
// (c-1)/24 + theta^2
template <class S> S conformal_dimension(const S& theta, const S& beta) {
  S q = q_of(beta);
  return theta * theta - q * q / S(4);
}

namespace detail {

template <class T, class S>
void check_denominator(const partition& l, const partition& m, const S& sigma, const S& beta) {
  if constexpr (std::is_same_v<T, S>) {
    const S h = q_of(beta) / S(2);
    double (*mag)(const S&) = &magnitude<S>;
    double r = std::min({nekrasov_z_min_ratio(l, l, h, beta, mag), nekrasov_z_min_ratio(m, m, h, beta, mag),
                         nekrasov_z_min_ratio(l, m, S(h + S(2) * sigma), beta, mag),
                         nekrasov_z_min_ratio(m, l, S(h - S(2) * sigma), beta, mag)});
    if (r <= 1e-10)
      throw error(errc::pole, "conformal block coefficient: denominator vanishes (sigma at a degenerate value)");
  }
}

template <class T, class S> T cb_denominator(const partition& l, const partition& m, const T& sigma, const S& beta) {
  const T h = T(q_of(beta) / S(2));
  const T two_sigma = sigma * S(2);
  return nekrasov_z(l, l, h, beta) * nekrasov_z(m, m, h, beta) * nekrasov_z(l, m, T(h + two_sigma), beta) *
         nekrasov_z(m, l, T(h - two_sigma), beta);
}

template <class T, class S> T divide(const T& num, const T& den, int depth) {
  if constexpr (std::is_same_v<T, S>)
    return num / den;
  else
    return num * den.reciprocal(depth);
}

}  // namespace detail

// depth only matters for series rings.
template <class T, class S>
T regular_cb_coeff(const partition& l, const partition& m, const cb_params<T, S>& p, int depth = 0) {
  const S& b = p.beta;
  const partition e;
  T num = T(S(1));
  for (int eps : {1, -1}) {
    T th0 = p.theta0 * S(eps), thinf = p.thetainf * S(eps);
    num = num * nekrasov_z(e, l, T(th0 - p.thetat - p.sigma), b) * nekrasov_z(e, m, T(th0 - p.thetat + p.sigma), b) *
          nekrasov_z(l, e, T(thinf + p.theta1 + p.sigma), b) * nekrasov_z(m, e, T(thinf + p.theta1 - p.sigma), b);
  }
  T den = detail::cb_denominator(l, m, p.sigma, b);
  if constexpr (std::is_same_v<T, S>) detail::check_denominator<T>(l, m, p.sigma, b);
  return detail::divide<T, S>(num, den, depth);
}

template <class T, class S>
T confluent_cb1_coeff(const partition& l, const partition& m, const T& thetastar, const T& sigma, const T& thetat,
                      const T& theta0, const S& beta) {
  const partition e;
  T num = nekrasov_z(l, e, T(thetastar + sigma), beta) * nekrasov_z(m, e, T(thetastar - sigma), beta);
  for (int eps : {1, -1}) {
    T th0 = theta0 * S(eps);
    num = num * nekrasov_z(e, l, T(th0 - thetat - sigma), beta) * nekrasov_z(e, m, T(th0 - thetat + sigma), beta);
  }
  T den = detail::cb_denominator(l, m, sigma, beta);
  detail::check_denominator<T>(l, m, sigma, beta);
  return num / den;
}

// Sum over pairs with |lambda|+|mu| = k, for k = 0..order.
template <class C> std::vector<C> regular_cb_bracket(const cb_params<C>& p, int order) {
  std::vector<C> out;
  for (int k = 0; k <= order; ++k) {
    C s(0);
    for (const auto& [l, m] : pairs_of_size(k)) s += regular_cb_coeff(l, m, p);
    out.push_back(s);
  }
  return out;
}

template <class C>
std::vector<C> confluent_cb1_bracket(const C& thetastar, const C& sigma, const C& thetat, const C& theta0, const C& beta,
                                     int order) {
  std::vector<C> out;
  for (int k = 0; k <= order; ++k) {
    C s(0);
    for (const auto& [l, m] : pairs_of_size(k)) s += confluent_cb1_coeff(l, m, thetastar, sigma, thetat, theta0, beta);
    out.push_back(s);
  }
  return out;
}

enum class cb_kind { regular, confluent1 };

template <class C> struct cb_series_result {
  std::vector<C> coeffs;  // bracket coefficients, coeffs[0] = 1
  C exponent;             // power of t in front
  C value;                // full block at t, prefactors included
};

// Exponent of the exponential prefactor of the confluent block: e^{rate t}.
template <class C> C confluent_rate(const C& thetat, const C& beta) { return q_of(beta) / C(2) - thetat; }

template <class C> cb_series_result<C> cb_series(cb_kind kind, const cb_params<C>& p, const C& t, int order) {
  using std::exp;
  using std::log;
  if (order < 0 || order > cb_max_order)
    throw error(errc::config, "cb_series: order " + std::to_string(order) + " outside [0," +
                                  std::to_string(cb_max_order) + "]");
  cb_series_result<C> r;
  const C q = q_of(p.beta);
  r.exponent = p.sigma * p.sigma - p.theta0 * p.theta0 - p.thetat * p.thetat + q * q / C(4);
  r.coeffs = kind == cb_kind::regular ? regular_cb_bracket(p, order)
                                      : confluent_cb1_bracket(p.thetastar, p.sigma, p.thetat, p.theta0, p.beta, order);
  C sum(0), tp(1);
  for (const auto& c : r.coeffs) {
    sum += c * tp;
    tp *= t;
  }
  C pre = exp(r.exponent * log(t));
  if (kind == cb_kind::regular)
    pre *= exp(C(2) * (p.thetat - q / C(2)) * (p.theta1 - q / C(2)) * log(C(1) - t));
  else
    pre *= exp(confluent_rate(p.thetat, p.beta) * t);
  r.value = pre * sum;
  return r;
}

}  // namespace pvtau
