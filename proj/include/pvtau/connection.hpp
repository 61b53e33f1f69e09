#pragma once

#include "pvtau/numeric.hpp"
#include "pvtau/tau_expansions.hpp"

namespace pvtau {

constexpr double genericity_threshold = 1e-8;

template <class C> struct a_invariants_t {
  C plus, minus, star;
};

template <class C> struct x_pair {
  C plus, minus;
};

template <class C> struct asymptotic_labels {
  C sigma, eta, nu, rho, omega, xi, lambda;
};

template <class C> a_invariants_t<C> a_invariants(const pv_params<C>& p);

// Left side of the cubic in expanded and factored form.
template <class C> C cubic_residual(const C& xs, const C& xp, const C& xm, const pv_params<C>& p);
template <class C> C cubic_residual_factored(const C& xs, const C& xp, const C& xm, const pv_params<C>& p);

template <class C> x_pair<C> x_from_sigma_eta(const C& sigma, const C& eta, const pv_params<C>& p);

// sigma in the canonical strip Re sigma in [0, 1/2), Im sigma >= 0 on Re sigma = 0.
template <class C> C canonical_sigma(const C& sigma);
template <class C> std::pair<C, C> sigma_eta_from_x(const C& xp, const C& xm, const pv_params<C>& p);

template <class C> std::pair<C, C> labels_iinf(const C& xp, const C& xm);
template <class C> std::pair<C, C> labels_pinf(const C& xp, const C& xm);

template <class C> C lambda_param(const C& sigma, const pv_params<C>& p, const C& xp, const C& xm);

template <class C> C log_upsilon_0_iinf(const C& sigma, const C& nu, const C& lambda, const pv_params<C>& p);
template <class C> C log_upsilon_iinf_pinf(const C& nu, const C& omega);
template <class C> C upsilon_0_iinf(const C& sigma, const C& nu, const C& lambda, const pv_params<C>& p);
template <class C> C upsilon_iinf_pinf(const C& nu, const C& omega);

// All labels starting from (sigma, eta).
template <class C> asymptotic_labels<C> labels_from_sigma_eta(const C& sigma, const C& eta, const pv_params<C>& p);

}  // namespace pvtau
