#pragma once

#include <vector>

#include "pvtau/numeric.hpp"

namespace pvtau {

template <class C> struct pv_params {
  C theta0, thetat, thetastar;
};

template <class C> pv_params<C> convert_params(const pv_params<cplx>& p) {
  return {from_cplx<C>(p.theta0), from_cplx<C>(p.thetat), from_cplx<C>(p.thetastar)};
}

struct channel_defaults {
  static constexpr int zero_order = 8;
  static constexpr int zero_window = 6;
  static constexpr int asym_order = 3;
  static constexpr int asym_window = 2;
  static constexpr int gk_max = 6;
};

// Structure constants.
template <class C> C c0_structure(const C& thetastar, const C& sigma, const C& thetat, const C& theta0);
template <class C> C c_iinf_structure(const C& thetat, const C& thetastar, const C& nu, const C& theta0);
template <class C> C c_pinf_structure(const C& omega, const pv_params<C>& p);

// t -> 0: sum_n e^{2 pi i n eta} C0(sigma+n) B(sigma+n; t) at c = 1.
template <class C> class zero_channel {
 public:
  struct term {
    C log_weight;            // log of e^{2 pi i n eta} C0
    C exponent;              // (sigma+n)^2 - theta0^2 - thetat^2
    std::vector<C> coeffs;   // power series including e^{-thetat t}
  };

  zero_channel(const C& sigma, const C& eta, const pv_params<C>& p, int order = channel_defaults::zero_order,
               int window = channel_defaults::zero_window);

  C value(const C& t) const;
  C log_value(const C& t) const;
  // tau, tau', tau'', tau''' and the size of the last retained order relative to |tau|
  std::vector<C> derivatives(const C& t, int count, double* tail = nullptr) const;
  const std::vector<term>& terms() const { return terms_; }

 private:
  std::vector<term> terms_;
};

template <class C>
C tau_zero(const C& t, const C& sigma, const C& eta, const pv_params<C>& p, int order = channel_defaults::zero_order,
           int window = channel_defaults::zero_window);

// t -> i infinity.
template <class C> class iinf_channel {
 public:
  iinf_channel(const C& nu, const C& rho, const pv_params<C>& p, int order = channel_defaults::asym_order,
               int window = channel_defaults::asym_window);
  C log_value(const C& t) const;
  C value(const C& t) const;

 private:
  struct term {
    C log_weight, nu;
    std::vector<C> d;
  };
  C thetastar_;
  std::vector<term> terms_;
};

template <class C>
C tau_iinf(const C& t, const C& nu, const C& rho, const pv_params<C>& p, int order = channel_defaults::asym_order,
           int window = channel_defaults::asym_window);

// G_k as polynomials in omega: poly[k-1][j] is the coefficient of omega^j in G_k.
template <class C> struct gk_table {
  std::vector<std::vector<C>> poly;
  double max_step_residual = 0;
  C eval(int k, const C& omega) const;
  int order() const { return static_cast<int>(poly.size()); }
};

template <class C> gk_table<C> gk_polynomials(const pv_params<C>& p, int order);
template <class C> std::vector<C> gk_coefficients(const pv_params<C>& p, const C& omega, int order);

// t -> +infinity.
template <class C> class pinf_channel {
 public:
  pinf_channel(const C& omega, const C& xi, const pv_params<C>& p, const gk_table<C>& g,
               int window = channel_defaults::asym_window);
  C log_value(const C& t) const;
  C value(const C& t) const;

 private:
  struct term {
    C log_weight, omega;
    std::vector<C> g;
  };
  pv_params<C> p_;
  std::vector<term> terms_;
};

template <class C>
C tau_pinf(const C& t, const C& omega, const C& xi, const pv_params<C>& p, int order = channel_defaults::asym_order,
           int window = channel_defaults::asym_window);

// Stable log of sum_j exp(x_j).
template <class C> C log_sum_exp(const std::vector<C>& x);

}  // namespace pvtau
