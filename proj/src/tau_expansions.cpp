#include "pvtau/tau_expansions.hpp"

#include "pvtau/conformal_blocks.hpp"
#include "pvtau/error.hpp"
#include "pvtau/lambda_limit.hpp"
#include "pvtau/special_fn.hpp"

namespace pvtau {

namespace {

template <class C> void require_nonresonant(const C& sigma) {
  using std::sin;
  if (magnitude(sin(C(2) * C(pi_v<C>()) * sigma)) < 1e-8)
    throw error(errc::resonance, "2 sigma is an integer (sigma=" + to_string(to_cplx(sigma)) + ")");
}

template <class C> C log_c0(const C& thetastar, const C& sigma, const C& thetat, const C& theta0) {
  C r(0);
  for (int e : {1, -1}) {
    C s = sigma * C(e);
    r += log_barnes_g(C(thetastar + s)) + log_barnes_g(C(theta0 + thetat + s)) + log_barnes_g(C(thetat - theta0 + s)) -
         log_barnes_g(C(C(2) * s));
  }
  return r;
}

template <class C> C log_c_iinf(const C& thetat, const C& thetastar, const C& nu, const C& theta0) {
  using std::log;
  C r = C(-2) * nu * C(log(2 * pi_v<C>()));
  for (int e : {1, -1})
    r += log_barnes_g(C(nu + C(e) * theta0 - thetastar / C(2))) + log_barnes_g(C(nu + C(e) * thetat + thetastar / C(2)));
  return r;
}

template <class C> C log_c_pinf(const C& omega, const pv_params<C>& p) {
  using std::log;
  const C& a = p.theta0;
  const C& b = p.thetat;
  const C& s = p.thetastar;
  C e2 = C(-4) * a * a - C(4) * b * b - C(2) * s * s - omega * omega / C(2);
  return e2 * C(log(real_t<C>(2))) - omega / C(2) * C(log(2 * pi_v<C>())) -
         imag_unit<C>() * C(pi_v<C>()) * omega * omega / C(4) + log_barnes_g(omega);
}

}  // namespace

template <class C> C log_sum_exp(const std::vector<C>& x) {
  using std::exp;
  using std::log;
  if (x.empty()) throw error(errc::config, "log_sum_exp of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (real(x[i]) > real(x[best])) best = i;
  C s(0);
  for (const auto& v : x) s += exp(v - x[best]);
  return x[best] + log(s);
}

template <class C> C c0_structure(const C& thetastar, const C& sigma, const C& thetat, const C& theta0) {
  using std::exp;
  return exp(log_c0(thetastar, sigma, thetat, theta0));
}

template <class C> C c_iinf_structure(const C& thetat, const C& thetastar, const C& nu, const C& theta0) {
  using std::exp;
  return exp(log_c_iinf(thetat, thetastar, nu, theta0));
}

template <class C> C c_pinf_structure(const C& omega, const pv_params<C>& p) {
  using std::exp;
  return exp(log_c_pinf(omega, p));
}

template <class C>
zero_channel<C>::zero_channel(const C& sigma, const C& eta, const pv_params<C>& p, int order, int window) {
  require_nonresonant(sigma);
  if (window < 0) throw error(errc::config, "Fourier window must be non-negative");
  std::vector<C> ex(order + 1);
  C f(1);
  for (int k = 0; k <= order; ++k) {
    ex[k] = f;
    f *= -p.thetat / C(k + 1);
  }
  for (int n = -window; n <= window; ++n) {
    C sn = sigma + C(n);
    auto b = confluent_cb1_bracket(p.thetastar, sn, p.thetat, p.theta0, C(1), order);
    term tm;
    tm.log_weight = two_pi_i<C>() * C(n) * eta + log_c0(p.thetastar, sn, p.thetat, p.theta0);
    tm.exponent = sn * sn - p.theta0 * p.theta0 - p.thetat * p.thetat;
    tm.coeffs.assign(order + 1, C(0));
    for (int k = 0; k <= order; ++k)
      for (int i = 0; i <= k; ++i) tm.coeffs[k] += b[i] * ex[k - i];
    terms_.push_back(std::move(tm));
  }
}

template <class C> C zero_channel<C>::log_value(const C& t) const {
  using std::log;
  const C lt = log(t);
  std::vector<C> logs;
  for (const auto& tm : terms_) {
    C s(0), tp(1);
    for (const auto& c : tm.coeffs) {
      s += c * tp;
      tp *= t;
    }
    logs.push_back(tm.log_weight + tm.exponent * lt + log(s));
  }
  return log_sum_exp(logs);
}

template <class C> C zero_channel<C>::value(const C& t) const {
  using std::exp;
  return exp(log_value(t));
}

template <class C> std::vector<C> zero_channel<C>::derivatives(const C& t, int count, double* tail) const {
  using std::exp;
  using std::log;
  const C lt = log(t);
  std::vector<C> out(count, C(0));
  C last(0);
  for (const auto& tm : terms_) {
    const C w = exp(tm.log_weight);
    for (std::size_t k = 0; k < tm.coeffs.size(); ++k) {
      const C a = tm.exponent + C(static_cast<int>(k));
      C fall(1);
      for (int j = 0; j < count; ++j) {
        C v = w * tm.coeffs[k] * fall * exp((a - C(j)) * lt);
        out[j] += v;
        if (j == 0 && k + 1 == tm.coeffs.size()) last += v;
        fall *= a - C(j);
      }
    }
  }
  if (tail) *tail = magnitude(last) / magnitude(out[0]);
  return out;
}

template <class C>
C tau_zero(const C& t, const C& sigma, const C& eta, const pv_params<C>& p, int order, int window) {
  return zero_channel<C>(sigma, eta, p, order, window).value(t);
}

template <class C>
iinf_channel<C>::iinf_channel(const C& nu, const C& rho, const pv_params<C>& p, int order, int window)
    : thetastar_(p.thetastar) {
  if (window < 0) throw error(errc::config, "Fourier window must be non-negative");
  for (int n = -window; n <= window; ++n) {
    C vn = nu + C(n);
    term tm;
    tm.nu = vn;
    tm.log_weight = two_pi_i<C>() * C(n) * rho + log_c_iinf(p.thetat, p.thetastar, vn, p.theta0);
    tm.d = dk_coefficients(p.thetat, p.thetastar, vn, p.theta0, C(1), order).d;
    terms_.push_back(std::move(tm));
  }
}

template <class C> C iinf_channel<C>::log_value(const C& t) const {
  using std::log;
  const C lt = log(t);
  std::vector<C> logs;
  for (const auto& tm : terms_) {
    C s(0), p(1), inv = C(1) / t;
    for (const auto& x : tm.d) {
      s += x * p;
      p *= inv;
    }
    logs.push_back(tm.log_weight + (thetastar_ * thetastar_ / C(2) - C(2) * tm.nu * tm.nu) * lt +
                   (thetastar_ / C(2) + tm.nu) * t + log(s));
  }
  return log_sum_exp(logs);
}

template <class C> C iinf_channel<C>::value(const C& t) const {
  using std::exp;
  return exp(log_value(t));
}

template <class C>
C tau_iinf(const C& t, const C& nu, const C& rho, const pv_params<C>& p, int order, int window) {
  return iinf_channel<C>(nu, rho, p, order, window).value(t);
}

template <class C> C gk_table<C>::eval(int k, const C& omega) const {
  const auto& c = poly.at(k - 1);
  C r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * omega + *it;
  return r;
}

template <class C> std::vector<C> gk_coefficients(const pv_params<C>& p, const C& omega, int order) {
  auto g = gk_polynomials(p, order);
  std::vector<C> out;
  for (int k = 1; k <= order; ++k) out.push_back(g.eval(k, omega));
  return out;
}

template <class C>
pinf_channel<C>::pinf_channel(const C& omega, const C& xi, const pv_params<C>& p, const gk_table<C>& g, int window)
    : p_(p) {
  if (window < 0) throw error(errc::config, "Fourier window must be non-negative");
  for (int n = -window; n <= window; ++n) {
    C wn = omega + C(n);
    term tm;
    tm.omega = wn;
    tm.log_weight = two_pi_i<C>() * C(n) * xi + log_c_pinf(wn, p);
    for (int k = 1; k <= g.order(); ++k) tm.g.push_back(g.eval(k, wn));
    terms_.push_back(std::move(tm));
  }
}

template <class C> C pinf_channel<C>::log_value(const C& t) const {
  using std::log;
  const C lt = log(t);
  const C kappa = p_.theta0 * p_.theta0 + p_.thetat * p_.thetat + p_.thetastar * p_.thetastar - C(real_t<C>(0.25));
  std::vector<C> logs;
  for (const auto& tm : terms_) {
    C s(1), p(1), inv = C(1) / t;
    for (const auto& x : tm.g) {
      p *= inv;
      s += x * p;
    }
    logs.push_back(tm.log_weight + (kappa - tm.omega * tm.omega / C(2)) * lt + t * t / C(32) +
                   (imag_unit<C>() * tm.omega + p_.thetastar) * t / C(2) + log(s));
  }
  return log_sum_exp(logs);
}

template <class C> C pinf_channel<C>::value(const C& t) const {
  using std::exp;
  return exp(log_value(t));
}

template <class C>
C tau_pinf(const C& t, const C& omega, const C& xi, const pv_params<C>& p, int order, int window) {
  return pinf_channel<C>(omega, xi, p, gk_polynomials(p, order), window).value(t);
}

#define PVTAU_INSTANTIATE(C)                                                                    \
  template C log_sum_exp(const std::vector<C>&);                                                \
  template C c0_structure(const C&, const C&, const C&, const C&);                              \
  template C c_iinf_structure(const C&, const C&, const C&, const C&);                          \
  template C c_pinf_structure(const C&, const pv_params<C>&);                                   \
  template class zero_channel<C>;                                                               \
  template C tau_zero(const C&, const C&, const C&, const pv_params<C>&, int, int);             \
  template class iinf_channel<C>;                                                               \
  template C tau_iinf(const C&, const C&, const C&, const pv_params<C>&, int, int);             \
  template struct gk_table<C>;                                                                  \
  template std::vector<C> gk_coefficients(const pv_params<C>&, const C&, int);                  \
  template class pinf_channel<C>;                                                               \
  template C tau_pinf(const C&, const C&, const C&, const pv_params<C>&, int, int);

PVTAU_INSTANTIATE(cplx)
PVTAU_INSTANTIATE(xcplx)

}  // namespace pvtau
