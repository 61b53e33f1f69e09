#include "pvtau/connection.hpp"

#include "pvtau/error.hpp"
#include "pvtau/special_fn.hpp"

namespace pvtau {

namespace {

template <class C> C epi(const C& x) {
  using std::exp;
  return exp(imag_unit<C>() * C(pi_v<C>()) * x);
}

template <class C> C cos2pi(const C& x) {
  using std::cos;
  return cos(C(2) * C(pi_v<C>()) * x);
}

template <class C> C sinpi(const C& x) {
  using std::sin;
  return sin(C(pi_v<C>()) * x);
}

template <class C> C log_ghat(const C& z) { return log_barnes_g(z) - log_barnes_g(C(-z)); }

template <class C> void gate(const C& v, errc code, const char* what) {
  if (magnitude(v) <= genericity_threshold) throw error(code, what);
}

}  // namespace

template <class C> a_invariants_t<C> a_invariants(const pv_params<C>& p) {
  const C p0 = C(2) * cos2pi(p.theta0), pt = C(2) * cos2pi(p.thetat);
  const C e = epi(p.thetastar);
  return {p0 / e + e * pt, e * p0 + pt / e, e * e + C(1) / (e * e) + p0 * pt};
}

template <class C> C cubic_residual(const C& xs, const C& xp, const C& xm, const pv_params<C>& p) {
  auto a = a_invariants(p);
  return xs * xp * xm + xp * xp + xm * xm - xs - a.plus * xp - a.minus * xm + a.star;
}

template <class C> C cubic_residual_factored(const C& xs, const C& xp, const C& xm, const pv_params<C>& p) {
  const C p0 = C(2) * cos2pi(p.theta0), pt = C(2) * cos2pi(p.thetat);
  const C e = epi(p.thetastar);
  return (xs - e * e - C(1) / (e * e)) * (xp * xm - C(1)) + (e * xp + xm / e - p0) * (xp / e + e * xm - pt);
}

template <class C> x_pair<C> x_from_sigma_eta(const C& sigma, const C& eta, const pv_params<C>& p) {
  using std::exp;
  using std::sin;
  const C two_pi = C(2 * pi_v<C>());
  const C s2 = sin(two_pi * sigma);
  if (magnitude(s2) <= genericity_threshold)
    throw error(errc::resonance, "x_from_sigma_eta: sin(2 pi sigma) vanishes");
  auto a = a_invariants(p);
  const C i = imag_unit<C>();
  C out[2];
  for (int idx = 0; idx < 2; ++idx) {
    const int sg = idx == 0 ? 1 : -1;
    const C& a1 = idx == 0 ? a.plus : a.minus;
    const C& a2 = idx == 0 ? a.minus : a.plus;
    C sum(0);
    for (int e : {1, -1}) {
      const C es = C(e) * sigma;
      sum += exp(two_pi * i * C(e) * eta - C(sg) * i * C(pi_v<C>()) * es) * (cos2pi(C(p.thetat - es)) - cos2pi(p.theta0)) *
             sinpi(C(p.thetastar - es));
    }
    out[idx] = (a1 - a2 * cos2pi(sigma) - C(2 * sg) * i * sum) / (C(2) * s2 * s2);
  }
  return {out[0], out[1]};
}

template <class C> C canonical_sigma(const C& sigma) {
  using std::floor;
  C s = sigma;
  real_t<C> shift = floor(real(s));
  s -= C(shift);
  if (real(s) > real_t<C>(0.5)) s = C(1) - s;
  if (real(s) >= real_t<C>(0.5)) s = C(1) - s;
  if (magnitude(C(real(s))) <= 1e-14 && imag(s) < 0) s = -s;
  return s;
}

template <class C> std::pair<C, C> sigma_eta_from_x(const C& xp, const C& xm, const pv_params<C>& p) {
  using std::acos;
  using std::log;
  using std::sin;
  const C one_minus = C(1) - xp * xm;
  gate(one_minus, errc::degenerate_monodromy, "sigma_eta_from_x: X+ X- = 1");
  const C ep = epi(p.thetastar), em = C(1) / ep;
  const C c2s = (ep * xp + em * xm - C(2) * cos2pi(p.theta0)) * (em * xp + ep * xm - C(2) * cos2pi(p.thetat)) /
                    (C(2) * one_minus) +
                cos2pi(p.thetastar);
  C sigma = canonical_sigma(C(acos(c2s) / C(2 * pi_v<C>())));
  const C den = C(4) * sinpi(C(p.theta0 + p.thetat - sigma)) * sinpi(C(p.thetat - p.theta0 - sigma)) *
                sinpi(C(p.thetastar - sigma));
  gate(den, errc::degenerate_monodromy, "sigma_eta_from_x: eta denominator vanishes");
  const C num = sin(C(2 * pi_v<C>()) * sigma) * (epi(C(-sigma)) * xp + epi(sigma) * xm) +
                C(2) * cos2pi(p.theta0) * sinpi(C(p.thetastar - sigma)) -
                C(2) * cos2pi(p.thetat) * sinpi(C(p.thetastar + sigma));
  gate(num, errc::degenerate_monodromy, "sigma_eta_from_x: e^{2 pi i eta} vanishes");
  return {sigma, log(num / den) / two_pi_i<C>()};
}

template <class C> std::pair<C, C> labels_iinf(const C& xp, const C& xm) {
  using std::log;
  gate(xm, errc::genericity, "labels_iinf: X- = 0");
  const C q = C(1) - xp * xm;
  gate(q, errc::genericity, "labels_iinf: X+ X- = 1");
  return {log(xm) / two_pi_i<C>(), log(q) / two_pi_i<C>()};
}

template <class C> std::pair<C, C> labels_pinf(const C& xp, const C& xm) {
  using std::log;
  gate(xp, errc::genericity, "labels_pinf: X+ = 0");
  const C q = C(1) - xp * xm;
  gate(q, errc::genericity, "labels_pinf: X+ X- = 1");
  return {log(q) / two_pi_i<C>(), log(xp) / two_pi_i<C>()};
}

template <class C> C lambda_param(const C& sigma, const pv_params<C>& p, const C& xp, const C& xm) {
  using std::log;
  const C den = epi(C(C(2) * (p.theta0 + p.thetat + sigma))) - C(1);
  gate(den, errc::genericity, "lambda_param: e^{2 pi i (theta0+thetat+sigma)} = 1");
  const C num = epi(C(C(2) * p.theta0 - p.thetastar)) + epi(C(C(2) * p.thetat + p.thetastar)) - xp -
                epi(C(C(-2) * sigma)) * xm;
  gate(num, errc::genericity, "lambda_param: e^{2 pi i lambda} = 0");
  return log(num / den) / two_pi_i<C>();
}

template <class C> C log_upsilon_0_iinf(const C& sigma, const C& nu, const C& lambda, const pv_params<C>& p) {
  using std::log;
  const C& a = p.theta0;
  const C& b = p.thetat;
  const C h = p.thetastar / C(2);
  const C ipi = imag_unit<C>() * C(pi_v<C>());
  C r = C(2) * nu * C(log(2 * pi_v<C>())) + ipi * nu * (nu - sigma) + ipi * (sigma + a - h) * (sigma + b + h);
  r += log_ghat(C(sigma - a + b)) + log_ghat(C(sigma + p.thetastar)) - log_ghat(C(sigma - a - b)) -
       log_ghat(C(nu - a - h)) - log_ghat(C(nu - b + h));
  r += ipi * (a + b + sigma) * lambda + log_ghat(C(lambda - nu + sigma)) + log_ghat(C(lambda + a + h)) +
       log_ghat(C(lambda + b - h));
  r -= log_ghat(C(lambda - nu + a + b)) + log_ghat(C(lambda + sigma + a - h)) + log_ghat(C(lambda + sigma + b + h));
  return r;
}

template <class C> C log_upsilon_iinf_pinf(const C& nu, const C& omega) {
  using std::log;
  const C ipi = imag_unit<C>() * C(pi_v<C>());
  return C(2) * log_barnes_g(C(real_t<C>(-0.5))) - ipi / C(24) + (omega + C(real_t<C>(0.5))) * C(log(2 * pi_v<C>())) +
         ipi * omega * omega / C(2) - C(2) * ipi * omega * nu + log_ghat(C(-omega));
}

template <class C> C upsilon_0_iinf(const C& sigma, const C& nu, const C& lambda, const pv_params<C>& p) {
  using std::exp;
  return exp(log_upsilon_0_iinf(sigma, nu, lambda, p));
}

template <class C> C upsilon_iinf_pinf(const C& nu, const C& omega) {
  using std::exp;
  return exp(log_upsilon_iinf_pinf(nu, omega));
}

template <class C> asymptotic_labels<C> labels_from_sigma_eta(const C& sigma, const C& eta, const pv_params<C>& p) {
  asymptotic_labels<C> l;
  l.sigma = sigma;
  l.eta = eta;
  auto x = x_from_sigma_eta(sigma, eta, p);
  std::tie(l.nu, l.rho) = labels_iinf(x.plus, x.minus);
  std::tie(l.omega, l.xi) = labels_pinf(x.plus, x.minus);
  l.lambda = lambda_param(sigma, p, x.plus, x.minus);
  return l;
}

#define PVTAU_INSTANTIATE(C)                                                                   \
  template a_invariants_t<C> a_invariants(const pv_params<C>&);                                \
  template C cubic_residual(const C&, const C&, const C&, const pv_params<C>&);                \
  template C cubic_residual_factored(const C&, const C&, const C&, const pv_params<C>&);       \
  template x_pair<C> x_from_sigma_eta(const C&, const C&, const pv_params<C>&);                \
  template C canonical_sigma(const C&);                                                        \
  template std::pair<C, C> sigma_eta_from_x(const C&, const C&, const pv_params<C>&);          \
  template std::pair<C, C> labels_iinf(const C&, const C&);                                    \
  template std::pair<C, C> labels_pinf(const C&, const C&);                                    \
  template C lambda_param(const C&, const pv_params<C>&, const C&, const C&);                  \
  template C log_upsilon_0_iinf(const C&, const C&, const C&, const pv_params<C>&);            \
  template C log_upsilon_iinf_pinf(const C&, const C&);                                        \
  template C upsilon_0_iinf(const C&, const C&, const C&, const pv_params<C>&);                \
  template C upsilon_iinf_pinf(const C&, const C&);                                            \
  template asymptotic_labels<C> labels_from_sigma_eta(const C&, const C&, const pv_params<C>&);

PVTAU_INSTANTIATE(cplx)
PVTAU_INSTANTIATE(xcplx)

}  // namespace pvtau
