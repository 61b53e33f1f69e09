#include "pvtau/special_fn.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <cstdlib>
#include <sstream>
#include <vector>

#include "pvtau/error.hpp"

namespace pvtau {

namespace {

template <class C> struct series_cfg;
template <> struct series_cfg<cplx> {
  static constexpr double shift = 15;
  static constexpr int terms = 12;
};
template <> struct series_cfg<xcplx> {
  static constexpr double shift = 30;
  static constexpr int terms = 22;
};

template <class C> const std::vector<real_t<C>>& bernoulli_table() {
  static const std::vector<real_t<C>> table = [] {
    std::vector<real_t<C>> b;
    for (int j = 0; j <= series_cfg<C>::terms + 2; ++j)
      b.push_back(boost::math::bernoulli_b2n<real_t<C>>(j));
    return b;
  }();
  return table;
}

template <class C> real_t<C> log_two_pi() {
  using std::log;
  static const real_t<C> v = log(boost::math::constants::two_pi<real_t<C>>());
  return v;
}

template <class C> real_t<C> zeta_prime_minus_one() {
  if constexpr (std::is_same_v<C, cplx>)
    return -0.16542114370045092921391966024278064276;
  else
    return real_t<C>("-0.16542114370045092921391966024278064276403638");
}

template <class C> bool near_integer(const C& z, long& n) {
  using std::abs;
  using std::round;
  real_t<C> r = round(real(z));
  n = static_cast<long>(to_double(r));
  real_t<C> scale = abs(r) > 1 ? abs(r) : real_t<C>(1);
  return abs(z - C(r)) <= 64 * eps_v<C>() * scale;
}

template <class C> C stirling(const C& w) {
  using std::log;
  const auto& b = bernoulli_table<C>();
  C r = (w - C(real_t<C>(0.5))) * log(w) - w + C(log_two_pi<C>() / 2);
  C inv = C(1) / w, inv2 = inv * inv, p = inv;
  for (int j = 1; j <= series_cfg<C>::terms; ++j) {
    r += p * C(b[j] / real_t<C>((2 * j) * (2 * j - 1)));
    p *= inv2;
  }
  return r;
}

// Analytic continuation from the positive axis, no branch reduction.
template <class C> C log_gamma_raw(const C& z) {
  using std::ceil;
  using std::log;
  long n;
  if (real(z) <= real_t<C>(0.5) && near_integer(z, n) && n <= 0)
    throw error(errc::pole, "log_gamma: pole at non-positive integer " + std::to_string(n));
  const real_t<C> shift(series_cfg<C>::shift);
  if (real(z) >= shift) return stirling(z);
  int m = static_cast<int>(to_double(ceil(shift - real(z))));
  C acc(0);
  for (int k = 0; k < m; ++k) acc += log(z + C(k));
  return stirling(z + C(m)) - acc;
}

template <class C> C barnes_asymptotic(const C& w) {
  using std::log;
  const auto& b = bernoulli_table<C>();
  C lw = log(w), w2 = w * w;
  C r = (w2 / C(2) - C(1) / C(12)) * lw - C(3) * w2 / C(4) + w * C(log_two_pi<C>() / 2) +
        C(zeta_prime_minus_one<C>());
  C inv2 = C(1) / w2, p = inv2;
  for (int k = 1; k <= series_cfg<C>::terms; ++k) {
    r += p * C(b[k + 1] / real_t<C>(4 * k * (k + 1)));
    p *= inv2;
  }
  return r;
}

template <class C> C log_barnes_g_raw(const C& z) {
  using std::ceil;
  using std::log;
  long n;
  if (near_integer(z, n) && n <= -1)
    throw error(errc::g_zero, "log_barnes_g: G(1+z) vanishes at z=" + std::to_string(n));
  const real_t<C> shift(series_cfg<C>::shift);
  if (real(z) >= shift) return barnes_asymptotic(z);
  int m = static_cast<int>(to_double(ceil(shift - real(z))));
  // log G(1+z) = log G(1+z+m) - sum_{k=1}^{m} log Gamma(z+k)
  C lg = log_gamma_raw(z + C(1)), acc(0);
  for (int k = 1; k <= m; ++k) {
    acc += lg;
    lg += log(z + C(k));
  }
  return barnes_asymptotic(z + C(m)) - acc;
}

}  // namespace

template <class C> C log_gamma(const C& z) { return reduce_log(log_gamma_raw(z)); }

template <class C> C log_barnes_g(const C& z) { return reduce_log(log_barnes_g_raw(z)); }

template <class C> C g_hat(const C& z) {
  using std::exp;
  long n;
  if (near_integer(z, n)) {
    if (n == 0) return C(1);
    throw error(errc::g_zero, "g_hat: singular at integer argument " + std::to_string(n));
  }
  return exp(log_barnes_g_raw(z) - log_barnes_g_raw(C(-z)));
}

precision parse_precision(const std::string& name) {
  if (name == "double" || name == "standard") return precision::standard;
  if (name == "extended") return precision::extended;
  throw error(errc::config, "unknown precision '" + name + "'");
}

const char* precision_name(precision p) { return p == precision::standard ? "double" : "extended"; }

precision precision_from_env() {
  const char* v = std::getenv("PVTAU_PRECISION");
  if (!v || !*v) return precision::standard;
  return parse_precision(v);
}

template <class C> std::string to_string(const C& z, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << "(" << real(z) << (imag(z) < 0 ? "" : "+") << imag(z) << "i)";
  return os.str();
}

template cplx log_gamma(const cplx&);
template xcplx log_gamma(const xcplx&);
template cplx log_barnes_g(const cplx&);
template xcplx log_barnes_g(const xcplx&);
template cplx g_hat(const cplx&);
template xcplx g_hat(const xcplx&);
template std::string to_string(const cplx&, int);
template std::string to_string(const xcplx&, int);

}  // namespace pvtau
