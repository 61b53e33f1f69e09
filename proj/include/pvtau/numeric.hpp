#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace pvtau {

namespace mp = boost::multiprecision;

using cplx = std::complex<double>;
using xreal = mp::number<mp::cpp_bin_float<34>, mp::et_off>;
using xcplx = mp::number<mp::complex_adaptor<mp::cpp_bin_float<34>>, mp::et_off>;
using rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class C> struct real_of;
template <> struct real_of<cplx> { using type = double; };
template <> struct real_of<xcplx> { using type = xreal; };
template <class C> using real_t = typename real_of<C>::type;

template <class C> inline real_t<C> pi_v() {
  if constexpr (std::is_same_v<C, cplx>)
    return std::numbers::pi;
  else
    return boost::math::constants::pi<real_t<C>>();
}

template <class C> inline C imag_unit() { return C(real_t<C>(0), real_t<C>(1)); }

// 2*pi*i
template <class C> inline C two_pi_i() { return C(real_t<C>(0), 2 * pi_v<C>()); }

template <class C> inline double to_double(const C& x) {
  if constexpr (std::is_same_v<C, double>)
    return x;
  else
    return x.template convert_to<double>();
}

inline cplx to_cplx(const cplx& z) { return z; }
inline cplx to_cplx(const xcplx& z) { return {to_double(real(z)), to_double(imag(z))}; }

template <class C> inline C from_cplx(const cplx& z) {
  return C(real_t<C>(z.real()), real_t<C>(z.imag()));
}

template <class C> inline double magnitude(const C& z) {
  using std::abs;
  if constexpr (std::is_same_v<C, cplx>)
    return abs(z);
  else if constexpr (std::is_same_v<C, rational>)
    return abs(z).template convert_to<double>();
  else
    return to_double(abs(z));
}

template <class C> inline real_t<C> eps_v() { return std::numeric_limits<real_t<C>>::epsilon(); }

// Imaginary part reduced to (-pi, pi].
template <class C> C reduce_log(const C& z) {
  using std::floor;
  const real_t<C> tp = 2 * pi_v<C>();
  real_t<C> im = imag(z);
  im -= tp * floor((im + pi_v<C>()) / tp);
  if (im <= -pi_v<C>()) im += tp;
  return C(real(z), im);
}

enum class precision { standard, extended };

precision parse_precision(const std::string& name);
const char* precision_name(precision p);
// PVTAU_PRECISION, falling back to standard.
precision precision_from_env();

template <class C> std::string to_string(const C& z, int digits = 17);

}  // namespace pvtau
