#include "pvtau/fredholm_det.hpp"

#include "pvtau/error.hpp"
#include "pvtau/special_fn.hpp"

namespace pvtau {

namespace {

template <class C> C factorial(int n) {
  C r(1);
  for (int i = 2; i <= n; ++i) r *= C(i);
  return r;
}

template <class C> C checked(const C& den, const char* what) {
  if (magnitude(den) <= 1e-14) throw error(errc::resonance, what);
  return den;
}

template <class C> using cell = std::array<std::array<C, 2>, 2>;

template <class C> cell<C> a_cell(int p2, int q2, const C& t, const C& s, const C& ths) {
  using std::exp;
  using std::log;
  const C pq = C(p2 + q2 + 1);
  const C lt = log(t);
  const C pre = C(p2 % 2 ? -1 : 1) * exp(pq * lt) / (factorial<C>(p2) * factorial<C>(q2));
  const C ipi = imag_unit<C>() * C(pi_v<C>());
  const C up = exp(ipi * s + s * lt), dn = exp(-ipi * s - s * lt);
  const C two_s = C(2) * s;
  const C l[2] = {pochhammer(C(s - ths), p2 + 1) * up / checked(pochhammer(two_s, p2 + 1), "matrix_elements: (2 sigma)_p"),
                  pochhammer(C(-s - ths), p2 + 1) * dn / checked(pochhammer(C(-two_s), p2 + 1), "matrix_elements: (-2 sigma)_p")};
  const C r[2] = {pochhammer(C(C(1) - s + ths), q2) * dn / checked(pochhammer(C(C(1) - two_s), q2), "matrix_elements: (1-2 sigma)_q"),
                  pochhammer(C(C(1) + s + ths), q2) * up / checked(pochhammer(C(C(1) + two_s), q2), "matrix_elements: (1+2 sigma)_q")};
  const C core[2][2] = {{C(1) / pq, C(1) / checked(C(pq + two_s), "matrix_elements: p+q+2 sigma")},
                        {C(1) / checked(C(pq - two_s), "matrix_elements: p+q-2 sigma"), C(1) / pq}};
  cell<C> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = pre * l[i] * core[i][j] * r[j];
  return out;
}

template <class C> cell<C> d_cell(int q2, int p2, const C& s, const pv_params<C>& p, const C& sm) {
  const C& a = p.theta0;
  const C& b = p.thetat;
  const C pq = C(p2 + q2 + 1);
  const C pre = C(1) / (factorial<C>(p2) * factorial<C>(q2));
  const C two_s = C(2) * s;
  const C l[2] = {pochhammer(C(C(1) + a + b - s), q2) * pochhammer(C(C(1) - a + b - s), q2) * sm / pochhammer(C(C(1) - two_s), q2),
                  -pochhammer(C(C(1) + a + b + s), q2) * pochhammer(C(C(1) - a + b + s), q2) / sm / pochhammer(C(C(1) + two_s), q2)};
  const C r[2] = {pochhammer(C(a - b + s), p2 + 1) * pochhammer(C(-a - b + s), p2 + 1) / sm / pochhammer(two_s, p2 + 1),
                  -pochhammer(C(a - b - s), p2 + 1) * pochhammer(C(-a - b - s), p2 + 1) * sm / pochhammer(C(-two_s), p2 + 1)};
  const C core[2][2] = {{C(1) / pq, C(1) / (pq - two_s)}, {C(1) / (pq + two_s), C(1) / pq}};
  cell<C> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = pre * l[i] * core[i][j] * r[j];
  return out;
}

}  // namespace

template <class C> dense_matrix<C> fourier_block_matrix<C>::assembled() const {
  const int n = 2 * modes;
  dense_matrix<C> m = dense_matrix<C>::Identity(2 * n, 2 * n);
  m.block(0, n, n, n) = a;
  m.block(n, 0, n, n) = d;
  return m;
}

template <class C> C fourier_block_matrix<C>::determinant() const {
  return Eigen::PartialPivLU<dense_matrix<C>>(assembled()).determinant();
}

template <class C> C s_minus(const C& sigma, const C& eta, const pv_params<C>& p) {
  using std::exp;
  using std::sqrt;
  const C& a = p.theta0;
  const C& b = p.thetat;
  const C& ths = p.thetastar;
  const C one(1), two_s = C(2) * sigma;
  const C lg = C(2) * log_gamma(C(one - two_s)) + log_gamma(C(one + ths + sigma)) + log_gamma(C(one + a + b + sigma)) +
               log_gamma(C(one - a + b + sigma)) - C(2) * log_gamma(C(one + two_s)) - log_gamma(C(one + ths - sigma)) -
               log_gamma(C(one + a + b - sigma)) - log_gamma(C(one - a + b - sigma));
  const C inv_sq = exp(lg + two_pi_i<C>() * (eta - sigma));
  return one / sqrt(inv_sq);
}

template <class C>
fourier_block_matrix<C> matrix_elements(const C& t, const C& sigma, const pv_params<C>& p, const C& sminus, int modes) {
  if (modes < 1) throw error(errc::config, "matrix_elements: modes must be positive");
  using std::sin;
  if (magnitude(C(sin(C(2 * pi_v<C>()) * sigma))) <= 1e-8)
    throw error(errc::resonance, "matrix_elements: 2 sigma is an integer");
  fourier_block_matrix<C> m;
  m.modes = modes;
  m.s_minus = sminus;
  const int n = 2 * modes;
  m.a = dense_matrix<C>::Zero(n, n);
  m.d = dense_matrix<C>::Zero(n, n);
  for (int pp = 0; pp < modes; ++pp)
    for (int qq = 0; qq < modes; ++qq) {
      auto a = a_cell(pp, qq, t, sigma, p.thetastar);
      auto d = d_cell(qq, pp, sigma, p, sminus);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          m.a(2 * pp + i, 2 * qq + j) = a[i][j];
          m.d(2 * qq + i, 2 * pp + j) = d[i][j];
        }
    }
  return m;
}

template <class C> C tau_fredholm(const C& t, const C& sigma, const C& eta, const pv_params<C>& p, int modes) {
  using std::exp;
  using std::log;
  if (imag(t) == 0 && real(t) <= 0) throw error(errc::config, "tau_fredholm: t on the non-positive real axis");
  const C sm = s_minus(sigma, eta, p);
  const C det = matrix_elements(t, sigma, p, sm, modes).determinant();
  const C ex = sigma * sigma - p.theta0 * p.theta0 - p.thetat * p.thetat;
  return exp(ex * log(t) - p.thetat * t) * det;
}

template <class C> C leading_trace(const C& t, const C& sigma, const C& eta, const pv_params<C>& p) {
  const C sm = s_minus(sigma, eta, p);
  auto a = a_cell(0, 0, t, sigma, p.thetastar);
  auto d = d_cell(0, 0, sigma, p, sm);
  C tr(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tr += a[i][j] * d[j][i];
  return tr;
}

#define PVTAU_INSTANTIATE(C)                                                                               \
  template struct fourier_block_matrix<C>;                                                                 \
  template C s_minus(const C&, const C&, const pv_params<C>&);                                             \
  template fourier_block_matrix<C> matrix_elements(const C&, const C&, const pv_params<C>&, const C&, int); \
  template C tau_fredholm(const C&, const C&, const C&, const pv_params<C>&, int);                          \
  template C leading_trace(const C&, const C&, const C&, const pv_params<C>&);

PVTAU_INSTANTIATE(cplx)
PVTAU_INSTANTIATE(xcplx)

}  // namespace pvtau
