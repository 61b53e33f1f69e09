#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvtau/error.hpp"
#include "pvtau/conformal_blocks.hpp"

using namespace pvtau;

namespace {

std::vector<cplx> times_exp(std::vector<cplx> a, const cplx& rate) {
  const int n = static_cast<int>(a.size());
  std::vector<cplx> e(n), out(n, 0.0);
  cplx term = 1.0;
  for (int k = 0; k < n; ++k) {
    e[k] = term;
    term *= rate / double(k + 1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) out[i + j] += a[i] * e[j];
  return out;
}

// bracket times e^{rate t}, as a power series
std::vector<cplx> confluent_series(const cplx& ths, const cplx& s, const cplx& tht, const cplx& th0, const cplx& b, int n) {
  return times_exp(confluent_cb1_bracket(ths, s, tht, th0, b, n), confluent_rate(tht, b));
}

double max_rel_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
  return m;
}

const cplx th0(0.21, 0.05), tht(0.33), th1(0.17), thi(0.41), sg(0.27, 0.03), ths(0.45);

}  // namespace

TEST_CASE("empty pair coefficient") {
  const partition e;
  cb_params<cplx> p{th0, tht, th1, thi, sg, 1.3};
  CHECK(regular_cb_coeff(e, e, p) == cplx(1));
  CHECK(confluent_cb1_coeff(e, e, ths, sg, tht, th0, cplx(1.3)) == cplx(1));
}

TEST_CASE("first regular coefficient matches the hypergeometric-type formula") {
  for (double bb : {1.0, 1.3, 0.8}) {
    const cplx b(bb);
    cb_params<cplx> p{th0, tht, th1, thi, sg, b};
    auto d = [&](const cplx& x) { return conformal_dimension(x, b); };
    const cplx q = q_of(b);
    const cplx total = regular_cb_bracket(p, 1)[1] - 2.0 * (tht - q / 2.0) * (th1 - q / 2.0);
    const cplx ref = (d(sg) + d(tht) - d(th0)) * (d(sg) + d(th1) - d(thi)) / (2.0 * d(sg));
    CHECK(std::abs(total - ref) < 1e-13);
  }
}

TEST_CASE("one-box coefficients exchange under sigma flip") {
  const partition e, one({1});
  cb_params<cplx> p{th0, tht, th1, thi, sg, 1.3};
  cb_params<cplx> m = p;
  m.sigma = -sg;
  CHECK(std::abs(regular_cb_coeff(one, e, p) - regular_cb_coeff(e, one, m)) < 1e-13);
}

TEST_CASE("first confluent coefficient is the limit of the regular one") {
  for (double bb : {1.0, 1.3}) {
    const cplx b(bb);
    auto d = [&](const cplx& x) { return conformal_dimension(x, b); };
    const cplx total = confluent_cb1_bracket(ths, sg, tht, th0, b, 1)[1] + confluent_rate(tht, b);
    CHECK(std::abs(total - (d(sg) + d(tht) - d(th0)) * ths / (2.0 * d(sg))) < 1e-13);
  }
}

TEST_CASE("order zero series is the prefactor") {
  const cplx t(0.1, 0.02);
  cb_params<cplx> p{th0, tht, th1, thi, sg, 1.0};
  auto r = cb_series(cb_kind::regular, p, t, 0);
  CHECK(r.coeffs.size() == 1);
  CHECK(std::abs(r.value - std::pow(t, r.exponent) * std::pow(1.0 - t, 2.0 * tht * th1)) < 1e-14);
  p.thetastar = ths;
  auto c = cb_series(cb_kind::confluent1, p, t, 0);
  CHECK(std::abs(c.value - std::pow(t, c.exponent) * std::exp(-tht * t)) < 1e-14);
  CHECK_THROWS_AS(cb_series(cb_kind::regular, p, t, cb_max_order + 1), error);
}

TEST_CASE("confluence limit shrinks like 1/Lambda") {
  const cplx t(0.1);
  cb_params<cplx> conf{th0, tht, 0.0, 0.0, sg, 1.0, ths};
  const cplx b = cb_series(cb_kind::confluent1, conf, t, 4).value;
  std::vector<double> err;
  for (double lam : {1e2, 1e3, 1e4}) {
    cb_params<cplx> p{th0, tht, (lam + ths) / 2.0, (lam - ths) / 2.0, sg, 1.0};
    auto r = cb_series(cb_kind::regular, p, cplx(t / lam), 4);
    err.push_back(std::abs(std::exp(r.exponent * std::log(lam)) * r.value - b));
  }
  const double s1 = std::log10(err[1] / err[0]), s2 = std::log10(err[2] / err[1]);
  CHECK(s1 == doctest::Approx(-1).epsilon(0.1));
  CHECK(s2 == doctest::Approx(-1).epsilon(0.1));
}

TEST_CASE("confluent block symmetries") {
  for (double bb : {1.0, 1.3}) {
    const cplx b(bb);
    const int n = 6;
    const auto base = confluent_series(ths, sg, tht, th0, b, n);
    CHECK(max_rel_gap(base, confluent_series(ths, sg, tht, cplx(-th0), b, n)) < 1e-10);
    CHECK(max_rel_gap(base, confluent_series(ths, cplx(-sg), tht, th0, b, n)) < 1e-10);
    if (bb == 1.0) CHECK(max_rel_gap(base, confluent_series(ths, sg, cplx(-tht), th0, b, n)) < 1e-10);

    const cplx delta = (th0 + tht + ths) / 2.0;
    const auto ro = times_exp(confluent_series(cplx(ths - 2.0 * delta), sg, cplx(tht - delta), cplx(th0 - delta), b, 5), delta);
    CHECK(max_rel_gap(std::vector<cplx>(base.begin(), base.begin() + 6), ro) < 1e-9);

    const auto ex = times_exp(confluent_series(cplx(-ths), sg, th0, tht, b, 5), ths);
    CHECK(max_rel_gap(std::vector<cplx>(base.begin(), base.begin() + 6), ex) < 1e-9);
  }
}

TEST_CASE("pole detection") {
  cb_params<cplx> p{th0, tht, th1, thi, cplx(0.5), 1.0};
  CHECK_THROWS_AS(regular_cb_bracket(p, 2), error);
  try {
    confluent_cb1_bracket(ths, cplx(1.0), tht, th0, cplx(1), 3);
  } catch (const error& e) {
    CHECK(e.code() == errc::pole);
  }
}

TEST_CASE("exact and floating rings agree") {
  const rational a(1, 5), b2(2, 7), c1(1, 3), d(3, 10), s(2, 9), beta(3, 2);
  cb_params<rational> pe{a, b2, c1, d, s, beta};
  cb_params<cplx> pf{0.2, 2.0 / 7, 1.0 / 3, 0.3, 2.0 / 9, 1.5};
  auto e = regular_cb_bracket(pe, 3);
  auto f = regular_cb_bracket(pf, 3);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(e[k].convert_to<double>() - f[k]) < 1e-13 * std::max(1.0, std::abs(f[k])));
}
