#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pvtau/error.hpp"
#include "pvtau/lambda_limit.hpp"

using namespace pvtau;

namespace {

struct tuple5 {
  rational thetat, thetastar, nu, theta0, beta;
};

tuple5 random_tuple(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(2, 13), bnum(5, 20);
  auto r = [&] { return rational(num(rng)) / rational(den(rng)); };
  return {r(), r(), r(), r(), rational(bnum(rng)) / rational(10)};
}

rational printed_d1(const tuple5& x) {
  const rational d0 = conformal_dimension(x.theta0, x.beta), dt = conformal_dimension(x.thetat, x.beta);
  return 4 * x.nu * x.nu * x.nu - (2 * d0 + 2 * dt + x.thetastar * x.thetastar) * x.nu + (dt - d0) * x.thetastar;
}

rational printed_d2(const tuple5& x) {
  const rational d0 = conformal_dimension(x.theta0, x.beta), dt = conformal_dimension(x.thetat, x.beta);
  const rational c = central_charge(x.beta), d1 = printed_d1(x), s2 = x.thetastar * x.thetastar;
  return d1 * d1 / 2 + 3 * x.nu * d1 - 2 * x.nu * x.nu * x.nu * x.nu + (dt - d0) * x.thetastar * x.nu +
         rational(1, 8) * (4 * d0 - s2) * (4 * dt - s2) + (c - 1) / 12 * (s2 - 4 * x.nu * x.nu);
}

std::vector<rational> dk(const tuple5& x, int k) {
  return dk_coefficients(x.thetat, x.thetastar, x.nu, x.theta0, x.beta, k).d;
}

}  // namespace

TEST_CASE("empty pair is the constant series") {
  const partition e;
  auto f = cb_coeff_in_lambda(e, e, rational(1, 3), rational(1, 4), rational(1, 5), rational(1, 6), rational(1), 7);
  CHECK(f.coeff(0) == 1);
  CHECK(f.coeff(-3) == 0);
}

TEST_CASE("one-box pair sum by hand expansion") {
  const partition e, one({1});
  const rational tht(1, 3), ths(2, 7), nu(1, 5), th0(3, 11);
  auto f = cb_coeff_in_lambda(one, e, tht, ths, nu, th0, rational(1), 7);
  auto g = cb_coeff_in_lambda(e, one, tht, ths, nu, th0, rational(1), 7);
  auto s = f + g;
  s.trim();
  CHECK(s.lead() == 1);
  CHECK(s.coeff(1) == nu + ths / 2 + tht);
}

TEST_CASE("floating evaluation at large Lambda matches the Laurent series") {
  const partition l({2}), m({1});
  const double lam = 1e6;
  const cplx tht(0.3), ths(0.25), nu(0.2), th0(0.15);
  auto f = cb_coeff_in_lambda(l, m, tht, ths, nu, th0, cplx(1), 12);
  cplx sum = 0;
  for (int p = f.lead(); p >= -6; --p) sum += f.coeff(p) * std::pow(lam, p);
  cb_params<cplx> direct{(lam - ths) / 2.0, tht, (lam + ths) / 2.0, th0, lam / 2.0 + nu, 1.0};
  const cplx ref = regular_cb_coeff(l, m, direct);
  CHECK(std::abs(sum - ref) / std::abs(ref) < 1e-6);
}

TEST_CASE("printed D1 and D2 in exact arithmetic") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 5; ++i) {
    const auto x = random_tuple(rng);
    auto d = dk(x, 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == printed_d1(x));
    CHECK(d[2] == printed_d2(x));
  }
}

TEST_CASE("D1 depends on the central charge only through the dimensions") {
  tuple5 x{rational(1, 3), rational(2, 7), rational(1, 5), rational(3, 11), rational(1)};
  const rational at_one = dk(x, 1)[1];
  // Delta depends on beta; compare with the c-free form at the same dimensions
  x.beta = rational(3, 2);
  const rational shift = (conformal_dimension(x.theta0, x.beta) - x.theta0 * x.theta0) * (-4 * x.nu);
  CHECK(dk(x, 1)[1] == at_one + shift);
}

TEST_CASE("D_k symmetries are exact") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3; ++i) {
    auto x = random_tuple(rng);
    const auto base = dk(x, 3);
    auto flip0 = x;
    flip0.theta0 = -x.theta0;
    auto flipt = x;
    flipt.thetat = -x.thetat;
    tuple5 exch{x.theta0, rational(-x.thetastar), x.nu, x.thetat, x.beta};
    const rational d = (x.theta0 + x.thetat + x.thetastar) / 2;
    tuple5 regge{rational(x.thetat - d), rational(x.thetastar - 2 * d), x.nu, rational(x.theta0 - d), x.beta};
    CHECK(dk(flip0, 3) == base);
    CHECK(dk(exch, 3) == base);
    CHECK(dk(regge, 3) == base);
    if (x.beta == 1) CHECK(dk(flipt, 3) == base);
  }
  tuple5 x{rational(1, 3), rational(2, 7), rational(1, 5), rational(3, 11), rational(1)};
  const auto base = dk(x, 3);
  CHECK(dk(x, 3) == dk(tuple5{rational(-x.thetat), x.thetastar, x.nu, x.theta0, x.beta}, 3));
  const auto neg = dk(tuple5{x.thetat, rational(-x.thetastar), rational(-x.nu), x.theta0, x.beta}, 3);
  for (int k = 0; k <= 3; ++k) CHECK(base[k] == (k % 2 ? rational(-neg[k]) : neg[k]));
}

TEST_CASE("exact and floating D_k agree") {
  const tuple5 x{rational(1, 3), rational(2, 7), rational(1, 5), rational(3, 11), rational(3, 2)};
  const auto e = dk(x, 4);
  auto f = dk_coefficients(cplx(1.0 / 3), cplx(2.0 / 7), cplx(0.2), cplx(3.0 / 11), cplx(1.5), 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(f.d[k] - e[k].convert_to<double>()) < 1e-10 * std::max(1.0, std::abs(f.d[k])));
  CHECK(f.max_residual < 1e-9);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(dk_coefficients(rational(1), rational(1), rational(1), rational(1), rational(1), dk_max_exact + 1), error);
  CHECK_THROWS_AS(dk_coefficients(cplx(1), cplx(1), cplx(1), cplx(1), cplx(1), dk_max_float + 1), error);
  try {
    dk_coefficients(cplx(0.3), cplx(0.2), cplx(0.1), cplx(0.4), cplx(1), 3, 4);
    FAIL("expected a cancellation failure");
  } catch (const error& e) {
    CHECK(e.code() == errc::cancellation_failure);
  }
}

TEST_CASE("second-kind series") {
  const cplx tht(0.3), ths(0.25), nu(0.2, 0.1), th0(0.15), t(0, 30);
  const cplx pre = std::exp((ths * ths / 2.0 - 2.0 * nu * nu) * std::log(t) + (ths / 2.0 + nu) * t);
  CHECK(std::abs(confluent_cb2_series(tht, ths, nu, th0, t, 0) / pre - 1.0) < 1e-14);
  const cplx d0 = th0 * th0, dt = tht * tht;
  const cplx d1 = 4.0 * nu * nu * nu - (2.0 * d0 + 2.0 * dt + ths * ths) * nu + (dt - d0) * ths;
  const cplx d2 = d1 * d1 / 2.0 + 3.0 * nu * d1 - 2.0 * std::pow(nu, 4) + (dt - d0) * ths * nu +
                  (4.0 * d0 - ths * ths) * (4.0 * dt - ths * ths) / 8.0;
  const cplx expect = pre * (1.0 + d1 / t + d2 / (t * t));
  CHECK(std::abs(confluent_cb2_series(tht, ths, nu, th0, t, 2) / expect - 1.0) < 1e-13);
}
