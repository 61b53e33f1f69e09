#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "pvtau/conformal_blocks.hpp"
#include "pvtau/connection.hpp"
#include "pvtau/error.hpp"
#include "pvtau/fredholm_det.hpp"
#include "pvtau/lambda_limit.hpp"
#include "pvtau/pv_ode.hpp"
#include "pvtau/tau_expansions.hpp"

using namespace pvtau;

namespace {

const double pi = std::acos(-1.0);

struct outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <class... A> std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

struct sample5 {
  double theta0, thetat, thetastar, sigma, eta;
};

const sample5 generic_samples[] = {
    {0.2, 0.31, 0.47, 0.29, 0.12},  {0.13, 0.27, 0.35, 0.21, 0.3},  {0.1, 0.22, -0.3, 0.33, 0.05},
    {0.3, 0.15, 0.2, 0.18, -0.2},   {0.25, 0.35, 0.6, 0.24, 0.4},   {0.05, 0.4, 0.1, 0.31, 0.22},
    {0.17, 0.09, 0.41, 0.27, -0.07},
};

outcome dk_exactness() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-12, 12), den(2, 17), bnum(3, 25);
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    auto r = [&] { return rational(num(rng)) / rational(den(rng)); };
    const rational tht = r(), ths = r(), nu = r(), th0 = r(), beta = rational(bnum(rng)) / rational(10);
    std::vector<rational> d;
    try {
      d = dk_coefficients(tht, ths, nu, th0, beta, 4).d;
    } catch (const error&) {
      ++bad;
      continue;
    }
    const rational d0 = conformal_dimension(th0, beta), dt = conformal_dimension(tht, beta), c = central_charge(beta);
    const rational d1 = 4 * nu * nu * nu - (2 * d0 + 2 * dt + ths * ths) * nu + (dt - d0) * ths;
    const rational d2 = d1 * d1 / 2 + 3 * nu * d1 - 2 * nu * nu * nu * nu + (dt - d0) * ths * nu +
                        rational(1, 8) * (4 * d0 - ths * ths) * (4 * dt - ths * ths) + (c - 1) / 12 * (ths * ths - 4 * nu * nu);
    if (d[0] != 1 || d[1] != d1 || d[2] != d2) ++bad;
  }
  return {bad == 0, fmt("%d of 20 tuples failed exact D1/D2 or positive-power cancellation through K=4", bad)};
}

outcome confluence_limit() {
  const cplx th0(0.21, 0.05), tht(0.33), sg(0.27, 0.03), ths(0.45), t(0.1);
  cb_params<cplx> conf{th0, tht, 0.0, 0.0, sg, 1.0, ths};
  const cplx b = cb_series(cb_kind::confluent1, conf, t, 4).value;
  std::vector<double> err;
  for (double lam : {1e2, 1e3, 1e4}) {
    cb_params<cplx> p{th0, tht, (lam + ths) / 2.0, (lam - ths) / 2.0, sg, 1.0};
    auto r = cb_series(cb_kind::regular, p, cplx(t / lam), 4);
    err.push_back(std::abs(std::exp(r.exponent * std::log(lam)) * r.value - b));
  }
  const double s1 = std::log10(err[1] / err[0]), s2 = std::log10(err[2] / err[1]);
  return {std::abs(s1 + 1) <= 0.1 && std::abs(s2 + 1) <= 0.1, fmt("log-slopes %.4f %.4f", s1, s2)};
}

outcome theorem_b() {
  const pv_params<cplx> p{0.2, 0.31, 0.47};
  const cplx s(0.29), e(0.12);
  std::vector<cplx> r;
  for (double t : {0.04, 0.06, 0.08}) r.push_back(tau_fredholm(cplx(t), s, e, p, 16) / tau_zero(cplx(t), s, e, p, 8, 6));
  const double spread = std::max(std::abs(r[1] / r[0] - 1.0), std::abs(r[2] / r[0] - 1.0));
  return {spread < 1e-8, fmt("ratio %.12f%+.3ei, relative spread %.2e", r[0].real(), r[0].imag(), spread)};
}

outcome jimbo_leading() {
  const pv_params<cplx> p{0.2, 0.31, 0.47};
  const cplx s(0.2), e(0.12);
  const cplx sm = s_minus(s, e, p);
  std::vector<double> rem;
  for (double t : {1e-3, 1e-4, 1e-5}) {
    const cplx det = matrix_elements(cplx(t), s, p, sm, 8).determinant();
    rem.push_back(std::abs(det - (1.0 - leading_trace(cplx(t), s, e, p))));
  }
  const double s1 = std::log10(rem[0] / rem[1]), s2 = std::log10(rem[1] / rem[2]);
  return {s1 > 1.4 && s2 > 1.4, fmt("remainder slopes %.3f %.3f at sigma=0.2", s1, s2)};
}

outcome special_solution_check() {
  const pv_params<cplx> q{0.25, 0.25, 0.47};
  double res = 0, dev = 0;
  std::vector<double> radii;
  for (int i = 0; i <= 99; ++i) {
    radii.push_back(0.1 + 0.1 * i);
    res = std::max(res, sigma_pv_residual(q, special_solution(cplx(radii.back()), q.thetastar)));
  }
  auto tr = integrate(special_solution(cplx(0.1), q.thetastar), q, ray::positive_real, 10.0, ode_defaults::tol, radii);
  for (const auto& pt : tr.points) {
    const auto ex = special_solution(cplx(pt.r), q.thetastar);
    dev = std::max(dev, std::abs(pt.state.h - ex.h) / std::abs(ex.h));
  }
  return {res < 1e-12 && dev < 1e-9, fmt("closed-form residual %.2e, integrator deviation %.2e", res, dev)};
}

outcome connection_ray(ray r) {
  int ok = 0;
  double worst = 0;
  std::string notes;
  for (const auto& g : generic_samples) {
    const pv_params<cplx> p{g.theta0, g.thetat, g.thetastar};
    try {
      const auto lab = labels_from_sigma_eta(cplx(g.sigma), cplx(g.eta), p);
      const cplx t0 = 0.05 * std::polar(1.0, r == ray::positive_real ? 0.0 : pi / 2);
      auto tr = integrate(seed_from_series(t0, cplx(g.sigma), cplx(g.eta), p), p, r, 40.0, ode_defaults::tol, {25});
      auto cmp = fit_and_compare(tr, r == ray::positive_real ? channel::plus_infinity : channel::i_infinity, lab, p, 3, 2, 25);
      const double d25 = cmp.points.at(0).deviation, d40 = cmp.points.at(1).deviation;
      worst = std::max(worst, d25);
      if (d25 < 1e-3 && (r == ray::positive_real || d40 < d25)) ++ok;
    } catch (const error& e) {
      notes += std::string(" ") + code_name(e.code());
    }
  }
  const int n = static_cast<int>(std::size(generic_samples));
  return {ok >= 5, fmt("%d of %d samples pass, worst deviation at |t|=25: %.2e%s", ok, n, worst, notes.c_str())};
}

outcome upsilon_recurrences() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.45, 0.45);
  const cplx tpi(0, 2 * pi);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const cplx nu(u(rng), 0.2 * u(rng)), om(u(rng), 0.2 * u(rng));
    const cplx base = upsilon_iinf_pinf(nu, om);
    const cplx r1 = upsilon_iinf_pinf(cplx(nu + 1.0), om) / base, e1 = std::exp(-tpi * om);
    const cplx r2 = upsilon_iinf_pinf(nu, cplx(om + 1.0)) / base, e2 = std::exp(-tpi * nu) * (1.0 - std::exp(tpi * om));
    worst = std::max({worst, std::abs(r1 / e1 - 1.0), std::abs(r2 / e2 - 1.0)});
  }
  return {worst < 1e-10, fmt("worst relative error %.2e over 20 points", worst)};
}

outcome round_trip() {
  const pv_params<cplx> p{0.2, 0.31, 0.47};
  const cplx s(0.71), e(0.12), t(0.05);
  const auto x = x_from_sigma_eta(s, e, p);
  const auto [s2, e2] = sigma_eta_from_x(x.plus, x.minus, p);
  const cplx a = s2 - s, b = s2 + s;
  const bool same = std::abs(a - std::round(a.real())) < 1e-9 || std::abs(b - std::round(b.real())) < 1e-9;
  const cplx t1 = tau_zero(t, s, e, p, 8, 8), t2 = tau_zero(t, s2, e2, p, 8, 8);
  const cplx r1 = t2 / t1, r2 = tau_zero(cplx(2.0 * t), s2, e2, p, 8, 8) / tau_zero(cplx(2.0 * t), s, e, p, 8, 8);
  const double gap = std::abs(r1 - 1.0);
  return {same && gap < 1e-8, fmt("sigma'=%.6f, tau relative gap %.2e, ratio arg/2pi %.6f, ratio drift to t=%.2f %.2e",
                                  s2.real(), gap, std::arg(r1) / (2 * pi), 2 * t.real(), std::abs(r2 / r1 - 1.0))};
}

double rel_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
  return m;
}

std::vector<cplx> times_exp(const std::vector<cplx>& a, const cplx& rate) {
  std::vector<cplx> out(a.size(), 0.0);
  cplx term = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t i = 0; i + j < a.size(); ++i) out[i + j] += a[i] * term;
    term *= rate / double(j + 1);
  }
  return out;
}

outcome symmetry_suites() {
  double worst = 0;
  const cplx th0(0.21, 0.05), tht(0.33), sg(0.27, 0.03), ths(0.45), nu(0.23, 0.04);
  for (double bb : {1.0, 1.3}) {
    const cplx b(bb);
    auto series = [&](const cplx& s_, const cplx& g, const cplx& tt, const cplx& t0) {
      return times_exp(confluent_cb1_bracket(s_, g, tt, t0, b, 5), confluent_rate(tt, b));
    };
    const auto base = series(ths, sg, tht, th0);
    worst = std::max(worst, rel_gap(base, series(ths, sg, tht, cplx(-th0))));
    worst = std::max(worst, rel_gap(base, series(ths, cplx(-sg), tht, th0)));
    const cplx d = (th0 + tht + ths) / 2.0;
    worst = std::max(worst, rel_gap(base, times_exp(series(cplx(ths - 2.0 * d), sg, cplx(tht - d), cplx(th0 - d)), d)));
    worst = std::max(worst, rel_gap(base, times_exp(series(cplx(-ths), sg, th0, tht), ths)));

    auto dk = [&](const cplx& a, const cplx& s_, const cplx& n, const cplx& z) {
      const auto x = dk_coefficients(from_cplx<xcplx>(a), from_cplx<xcplx>(s_), from_cplx<xcplx>(n),
                                     from_cplx<xcplx>(z), from_cplx<xcplx>(b), 5)
                         .d;
      std::vector<cplx> out;
      for (const auto& v : x) out.push_back(to_cplx(v));
      return out;
    };
    const auto db = dk(tht, ths, nu, th0);
    worst = std::max(worst, rel_gap(db, dk(tht, ths, nu, cplx(-th0))));
    worst = std::max(worst, rel_gap(db, dk(th0, cplx(-ths), nu, tht)));
    worst = std::max(worst, rel_gap(db, dk(cplx(tht - d), cplx(ths - 2.0 * d), nu, cplx(th0 - d))));
    if (bb == 1.0) {
      worst = std::max(worst, rel_gap(base, series(ths, sg, cplx(-tht), th0)));
      worst = std::max(worst, rel_gap(db, dk(cplx(-tht), ths, nu, th0)));
    }
  }
  return {worst < 1e-9, fmt("worst per-order relative deviation %.2e through order 5", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<outcome()>> criteria[] = {
      {"D_k exactness", dk_exactness},
      {"confluence limit slope", confluence_limit},
      {"Fredholm vs series ratio", theorem_b},
      {"Jimbo leading order", jimbo_leading},
      {"special solution", special_solution_check},
      {"imaginary-ray connection", [] { return connection_ray(ray::positive_imaginary); }},
      {"real-ray connection", [] { return connection_ray(ray::positive_real); }},
      {"Upsilon recurrences", upsilon_recurrences},
      {"monodromy round trip", round_trip},
      {"symmetry suites", symmetry_suites},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-26s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
