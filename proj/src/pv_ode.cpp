#include "pvtau/pv_ode.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "pvtau/error.hpp"

namespace pvtau {

namespace odeint = boost::numeric::odeint;

namespace {

using state_vec = std::array<cplx, 4>;

struct pv_rhs {
  pv_params<cplx> p;
  cplx phase;

  cplx f(const cplx& u) const {
    const cplx a = (2.0 * u - p.thetastar), b = (2.0 * u + p.thetastar);
    return (a * a - 4.0 * p.theta0 * p.theta0) * (b * b - 4.0 * p.thetat * p.thetat);
  }
  cplx df(const cplx& u) const {
    const cplx a = (2.0 * u - p.thetastar), b = (2.0 * u + p.thetastar);
    return 4.0 * a * (b * b - 4.0 * p.thetat * p.thetat) + 4.0 * b * (a * a - 4.0 * p.theta0 * p.theta0);
  }

  void operator()(const state_vec& y, state_vec& dy, double r) const {
    const cplx t = r * phase;
    const cplx& h = y[0];
    const cplx& hd = y[1];
    const cplx& hdd = y[2];
    const cplx pp = h - t * hd + 2.0 * hd * hd;
    const cplx h3 = (2.0 * pp * (4.0 * hd - t) - 0.25 * df(hd) - 2.0 * t * hdd) / (2.0 * t * t);
    dy[0] = phase * hd;
    dy[1] = phase * hdd;
    dy[2] = phase * h3;
    dy[3] = phase * (h + p.thetastar * (t + p.thetastar) / 2.0) / t;
  }
};

hamiltonian_state to_state(const state_vec& y, const cplx& t) { return {t, y[0], y[1], y[2], y[3]}; }

}  // namespace

ray parse_ray(const std::string& s) {
  if (s == "real" || s == "positive-real") return ray::positive_real;
  if (s == "imag" || s == "imaginary" || s == "positive-imaginary") return ray::positive_imaginary;
  throw error(errc::config, "unknown ray '" + s + "' (expected real or imaginary)");
}

std::string ray_name(ray r) { return r == ray::positive_real ? "real" : "imaginary"; }

cplx sigma_pv_defect(const pv_params<cplx>& p, const cplx& t, const cplx& h, const cplx& hd, const cplx& hdd) {
  const cplx pp = h - t * hd + 2.0 * hd * hd;
  const cplx th = t * hdd;
  return th * th - pp * pp + 0.25 * pv_rhs{p, 1.0}.f(hd);
}

double sigma_pv_residual(const pv_params<cplx>& p, const hamiltonian_state& s) {
  const cplx pp = s.h - s.t * s.hd + 2.0 * s.hd * s.hd;
  const double scale = std::norm(s.t * s.hdd) + std::norm(pp) + 0.25 * std::abs(pv_rhs{p, 1.0}.f(s.hd));
  return std::abs(sigma_pv_defect(p, s.t, s.h, s.hd, s.hdd)) / (scale + 1e-300);
}

hamiltonian_state seed_from_series(const cplx& t0, const cplx& sigma, const cplx& eta, const pv_params<cplx>& p,
                                   int order, int window) {
  zero_channel<cplx> z(sigma, eta, p, order, window);
  double tail = 0;
  auto d = z.derivatives(t0, 4, &tail);
  if (tail > ode_defaults::series_margin)
    throw error(errc::series_margin, "seed_from_series: last retained order contributes " + std::to_string(tail) +
                                         " relative at |t0|=" + std::to_string(std::abs(t0)));
  const cplx l1 = d[1] / d[0];
  const cplx l2 = d[2] / d[0] - l1 * l1;
  const cplx l3 = d[3] / d[0] - 3.0 * d[2] * d[1] / (d[0] * d[0]) + 2.0 * l1 * l1 * l1;
  hamiltonian_state s;
  s.t = t0;
  s.h = t0 * l1 - p.thetastar * (t0 + p.thetastar) / 2.0;
  s.hd = l1 + t0 * l2 - p.thetastar / 2.0;
  s.hdd = 2.0 * l2 + t0 * l3;
  s.log_tau = z.log_value(t0);
  return s;
}

hamiltonian_state special_solution(const cplx& t, const cplx& thetastar) {
  hamiltonian_state s;
  s.t = t;
  s.h = thetastar * thetastar / 2.0 - 0.125 + t * t / 16.0;
  s.hd = t / 8.0;
  s.hdd = 0.125;
  s.log_tau = (thetastar * thetastar - 0.125) * std::log(t) + t * t / 32.0 + thetastar * t / 2.0;
  return s;
}

trajectory integrate_phase(const hamiltonian_state& s0, const pv_params<cplx>& p, double phase, double r_end,
                           double tol, const std::vector<double>& outputs) {
  const cplx dir = std::polar(1.0, phase);
  const double r0 = std::abs(s0.t);
  if (std::abs(s0.t - r0 * dir) > 1e-12 * (1 + r0))
    throw error(errc::config, "integrate: initial point is not on the requested ray");
  if (!(r_end > r0)) throw error(errc::config, "integrate: end radius must exceed the initial radius");
  if (!(tol > 0)) throw error(errc::config, "integrate: tolerance must be positive");
  const double min_step = ode_defaults::min_step_fraction * (r_end - r0);

  std::vector<double> targets;
  for (double o : outputs)
    if (o > r0 && o < r_end) targets.push_back(o);
  std::sort(targets.begin(), targets.end());
  targets.push_back(r_end);
  const bool every_step = outputs.empty();

  pv_rhs rhs{p, dir};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state_vec>());
  state_vec y{s0.h, s0.hd, s0.hdd, s0.log_tau};

  trajectory tr;
  auto record = [&](double r) {
    trajectory_point pt{r, to_state(y, r * dir), 0};
    pt.residual = sigma_pv_residual(p, pt.state);
    tr.max_residual = std::max(tr.max_residual, pt.residual);
    if (pt.residual > ode_defaults::drift_limit)
      throw error(errc::residual_drift, "integrate: sigma-PV residual " + std::to_string(pt.residual) + " at |t|=" +
                                            std::to_string(r));
    tr.points.push_back(pt);
  };
  record(r0);

  double r = r0;
  double dr = std::min(1e-3, (r_end - r0) / 10);
  for (double target : targets) {
    while (r < target) {
      const bool clipped = r + dr > target;
      double step = clipped ? target - r : dr;
      const double attempted = step;
      if (stepper.try_step(rhs, y, r, step) == odeint::fail) {
        ++tr.rejected;
        if (step < min_step)
          throw error(errc::pole_proximity, "integrate: step size collapsed near |t|=" + std::to_string(r));
        dr = step;
        continue;
      }
      ++tr.steps;
      if (!clipped || step > attempted) dr = step;
      for (const auto& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw error(errc::pole_proximity, "integrate: solution blew up near |t|=" + std::to_string(r));
      if (every_step && r < target) record(r);
    }
    r = target;
    record(r);
  }
  return tr;
}

trajectory integrate(const hamiltonian_state& s0, const pv_params<cplx>& p, ray dir, double r_end, double tol,
                     const std::vector<double>& outputs) {
  const double phase = dir == ray::positive_real ? 0.0 : std::acos(-1.0) / 2;
  return integrate_phase(s0, p, phase, r_end, tol, outputs);
}

void write_csv(const trajectory& tr, std::ostream& os) {
  os << "r,t_re,t_im,h_re,h_im,hd_re,hd_im,hdd_re,hdd_im,logtau_re,logtau_im,residual\n";
  os.precision(17);
  for (const auto& pt : tr.points) {
    const auto& s = pt.state;
    os << pt.r << ',' << s.t.real() << ',' << s.t.imag() << ',' << s.h.real() << ',' << s.h.imag() << ','
       << s.hd.real() << ',' << s.hd.imag() << ',' << s.hdd.real() << ',' << s.hdd.imag() << ',' << s.log_tau.real()
       << ',' << s.log_tau.imag() << ',' << pt.residual << '\n';
  }
}

comparison_report fit_and_compare(const trajectory& tr, channel ch, const asymptotic_labels<cplx>& labels,
                                  const pv_params<cplx>& p, int order, int window, double min_radius) {
  comparison_report rep;
  rep.ch = ch;
  if (tr.points.empty() || tr.points.back().r < min_radius) return rep;
  cplx log_norm = log_upsilon_0_iinf(labels.sigma, labels.nu, labels.lambda, p);
  std::function<cplx(const cplx&)> model;
  if (ch == channel::i_infinity) {
    auto c = std::make_shared<iinf_channel<cplx>>(labels.nu, labels.rho, p, order, window);
    model = [c](const cplx& t) { return c->log_value(t); };
  } else {
    log_norm += log_upsilon_iinf_pinf(labels.nu, labels.omega);
    auto c = std::make_shared<pinf_channel<cplx>>(labels.omega, labels.xi, p, gk_polynomials<cplx>(p, order), window);
    model = [c](const cplx& t) { return c->log_value(t); };
  }
  for (const auto& pt : tr.points) {
    if (pt.r < min_radius) continue;
    comparison_point cp;
    cp.r = pt.r;
    cp.t = pt.state.t;
    cp.log_ode = pt.state.log_tau;
    cp.log_model = log_norm + model(pt.state.t);
    cp.deviation = std::abs(reduce_log(cplx(cp.log_model - cp.log_ode)));
    rep.max_deviation = std::max(rep.max_deviation, cp.deviation);
    rep.points.push_back(cp);
  }
  return rep;
}

}  // namespace pvtau
