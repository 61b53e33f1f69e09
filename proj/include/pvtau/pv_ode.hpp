#pragma once

#include <string>
#include <vector>

#include "pvtau/connection.hpp"
#include "pvtau/numeric.hpp"
#include "pvtau/tau_expansions.hpp"

namespace pvtau {

struct hamiltonian_state {
  cplx t, h, hd, hdd;
  cplx log_tau;
};

enum class ray { positive_real, positive_imaginary };
enum class channel { i_infinity, plus_infinity };

ray parse_ray(const std::string& s);
std::string ray_name(ray r);

struct ode_defaults {
  static constexpr double tol = 1e-11;
  static constexpr double drift_limit = 1e-6;
  static constexpr double min_step_fraction = 1e-12;
  static constexpr double series_margin = 1e-10;
  static constexpr int seed_order = 10;
  static constexpr int seed_window = 6;
};

// (tH'')^2 - P^2 + F(H')/4 with P = H - tH' + 2H'^2.
cplx sigma_pv_defect(const pv_params<cplx>& p, const cplx& t, const cplx& h, const cplx& hd, const cplx& hdd);
// Defect divided by |tH''|^2 + |P|^2 + |F|/4.
double sigma_pv_residual(const pv_params<cplx>& p, const hamiltonian_state& s);

hamiltonian_state seed_from_series(const cplx& t0, const cplx& sigma, const cplx& eta, const pv_params<cplx>& p,
                                   int order = ode_defaults::seed_order, int window = ode_defaults::seed_window);

// tau = t^{thetastar^2-1/8} e^{t^2/32 + thetastar t/2}, theta0 = thetat = 1/4.
hamiltonian_state special_solution(const cplx& t, const cplx& thetastar);

struct trajectory_point {
  double r;
  hamiltonian_state state;
  double residual;
};

struct trajectory {
  std::vector<trajectory_point> points;
  double max_residual = 0;
  long steps = 0;
  long rejected = 0;
};

// Integrates along t = r e^{i phase} from |t0| to r_end. With no output radii every accepted step is recorded.
trajectory integrate_phase(const hamiltonian_state& s0, const pv_params<cplx>& p, double phase, double r_end,
                           double tol = ode_defaults::tol, const std::vector<double>& outputs = {});
trajectory integrate(const hamiltonian_state& s0, const pv_params<cplx>& p, ray dir, double r_end,
                     double tol = ode_defaults::tol, const std::vector<double>& outputs = {});

void write_csv(const trajectory& tr, std::ostream& os);

struct comparison_point {
  double r;
  cplx t, log_ode, log_model;
  double deviation;
};

struct comparison_report {
  channel ch;
  std::vector<comparison_point> points;
  double max_deviation = 0;
};

comparison_report fit_and_compare(const trajectory& tr, channel ch, const asymptotic_labels<cplx>& labels,
                                  const pv_params<cplx>& p, int order = channel_defaults::asym_order,
                                  int window = channel_defaults::asym_window, double min_radius = 20);

}  // namespace pvtau
