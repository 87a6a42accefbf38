#include <dispmap/error.hpp>
#include <dispmap/response.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace dispmap {

SteadyState steady_state(const SystemParams& p, double omega_c_mhz) {
  const Complex den{0.5 * p.kappa_c, p.delta_cd};
  if (den == 0.0) throw SingularityError("steady state undefined for delta_cd = kappa_c = 0");
  const Complex eta = -0.5 * kI * omega_c_mhz / den;
  return {eta, std::norm(eta)};
}

double drive_for_photons(const SystemParams& p, double photons) {
  if (photons < 0.0) throw DomainError("photon number must be non-negative");
  const double den = p.delta_cd * p.delta_cd + 0.25 * p.kappa_c * p.kappa_c;
  if (den == 0.0) throw SingularityError("drive inversion undefined for delta_cd = kappa_c = 0");
  return 2.0 * std::sqrt(photons * den);
}

namespace {

Complex decay_rate(const SystemParams& p) {
  return {angular(0.5 * p.kappa_c), angular(p.delta_cd)};
}

}  // namespace

Complex eta_rhs(const SystemParams& p, const PulseSpec& pulse, double t, Complex eta) {
  return -decay_rate(p) * eta - 0.5 * kI * angular(pulse.amplitude(t));
}

double max_stable_dt(const SystemParams& p, const PulseSpec& pulse) {
  const double scale =
      angular(std::max({std::abs(p.delta_cd), p.kappa_c, std::abs(pulse.omega_c())}));
  return scale > 0.0 ? 0.05 / scale : 1e300;
}

ResonatorTrajectory solve_eta(const SystemParams& p, const PulseSpec& pulse, double t_end,
                              double dt) {
  validate(p);
  if (!(dt > 0.0)) throw StepSizeError("dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("t_end must be non-negative");
  const double bound = max_stable_dt(p, pulse);
  if (dt > bound * (1.0 + 1e-12)) {
    throw StepSizeError("dt = " + std::to_string(dt) + " ns exceeds the stability bound " +
                        std::to_string(bound) + " ns");
  }
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const std::size_t n = steps + 1;
  const Complex lam = decay_rate(p);

  ResonatorTrajectory tr;
  tr.dt = dt;
  tr.times.resize(n);
  tr.eta.resize(n);
  tr.eta_d1.resize(n);
  tr.eta_d2.resize(n);
  tr.eta_d3.resize(n);

  auto f = [&](double t, Complex y) { return eta_rhs(p, pulse, t, y); };
  Complex y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    tr.times[i] = t;
    tr.eta[i] = y;
    if (i + 1 == n) break;
    const Complex k1 = f(t, y);
    const Complex k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
    const Complex k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
    const Complex k4 = f(t + dt, y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tr.times[i];
    tr.eta_d1[i] = f(t, tr.eta[i]);
    tr.eta_d2[i] = -lam * tr.eta_d1[i] - 0.5 * kI * angular(pulse.amplitude_derivative(t, 1));
    tr.eta_d3[i] = -lam * tr.eta_d2[i] - 0.5 * kI * angular(pulse.amplitude_derivative(t, 2));
  }
  return tr;
}

}  // namespace dispmap
