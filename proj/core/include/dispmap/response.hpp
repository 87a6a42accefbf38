#pragma once

#include <dispmap/model.hpp>

#include <cstddef>
#include <vector>

namespace dispmap {

struct SteadyState {
  Complex eta_ss;
  double photons = 0.0;
};

SteadyState steady_state(const SystemParams& p, double omega_c_mhz);

/// Drive amplitude (MHz) that yields the requested steady-state photon number.
double drive_for_photons(const SystemParams& p, double photons);

/// Classical resonator response sampled on a uniform grid starting at t = 0.
/// Derivatives are per ns^k.
struct ResonatorTrajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Complex> eta;
  std::vector<Complex> eta_d1;
  std::vector<Complex> eta_d2;
  std::vector<Complex> eta_d3;

  std::size_t size() const noexcept { return times.size(); }
  double photon(std::size_t i) const { return std::norm(eta[i]); }
};

/// Largest step accepted by solve_eta for these parameters.
double max_stable_dt(const SystemParams& p, const PulseSpec& pulse);

/// Fixed-step RK4 from eta(0) = 0; derivatives come from the ODE itself.
ResonatorTrajectory solve_eta(const SystemParams& p, const PulseSpec& pulse, double t_end_ns,
                              double dt_ns);

/// Right-hand side of the response equation in rad/ns units, for self-consistency checks.
Complex eta_rhs(const SystemParams& p, const PulseSpec& pulse, double t_ns, Complex eta);

}  // namespace dispmap
