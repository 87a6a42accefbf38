#pragma once

#include <dispmap/liouville.hpp>
#include <dispmap/model.hpp>

#include <vector>

namespace dispmap {

struct Correlations {
  Complex a_ll;
  Complex a_rr;
  Complex b_lr;
  Complex c_lr;
};

/// Lowest-order adiabatic correlation functions for levels (n_al, n_ar) at photon number |eta|^2.
Correlations adiabatic_correlations(const SystemParams& p, int n_al, int n_ar, double photon);

struct EffectiveSpectrumEntry {
  int n_al = 0;
  int n_ar = 0;
  Complex value;  ///< MHz; real part is the frequency shift, -imag the dephasing rate
};

EffectiveSpectrumEntry effective_spectrum(const SystemParams& p, int n_al, int n_ar, double photon);

/// Stark shift and dephasing of the |1><0| coherence.
RatePair rates(const SystemParams& p, double photon);

/// The chi^2 part of the Stark shift alone.
double second_order_stark(const SystemParams& p, double photon);

/// gamma_phi recovered from the second-order Stark shift: -(kappa / 2(Delta + 2 chi)) Delta_S^(2).
double dephasing_from_stark(const SystemParams& p, double photon);

/// Photon number with the qubit excited: (Omega/2)^2 / ((Delta + 2 chi)^2 + (kappa/2)^2).
double excited_photons(const SystemParams& p, double omega_c_mhz);

/// Dephasing rate in the qubit-state-dependent photon picture, kappa > 0 required.
double gambetta_rates(const SystemParams& p, double omega_c_mhz);

struct EffectiveLindblad {
  std::vector<double> h_values;  ///< effective Hamiltonian diagonal per qubit level, MHz
  std::vector<Complex> c_values;  ///< effective collapse diagonal per level, sqrt(MHz)
};

EffectiveLindblad effective_lindblad(const SystemParams& p, double photon);

/// rho_mn(t) = rho_mn(0) exp(-2 pi i int_0^t E_mn dt') on every point of t_grid (ns),
/// with the photon number sampled on the same grid and integrated by the trapezoid rule.
std::vector<Matrix> effective_map_apply(const Matrix& rho0, const SystemParams& p,
                                        const std::vector<double>& photon_series,
                                        const std::vector<double>& t_grid_ns);

/// M_mn = exp(-2 pi i E_mn t) over n_a levels, constant photon number, t in us.
Matrix map_multipliers(const SystemParams& p, double photon, double t_us);

/// Minimum eigenvalue of the Choi matrix sum_mn M_mn |mm><nn| of a diagonal map.
double choi_min_eigenvalue(const Matrix& multipliers);

double choi_cptp_check(const SystemParams& p, double photon, double t_us);

}  // namespace dispmap
