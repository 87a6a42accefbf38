#pragma once

#include <dispmap/units.hpp>

namespace dispmap {

/// Model frequencies in MHz (cyclic) plus Fock truncations.
struct SystemParams {
  double delta_ad = 0.0;
  double delta_cd = 0.0;
  double alpha_a = 0.0;
  double chi_ac = 0.0;  ///< half of the full dispersive shift
  double kappa_c = 0.0;
  int n_a = 2;
  int n_c = 2;
};

/// Throws DomainError on negative kappa, truncations below 2 or non-finite frequencies.
void validate(const SystemParams& p);

enum class PulseKind { Constant, SquareGaussian };

class PulseSpec {
 public:
  static PulseSpec constant(double omega_c_mhz);
  /// Requires 0 < tau_r <= tau_p / 2 and sigma_r > 0 (all ns).
  static PulseSpec square_gaussian(double omega_c_mhz, double tau_p_ns, double tau_r_ns,
                                   double sigma_r_ns);

  PulseKind kind() const noexcept { return kind_; }
  double omega_c() const noexcept { return omega_c_; }
  double tau_p() const noexcept { return tau_p_; }
  double tau_r() const noexcept { return tau_r_; }
  double sigma_r() const noexcept { return sigma_r_; }

  /// Drive amplitude Omega_c * envelope(t) in MHz.
  double amplitude(double t_ns) const;
  /// k-th time derivative of the amplitude, MHz/ns^k.
  double amplitude_derivative(double t_ns, int order) const;

 private:
  PulseSpec() = default;
  PulseKind kind_ = PulseKind::Constant;
  double omega_c_ = 0.0;
  double tau_p_ = 0.0;
  double tau_r_ = 0.0;
  double sigma_r_ = 0.0;
};

/// Envelope in [0, 1]. Square-Gaussian pulses vanish outside [0, tau_p]; the
/// constant pulse is a step switched on at t = 0.
double sg_envelope(double t_ns, const PulseSpec& p);

/// Analytic derivative of the envelope, order 1..3, per ns^order.
double envelope_derivatives(double t_ns, const PulseSpec& p, int order);

/// Qubit-state-dependent complex resonator detunings (MHz).
struct LevelDetuning {
  int n_al = 0;
  int n_ar = 0;
  Complex value_l;
  Complex value_r;
};

Complex detuning_left(const SystemParams& p, int n);
Complex detuning_right(const SystemParams& p, int n);
LevelDetuning level_detuning(const SystemParams& p, int n_al, int n_ar);

/// Stark shift and measurement-induced dephasing rate, both MHz.
struct RatePair {
  double stark = 0.0;
  double dephasing = 0.0;
};

/// |chi * Omega| over the product of the ground and excited detuning moduli.
/// Values at or above 1 mean the perturbative expansion is unreliable.
double validity_margin(const SystemParams& p, double omega_c_mhz);

}  // namespace dispmap
