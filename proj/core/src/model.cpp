#include <dispmap/error.hpp>
#include <dispmap/model.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace dispmap {

void validate(const SystemParams& p) {
  const double f[] = {p.delta_ad, p.delta_cd, p.alpha_a, p.chi_ac, p.kappa_c};
  for (double v : f) {
    if (!std::isfinite(v)) throw DomainError("system parameters must be finite");
  }
  if (p.kappa_c < 0.0) throw DomainError("kappa_c must be non-negative");
  if (p.n_a < 2) throw DomainError("n_a must be at least 2, got " + std::to_string(p.n_a));
  if (p.n_c < 2) throw DomainError("n_c must be at least 2, got " + std::to_string(p.n_c));
}

PulseSpec PulseSpec::constant(double omega_c_mhz) {
  if (!std::isfinite(omega_c_mhz)) throw DomainError("drive amplitude must be finite");
  PulseSpec s;
  s.kind_ = PulseKind::Constant;
  s.omega_c_ = omega_c_mhz;
  return s;
}

PulseSpec PulseSpec::square_gaussian(double omega_c_mhz, double tau_p_ns, double tau_r_ns,
                                     double sigma_r_ns) {
  if (!std::isfinite(omega_c_mhz)) throw DomainError("drive amplitude must be finite");
  if (!(tau_r_ns > 0.0) || !(tau_r_ns <= 0.5 * tau_p_ns)) {
    throw DomainError("square-gaussian pulse requires 0 < tau_r <= tau_p / 2");
  }
  if (!(sigma_r_ns > 0.0)) throw DomainError("square-gaussian pulse requires sigma_r > 0");
  PulseSpec s;
  s.kind_ = PulseKind::SquareGaussian;
  s.omega_c_ = omega_c_mhz;
  s.tau_p_ = tau_p_ns;
  s.tau_r_ = tau_r_ns;
  s.sigma_r_ = sigma_r_ns;
  return s;
}

double PulseSpec::amplitude(double t_ns) const { return omega_c_ * sg_envelope(t_ns, *this); }

double PulseSpec::amplitude_derivative(double t_ns, int order) const {
  return omega_c_ * envelope_derivatives(t_ns, *this, order);
}

namespace {

// Offset from the Gaussian centre of the active ramp; on_ramp is false on the plateau.
struct RampPoint {
  bool on_ramp = false;
  double u = 0.0;
};

RampPoint ramp_point(double t, const PulseSpec& p) {
  if (t < p.tau_r()) return {true, t - p.tau_r()};
  if (t > p.tau_p() - p.tau_r()) return {true, t - (p.tau_p() - p.tau_r())};
  return {};
}

double ramp_norm(const PulseSpec& p) {
  const double s2 = p.sigma_r() * p.sigma_r();
  return -std::expm1(-p.tau_r() * p.tau_r() / (2.0 * s2));
}

}  // namespace

double sg_envelope(double t, const PulseSpec& p) {
  if (p.kind() == PulseKind::Constant) return t >= 0.0 ? 1.0 : 0.0;
  if (t < 0.0 || t > p.tau_p()) return 0.0;
  const RampPoint r = ramp_point(t, p);
  if (!r.on_ramp) return 1.0;
  const double s2 = p.sigma_r() * p.sigma_r();
  const double e0 = std::exp(-p.tau_r() * p.tau_r() / (2.0 * s2));
  const double v = (std::exp(-r.u * r.u / (2.0 * s2)) - e0) / ramp_norm(p);
  return std::clamp(v, 0.0, 1.0);
}

double envelope_derivatives(double t, const PulseSpec& p, int order) {
  if (order < 1 || order > 3) {
    throw UnsupportedOrderError("envelope derivative order must be 1..3, got " +
                                std::to_string(order));
  }
  if (p.kind() == PulseKind::Constant) return 0.0;
  if (t < 0.0 || t > p.tau_p()) return 0.0;
  const RampPoint r = ramp_point(t, p);
  if (!r.on_ramp) return 0.0;
  const double s2 = p.sigma_r() * p.sigma_r();
  const double u = r.u;
  const double g = std::exp(-u * u / (2.0 * s2)) / ramp_norm(p);
  switch (order) {
    case 1:
      return -u / s2 * g;
    case 2:
      return (u * u / (s2 * s2) - 1.0 / s2) * g;
    default:
      return (-u * u * u / (s2 * s2 * s2) + 3.0 * u / (s2 * s2)) * g;
  }
}

Complex detuning_left(const SystemParams& p, int n) {
  return {p.delta_cd + 2.0 * p.chi_ac * n, -0.5 * p.kappa_c};
}

Complex detuning_right(const SystemParams& p, int n) { return std::conj(detuning_left(p, n)); }

LevelDetuning level_detuning(const SystemParams& p, int n_al, int n_ar) {
  return {n_al, n_ar, detuning_left(p, n_al), detuning_right(p, n_ar)};
}

double validity_margin(const SystemParams& p, double omega_c_mhz) {
  const double k2 = 0.25 * p.kappa_c * p.kappa_c;
  const double e = p.delta_cd + 2.0 * p.chi_ac;
  const double rhs = std::sqrt(p.delta_cd * p.delta_cd + k2) * std::sqrt(e * e + k2);
  if (rhs == 0.0) throw SingularityError("validity margin undefined: degenerate detuning");
  return std::abs(p.chi_ac * omega_c_mhz) / rhs;
}

}  // namespace dispmap
