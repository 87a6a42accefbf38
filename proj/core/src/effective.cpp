#include <dispmap/effective.hpp>
#include <dispmap/error.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace dispmap {

namespace {

void check_photon(double photon) {
  if (!(photon >= 0.0)) throw DomainError("photon number must be non-negative");
}

Complex nonzero(Complex d, const char* what) {
  if (d == 0.0) throw SingularityError(std::string("vanishing detuning in ") + what);
  return d;
}

double shifted_norm(const SystemParams& p, int n) {
  const double e = p.delta_cd + 2.0 * p.chi_ac * n;
  return e * e + 0.25 * p.kappa_c * p.kappa_c;
}

}  // namespace

Correlations adiabatic_correlations(const SystemParams& p, int n_al, int n_ar, double photon) {
  check_photon(photon);
  const Complex dl = nonzero(detuning_left(p, n_al), "A_ll");
  const Complex dr = nonzero(detuning_right(p, n_ar), "A_rr");
  const Complex cross = 1.5 * photon / (dl * dr);
  return {photon / dl, photon / dr, cross, cross};
}

EffectiveSpectrumEntry effective_spectrum(const SystemParams& p, int n_al, int n_ar,
                                          double photon) {
  check_photon(photon);
  const double k2 = 0.25 * p.kappa_c * p.kappa_c;
  const double g = p.delta_cd * p.delta_cd + k2;
  const double den = shifted_norm(p, n_al) * shifted_norm(p, n_ar);
  if (den == 0.0) throw SingularityError("effective spectrum denominator vanishes");
  const double dn = static_cast<double>(n_al - n_ar);
  const double el = p.delta_cd + 2.0 * p.chi_ac * n_al;
  const double er = p.delta_cd + 2.0 * p.chi_ac * n_ar;
  const double re = 2.0 * p.chi_ac * g * (el * er + k2) * dn * photon / den;
  const double im = -2.0 * p.chi_ac * p.chi_ac * p.kappa_c * g * dn * dn * photon / den;
  return {n_al, n_ar, {re, im}};
}

RatePair rates(const SystemParams& p, double photon) {
  check_photon(photon);
  const double e = p.delta_cd + 2.0 * p.chi_ac;
  const double den = shifted_norm(p, 1);
  if (den == 0.0) throw SingularityError("rate denominator vanishes");
  const double chi2 = p.chi_ac * p.chi_ac;
  return {(2.0 * p.chi_ac - 4.0 * chi2 * e / den) * photon,
          2.0 * chi2 * p.kappa_c * photon / den};
}

double second_order_stark(const SystemParams& p, double photon) {
  check_photon(photon);
  const double den = shifted_norm(p, 1);
  if (den == 0.0) throw SingularityError("rate denominator vanishes");
  return -4.0 * p.chi_ac * p.chi_ac * (p.delta_cd + 2.0 * p.chi_ac) * photon / den;
}

double dephasing_from_stark(const SystemParams& p, double photon) {
  const double e = nonzero(p.delta_cd + 2.0 * p.chi_ac, "dephasing_from_stark").real();
  return -0.5 * (p.kappa_c / e) * second_order_stark(p, photon);
}

double excited_photons(const SystemParams& p, double omega_c) {
  const double den = shifted_norm(p, 1);
  if (den == 0.0) throw SingularityError("excited photon number undefined at resonance");
  return 0.25 * omega_c * omega_c / den;
}

double gambetta_rates(const SystemParams& p, double omega_c) {
  if (!(p.kappa_c > 0.0)) throw DomainError("gambetta_rates requires kappa_c > 0");
  const double k2 = 0.25 * p.kappa_c * p.kappa_c;
  const double d = p.delta_cd;
  const double x = p.chi_ac;
  const double drive = 0.25 * omega_c * omega_c;
  const double n_plus = drive / ((d + x) * (d + x) + k2);
  const double n_minus = drive / ((d - x) * (d - x) + k2);
  return x * x * p.kappa_c * (n_plus + n_minus) / (d * d + x * x + k2);
}

EffectiveLindblad effective_lindblad(const SystemParams& p, double photon) {
  check_photon(photon);
  EffectiveLindblad out;
  const double chi2 = p.chi_ac * p.chi_ac;
  const double amp = std::sqrt(4.0 * chi2 * p.kappa_c * photon);
  for (int n = 0; n < p.n_a; ++n) {
    const double e = p.delta_cd + 2.0 * p.chi_ac * n;
    const double den = shifted_norm(p, n);
    const double nn = static_cast<double>(n);
    if (n == 0) {
      out.h_values.push_back(0.0);
      out.c_values.push_back(0.0);
      continue;
    }
    if (den == 0.0) throw SingularityError("effective Lindblad denominator vanishes");
    out.h_values.push_back(2.0 * p.chi_ac * photon * nn - 4.0 * chi2 * photon * e * nn * nn / den);
    out.c_values.push_back(amp * nn / detuning_left(p, n));
  }
  return out;
}

namespace {

Matrix spectrum_matrix(const SystemParams& p, double photon) {
  Matrix e(p.n_a, p.n_a);
  for (int m = 0; m < p.n_a; ++m) {
    for (int n = 0; n < p.n_a; ++n) e(m, n) = effective_spectrum(p, m, n, photon).value;
  }
  return e;
}

}  // namespace

std::vector<Matrix> effective_map_apply(const Matrix& rho0, const SystemParams& p,
                                        const std::vector<double>& photon_series,
                                        const std::vector<double>& t_grid) {
  validate(p);
  if (rho0.rows() != p.n_a || rho0.cols() != p.n_a) {
    throw DomainError("rho0 must be n_a x n_a");
  }
  const double scale = std::max(1.0, rho0.cwiseAbs().maxCoeff());
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("rho0 must be Hermitian");
  }
  if (std::abs(rho0.trace() - 1.0) > 1e-10) throw DomainError("rho0 must have unit trace");
  if (photon_series.size() != t_grid.size()) {
    throw DomainError("photon series and time grid differ in length");
  }

  // E is linear in the photon number, so the phase integral reduces to int |eta|^2 dt.
  const Matrix e1 = spectrum_matrix(p, 1.0);
  std::vector<Matrix> out;
  out.reserve(t_grid.size());
  double integral_us = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (photon_series[i] < 0.0) throw DomainError("photon number must be non-negative");
    if (i > 0) {
      integral_us += 0.5 * (photon_series[i] + photon_series[i - 1]) *
                     ns_to_us(t_grid[i] - t_grid[i - 1]);
    }
    Matrix rho = rho0;
    for (int m = 0; m < p.n_a; ++m) {
      for (int n = 0; n < p.n_a; ++n) {
        if (m != n) rho(m, n) *= std::exp(-kI * kTwoPi * e1(m, n) * integral_us);
      }
    }
    out.push_back(std::move(rho));
  }
  return out;
}

Matrix map_multipliers(const SystemParams& p, double photon, double t_us) {
  validate(p);
  if (!(t_us >= 0.0)) throw DomainError("t must be non-negative");
  const Matrix e = spectrum_matrix(p, photon);
  Matrix m(p.n_a, p.n_a);
  for (int a = 0; a < p.n_a; ++a) {
    for (int b = 0; b < p.n_a; ++b) m(a, b) = std::exp(-kI * kTwoPi * e(a, b) * t_us);
  }
  return m;
}

double choi_min_eigenvalue(const Matrix& mult) {
  if (mult.rows() != mult.cols()) throw DomainError("multiplier matrix must be square");
  const Eigen::Index n = mult.rows();
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) choi(m * n + m, k * n + k) = mult(m, k);
  }
  // The Choi matrix of a Hermiticity-preserving map is Hermitian; symmetrize round-off only.
  const Matrix herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("Choi eigenproblem failed");
  return solver.eigenvalues().minCoeff();
}

double choi_cptp_check(const SystemParams& p, double photon, double t_us) {
  return choi_min_eigenvalue(map_multipliers(p, photon, t_us));
}

}  // namespace dispmap
