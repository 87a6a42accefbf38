#pragma once

#include <dispmap/liouville.hpp>
#include <dispmap/spectra.hpp>
#include <dispmap/transient.hpp>

namespace dispmap {

/// Perturbative eigenvector of H_u for qubit labels (n_al, n_ar) in {0,1}^2 built from
/// coherent states |eta> (left) and |eta*> (right) with polynomial corrections in
/// (c_l^+ - eta*) and (c_r^+ - eta) up to the given order.
struct PerturbativeEigenstate {
  LevelPair labels;
  int order = 0;
  Complex eta;
  VectorizedState vector;  ///< unit norm
};

/// Coherent-state amplitudes e^{-|a|^2/2} a^k / sqrt(k!) for k < levels.
Vector coherent_state(Complex alpha, int levels);

PerturbativeEigenstate perturbative_eigenstate(LevelPair labels, const SystemParams& p,
                                               Complex eta, int order);

struct FidelityReport {
  double infidelity = 0.0;  ///< 1 - |<psi_pert|psi_exact>|^2
  double residual_norm = 0.0;  ///< ||H_u v - lambda v|| / ||v||, lambda from the effective spectrum
  Complex exact_eigenvalue;
  double overlap = 0.0;
};

/// Compares against the exact eigenvector of H_u(omega_c) with maximal overlap.
FidelityReport eigenstate_fidelity(const PerturbativeEigenstate& state, const SystemParams& p,
                                   double omega_c_mhz);

/// Same, reusing a decomposition of H_u(omega_c).
FidelityReport eigenstate_fidelity(const PerturbativeEigenstate& state, const SystemParams& p,
                                   double omega_c_mhz, const ExtendedOperator& h,
                                   const EigenSet& exact);

}  // namespace dispmap
