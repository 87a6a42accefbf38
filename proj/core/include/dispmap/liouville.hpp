#pragma once

#include <dispmap/model.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace dispmap {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Operator over the doubled space |n_al, n_cl> (x) |n_ar, n_cr>, row-major:
/// index = (n_al * n_c + n_cl) * N + (n_ar * n_c + n_cr) with N = n_a * n_c.
/// Entries are in MHz for extended Hamiltonians and in rad/us for superoperators.
struct ExtendedOperator {
  Eigen::Index single_dim = 0;
  Matrix data;

  Eigen::Index dim() const noexcept { return data.rows(); }
};

/// Vectorized density matrix: coefficient (m, n) sits at m * N + n.
struct VectorizedState {
  Eigen::Index single_dim = 0;
  Vector coeffs;

  static VectorizedState from_density(const Matrix& rho);
  Matrix density() const;
  Complex trace() const;
  /// max |rho - rho^dagger|
  double hermiticity_defect() const;
};

struct CollapseTerm {
  double rate = 0.0;  ///< MHz
  Matrix op;
};

/// Truncated bosonic annihilation operator.
Matrix annihilation(int levels);
Matrix kron(const Matrix& a, const Matrix& b);

/// Single-copy system plus drive Hamiltonian (MHz) on |n_a, n_c>, index n_a * n_c + n_c.
Matrix system_hamiltonian(const SystemParams& p, double omega_c_mhz);

/// Single-copy resonator annihilation operator embedded as I_a (x) c.
Matrix resonator_lowering(const SystemParams& p);

/// H_u = H_l - H_r + i sum_j gamma_j (C_l C_r - C_l^+ C_l / 2 - C_r^+ C_r / 2), with
/// O_l = O (x) I and O_r = I (x) O^*.
ExtendedOperator extended_hamiltonian(const Matrix& h, const std::vector<CollapseTerm>& collapses);

/// Extended Hamiltonian of the dispersive Kerr model with resonator decay.
ExtendedOperator build_extended_hamiltonian(const SystemParams& p, double omega_c_mhz);

/// Drive part of H_u per unit Omega_c: (c + c^+)_l / 2 - (c + c^+)_r / 2.
ExtendedOperator extended_drive_operator(const SystemParams& p);

/// Lindblad superoperator in rad/us assembled entry by entry from the master equation.
ExtendedOperator build_superoperator(const Matrix& h, const std::vector<CollapseTerm>& collapses);

struct PropagationOptions {
  double record_every_ns = 0.0;  ///< 0 records every step
  double trace_tolerance = 1e-6;
  bool check_hermiticity = true;
};

struct PropagationResult {
  std::vector<double> times;
  std::vector<VectorizedState> states;
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
};

/// Largest dt accepted by propagate: 0.05 over the largest |entry| of 2pi H_u in rad/ns.
double propagation_max_dt(const SystemParams& p, const PulseSpec& pulse);

/// RK4 integration of d|rho>/dt = -i 2pi H_u(t) |rho>, drive envelope evaluated per substep.
PropagationResult propagate(const VectorizedState& state0, const SystemParams& p,
                            const PulseSpec& pulse, double t_end_ns, double dt_ns,
                            const PropagationOptions& opts = {});

/// Basis index of |n_al, n_cl> (x) |n_ar, n_cr>.
Eigen::Index doubled_index(const SystemParams& p, int n_al, int n_cl, int n_ar, int n_cr);

}  // namespace dispmap
