#include <dispmap/error.hpp>
#include <dispmap/liouville.hpp>

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <string>

namespace dispmap {

VectorizedState VectorizedState::from_density(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw DomainError("density matrix must be square");
  const Eigen::Index n = rho.rows();
  VectorizedState s;
  s.single_dim = n;
  s.coeffs.resize(n * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) s.coeffs[m * n + k] = rho(m, k);
  }
  return s;
}

Matrix VectorizedState::density() const {
  const Eigen::Index n = single_dim;
  Matrix rho(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) rho(m, k) = coeffs[m * n + k];
  }
  return rho;
}

Complex VectorizedState::trace() const {
  Complex t = 0.0;
  for (Eigen::Index m = 0; m < single_dim; ++m) t += coeffs[m * single_dim + m];
  return t;
}

double VectorizedState::hermiticity_defect() const {
  const Eigen::Index n = single_dim;
  double worst = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = m; k < n; ++k) {
      worst = std::max(worst, std::abs(coeffs[m * n + k] - std::conj(coeffs[k * n + m])));
    }
  }
  return worst;
}

Matrix annihilation(int levels) {
  if (levels < 1) throw DomainError("annihilation operator needs at least one level");
  Matrix a = Matrix::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void check_dims(const SystemParams& p) {
  if (p.n_a < 2 || p.n_c < 2) {
    throw DomainError("doubled space needs n_a >= 2 and n_c >= 2, got n_a = " +
                      std::to_string(p.n_a) + ", n_c = " + std::to_string(p.n_c));
  }
}

}  // namespace

Matrix system_hamiltonian(const SystemParams& p, double omega_c) {
  check_dims(p);
  const Matrix a = kron(annihilation(p.n_a), Matrix::Identity(p.n_c, p.n_c));
  const Matrix c = kron(Matrix::Identity(p.n_a, p.n_a), annihilation(p.n_c));
  const Matrix ad = a.adjoint();
  const Matrix cd = c.adjoint();
  const Matrix na = ad * a;
  const Matrix nc = cd * c;
  return p.delta_ad * na + 0.5 * p.alpha_a * ad * ad * a * a + p.delta_cd * nc +
         2.0 * p.chi_ac * na * nc + 0.5 * omega_c * (c + cd);
}

Matrix resonator_lowering(const SystemParams& p) {
  check_dims(p);
  return kron(Matrix::Identity(p.n_a, p.n_a), annihilation(p.n_c));
}

ExtendedOperator extended_hamiltonian(const Matrix& h, const std::vector<CollapseTerm>& collapses) {
  if (h.rows() != h.cols()) throw DomainError("Hamiltonian must be square");
  const Eigen::Index n = h.rows();
  const Matrix id = Matrix::Identity(n, n);
  ExtendedOperator out;
  out.single_dim = n;
  out.data = kron(h, id) - kron(id, h.conjugate());
  for (const auto& term : collapses) {
    if (term.op.rows() != n || term.op.cols() != n) {
      throw DomainError("collapse operator dimension does not match the Hamiltonian");
    }
    if (term.rate < 0.0) throw DomainError("collapse rate must be non-negative");
    const Matrix cdc = term.op.adjoint() * term.op;
    out.data += kI * term.rate *
                (kron(term.op, term.op.conjugate()) - 0.5 * kron(cdc, id) -
                 0.5 * kron(id, cdc.conjugate()));
  }
  return out;
}

ExtendedOperator build_extended_hamiltonian(const SystemParams& p, double omega_c) {
  validate(p);
  return extended_hamiltonian(system_hamiltonian(p, omega_c),
                              {CollapseTerm{p.kappa_c, resonator_lowering(p)}});
}

ExtendedOperator extended_drive_operator(const SystemParams& p) {
  const Matrix c = resonator_lowering(p);
  const Matrix x = 0.5 * (c + c.adjoint());
  return extended_hamiltonian(x, {});
}

ExtendedOperator build_superoperator(const Matrix& h, const std::vector<CollapseTerm>& collapses) {
  if (h.rows() != h.cols()) throw DomainError("Hamiltonian must be square");
  const Eigen::Index n = h.rows();
  for (const auto& term : collapses) {
    if (term.op.rows() != n || term.op.cols() != n) {
      throw DomainError("collapse operator dimension does not match the Hamiltonian");
    }
    if (term.rate < 0.0) throw DomainError("collapse rate must be non-negative");
  }
  std::vector<Matrix> cdc;
  for (const auto& term : collapses) cdc.push_back(term.op.adjoint() * term.op);

  // d rho_mn / dt = sum_pq L_{(m,n),(p,q)} rho_pq, read off from
  // -i[H, rho] + sum_j gamma_j (C rho C^+ - {C^+ C, rho} / 2), times 2pi for rad/us.
  ExtendedOperator out;
  out.single_dim = n;
  out.data = Matrix::Zero(n * n, n * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index row = m * n + k;
      for (Eigen::Index pp = 0; pp < n; ++pp) {
        for (Eigen::Index q = 0; q < n; ++q) {
          Complex v = 0.0;
          if (k == q) v += -kI * h(m, pp);
          if (m == pp) v += kI * h(q, k);
          for (std::size_t j = 0; j < collapses.size(); ++j) {
            const Matrix& c = collapses[j].op;
            Complex d = c(m, pp) * std::conj(c(k, q));
            if (k == q) d -= 0.5 * cdc[j](m, pp);
            if (m == pp) d -= 0.5 * cdc[j](q, k);
            v += collapses[j].rate * d;
          }
          out.data(row, pp * n + q) = kTwoPi * v;
        }
      }
    }
  }
  return out;
}

Eigen::Index doubled_index(const SystemParams& p, int n_al, int n_cl, int n_ar, int n_cr) {
  const Eigen::Index n = static_cast<Eigen::Index>(p.n_a) * p.n_c;
  return (static_cast<Eigen::Index>(n_al) * p.n_c + n_cl) * n + n_ar * p.n_c + n_cr;
}

double propagation_max_dt(const SystemParams& p, const PulseSpec& pulse) {
  const ExtendedOperator h = build_extended_hamiltonian(p, pulse.omega_c());
  const double scale = kRadPerNsPerMHz * h.data.cwiseAbs().maxCoeff();
  return scale > 0.0 ? 0.05 / scale : 1e300;
}

PropagationResult propagate(const VectorizedState& state0, const SystemParams& p,
                            const PulseSpec& pulse, double t_end, double dt,
                            const PropagationOptions& opts) {
  validate(p);
  const Eigen::Index n = static_cast<Eigen::Index>(p.n_a) * p.n_c;
  if (state0.single_dim != n || state0.coeffs.size() != n * n) {
    throw DomainError("initial state dimension does not match the model truncation");
  }
  if (!(dt > 0.0)) throw StepSizeError("dt must be positive");
  const double bound = propagation_max_dt(p, pulse);
  if (dt > bound * (1.0 + 1e-12)) {
    throw StepSizeError("dt = " + std::to_string(dt) + " ns exceeds the stability bound " +
                        std::to_string(bound) + " ns");
  }

  using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
  const Complex scale = -kI * kRadPerNsPerMHz;
  const Sparse k0 = (scale * build_extended_hamiltonian(p, 0.0).data).sparseView(1.0, 1e-300);
  const Sparse k1 = (scale * extended_drive_operator(p).data).sparseView(1.0, 1e-300);

  const auto steps = static_cast<long long>(std::llround(t_end / dt));
  long long stride = 1;
  if (opts.record_every_ns > 0.0) {
    stride = std::max(1LL, static_cast<long long>(std::llround(opts.record_every_ns / dt)));
  }

  PropagationResult res;
  const Complex tr0 = state0.trace();
  VectorizedState s = state0;
  auto record = [&](double t) {
    const double drift = std::abs(s.trace() - tr0);
    res.max_trace_drift = std::max(res.max_trace_drift, drift);
    if (drift > opts.trace_tolerance) {
      throw AccuracyError("trace drift " + std::to_string(drift) + " at t = " +
                          std::to_string(t) + " ns exceeds tolerance; reduce dt");
    }
    if (opts.check_hermiticity) {
      res.max_hermiticity_defect = std::max(res.max_hermiticity_defect, s.hermiticity_defect());
    }
    res.times.push_back(t);
    res.states.push_back(s);
  };

  Vector y = s.coeffs;
  Vector k_1(y.size()), k_2(y.size()), k_3(y.size()), k_4(y.size()), tmp(y.size());
  auto rhs = [&](double t, const Vector& x, Vector& out) {
    out.noalias() = k0 * x;
    const double w = pulse.amplitude(t);
    if (w != 0.0) out.noalias() += w * (k1 * x);
  };

  record(0.0);
  for (long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    rhs(t, y, k_1);
    tmp = y + 0.5 * dt * k_1;
    rhs(t + 0.5 * dt, tmp, k_2);
    tmp = y + 0.5 * dt * k_2;
    rhs(t + 0.5 * dt, tmp, k_3);
    tmp = y + dt * k_3;
    rhs(t + dt, tmp, k_4);
    y += dt / 6.0 * (k_1 + 2.0 * k_2 + 2.0 * k_3 + k_4);
    if ((i + 1) % stride == 0 || i + 1 == steps) {
      s.coeffs = y;
      record(static_cast<double>(i + 1) * dt);
    }
  }
  return res;
}

}  // namespace dispmap
