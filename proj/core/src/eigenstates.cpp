#include <dispmap/effective.hpp>
#include <dispmap/eigenstates.hpp>
#include <dispmap/error.hpp>
#include <dispmap/response.hpp>

#include <cmath>
#include <string>

namespace dispmap {

Vector coherent_state(Complex alpha, int levels) {
  Vector v(levels);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < levels; ++k) {
    v[k] = term;
    term *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return v;
}

namespace {

// (c^+ - beta)^p applied to v for p = 0..order.
std::vector<Vector> raised(const Vector& v, Complex beta, int order) {
  const Eigen::Index n = v.size();
  const Matrix shift = annihilation(static_cast<int>(n)).adjoint() - beta * Matrix::Identity(n, n);
  std::vector<Vector> out{v};
  for (int k = 1; k <= order; ++k) out.push_back(shift * out.back());
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

PerturbativeEigenstate perturbative_eigenstate(LevelPair labels, const SystemParams& p,
                                               Complex eta, int order) {
  validate(p);
  if (labels.n_al < 0 || labels.n_al > 1 || labels.n_ar < 0 || labels.n_ar > 1) {
    throw DomainError("eigenstate labels must be in {0, 1}");
  }
  if (order < 0 || order > 2) {
    throw UnsupportedOrderError("eigenstate order must be 0..2, got " + std::to_string(order));
  }
  if (std::norm(eta) >= 0.25 * p.n_c) {
    throw TruncationError("|eta|^2 = " + std::to_string(std::norm(eta)) +
                          " needs more than n_c = " + std::to_string(p.n_c) + " resonator levels");
  }
  const Complex kl = 2.0 * p.chi_ac * eta / detuning_left(p, 1);
  const Complex kr = 2.0 * p.chi_ac * std::conj(eta) / detuning_right(p, 1);
  const int max_l = labels.n_al == 1 ? order : 0;
  const int max_r = labels.n_ar == 1 ? order : 0;
  const std::vector<Vector> left = raised(coherent_state(eta, p.n_c), std::conj(eta), max_l);
  const std::vector<Vector> right = raised(coherent_state(std::conj(eta), p.n_c), eta, max_r);

  const Eigen::Index nc = p.n_c;
  const Eigen::Index n = static_cast<Eigen::Index>(p.n_a) * nc;
  Vector full = Vector::Zero(n * n);
  for (int a = 0; a <= max_l; ++a) {
    for (int b = 0; a + b <= order && b <= max_r; ++b) {
      const Complex coef = std::pow(-kl, a) / factorial(a) * std::pow(-kr, b) / factorial(b);
      for (Eigen::Index i = 0; i < nc; ++i) {
        for (Eigen::Index j = 0; j < nc; ++j) {
          full[doubled_index(p, labels.n_al, static_cast<int>(i), labels.n_ar, static_cast<int>(j))] +=
              coef * left[a][i] * right[b][j];
        }
      }
    }
  }
  full.normalize();
  PerturbativeEigenstate s;
  s.labels = labels;
  s.order = order;
  s.eta = eta;
  s.vector.single_dim = n;
  s.vector.coeffs = std::move(full);
  return s;
}

FidelityReport eigenstate_fidelity(const PerturbativeEigenstate& state, const SystemParams& p,
                                   double omega_c, const ExtendedOperator& h,
                                   const EigenSet& exact) {
  const SteadyState ss = steady_state(p, omega_c);
  if (std::abs(ss.eta_ss - state.eta) > 1e-9 * (1.0 + std::abs(ss.eta_ss))) {
    throw DomainError("eigenstate eta does not match the steady state of omega_c");
  }
  const Vector& psi = state.vector.coeffs;
  if (psi.size() != h.dim()) throw DomainError("eigenstate and H_u dimensions differ");
  const Selection sel = select_by_overlap(exact, psi);
  if (sel.overlap <= 0.5) {
    throw TrackingLostError("no exact eigenvector overlaps the perturbative state (max " +
                                std::to_string(sel.overlap) + ")",
                            omega_c);
  }
  const Vector v = exact.eigenvectors.col(sel.column).normalized();
  const Complex proj = psi.dot(v);
  FidelityReport r;
  r.overlap = std::abs(proj);
  r.infidelity = (v - proj * psi).squaredNorm();
  r.exact_eigenvalue = exact.eigenvalues[static_cast<std::size_t>(sel.column)];
  const double photon = std::norm(state.eta);
  const Complex lambda =
      p.delta_ad * (state.labels.n_al - state.labels.n_ar) +
      effective_spectrum(p, state.labels.n_al, state.labels.n_ar, photon).value;
  r.residual_norm = (h.data * psi - lambda * psi).norm() / psi.norm();
  return r;
}

FidelityReport eigenstate_fidelity(const PerturbativeEigenstate& state, const SystemParams& p,
                                   double omega_c) {
  const ExtendedOperator h = build_extended_hamiltonian(p, omega_c);
  return eigenstate_fidelity(state, p, omega_c, h, eigendecompose(h));
}

}  // namespace dispmap
