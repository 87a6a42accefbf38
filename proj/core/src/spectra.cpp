#include <dispmap/error.hpp>
#include <dispmap/parallel.hpp>
#include <dispmap/response.hpp>
#include <dispmap/spectra.hpp>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <cmath>
#include <string>

namespace dispmap {

namespace {

// Index sets of the connected components of the sparsity graph of m.
std::vector<std::vector<Eigen::Index>> blocks(const Matrix& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && m(i, j) != 0.0) parent[root(i)] = root(j);
    }
  }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<std::ptrdiff_t> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

void zgeev(Matrix& a, Vector& w, Matrix& vr, const Matrix& m) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::complex<double> dummy;
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, w.data(),
                                        &dummy, 1, vr.data(), n);
  if (info != 0) {
    throw NumericError("zgeev failed to converge (info = " + std::to_string(info) +
                       ", ||M||_F = " + std::to_string(m.norm()) +
                       ", max |M_ij| = " + std::to_string(m.cwiseAbs().maxCoeff()) + ")");
  }
}

}  // namespace

EigenSet eigendecompose(const Matrix& m, bool check_residuals) {
  if (m.rows() != m.cols()) throw DomainError("eigendecompose needs a square matrix");
  if (!m.allFinite()) throw DomainError("eigendecompose input has non-finite entries");
  const Eigen::Index n = m.rows();
  EigenSet out;
  out.matrix_norm = m.norm();
  if (n == 0) return out;

  // Invariant blocks are solved separately, each shifted by its mean diagonal, so a large
  // block-constant offset does not inflate the rounding error of the small eigenvalues.
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  out.eigenvectors = Matrix::Zero(n, n);
  Eigen::Index col = 0;
  for (const auto& idx : blocks(m)) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix a(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index i = 0; i < k; ++i) a(i, j) = m(idx[i], idx[j]);
    }
    const Complex shift = a.trace() / static_cast<double>(k);
    a.diagonal().array() -= shift;
    Vector w(k);
    Matrix vr(k, k);
    zgeev(a, w, vr, m);
    for (Eigen::Index j = 0; j < k; ++j, ++col) {
      out.eigenvalues.push_back(w[j] + shift);
      for (Eigen::Index i = 0; i < k; ++i) out.eigenvectors(idx[i], col) = vr(i, j);
      out.eigenvectors.col(col).normalize();
    }
  }

  if (check_residuals) {
    const Matrix mv = m * out.eigenvectors;
    out.residuals.resize(n);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      out.residuals[j] = (mv.col(j) - out.eigenvalues[j] * out.eigenvectors.col(j)).norm();
      worst = std::max(worst, out.residuals[j]);
    }
    if (worst > 1e-8 * std::max(out.matrix_norm, 1e-300)) {
      throw NumericError("eigenpair residual " + std::to_string(worst) +
                         " exceeds 1e-8 * ||M|| = " + std::to_string(1e-8 * out.matrix_norm));
    }
  }
  return out;
}

EigenSet eigendecompose(const ExtendedOperator& m, bool check_residuals) {
  return eigendecompose(m.data, check_residuals);
}

double overlap(const Vector& u, const Vector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::abs(u.dot(v)) / (nu * nv);
}

Selection select_by_overlap(const EigenSet& set, const Vector& reference) {
  Selection best;
  const double nr = reference.norm();
  if (nr == 0.0) return best;
  const Eigen::VectorXcd proj = set.eigenvectors.adjoint() * reference;
  for (Eigen::Index j = 0; j < proj.size(); ++j) {
    const double o = std::abs(proj[j]) / (nr * set.eigenvectors.col(j).norm());
    if (o > best.overlap) best = {j, o};
  }
  return best;
}

namespace {

struct Step {
  Complex value;
  Vector vector;
  double overlap = 0.0;
};

Step follow(const EigenSet& set, const Vector& previous) {
  const Selection s = select_by_overlap(set, previous);
  return {set.eigenvalues[static_cast<std::size_t>(s.column)], set.eigenvectors.col(s.column),
          s.overlap};
}

// Moves the tracked vector from omega_a to omega_b, bisecting when the overlap slips.
Step advance(const SystemParams& p, const Vector& previous, double omega_a, double omega_b,
             const EigenSet* at_b, int depth, const TrackOptions& opts) {
  EigenSet local;
  if (at_b == nullptr) {
    local = eigendecompose(build_extended_hamiltonian(p, omega_b), opts.check_residuals);
    at_b = &local;
  }
  Step s = follow(*at_b, previous);
  if (s.overlap > opts.overlap_threshold) return s;
  if (depth >= opts.max_refinements) {
    throw TrackingLostError("coherence tracking lost at Omega_c = " + std::to_string(omega_b) +
                                " MHz (max overlap " + std::to_string(s.overlap) + ")",
                            omega_b);
  }
  const double mid = 0.5 * (omega_a + omega_b);
  const Step half = advance(p, previous, omega_a, mid, nullptr, depth + 1, opts);
  return advance(p, half.vector, mid, omega_b, at_b, depth + 1, opts);
}

}  // namespace

CoherenceTrack track_coherence(const SystemParams& p, const std::vector<double>& grid,
                               const TrackOptions& opts) {
  validate(p);
  if (grid.empty() || grid.front() != 0.0) {
    throw DomainError("coherence tracking grid must start at Omega_c = 0");
  }
  CoherenceTrack tr;
  tr.omega_c = grid;

  const ExtendedOperator h0 = build_extended_hamiltonian(p, 0.0);
  const Eigen::Index start = doubled_index(p, 1, 0, 0, 0);
  Vector v = Vector::Zero(h0.dim());
  v[start] = 1.0;
  tr.eigenvalue.push_back(h0.data(start, start));
  tr.overlap.push_back(1.0);
  tr.eigenvector.push_back(v);

  const std::vector<EigenSet> sets = parallel_map(grid.size() - 1, opts.threads, [&](std::size_t i) {
    return eigendecompose(build_extended_hamiltonian(p, grid[i + 1]), opts.check_residuals);
  });
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Step s = advance(p, tr.eigenvector.back(), grid[i - 1], grid[i], &sets[i - 1], 0, opts);
    tr.eigenvalue.push_back(s.value);
    tr.overlap.push_back(s.overlap);
    tr.eigenvector.push_back(s.vector);
  }
  for (double w : grid) {
    tr.photons.push_back(p.kappa_c > 0.0 || p.delta_cd != 0.0 ? steady_state(p, w).photons : 0.0);
  }
  return tr;
}

std::vector<RatePair> extract_rates(const CoherenceTrack& track, const SystemParams& p) {
  std::vector<RatePair> out;
  out.reserve(track.eigenvalue.size());
  for (std::size_t i = 0; i < track.eigenvalue.size(); ++i) {
    if (track.overlap[i] <= 0.5) {
      throw TrackingLostError("invalid coherence track", track.omega_c[i]);
    }
    out.push_back({track.eigenvalue[i].real() - p.delta_ad, -track.eigenvalue[i].imag()});
  }
  return out;
}

}  // namespace dispmap
