#pragma once

#include <dispmap/liouville.hpp>
#include <dispmap/model.hpp>

#include <vector>

namespace dispmap {

struct EigenSet {
  std::vector<Complex> eigenvalues;
  Matrix eigenvectors;  ///< unit-norm columns matching eigenvalues
  std::vector<double> residuals;  ///< ||M v - lambda v||, empty when not requested
  double matrix_norm = 0.0;  ///< Frobenius norm of the input
};

/// Full spectrum of a general complex matrix. LAPACK zgeev (balancing, Hessenberg
/// reduction, shifted QR). Residuals are verified against 1e-8 * ||M|| when requested.
EigenSet eigendecompose(const Matrix& m, bool check_residuals = true);
EigenSet eigendecompose(const ExtendedOperator& m, bool check_residuals = true);

/// |<u|v>| / (||u|| ||v||)
double overlap(const Vector& u, const Vector& v);

struct Selection {
  Eigen::Index column = -1;
  double overlap = 0.0;
};

/// Eigenvector with the largest normalized overlap with `reference`.
Selection select_by_overlap(const EigenSet& set, const Vector& reference);

struct TrackOptions {
  double overlap_threshold = 0.5;
  int max_refinements = 6;  ///< bisection depth between grid points when tracking slips
  unsigned threads = 1;
  bool check_residuals = true;
};

struct CoherenceTrack {
  std::vector<double> omega_c;
  std::vector<double> photons;  ///< steady-state photon number per grid point
  std::vector<Complex> eigenvalue;  ///< MHz
  std::vector<double> overlap;  ///< with the previous tracked vector (1 at the origin)
  std::vector<Vector> eigenvector;
};

/// Follows the eigenvalue that starts at the |1_al 0_cl 0_ar 0_cr> coherence for Omega_c = 0.
/// The grid must start at 0 and be monotone.
CoherenceTrack track_coherence(const SystemParams& p, const std::vector<double>& omega_c_grid,
                               const TrackOptions& opts = {});

/// Delta_S = Re E - Delta_ad and gamma_phi = -Im E per grid point.
std::vector<RatePair> extract_rates(const CoherenceTrack& track, const SystemParams& p);

}  // namespace dispmap
