#pragma once

#include <dispmap/model.hpp>
#include <dispmap/response.hpp>

#include <vector>

namespace dispmap {

struct LevelPair {
  int n_al = 1;
  int n_ar = 0;
  friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

/// Correlation functions of one level pair. A in 1/MHz, B and C in 1/MHz^2.
struct CorrelationSeries {
  LevelPair levels;
  std::vector<Complex> a_ll;
  std::vector<Complex> a_rr;
  std::vector<Complex> b_lr;
  std::vector<Complex> c_lr;
};

struct CorrelationSet {
  std::vector<double> times;  ///< ns
  std::vector<CorrelationSeries> series;

  const CorrelationSeries& at(LevelPair levels) const;
};

/// Time-domain evaluation of the second- and third-order correlation functions.
/// Each indefinite integral is the bounded particular solution of a first-order ODE:
/// kernels that decay forward in time are integrated by RK4 from t = 0 (eta(0) = 0),
/// kernels that grow forward are integrated backward from the end of the grid with an
/// exponential-tail terminal value. Midpoint sources use cubic Hermite interpolation.
CorrelationSet correlations_timedomain(const ResonatorTrajectory& traj, const SystemParams& p,
                                       const std::vector<LevelPair>& levels);

/// Partial sums of the derivative expansion of A_ll for qubit level n (order 0..2), 1/MHz.
std::vector<Complex> adiabatic_series_A(const ResonatorTrajectory& traj, const SystemParams& p,
                                        int level, int order);

/// A_ll for qubit level n from the frequency-domain representation, evaluated with an
/// n_freq-point DFT of the zero-padded response (rectangular window). 1/MHz.
std::vector<Complex> fourier_A(const ResonatorTrajectory& traj, const SystemParams& p, int level,
                               std::size_t n_freq);

struct GeneratorSeries {
  std::vector<double> times;  ///< ns
  std::vector<LevelPair> levels;
  std::vector<std::vector<Complex>> values;  ///< MHz, one series per level pair
};

/// E(t) = 2 chi |eta|^2 (n_al - n_ar) - 4 chi^2 [A_ll n_al^2 - A_rr n_ar^2]
///        + 4 i chi^2 kappa [B / 6 + C / 2] n_al n_ar
GeneratorSeries effective_generator_timedep(const CorrelationSet& corr,
                                            const ResonatorTrajectory& traj,
                                            const SystemParams& p,
                                            const std::vector<LevelPair>& levels);

}  // namespace dispmap
