#pragma once

#include <dispmap/model.hpp>

#include <string>
#include <vector>

namespace dispmap {

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  /// Inclusive uniform grid; throws ConfigError when empty.
  std::vector<double> values() const;
};

/// Parameters plus command-specific grids. Frequencies in MHz, times in ns.
struct RunConfig {
  SystemParams params{-2005.0, -5.0, -200.0, -1.0, 1.0, 2, 14};
  PulseSpec pulse = PulseSpec::constant(20.1);
  SweepRange detuning_sweep{-10.0, 10.0, 201};
  SweepRange drive_sweep{0.0, 20.1, 12};
  double dt_ns = 0.1;
  double t_end_ns = 2000.0;
  double record_every_ns = 10.0;
  double photon = 10.0;
  int max_level = 2;
};

/// Parses JSON text on top of the defaults. Unknown keys and ill-typed values raise
/// ConfigError naming the key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace dispmap
