#pragma once

#include <dispmap/config.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace dispmap::cli {

struct CommandOptions {
  unsigned threads = 1;
  bool header_comment = true;  ///< leading '#' line with version and wall-clock time
};

using Command = int (*)(const RunConfig&, std::ostream&, const CommandOptions&);

/// Fig. 2 style sweep over the resonator detuning.
/// delta_cd_mhz, gamma_phi_mhz, stark_mhz, n_ground, n_excited
int cmd_rates_sweep(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// Exact diagonalization sweep over the drive amplitude, tracked coherence plus the
/// perturbative rates.
int cmd_benchmark_eig(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// Resonator response, correlation functions of the (1,0) pair, adiabatic partial sums
/// of A_ll for level 1 and the generator E_10(t).
int cmd_transient(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// Adiabatic spectrum over qubit levels 0..max_level at the configured photon number.
int cmd_spectrum_grid(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// Full master-equation coherence vs the effective map, qubit frequency gauged away.
int cmd_propagate(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// Our dephasing rate against the qubit-state-dependent photon picture, raw and shifted.
int cmd_compare_gambetta(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

/// JSON report of the invariant suite; returns 1 when any check fails.
int cmd_validate(const RunConfig& cfg, std::ostream& out, const CommandOptions& opts);

struct CommandEntry {
  std::string name;
  std::string description;
  Command run;
};

const std::vector<CommandEntry>& commands();

}  // namespace dispmap::cli
