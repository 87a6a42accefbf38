#pragma once

#include <dispmap/liouville.hpp>
#include <dispmap/response.hpp>

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace dispmap {

/// Shortest round-trip-safe decimal ("%.17g"), locale independent.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Comment line prefixed with '#'.
  void comment(const std::string& text);

 private:
  std::ostream& out_;
};

/// t_ns, re_eta, im_eta, photon_number
void write_trajectory_csv(std::ostream& out, const ResonatorTrajectory& traj);

/// row, col, re, im for every nonzero entry in row-major order.
void write_operator_csv(std::ostream& out, const ExtendedOperator& op);

}  // namespace dispmap
