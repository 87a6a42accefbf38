#pragma once

#include <stdexcept>
#include <string>

namespace dispmap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (bad dims, negative photon number).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A denominator vanished (degenerate detuning, resonant pole).
class SingularityError : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class TrackingLostError : public Error {
 public:
  TrackingLostError(const std::string& what, double omega_c_mhz)
      : Error(what), omega_c_mhz_(omega_c_mhz) {}
  double omega_c_mhz() const noexcept { return omega_c_mhz_; }

 private:
  double omega_c_mhz_;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

}  // namespace dispmap
