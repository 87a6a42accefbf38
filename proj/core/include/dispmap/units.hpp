#pragma once

#include <complex>
#include <numbers>

namespace dispmap {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Spectral quantities are stored in MHz (cyclic, nu = omega / 2pi) and times in ns.
// Internal dynamics run in rad/ns: omega[rad/ns] = 2pi * nu[MHz] / 1000.
inline constexpr double kRadPerNsPerMHz = kTwoPi / 1000.0;

constexpr double angular(double mhz) { return kRadPerNsPerMHz * mhz; }
inline Complex angular(Complex mhz) { return kRadPerNsPerMHz * mhz; }
constexpr double cyclic(double rad_per_ns) { return rad_per_ns / kRadPerNsPerMHz; }
inline Complex cyclic(Complex rad_per_ns) { return rad_per_ns / kRadPerNsPerMHz; }

constexpr double ns_to_us(double ns) { return ns * 1e-3; }

}  // namespace dispmap
