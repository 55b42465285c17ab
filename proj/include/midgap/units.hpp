#pragma once

#include <numbers>

// Unit conventions used throughout:
//   - every frequency-like quantity (mode spacing, detunings, couplings,
//     linewidths) is stored as an angular frequency in rad/s
//   - linewidths are amplitude half widths: a bare excited amplitude decays
//     as exp(-gamma*t), its population as exp(-2*gamma*t)
//   - conversions to/from linear frequency, wavelength or particle density
//     happen only at the I/O boundary
namespace midgap {

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m

inline constexpr double angular_from_hz(double f_hz) { return two_pi * f_hz; }
inline constexpr double hz_from_angular(double w) { return w / two_pi; }

// Angular frequency of light with vacuum wavelength lambda_m.
inline constexpr double angular_from_wavelength(double lambda_m) {
    return two_pi * c_light / lambda_m;
}

inline constexpr double per_m3_from_per_cm3(double rho_cm3) { return rho_cm3 * 1e6; }
inline constexpr double per_cm3_from_per_m3(double rho_m3) { return rho_m3 * 1e-6; }

}  // namespace midgap
