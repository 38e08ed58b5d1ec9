#pragma once

#include <cmath>

namespace ringrc {

namespace constants {
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

// Internal integration units. Every state variable stays O(1) for the
// powers and time scales the reservoir operates at.
namespace scale {
inline constexpr double time = 1e-9;       // s per internal time unit (ns)
inline constexpr double energy = 1e-12;    // J per internal |a|^2 unit (pJ)
inline constexpr double power = 1e-3;      // W per internal |E|^2 unit (mW)
inline constexpr double carriers = 1e24;   // m^-3 per internal density unit
inline constexpr double temperature = 1.0; // K
}  // namespace scale

inline double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt / 1e-3); }

inline double ghz_to_angular(double ghz) { return 2.0 * constants::pi * ghz * 1e9; }

inline double angular_to_ghz(double omega) { return omega / (2.0 * constants::pi * 1e9); }

}  // namespace ringrc
