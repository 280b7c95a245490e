// constants.hpp — physical constants (SI) and common factors.

#pragma once

namespace pumpprobe::constants {

inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass_amu = 86.909180531;

}  // namespace pumpprobe::constants
