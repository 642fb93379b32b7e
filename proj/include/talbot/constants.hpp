#pragma once

#include <numbers>

// Physical constants, SI units (CODATA 2018; h, k_B exact by definition).
namespace talbot::consts {

inline constexpr double pi = std::numbers::pi;

inline constexpr double h = 6.62607015e-34;        // J s
inline constexpr double hbar = h / (2.0 * pi);     // J s
inline constexpr double c = 299792458.0;           // m / s
inline constexpr double k_B = 1.380649e-23;        // J / K
inline constexpr double m_u = 1.66053906660e-27;   // kg, atomic mass constant

// Reference mass of the collapse-rate parametrisation (1 amu).
inline constexpr double m0 = m_u;                  // kg

} // namespace talbot::consts
