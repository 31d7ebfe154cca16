// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace satnet {

// Spherical Earth model shared by all geometry code.
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3S2 = 398600.4418;
inline constexpr double kEarthRotationRadS = 7.2921159e-5;

inline constexpr double kSpeedOfLightMS = 299792458.0;
inline constexpr double kBoltzmannJK = 1.380649e-23;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace satnet
