// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vvlc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

// Directions within this margin of vertical are rejected rather than clamped.
inline constexpr double kElevationMargin = 1e-12;

constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

/// Azimuth/elevation pair in radians; azimuth in (-pi, pi], elevation in
/// (-pi/2, pi/2). The azimuth reference axis depends on where the angle is
/// measured (see geometry.hpp).
struct AnglePair {
    double azimuth = 0.0;
    double elevation = 0.0;
};

inline double wrap_azimuth(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

inline void check_angles(const AnglePair& ang) {
    if (!(ang.azimuth > -kPi && ang.azimuth <= kPi))
        throw std::invalid_argument("azimuth outside (-pi, pi]");
    if (!(std::abs(ang.elevation) < kPi / 2.0 - kElevationMargin))
        throw std::invalid_argument("elevation outside (-pi/2, pi/2) or within 1e-12 of vertical");
}

}  // namespace vvlc
