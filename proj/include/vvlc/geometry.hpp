// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>

#include "vvlc/angles.hpp"

namespace vvlc::geometry {

// Coordinate frame: x-axis from OTx (mid-point between the headlights) to ORx
// (the photodetector), z-axis vertical, left headlight at +y.
//
// Azimuth references, chosen so each closed-form sub-model reproduces its own
// trivial cases:
//   - Tx-sphere departures: from +x (towards the Rx), counterclockwise.
//   - Rx-sphere arrivals:   from -x (towards the Tx), counterclockwise;
//     a scatterer at azimuth 0 sits between the vehicles.
//   - Cylinder arrivals:    from +x (away from the Tx); azimuth 0 points to
//     the ellipse vertex nearest the Rx focus.
// Elevations are measured from the x-y plane everywhere.

enum class Side { left, right };
enum class SubModel { tx_sphere, rx_sphere, cylinder };
enum class Backend { paper, oracle };

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Unit vector for an azimuth/elevation pair measured from the +x axis.
inline Vec3 unit_vector(double azimuth, double elevation) {
    const double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

/// Elliptic-cylinder cross-section with the Tx and Rx vehicles at the foci.
struct EllipseGeometry {
    double a = 0.0;  // semi-major axis (m)
    double b = 0.0;  // semi-minor axis (m)
    double f = 0.0;  // focal half-distance (m)
    double d = 0.0;  // Tx-Rx focal separation, d = 2f (m)
};

EllipseGeometry ellipse_from_axes(double a, double b);

/// Ellipse for a given Tx-Rx separation with the roadside clearance (semi-minor
/// axis) held fixed: f = distance/2, a = sqrt(b^2 + f^2).
EllipseGeometry ellipse_for_distance(double b, double distance);

struct SphereGeometry {
    double radius_tx = 4.0;  // R_T (m)
    double radius_rx = 4.0;  // R_R (m)
};

void check_spheres(const SphereGeometry& sph, const EllipseGeometry& ell);

struct HeadlampLayout {
    double half_separation = 0.6;   // delta (m)
    double side_offset_left = 0.6;  // delta_L (m)
    double side_offset_right = 0.6; // delta_R (m)
    double tilt_azimuth = 0.0;      // theta_T (rad)
    double tilt_elevation = 0.0;    // phi_T (rad)
};

void check_layout(const HeadlampLayout& lay);

struct PathLengths {
    double tx_to_scatterer = 0.0;  // m
    double scatterer_to_rx = 0.0;  // m

    double total() const { return tx_to_scatterer + scatterer_to_rx; }
};

// --- Closed-form backend (formulas as printed, internal inconsistencies kept;
// --- the validate report quantifies their deviation from the Cartesian one).

PathLengths txsphere_paths(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const HeadlampLayout& lay, Side side, const AnglePair& dep);
AnglePair txsphere_arrival(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const AnglePair& dep);

PathLengths rxsphere_paths(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const HeadlampLayout& lay, Side side, const AnglePair& arr);
AnglePair rxsphere_departure(const EllipseGeometry& ell, const SphereGeometry& sph,
                             const AnglePair& arr);

PathLengths cylinder_paths(const EllipseGeometry& ell, const HeadlampLayout& lay,
                           Side side, const AnglePair& arr);
AnglePair cylinder_departure(const EllipseGeometry& ell, const AnglePair& arr);

/// Slant distance from OTx to an Rx-sphere scatterer. Defined by the model but
/// unused in any gain formula; exposed for audit only.
double xi_rxsphere(const EllipseGeometry& ell, const SphereGeometry& sph,
                   const AnglePair& arr);

// --- Cartesian reconstruction backend (exact; used as validation oracle and
// --- as the default geometry backend).

Vec3 headlamp_position(const HeadlampLayout& lay, Side side);
Vec3 scatterer_position(SubModel kind, const EllipseGeometry& ell,
                        const SphereGeometry& sph, const AnglePair& angle);

PathLengths cartesian_oracle_paths(SubModel kind, const EllipseGeometry& ell,
                                   const SphereGeometry& sph, const HeadlampLayout& lay,
                                   Side side, const AnglePair& angle);

/// Direct angular measurement of the coupled angle: the arrival direction for
/// Tx-sphere scatterers (input is a departure), the departure direction for
/// Rx-sphere and cylinder scatterers (input is an arrival).
AnglePair cartesian_oracle_coupled(SubModel kind, const EllipseGeometry& ell,
                                   const SphereGeometry& sph, const AnglePair& angle);

// --- Backend dispatch.

PathLengths sb_paths(Backend backend, SubModel kind, const EllipseGeometry& ell,
                     const SphereGeometry& sph, const HeadlampLayout& lay, Side side,
                     const AnglePair& angle);
AnglePair sb_coupled(Backend backend, SubModel kind, const EllipseGeometry& ell,
                     const SphereGeometry& sph, const AnglePair& angle);

/// Realism filter: Tx-sphere scatterers must project forward of the Tx along
/// the link axis, Rx-sphere scatterers must sit on the Tx side of the Rx.
bool forward_hemisphere(SubModel kind, const AnglePair& angle);

}  // namespace vvlc::geometry
