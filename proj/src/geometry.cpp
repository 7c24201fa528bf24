// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace vvlc::geometry {

namespace {

double checked_asin(double x, const char* what) {
    // The coupling formulas guarantee |x| <= 1 up to rounding; anything beyond
    // a rounding-sized excursion indicates a caller bug.
    if (std::abs(x) > 1.0 + 1e-9) throw std::logic_error(what);
    return std::asin(std::clamp(x, -1.0, 1.0));
}

double side_offset(const HeadlampLayout& lay, Side side) {
    return side == Side::left ? lay.side_offset_left : lay.side_offset_right;
}

}  // namespace

EllipseGeometry ellipse_from_axes(double a, double b) {
    if (!(a > b && b > 0.0))
        throw std::invalid_argument("ellipse invariant a > b > 0 violated");
    EllipseGeometry ell;
    ell.a = a;
    ell.b = b;
    ell.f = std::sqrt(a * a - b * b);
    ell.d = 2.0 * ell.f;
    return ell;
}

EllipseGeometry ellipse_for_distance(double b, double distance) {
    if (!(b > 0.0)) throw std::invalid_argument("semi-minor axis must be positive");
    if (!(distance > 0.0)) throw std::invalid_argument("distance must be positive");
    EllipseGeometry ell;
    ell.f = distance / 2.0;
    ell.b = b;
    ell.a = std::hypot(b, ell.f);
    ell.d = distance;
    return ell;
}

void check_spheres(const SphereGeometry& sph, const EllipseGeometry& ell) {
    if (!(sph.radius_tx > 0.0 && sph.radius_rx > 0.0))
        throw std::invalid_argument("sphere radii must be positive");
    if (!(sph.radius_tx < ell.d && sph.radius_rx < ell.d))
        throw std::invalid_argument("sphere radius must be smaller than the Tx-Rx distance");
}

void check_layout(const HeadlampLayout& lay) {
    if (!(lay.half_separation > 0.0))
        throw std::invalid_argument("headlamp half-separation must be positive");
    if (lay.side_offset_left < 0.0 || lay.side_offset_right < 0.0)
        throw std::invalid_argument("headlamp side offsets must be non-negative");
    if (!(lay.tilt_azimuth > -kPi && lay.tilt_azimuth <= kPi))
        throw std::invalid_argument("tilt azimuth outside (-pi, pi]");
    if (!(std::abs(lay.tilt_elevation) < kPi / 2.0))
        throw std::invalid_argument("tilt elevation outside (-pi/2, pi/2)");
}

// --------------------------------------------------------------------------
// Closed-form backend
// --------------------------------------------------------------------------

PathLengths txsphere_paths(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const HeadlampLayout& lay, Side side, const AnglePair& dep) {
    check_angles(dep);
    const double rt = sph.radius_tx;
    const double delta = side_offset(lay, side);
    const double cb = std::cos(dep.elevation);
    const double sb = std::sin(dep.elevation);
    const double cphi = std::cos(lay.tilt_elevation);
    const double sphi = std::sin(lay.tilt_elevation);
    const double ctma = std::cos(lay.tilt_azimuth - dep.azimuth);

    double tx_leg_sq;
    if (side == Side::left) {
        tx_leg_sq = rt * rt + delta * delta
                  - 2.0 * delta * rt * cphi * cb * ctma
                  - 2.0 * delta * rt * sphi * sb;
    } else {
        const double a1 = 2.0 * rt * delta * sphi * sb;
        const double b1 = 2.0 * rt * delta * cphi * cb * ctma;
        tx_leg_sq = rt * rt + delta * delta + a1 - b1;
    }
    if (tx_leg_sq < 0.0) throw std::domain_error("degenerate Tx-sphere headlamp geometry");

    const double q1 = rt * cb;
    const double q2 = std::sqrt(q1 * q1 + ell.d * ell.d
                                - 2.0 * ell.d * q1 * std::cos(dep.azimuth));
    const AnglePair arr = txsphere_arrival(ell, sph, dep);
    const double cbr = std::cos(arr.elevation);
    if (std::abs(cbr) < 1e-15) throw std::domain_error("singular arrival elevation");

    return {std::sqrt(tx_leg_sq), q2 / cbr};
}

AnglePair txsphere_arrival(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const AnglePair& dep) {
    check_angles(dep);
    const double rt = sph.radius_tx;
    const double q1 = rt * std::cos(dep.elevation);
    // The printed coupling flips the sign of the cross term relative to the
    // distance formula; kept as printed, flagged by validate.
    const double denom = std::sqrt(q1 * q1 + ell.d * ell.d
                                   + 2.0 * ell.d * q1 * std::cos(dep.azimuth));
    AnglePair arr;
    arr.azimuth = checked_asin(rt * std::cos(dep.elevation) * std::sin(dep.azimuth) / denom,
                               "tx-sphere arrival azimuth argument out of range");
    arr.elevation = std::atan(rt * std::sin(dep.elevation) / denom);
    return arr;
}

PathLengths rxsphere_paths(const EllipseGeometry& ell, const SphereGeometry& sph,
                           const HeadlampLayout& lay, Side side, const AnglePair& arr) {
    check_angles(arr);
    const double rr = sph.radius_rx;
    const double delta = side_offset(lay, side);
    const double cb = std::cos(arr.elevation);
    const double sb = std::sin(arr.elevation);
    const double cphi = std::cos(lay.tilt_elevation);
    const double sphi = std::sin(lay.tilt_elevation);
    const double ctma = std::cos(lay.tilt_azimuth - arr.azimuth);

    const double q2 = rr * cb;
    const double q1 = std::sqrt(ell.d * ell.d + q2 * q2
                                - 2.0 * ell.d * q2 * std::cos(arr.azimuth));

    double tx_leg_sq;
    if (side == Side::left) {
        const double a2_sq = delta * delta * cphi * cphi + q1 * q1
                           - 2.0 * delta * q1 * cphi * ctma;
        if (a2_sq < 0.0) throw std::domain_error("degenerate Rx-sphere headlamp geometry");
        // The printed vertical term is already a squared length; read as such.
        const double b2 = rr * rr * sb * sb
                        - 2.0 * delta * rr * sb * std::sin(lay.tilt_azimuth)
                        + delta * delta * sphi * sphi;
        tx_leg_sq = a2_sq + b2;
    } else {
        const double a3 = delta * delta * cphi * cphi + q1 * q1
                        + 2.0 * delta * q1 * cphi * ctma;
        const double b3 = 2.0 * delta * rr * sphi * cb;
        tx_leg_sq = rr * rr * sb * sb + delta * delta * sphi * sphi + a3 + b3;
    }
    if (tx_leg_sq < 0.0) throw std::domain_error("degenerate Rx-sphere headlamp geometry");

    return {std::sqrt(tx_leg_sq), rr};
}

AnglePair rxsphere_departure(const EllipseGeometry& ell, const SphereGeometry& sph,
                             const AnglePair& arr) {
    check_angles(arr);
    const double rr = sph.radius_rx;
    const double cb = std::cos(arr.elevation);
    const double q2 = rr * cb;
    const double q1 = std::sqrt(ell.d * ell.d + q2 * q2
                                - 2.0 * ell.d * q2 * std::cos(arr.azimuth));
    const double c3 = cb * std::cos(arr.azimuth);
    const double denom = std::sqrt(rr * rr + ell.d * ell.d + 2.0 * ell.d * rr * c3);
    AnglePair dep;
    dep.elevation = checked_asin(rr * std::sin(arr.elevation) / denom,
                                 "rx-sphere departure elevation argument out of range");
    dep.azimuth = checked_asin(rr * cb * std::sin(arr.azimuth) / q1,
                               "rx-sphere departure azimuth argument out of range");
    return dep;
}

double xi_rxsphere(const EllipseGeometry& ell, const SphereGeometry& sph,
                   const AnglePair& arr) {
    check_angles(arr);
    const double rr = sph.radius_rx;
    const double q2 = rr * std::cos(arr.elevation);
    const double q1 = std::sqrt(ell.d * ell.d + q2 * q2
                                - 2.0 * ell.d * q2 * std::cos(arr.azimuth));
    const double sb = std::sin(arr.elevation);
    return std::sqrt(q1 * q1 + rr * rr * sb * sb);
}

namespace {

struct CylinderCore {
    double q = 0.0;        // horizontal OTx -> wall-foot distance (focal-chord form)
    double rx_leg = 0.0;   // scatterer -> ORx
    double otx_leg = 0.0;  // OTx -> scatterer
    double q1 = 0.0;       // law-of-cosines OTx -> wall-foot distance, as printed
};

CylinderCore cylinder_core(const EllipseGeometry& ell, const AnglePair& arr) {
    check_angles(arr);
    CylinderCore c;
    const double ca = std::cos(arr.azimuth);
    const double cb = std::cos(arr.elevation);
    if (std::abs(cb) < 1e-15) throw std::domain_error("singular arrival elevation");
    c.q = (ell.a * ell.a + ell.f * ell.f + 2.0 * ell.a * ell.f * ca)
        / (ell.a + ell.f * ca);
    c.rx_leg = (2.0 * ell.a - c.q) / cb;
    const double sb = std::sin(arr.elevation);
    c.otx_leg = std::sqrt(c.q * c.q + c.rx_leg * c.rx_leg * sb * sb);
    const double q2 = c.rx_leg * cb;
    c.q1 = std::sqrt(q2 * q2 + ell.d * ell.d - 2.0 * q2 * ell.d * ca);
    return c;
}

}  // namespace

PathLengths cylinder_paths(const EllipseGeometry& ell, const HeadlampLayout& lay,
                           Side side, const AnglePair& arr) {
    const CylinderCore c = cylinder_core(ell, arr);
    const double delta = side_offset(lay, side);
    const double sb = std::sin(arr.elevation);
    const double cphi = std::cos(lay.tilt_elevation);
    const double sphi = std::sin(lay.tilt_elevation);

    double tx_leg_sq;
    if (side == Side::left) {
        // A4 and B4 are squared horizontal/vertical components.
        const double a4 = delta * delta + c.q1 * c.q1
                        - 2.0 * delta * c.q1 * cphi * std::cos(lay.tilt_azimuth - arr.azimuth);
        const double b4 = delta * delta + c.rx_leg * c.rx_leg * sb * sb
                        - 2.0 * delta * c.rx_leg * sb * sphi;
        tx_leg_sq = a4 + b4;
    } else {
        const double a5 = ell.d * ell.d + c.rx_leg * c.rx_leg
                        - 2.0 * ell.d * c.rx_leg * std::cos(arr.elevation) * std::cos(arr.azimuth);
        const double b5 = 2.0 * ell.d * delta * c.rx_leg * sphi * std::cos(arr.azimuth);
        tx_leg_sq = delta * delta * sphi * sphi + a5 - b5;
    }
    if (tx_leg_sq < 0.0) throw std::domain_error("degenerate cylinder headlamp geometry");

    return {std::sqrt(tx_leg_sq), c.rx_leg};
}

AnglePair cylinder_departure(const EllipseGeometry& ell, const AnglePair& arr) {
    const CylinderCore c = cylinder_core(ell, arr);
    AnglePair dep;
    dep.elevation = checked_asin(c.rx_leg * std::sin(arr.elevation) / c.otx_leg,
                                 "cylinder departure elevation argument out of range");
    dep.azimuth = checked_asin(c.rx_leg * std::cos(arr.elevation) * std::sin(arr.azimuth) / c.q1,
                               "cylinder departure azimuth argument out of range");
    return dep;
}

// --------------------------------------------------------------------------
// Cartesian reconstruction backend
// --------------------------------------------------------------------------

Vec3 headlamp_position(const HeadlampLayout& lay, Side side) {
    const double delta = side_offset(lay, side);
    const double az = side == Side::left ? lay.tilt_azimuth + kPi / 2.0
                                         : lay.tilt_azimuth - kPi / 2.0;
    return unit_vector(az, lay.tilt_elevation) * delta;
}

Vec3 scatterer_position(SubModel kind, const EllipseGeometry& ell,
                        const SphereGeometry& sph, const AnglePair& angle) {
    check_angles(angle);
    const Vec3 rx{ell.d, 0.0, 0.0};
    switch (kind) {
        case SubModel::tx_sphere:
            return unit_vector(angle.azimuth, angle.elevation) * sph.radius_tx;
        case SubModel::rx_sphere: {
            // Arrival azimuth is referenced to the -x axis.
            Vec3 u = unit_vector(angle.azimuth, angle.elevation);
            u.x = -u.x;
            return rx + u * sph.radius_rx;
        }
        case SubModel::cylinder: {
            const double r = ell.b * ell.b / (ell.a + ell.f * std::cos(angle.azimuth));
            Vec3 p = rx;
            p.x += r * std::cos(angle.azimuth);
            p.y += r * std::sin(angle.azimuth);
            p.z = r * std::tan(angle.elevation);
            return p;
        }
    }
    throw std::logic_error("unknown sub-model");
}

PathLengths cartesian_oracle_paths(SubModel kind, const EllipseGeometry& ell,
                                   const SphereGeometry& sph, const HeadlampLayout& lay,
                                   Side side, const AnglePair& angle) {
    const Vec3 s = scatterer_position(kind, ell, sph, angle);
    const Vec3 h = headlamp_position(lay, side);
    const Vec3 rx{ell.d, 0.0, 0.0};
    return {(s - h).norm(), (s - rx).norm()};
}

AnglePair cartesian_oracle_coupled(SubModel kind, const EllipseGeometry& ell,
                                   const SphereGeometry& sph, const AnglePair& angle) {
    const Vec3 s = scatterer_position(kind, ell, sph, angle);
    AnglePair out;
    if (kind == SubModel::tx_sphere) {
        const Vec3 w = s - Vec3{ell.d, 0.0, 0.0};
        out.azimuth = std::atan2(w.y, -w.x);
        out.elevation = std::asin(std::clamp(w.z / w.norm(), -1.0, 1.0));
    } else {
        out.azimuth = std::atan2(s.y, s.x);
        out.elevation = std::asin(std::clamp(s.z / s.norm(), -1.0, 1.0));
    }
    return out;
}

// --------------------------------------------------------------------------
// Dispatch
// --------------------------------------------------------------------------

PathLengths sb_paths(Backend backend, SubModel kind, const EllipseGeometry& ell,
                     const SphereGeometry& sph, const HeadlampLayout& lay, Side side,
                     const AnglePair& angle) {
    if (backend == Backend::oracle)
        return cartesian_oracle_paths(kind, ell, sph, lay, side, angle);
    switch (kind) {
        case SubModel::tx_sphere: return txsphere_paths(ell, sph, lay, side, angle);
        case SubModel::rx_sphere: return rxsphere_paths(ell, sph, lay, side, angle);
        case SubModel::cylinder: return cylinder_paths(ell, lay, side, angle);
    }
    throw std::logic_error("unknown sub-model");
}

AnglePair sb_coupled(Backend backend, SubModel kind, const EllipseGeometry& ell,
                     const SphereGeometry& sph, const AnglePair& angle) {
    if (backend == Backend::oracle)
        return cartesian_oracle_coupled(kind, ell, sph, angle);
    switch (kind) {
        case SubModel::tx_sphere: return txsphere_arrival(ell, sph, angle);
        case SubModel::rx_sphere: return rxsphere_departure(ell, sph, angle);
        case SubModel::cylinder: return cylinder_departure(ell, angle);
    }
    throw std::logic_error("unknown sub-model");
}

bool forward_hemisphere(SubModel kind, const AnglePair& angle) {
    switch (kind) {
        case SubModel::tx_sphere:
        case SubModel::rx_sphere:
            // Both reduce to a positive projection on the link axis under the
            // per-model azimuth reference.
            return std::cos(angle.elevation) * std::cos(angle.azimuth) > 0.0;
        case SubModel::cylinder:
            return true;
    }
    return false;
}

}  // namespace vvlc::geometry
