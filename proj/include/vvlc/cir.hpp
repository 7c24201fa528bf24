// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "vvlc/scenario.hpp"

namespace vvlc::cir {

enum class PathClass { los, sb1, sb2, sb3 };

/// Which scatterer population(s) to evaluate; left/right mirror the azimuth
/// mean. `both` averages the two (equal-probability mixture of the two fields).
enum class Population { left_side, right_side, both };

struct CirComponent {
    geometry::Side source = geometry::Side::left;
    PathClass path_class = PathClass::los;
    double delay = 0.0;  // s
    double gain = 0.0;   // dimensionless power ratio
};

/// Time to reach the stop distance; +inf when the vehicles never close.
double stop_time(const scenario::MotionState& motion);

/// Tx-Rx separation at time t; throws std::out_of_range past the stop time.
double los_distance(const scenario::MotionState& motion, double t);

/// LoS impulse for one headlight at a given focal separation.
CirComponent los_cir_at(const scenario::ScenarioConfig& scn, double distance,
                        geometry::Side side);
CirComponent los_cir(const scenario::ScenarioConfig& scn, double t, geometry::Side side);

/// LoS DC gain; carries the pi (not 2*pi) normalization of the DC-gain form,
/// which is exactly twice the time-integrated LoS impulse. The factor-2 gap is
/// audited by the validate report.
double dc_gain_los(const scenario::ScenarioConfig& scn, double distance,
                   geometry::Side side);

struct SbRay {
    CirComponent component{};
    bool excluded = false;  // hemisphere/FoV/negative-projection/singular input
};

/// One single-bounce path. `angle` is the sub-model's native angular variable:
/// departure for the Tx-sphere, arrival for the Rx-sphere and the cylinder.
/// Singular inputs are reported as exclusions, never thrown.
SbRay sb_ray(const scenario::ScenarioConfig& scn, const geometry::EllipseGeometry& ell,
             geometry::SubModel sub, geometry::Side side, const AnglePair& angle);

struct SbCirResult {
    std::vector<CirComponent> components;
    int excluded = 0;
};

SbCirResult sb_cir(const scenario::ScenarioConfig& scn, double distance,
                   geometry::Side side, geometry::SubModel sub,
                   const scatterfield::ScattererSet& scatterers);

/// Reflected-path source intensity (mode number 1) at the off-boresight angle
/// of a departure direction.
double nlos_lambertian(const scenario::ScenarioConfig& scn, const AnglePair& dep);

struct DcMethod {
    enum class Kind { mev_sum, quadrature, monte_carlo };
    Kind kind = Kind::mev_sum;
    std::uint64_t seed = 1;
    std::size_t samples = 100000;  // monte_carlo
    double tol = 1e-7;             // quadrature, relative
};

struct DcGain {
    double value = 0.0;
    double std_error = 0.0;     // monte_carlo only
    double achieved_tol = 0.0;  // quadrature only
};

/// Single-bounce DC gain: integral (or discrete sum) of Lambertian intensity
/// (mode 1 for reflected paths) times the per-ray gain times the scatterer
/// density over the native angular domain.
DcGain dc_gain_sb(const scenario::ScenarioConfig& scn, double distance,
                  geometry::Side side, geometry::SubModel sub, const DcMethod& method,
                  Population population = Population::both);

struct ClassPower {
    double left = 0.0;
    double right = 0.0;

    double total() const { return left + right; }
};

struct LinkResult {
    double time = 0.0;      // s
    double distance = 0.0;  // m
    ClassPower los, sb1, sb2, sb3;       // received power (W) per headlight
    ClassPower gain_los, gain_sb1, gain_sb2, gain_sb3;  // DC gains per headlight
    double power_total = 0.0;            // W
    double power_total_bare = 0.0;       // W, lens and filter gains divided out
    noise::NoiseBreakdown noise_terms{};
    double snr_ratio = 0.0;
    double snr_db = 0.0;
};

LinkResult received_power_at(const scenario::ScenarioConfig& scn, double distance,
                             double time = 0.0);
LinkResult received_power(const scenario::ScenarioConfig& scn, double t);

/// Elevation-collapsed image of a scenario (2D model): elevation means and
/// spreads forced to zero, headlight tilt zeroed. Idempotent.
scenario::ScenarioConfig reduce_to_2d(const scenario::ScenarioConfig& scn);

/// Transmit power that makes the given single-bounce received power (one
/// headlight, one population) hit a target; gains are power-linear.
double calibrate_tx_power(const scenario::ScenarioConfig& scn, double distance,
                          geometry::Side side, geometry::SubModel sub,
                          Population population, double target_power_w);

}  // namespace vvlc::cir
