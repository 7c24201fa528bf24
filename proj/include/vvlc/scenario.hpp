// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vvlc/geometry.hpp"
#include "vvlc/noise.hpp"
#include "vvlc/optics.hpp"
#include "vvlc/scatterfield.hpp"

namespace vvlc::scenario {

/// Straight-line co-directional vehicle motion along the link axis.
struct MotionState {
    double speed_tx = 6.0;        // m/s
    double speed_rx = 4.0;        // m/s
    double dir_tx = 0.0;          // gamma_Tx (rad)
    double dir_rx = 0.0;          // gamma_Rx (rad)
    double start_distance = 70.0; // d0 (m)
    double stop_distance = 6.0;   // SD (m)
};

void check_motion(const MotionState& motion);

/// Base VMF parameters shared by the three scattering regions; per-region
/// overrides are applied on top. Left/right scatterer populations mirror the
/// azimuth mean (+alpha0 left, -alpha0 right).
struct VmfParams {
    double alpha0 = deg2rad(10.0);  // rad
    double beta0 = deg2rad(2.0);    // rad
    double concentration = 30.0;
    int count = 100;
};

struct VmfOverride {
    bool has_alpha0 = false;
    double alpha0 = 0.0;
    bool has_beta0 = false;
    double beta0 = 0.0;
    bool has_concentration = false;
    double concentration = 0.0;
    bool has_count = false;
    int count = 0;
};

struct ScenarioConfig {
    double ellipse_a = 40.0;  // recorded semi-major axis (m); see field docs below
    double ellipse_b = 19.0;  // roadside clearance / semi-minor axis (m)
    geometry::SphereGeometry spheres{};
    geometry::HeadlampLayout layout{};
    optics::Headlamp lamp{};
    optics::OpticalReceiver receiver{};
    MotionState motion{};
    VmfParams vmf{};
    VmfOverride vmf_override[3]{};  // indexed by SubModel
    double reflectivity_vehicles = 0.8;
    double reflectivity_roadside = 0.4;
    noise::NoiseConfig noise{};
    geometry::Backend backend = geometry::Backend::oracle;
    double time_step = 0.1;  // s
    std::uint64_t seed = 1;
    bool collapse_elevation = false;  // 2D reduction switch
    // Recorded road metadata, not used by any formula.
    double lane_width = 3.5;      // m
    double roadside_width = 2.2;  // m
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void check_scenario(const ScenarioConfig& scn);

/// Built-in preset reproducing the reference parameter set; identical to a
/// default-constructed ScenarioConfig.
ScenarioConfig paper_table_preset();

/// Flat key-value parser ("section.key = value", '#' comments, degrees in
/// files). Unknown keys and malformed lines raise ConfigError with the line
/// number; missing keys keep preset defaults.
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin);
ScenarioConfig load_scenario(const std::string& path);

/// Full key set in canonical order; parse(emit(scn)) == scn.
std::string emit_scenario(const ScenarioConfig& scn);

/// Elliptic cross-section for a given Tx-Rx separation: the roadside clearance
/// (semi-minor axis) is held at ellipse_b while the foci follow the vehicles.
geometry::EllipseGeometry ellipse_at(const ScenarioConfig& scn, double distance);

/// Resolved scatterer field for one region and population side.
scatterfield::VmfField field_for(const ScenarioConfig& scn, geometry::SubModel sub,
                                 geometry::Side side);

}  // namespace vvlc::scenario
