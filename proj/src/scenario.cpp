// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vvlc::scenario {

namespace {

const char* kSubNames[3] = {"tx_sphere", "rx_sphere", "cylinder"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void check_motion(const MotionState& motion) {
    if (motion.speed_tx < 0.0 || motion.speed_rx < 0.0)
        throw std::invalid_argument("vehicle speeds must be non-negative");
    if (!(motion.start_distance > motion.stop_distance && motion.stop_distance > 0.0))
        throw std::invalid_argument("motion requires start_distance > stop_distance > 0");
}

void check_scenario(const ScenarioConfig& scn) {
    if (!(scn.ellipse_a > scn.ellipse_b && scn.ellipse_b > 0.0))
        throw std::invalid_argument("ellipse invariant a > b > 0 violated");
    const geometry::EllipseGeometry ell =
        geometry::ellipse_from_axes(scn.ellipse_a, scn.ellipse_b);
    geometry::check_spheres(scn.spheres, ell);
    geometry::check_layout(scn.layout);
    optics::check_headlamp(scn.lamp);
    optics::check_receiver(scn.receiver);
    check_motion(scn.motion);
    noise::check_noise(scn.noise);
    if (!(scn.reflectivity_vehicles >= 0.0 && scn.reflectivity_vehicles <= 1.0))
        throw std::invalid_argument("vehicle reflectivity outside [0, 1]");
    if (!(scn.reflectivity_roadside >= 0.0 && scn.reflectivity_roadside <= 1.0))
        throw std::invalid_argument("roadside reflectivity outside [0, 1]");
    if (!(scn.time_step > 0.0)) throw std::invalid_argument("time step must be positive");
    for (int s = 0; s < 3; ++s)
        for (geometry::Side side : {geometry::Side::left, geometry::Side::right})
            scatterfield::check_field(
                field_for(scn, static_cast<geometry::SubModel>(s), side));
}

ScenarioConfig paper_table_preset() { return {}; }

geometry::EllipseGeometry ellipse_at(const ScenarioConfig& scn, double distance) {
    return geometry::ellipse_for_distance(scn.ellipse_b, distance);
}

scatterfield::VmfField field_for(const ScenarioConfig& scn, geometry::SubModel sub,
                                 geometry::Side side) {
    const VmfOverride& ov = scn.vmf_override[static_cast<int>(sub)];
    double alpha0 = ov.has_alpha0 ? ov.alpha0 : scn.vmf.alpha0;
    double beta0 = ov.has_beta0 ? ov.beta0 : scn.vmf.beta0;
    scatterfield::VmfField field;
    field.concentration = ov.has_concentration ? ov.concentration : scn.vmf.concentration;
    field.count = ov.has_count ? ov.count : scn.vmf.count;
    field.region = sub;
    field.side = side;
    if (side == geometry::Side::right) alpha0 = -alpha0;
    if (scn.collapse_elevation) {
        beta0 = 0.0;
        field.elevation_collapsed = true;
    }
    field.mean = {wrap_azimuth(alpha0), beta0};
    return field;
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
    ScenarioConfig scn;
    std::map<std::string, std::function<void(const std::string&, int)>> keys;

    auto bad = [&origin](int line, const std::string& what) -> ConfigError {
        return ConfigError(origin + ":" + std::to_string(line) + ": " + what);
    };
    auto num = [&bad](double* dst) {
        return [dst, &bad](const std::string& v, int line) {
            std::size_t used = 0;
            double out;
            try {
                out = std::stod(v, &used);
            } catch (const std::exception&) {
                throw bad(line, "not a number: '" + v + "'");
            }
            if (used != v.size()) throw bad(line, "trailing characters after number: '" + v + "'");
            *dst = out;
        };
    };
    auto deg = [&bad](double* dst) {
        return [dst, &bad](const std::string& v, int line) {
            std::size_t used = 0;
            double out;
            try {
                out = std::stod(v, &used);
            } catch (const std::exception&) {
                throw bad(line, "not a number: '" + v + "'");
            }
            if (used != v.size()) throw bad(line, "trailing characters after number: '" + v + "'");
            *dst = deg2rad(out);
        };
    };

    keys["ellipse.a_m"] = num(&scn.ellipse_a);
    keys["ellipse.b_m"] = num(&scn.ellipse_b);
    keys["sphere.radius_tx_m"] = num(&scn.spheres.radius_tx);
    keys["sphere.radius_rx_m"] = num(&scn.spheres.radius_rx);
    keys["layout.half_separation_m"] = num(&scn.layout.half_separation);
    keys["layout.side_offset_left_m"] = num(&scn.layout.side_offset_left);
    keys["layout.side_offset_right_m"] = num(&scn.layout.side_offset_right);
    keys["layout.tilt_azimuth_deg"] = deg(&scn.layout.tilt_azimuth);
    keys["layout.tilt_elevation_deg"] = deg(&scn.layout.tilt_elevation);
    keys["lamp.mode_number"] = num(&scn.lamp.mode_number);
    keys["lamp.tx_power_w"] = num(&scn.lamp.tx_power);
    keys["lamp.intensity_cd"] = num(&scn.lamp.luminous_intensity);
    keys["lamp.efficacy_lm_per_w"] = num(&scn.lamp.luminous_efficacy);
    keys["receiver.area_m2"] = num(&scn.receiver.area);
    keys["receiver.fov_deg"] = deg(&scn.receiver.fov);
    keys["receiver.refractive_index"] = num(&scn.receiver.refractive_index);
    keys["receiver.filter_transmission"] = num(&scn.receiver.filter_transmission);
    keys["receiver.responsivity_a_per_w"] = num(&scn.receiver.responsivity);
    keys["receiver.lens_mode"] = [&scn, &bad](const std::string& v, int line) {
        if (v == "constant-cpc") scn.receiver.lens_mode = optics::LensMode::constant_cpc;
        else if (v == "paper-form") scn.receiver.lens_mode = optics::LensMode::paper_form;
        else throw bad(line, "lens_mode must be constant-cpc or paper-form");
    };
    keys["motion.speed_tx_mps"] = num(&scn.motion.speed_tx);
    keys["motion.speed_rx_mps"] = num(&scn.motion.speed_rx);
    keys["motion.dir_tx_deg"] = deg(&scn.motion.dir_tx);
    keys["motion.dir_rx_deg"] = deg(&scn.motion.dir_rx);
    keys["motion.start_distance_m"] = num(&scn.motion.start_distance);
    keys["motion.stop_distance_m"] = num(&scn.motion.stop_distance);
    keys["vmf.alpha0_deg"] = deg(&scn.vmf.alpha0);
    keys["vmf.beta0_deg"] = deg(&scn.vmf.beta0);
    keys["vmf.k"] = num(&scn.vmf.concentration);
    keys["vmf.count"] = [&scn, &bad](const std::string& v, int line) {
        try {
            scn.vmf.count = std::stoi(v);
        } catch (const std::exception&) {
            throw bad(line, "not an integer: '" + v + "'");
        }
    };
    for (int s = 0; s < 3; ++s) {
        VmfOverride& ov = scn.vmf_override[s];
        const std::string p = std::string("vmf.") + kSubNames[s] + ".";
        keys[p + "alpha0_deg"] = [&ov, deg](const std::string& v, int line) {
            ov.has_alpha0 = true;
            deg(&ov.alpha0)(v, line);
        };
        keys[p + "beta0_deg"] = [&ov, deg](const std::string& v, int line) {
            ov.has_beta0 = true;
            deg(&ov.beta0)(v, line);
        };
        keys[p + "k"] = [&ov, num](const std::string& v, int line) {
            ov.has_concentration = true;
            num(&ov.concentration)(v, line);
        };
        keys[p + "count"] = [&ov, &bad](const std::string& v, int line) {
            ov.has_count = true;
            try {
                ov.count = std::stoi(v);
            } catch (const std::exception&) {
                throw bad(line, "not an integer: '" + v + "'");
            }
        };
    }
    keys["reflectivity.vehicles"] = num(&scn.reflectivity_vehicles);
    keys["reflectivity.roadside"] = num(&scn.reflectivity_roadside);
    keys["noise.bandwidth_hz"] = num(&scn.noise.bandwidth);
    keys["noise.bg_current_a"] = num(&scn.noise.bg_current);
    keys["noise.dark_current_a"] = num(&scn.noise.dark_current);
    keys["noise.i2"] = num(&scn.noise.i2);
    keys["noise.i3"] = num(&scn.noise.i3);
    keys["noise.fet_noise_factor"] = num(&scn.noise.fet_noise_factor);
    keys["noise.open_loop_gain"] = num(&scn.noise.open_loop_gain);
    keys["noise.transconductance_s"] = num(&scn.noise.transconductance);
    keys["noise.pd_capacitance_f_per_m2"] = num(&scn.noise.pd_capacitance_per_area);
    keys["noise.temperature_k"] = num(&scn.noise.temperature);
    keys["model.geometry_backend"] = [&scn, &bad](const std::string& v, int line) {
        if (v == "oracle") scn.backend = geometry::Backend::oracle;
        else if (v == "paper") scn.backend = geometry::Backend::paper;
        else throw bad(line, "geometry_backend must be oracle or paper");
    };
    keys["model.time_step_s"] = num(&scn.time_step);
    keys["model.seed"] = [&scn, &bad](const std::string& v, int line) {
        try {
            scn.seed = std::stoull(v);
        } catch (const std::exception&) {
            throw bad(line, "not an unsigned integer: '" + v + "'");
        }
    };
    keys["model.collapse_elevation"] = [&scn, &bad](const std::string& v, int line) {
        if (v == "true") scn.collapse_elevation = true;
        else if (v == "false") scn.collapse_elevation = false;
        else throw bad(line, "collapse_elevation must be true or false");
    };
    keys["road.lane_width_m"] = num(&scn.lane_width);
    keys["road.roadside_width_m"] = num(&scn.roadside_width);

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw bad(line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end()) throw bad(line, "unknown key '" + key + "'");
        it->second(value, line);
    }

    try {
        check_scenario(scn);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return scn;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string emit_scenario(const ScenarioConfig& scn) {
    std::ostringstream out;
    auto kv = [&out](const char* key, const std::string& v) { out << key << " = " << v << "\n"; };
    kv("ellipse.a_m", fmt(scn.ellipse_a));
    kv("ellipse.b_m", fmt(scn.ellipse_b));
    kv("sphere.radius_tx_m", fmt(scn.spheres.radius_tx));
    kv("sphere.radius_rx_m", fmt(scn.spheres.radius_rx));
    kv("layout.half_separation_m", fmt(scn.layout.half_separation));
    kv("layout.side_offset_left_m", fmt(scn.layout.side_offset_left));
    kv("layout.side_offset_right_m", fmt(scn.layout.side_offset_right));
    kv("layout.tilt_azimuth_deg", fmt(rad2deg(scn.layout.tilt_azimuth)));
    kv("layout.tilt_elevation_deg", fmt(rad2deg(scn.layout.tilt_elevation)));
    kv("lamp.mode_number", fmt(scn.lamp.mode_number));
    kv("lamp.tx_power_w", fmt(scn.lamp.tx_power));
    kv("lamp.intensity_cd", fmt(scn.lamp.luminous_intensity));
    kv("lamp.efficacy_lm_per_w", fmt(scn.lamp.luminous_efficacy));
    kv("receiver.area_m2", fmt(scn.receiver.area));
    kv("receiver.fov_deg", fmt(rad2deg(scn.receiver.fov)));
    kv("receiver.refractive_index", fmt(scn.receiver.refractive_index));
    kv("receiver.filter_transmission", fmt(scn.receiver.filter_transmission));
    kv("receiver.responsivity_a_per_w", fmt(scn.receiver.responsivity));
    kv("receiver.lens_mode", scn.receiver.lens_mode == optics::LensMode::constant_cpc
                                 ? "constant-cpc"
                                 : "paper-form");
    kv("motion.speed_tx_mps", fmt(scn.motion.speed_tx));
    kv("motion.speed_rx_mps", fmt(scn.motion.speed_rx));
    kv("motion.dir_tx_deg", fmt(rad2deg(scn.motion.dir_tx)));
    kv("motion.dir_rx_deg", fmt(rad2deg(scn.motion.dir_rx)));
    kv("motion.start_distance_m", fmt(scn.motion.start_distance));
    kv("motion.stop_distance_m", fmt(scn.motion.stop_distance));
    kv("vmf.alpha0_deg", fmt(rad2deg(scn.vmf.alpha0)));
    kv("vmf.beta0_deg", fmt(rad2deg(scn.vmf.beta0)));
    kv("vmf.k", fmt(scn.vmf.concentration));
    kv("vmf.count", std::to_string(scn.vmf.count));
    for (int s = 0; s < 3; ++s) {
        const VmfOverride& ov = scn.vmf_override[s];
        const std::string p = std::string("vmf.") + kSubNames[s] + ".";
        if (ov.has_alpha0) kv((p + "alpha0_deg").c_str(), fmt(rad2deg(ov.alpha0)));
        if (ov.has_beta0) kv((p + "beta0_deg").c_str(), fmt(rad2deg(ov.beta0)));
        if (ov.has_concentration) kv((p + "k").c_str(), fmt(ov.concentration));
        if (ov.has_count) kv((p + "count").c_str(), std::to_string(ov.count));
    }
    kv("reflectivity.vehicles", fmt(scn.reflectivity_vehicles));
    kv("reflectivity.roadside", fmt(scn.reflectivity_roadside));
    kv("noise.bandwidth_hz", fmt(scn.noise.bandwidth));
    kv("noise.bg_current_a", fmt(scn.noise.bg_current));
    kv("noise.dark_current_a", fmt(scn.noise.dark_current));
    kv("noise.i2", fmt(scn.noise.i2));
    kv("noise.i3", fmt(scn.noise.i3));
    kv("noise.fet_noise_factor", fmt(scn.noise.fet_noise_factor));
    kv("noise.open_loop_gain", fmt(scn.noise.open_loop_gain));
    kv("noise.transconductance_s", fmt(scn.noise.transconductance));
    kv("noise.pd_capacitance_f_per_m2", fmt(scn.noise.pd_capacitance_per_area));
    kv("noise.temperature_k", fmt(scn.noise.temperature));
    kv("model.geometry_backend",
       scn.backend == geometry::Backend::oracle ? "oracle" : "paper");
    kv("model.time_step_s", fmt(scn.time_step));
    kv("model.seed", std::to_string(scn.seed));
    kv("model.collapse_elevation", scn.collapse_elevation ? "true" : "false");
    kv("road.lane_width_m", fmt(scn.lane_width));
    kv("road.roadside_width_m", fmt(scn.roadside_width));
    return out.str();
}

}  // namespace vvlc::scenario
