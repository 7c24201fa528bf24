// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vvlc/angles.hpp"

namespace vvlc::noise {

void check_noise(const NoiseConfig& cfg) {
    if (!(cfg.bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(cfg.bg_current > 0.0)) throw std::invalid_argument("background current must be positive");
    if (cfg.dark_current < 0.0) throw std::invalid_argument("dark current must be non-negative");
    if (!(cfg.i2 > 0.0 && cfg.i3 > 0.0))
        throw std::invalid_argument("noise-bandwidth factors must be positive");
    if (cfg.fet_noise_factor < 0.0)
        throw std::invalid_argument("FET noise factor must be non-negative");
    if (!(cfg.open_loop_gain > 0.0)) throw std::invalid_argument("open-loop gain must be positive");
    if (!(cfg.transconductance > 0.0))
        throw std::invalid_argument("transconductance must be positive");
    if (!(cfg.pd_capacitance_per_area > 0.0))
        throw std::invalid_argument("PD capacitance per area must be positive");
    if (!(cfg.temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
}

double shot_noise(const NoiseConfig& cfg, double responsivity, double rx_power) {
    if (rx_power < 0.0) throw std::invalid_argument("received power must be non-negative");
    return 2.0 * kElectronCharge * responsivity * rx_power * cfg.bandwidth;
}

double thermal_noise(const NoiseConfig& cfg, double area) {
    if (!(area > 0.0)) throw std::invalid_argument("detector area must be positive");
    const double b = cfg.bandwidth;
    const double feedback = 8.0 * kPi * kBoltzmann * cfg.temperature / cfg.open_loop_gain
                          * cfg.pd_capacitance_per_area * area * cfg.i2 * b * b;
    const double channel = 16.0 * kPi * kPi * kBoltzmann * cfg.temperature
                         * cfg.fet_noise_factor / cfg.transconductance
                         * cfg.pd_capacitance_per_area * area * area * cfg.i3 * b * b * b;
    return feedback + channel;
}

NoiseBreakdown noise_breakdown(const NoiseConfig& cfg, double responsivity,
                               double rx_power, double area) {
    check_noise(cfg);
    NoiseBreakdown out;
    out.shot = shot_noise(cfg, responsivity, rx_power);
    out.background = 2.0 * kElectronCharge * cfg.bg_current * cfg.i2 * cfg.bandwidth;
    out.dark = 2.0 * kElectronCharge * cfg.dark_current * cfg.i2 * cfg.bandwidth;
    out.thermal = thermal_noise(cfg, area);
    out.total = out.shot + out.background + out.dark + out.thermal;
    return out;
}

SnrResult snr(const NoiseConfig& cfg, double responsivity, double rx_power, double area) {
    const NoiseBreakdown n = noise_breakdown(cfg, responsivity, rx_power, area);
    if (!(n.total > 0.0)) throw std::domain_error("total noise variance is zero");
    SnrResult out;
    const double sig = responsivity * rx_power;
    out.ratio = sig * sig / n.total;
    out.db = out.ratio > 0.0 ? 10.0 * std::log10(out.ratio)
                             : -std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace vvlc::noise
