// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace vvlc::optics {

void check_headlamp(const Headlamp& lamp) {
    if (!(lamp.mode_number >= 1.0))
        throw std::invalid_argument("Lambertian mode number must be >= 1");
    if (lamp.tx_power < 0.0)
        throw std::invalid_argument("transmit power must be non-negative");
    if (lamp.tx_power == 0.0 && !(lamp.luminous_intensity > 0.0))
        throw std::invalid_argument("either tx_power or luminous_intensity must be positive");
    if (!(lamp.luminous_efficacy > 0.0))
        throw std::invalid_argument("luminous efficacy must be positive");
}

double tx_power_watts(const Headlamp& lamp) {
    if (lamp.tx_power > 0.0) return lamp.tx_power;
    return lamp.luminous_intensity * 2.0 * kPi
         / ((lamp.mode_number + 1.0) * lamp.luminous_efficacy);
}

double lambertian_intensity(double mode_number, double beta_t) {
    if (std::abs(beta_t) > kPi / 2.0)
        throw std::invalid_argument("Lambertian angle outside [-pi/2, pi/2]");
    return (mode_number + 1.0) / (2.0 * kPi)
         * std::pow(std::cos(beta_t), mode_number);
}

double illuminance(double intensity_cd, double beta_r, double distance) {
    if (!(distance > 0.0)) throw std::invalid_argument("distance must be positive");
    return intensity_cd * std::cos(beta_r) / (distance * distance);
}

void check_receiver(const OpticalReceiver& rx) {
    if (!(rx.area > 0.0)) throw std::invalid_argument("detector area must be positive");
    if (!(rx.fov > 0.0 && rx.fov <= kPi / 2.0))
        throw std::invalid_argument("FoV half-angle outside (0, pi/2]");
    if (!(rx.refractive_index >= 1.0))
        throw std::invalid_argument("refractive index must be >= 1");
    if (!(rx.filter_transmission >= 0.0 && rx.filter_transmission <= 1.0))
        throw std::invalid_argument("filter transmission outside [0, 1]");
    if (!(rx.responsivity > 0.0))
        throw std::invalid_argument("responsivity must be positive");
}

double effective_area(const OpticalReceiver& rx, double beta_r) {
    if (beta_r < 0.0) throw std::invalid_argument("incidence angle must be non-negative");
    if (beta_r > rx.fov) return 0.0;
    return rx.area * std::cos(beta_r);
}

double lens_gain(const OpticalReceiver& rx, double beta_r) {
    if (beta_r < 0.0) throw std::invalid_argument("incidence angle must be non-negative");
    if (beta_r > rx.fov) return 0.0;
    const double n2 = rx.refractive_index * rx.refractive_index;
    if (rx.lens_mode == LensMode::constant_cpc) {
        const double s = std::sin(rx.fov);
        return n2 / (s * s);
    }
    if (beta_r < 1e-6)
        throw std::domain_error("paper-form lens gain is singular at normal incidence");
    const double s = std::sin(beta_r);
    return n2 / (s * s);
}

}  // namespace vvlc::optics
