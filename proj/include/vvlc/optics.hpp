// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "vvlc/angles.hpp"

namespace vvlc::optics {

/// Generalized Lambertian headlamp.
struct Headlamp {
    double mode_number = 1.0;            // m, >= 1
    double tx_power = 0.0;               // P_Tx (W); 0 means "derive from intensity"
    double luminous_intensity = 8830.0;  // I0 (cd)
    double luminous_efficacy = 300.0;    // lm per optical watt, white-LED spectrum
};

void check_headlamp(const Headlamp& lamp);

/// Radiometric transmit power. Uses tx_power when set, otherwise converts the
/// configured peak luminous intensity through the efficacy bridge and the
/// Lambertian peak relation I0 = P_Tx * (m+1)/(2*pi) * efficacy.
double tx_power_watts(const Headlamp& lamp);

/// Normalized Lambertian radiant intensity (sr^-1): (m+1)/(2*pi) * cos^m(beta).
double lambertian_intensity(double mode_number, double beta_t);

/// Photometric illuminance (lux) at distance d and incidence beta_r.
double illuminance(double intensity_cd, double beta_r, double distance);

enum class LensMode { constant_cpc, paper_form };

struct OpticalReceiver {
    double area = 1e-4;                 // A_r (m^2)
    double fov = deg2rad(80.0);         // half-angle (rad)
    double refractive_index = 1.5;      // n_ind
    double filter_transmission = 1.0;   // T
    double responsivity = 0.54;         // R_lambda (A/W)
    LensMode lens_mode = LensMode::constant_cpc;
};

void check_receiver(const OpticalReceiver& rx);

/// A_r * cos(beta_r) inside the FoV, 0 outside. beta_r is the (non-negative)
/// incidence angle from the detector normal.
double effective_area(const OpticalReceiver& rx, double beta_r);

/// Concentrator gain. constant_cpc: n^2/sin^2(FoV) inside the FoV. paper_form:
/// n^2/sin^2(beta_r) as printed, singular at normal incidence.
double lens_gain(const OpticalReceiver& rx, double beta_r);

}  // namespace vvlc::optics
