// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

namespace vvlc::noise {

// Rounded reference-table constants; the noise budget is specified with
// these, not the CODATA values.
inline constexpr double kBoltzmann = 1.38e-23;       // J/K
inline constexpr double kElectronCharge = 1.6e-19;   // C

/// Receiver noise-budget constants for an IM/DD OOK front end.
struct NoiseConfig {
    double bandwidth = 2e7;          // B (Hz)
    double bg_current = 5.1e-3;      // I_B (A)
    double dark_current = 0.0;       // I_d (A)
    double i2 = 0.562;               // noise-bandwidth factor
    double i3 = 0.0868;              // noise-bandwidth factor
    double fet_noise_factor = 1.5;   // Gamma
    double open_loop_gain = 10.0;    // G_ol
    double transconductance = 0.03;  // g_m (S)
    double pd_capacitance_per_area = 1.12e-6;  // C_PD (F/m^2), 112 pF/cm^2
    double temperature = 298.0;      // T_k (K)
};

void check_noise(const NoiseConfig& cfg);

struct NoiseBreakdown {
    double shot = 0.0;        // signal-dependent shot term (A^2)
    double background = 0.0;  // 2 q I_B I2 B (A^2)
    double dark = 0.0;        // 2 q I_d I2 B (A^2)
    double thermal = 0.0;     // A^2
    double total = 0.0;       // sum (A^2)
};

/// Signal-dependent shot term 2 q R P B (the background/dark terms live in
/// noise_breakdown).
double shot_noise(const NoiseConfig& cfg, double responsivity, double rx_power);

/// Feedback-resistor plus FET-channel thermal variance. The second term scales
/// with the detector area squared; the area-linear textbook variant is
/// quantified by the validate report, not implemented.
double thermal_noise(const NoiseConfig& cfg, double area);

NoiseBreakdown noise_breakdown(const NoiseConfig& cfg, double responsivity,
                               double rx_power, double area);

struct SnrResult {
    double ratio = 0.0;
    double db = 0.0;  // -inf when rx_power = 0
};

SnrResult snr(const NoiseConfig& cfg, double responsivity, double rx_power, double area);

}  // namespace vvlc::noise
