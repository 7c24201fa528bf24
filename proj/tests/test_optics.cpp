// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vvlc/optics.hpp"

using namespace vvlc;
using namespace vvlc::optics;

TEST_CASE("Lambertian intensity point values") {
    CHECK(lambertian_intensity(1.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
    CHECK(lambertian_intensity(1.0, kPi / 3) ==
          doctest::Approx(0.5 / kPi).epsilon(1e-12));
    CHECK(lambertian_intensity(3.0, 0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
}

TEST_CASE("Lambertian intensity integrates to 1 over the hemisphere") {
    // 1D quadrature in the polar angle: integrand (m+1)/(2 pi) cos^m(t) 2 pi sin(t).
    for (double m : {1.0, 3.0, 10.0, 20.0}) {
        const int n = 20000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = (i + 0.5) * (kPi / 2) / n;
            sum += lambertian_intensity(m, t) * 2.0 * kPi * std::sin(t);
        }
        sum *= (kPi / 2) / n;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("transmit power from luminous intensity") {
    Headlamp lamp;  // I0 = 8830 cd, m = 1, efficacy 300 lm/W
    CHECK(tx_power_watts(lamp) ==
          doctest::Approx(8830.0 * 2.0 * kPi / (2.0 * 300.0)).epsilon(1e-12));
    lamp.tx_power = 1.25;
    CHECK(tx_power_watts(lamp) == doctest::Approx(1.25).epsilon(1e-12));
    Headlamp bad;
    bad.mode_number = 0.5;
    CHECK_THROWS_AS(check_headlamp(bad), std::invalid_argument);
}

TEST_CASE("illuminance inverse-square law") {
    // 8830 cd at 10 m, normal incidence: 88.3 lx.
    CHECK(illuminance(8830.0, 0.0, 10.0) == doctest::Approx(88.3).epsilon(1e-12));
    CHECK(illuminance(8830.0, 0.0, 20.0) ==
          doctest::Approx(88.3 / 4.0).epsilon(1e-12));
    CHECK(illuminance(8830.0, kPi / 3, 10.0) ==
          doctest::Approx(88.3 * 0.5).epsilon(1e-12));
}

TEST_CASE("effective area and field of view") {
    OpticalReceiver rx;  // A_r = 1e-4 m^2, FoV 80 deg
    CHECK(effective_area(rx, 0.0) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(effective_area(rx, kPi / 3) == doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(effective_area(rx, deg2rad(80.0) + 1e-6) == 0.0);
    CHECK(effective_area(rx, kPi / 2) == 0.0);
}

TEST_CASE("concentrator gain") {
    OpticalReceiver rx;
    CHECK(lens_gain(rx, 0.0) == doctest::Approx(2.3199552092829676).epsilon(1e-12));
    CHECK(lens_gain(rx, deg2rad(40.0)) ==
          doctest::Approx(2.3199552092829676).epsilon(1e-12));
    CHECK(lens_gain(rx, deg2rad(80.0) + 1e-6) == 0.0);

    OpticalReceiver printed = rx;
    printed.lens_mode = LensMode::paper_form;
    CHECK(lens_gain(printed, deg2rad(80.0)) ==
          doctest::Approx(2.3199552092829676).epsilon(1e-12));
    CHECK(lens_gain(printed, deg2rad(40.0)) ==
          doctest::Approx(2.25 / std::pow(std::sin(deg2rad(40.0)), 2)).epsilon(1e-12));
    CHECK_THROWS_AS(lens_gain(printed, 0.0), std::domain_error);
}

TEST_CASE("receiver validation") {
    OpticalReceiver rx;
    CHECK_NOTHROW(check_receiver(rx));
    rx.fov = 0.0;
    CHECK_THROWS_AS(check_receiver(rx), std::invalid_argument);
}
