// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vvlc/oracle.hpp"

using namespace vvlc;
using namespace vvlc::oracle;

namespace {

scatterfield::VmfField make_field(double k) {
    scatterfield::VmfField f;
    f.mean = {deg2rad(10.0), deg2rad(2.0)};
    f.concentration = k;
    return f;
}

}  // namespace

TEST_CASE("deviation records") {
    const DeviationRecord r = make_deviation("q", 1.01, 1.0, "fp");
    CHECK(r.abs_dev == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(r.rel_dev == doctest::Approx(0.01).epsilon(1e-9));
    const DeviationRecord z = make_deviation("q", 0.0, 0.0, "fp");
    CHECK(z.rel_dev == 0.0);
}

TEST_CASE("Monte-Carlo expectation") {
    const auto field = make_field(30.0);
    const McEstimate one = mc_integrate([](const AnglePair&) { return 1.0; }, field, 3,
                                        10000);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.std_error == doctest::Approx(0.0).epsilon(1e-12));

    // Isotropic field: E[cos(beta)] = pi/4.
    const auto iso = make_field(0.0);
    const McEstimate m = mc_integrate(
        [](const AnglePair& at) { return std::cos(at.elevation); }, iso, 5, 200000);
    CHECK(std::abs(m.value - kPi / 4.0) < 3.0 * m.std_error + 1e-6);

    CHECK_THROWS_AS(mc_integrate([](const AnglePair&) { return 1.0; }, field, 1, 10),
                    std::invalid_argument);
}

TEST_CASE("standard error shrinks as 1/sqrt(n)") {
    const auto iso = make_field(0.0);
    auto f = [](const AnglePair& at) { return std::cos(at.elevation); };
    const McEstimate small = mc_integrate(f, iso, 11, 50000);
    const McEstimate large = mc_integrate(f, iso, 11, 200000);
    CHECK(small.std_error / large.std_error == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("quadrature expectation") {
    for (double k : {0.0, 3.0, 10.0, 30.0}) {
        const QuadEstimate q =
            quad_integrate([](const AnglePair&) { return 1.0; }, make_field(k), 1e-7);
        CHECK(q.converged);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-6));
    }
    const QuadEstimate zero =
        quad_integrate([](const AnglePair&) { return 0.0; }, make_field(30.0), 1e-7);
    CHECK(zero.value == 0.0);
    CHECK_THROWS_AS(
        quad_integrate([](const AnglePair&) { return 1.0; }, make_field(1.0), 0.0),
        std::invalid_argument);
}

TEST_CASE("quadrature agrees with Monte Carlo") {
    const auto field = make_field(30.0);
    auto f = [](const AnglePair& at) {
        return std::cos(at.elevation) * std::cos(at.azimuth);
    };
    const QuadEstimate q = quad_integrate(f, field, 1e-8);
    const McEstimate m = mc_integrate(f, field, 17, 400000);
    CHECK(std::abs(q.value - m.value) < 4.0 * m.std_error + 1e-9);
}

TEST_CASE("concentration limit") {
    const scenario::ScenarioConfig scn;
    for (auto sub : {geometry::SubModel::tx_sphere, geometry::SubModel::rx_sphere,
                     geometry::SubModel::cylinder}) {
        const DeviationRecord tight = concentration_limit_check(sub, scn, 10.0, 1000.0);
        CHECK(tight.rel_dev < 0.01);
        // A diffuse field is nowhere near the single-ray limit.
        const DeviationRecord loose = concentration_limit_check(sub, scn, 10.0, 2.0);
        CHECK(loose.rel_dev > tight.rel_dev);
    }
}
