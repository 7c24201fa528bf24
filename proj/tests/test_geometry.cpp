// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <random>

#include "doctest.h"
#include "vvlc/geometry.hpp"

using namespace vvlc;
using namespace vvlc::geometry;

namespace {

EllipseGeometry table_ellipse() { return ellipse_from_axes(40.0, 19.0); }

HeadlampLayout centered_layout() {
    HeadlampLayout lay;
    lay.side_offset_left = 0.0;
    lay.side_offset_right = 0.0;
    return lay;
}

}  // namespace

TEST_CASE("ellipse construction") {
    const EllipseGeometry e = ellipse_from_axes(5.0, 3.0);
    CHECK(e.f == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(e.d == doctest::Approx(8.0).epsilon(1e-12));

    const EllipseGeometry t = table_ellipse();
    CHECK(t.f == doctest::Approx(35.199431813596085).epsilon(1e-12));
    CHECK(t.d == doctest::Approx(70.39886362719217).epsilon(1e-12));
    CHECK(t.a * t.a == doctest::Approx(t.b * t.b + t.f * t.f).epsilon(1e-12));

    CHECK_THROWS_AS(ellipse_from_axes(3.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(ellipse_from_axes(3.0, 3.0), std::invalid_argument);
}

TEST_CASE("tx-sphere paths, zero-offset headlight at sphere center") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const HeadlampLayout lay = centered_layout();
    for (Side side : {Side::left, Side::right}) {
        const PathLengths p = txsphere_paths(ell, sph, lay, side, {0.0, 0.0});
        CHECK(p.tx_to_scatterer == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(txsphere_paths(ell, sph, lay, Side::left, {0.0, kPi / 2 - 1e-15}),
                    std::invalid_argument);
}

TEST_CASE("tx-sphere arrival coupling") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const AnglePair on_axis = txsphere_arrival(ell, sph, {0.0, 0.0});
    CHECK(on_axis.azimuth == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(on_axis.elevation == doctest::Approx(0.0).epsilon(1e-12));

    const AnglePair side = txsphere_arrival(ell, sph, {kPi / 2, 0.0});
    CHECK(side.azimuth == doctest::Approx(0.056758072025250204).epsilon(1e-9));
    CHECK(side.elevation == doctest::Approx(0.0).epsilon(1e-12));

    const AnglePair flat = txsphere_arrival(ell, sph, {0.7, 0.0});
    CHECK(flat.elevation == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rx-sphere paths") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const HeadlampLayout lay = centered_layout();
    const PathLengths collinear = rxsphere_paths(ell, sph, lay, Side::left, {0.0, 0.0});
    CHECK(collinear.tx_to_scatterer ==
          doctest::Approx(std::abs(2.0 * ell.f - sph.radius_rx)).epsilon(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> az(-3.1, 3.1), el(-1.3, 1.3);
    for (int i = 0; i < 50; ++i) {
        const AnglePair arr{wrap_azimuth(az(rng)), el(rng)};
        const PathLengths p = rxsphere_paths(ell, sph, lay, Side::left, arr);
        CHECK(p.scatterer_to_rx == doctest::Approx(sph.radius_rx).epsilon(1e-12));
    }
}

TEST_CASE("rx-sphere departure coupling") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const AnglePair on_axis = rxsphere_departure(ell, sph, {0.0, 0.0});
    CHECK(on_axis.azimuth == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(on_axis.elevation == doctest::Approx(0.0).epsilon(1e-12));

    const AnglePair side = rxsphere_departure(ell, sph, {kPi / 2, 0.0});
    CHECK(side.azimuth == doctest::Approx(0.056758072025250204).epsilon(1e-9));
    CHECK(rxsphere_departure(ell, sph, {0.9, 0.0}).elevation ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cylinder focal geometry") {
    const EllipseGeometry ell = table_ellipse();
    const HeadlampLayout lay = centered_layout();
    const PathLengths near = cylinder_paths(ell, lay, Side::left, {0.0, 0.0});
    CHECK(near.scatterer_to_rx == doctest::Approx(4.800568186403915).epsilon(1e-9));
    const PathLengths far = cylinder_paths(ell, lay, Side::left, {kPi, 0.0});
    CHECK(far.scatterer_to_rx == doctest::Approx(75.19943181359608).epsilon(1e-9));

    const AnglePair dep = cylinder_departure(ell, {0.0, 0.0});
    CHECK(dep.azimuth == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dep.elevation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cylinder_departure(ell, {0.8, 0.0}).elevation ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Cartesian reconstruction invariants") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const HeadlampLayout lay = centered_layout();

    // Zero-offset headlight: Tx-sphere leg equals the radius.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> az(-3.1, 3.1), el(-1.4, 1.4);
    for (int i = 0; i < 200; ++i) {
        const AnglePair at{wrap_azimuth(az(rng)), el(rng)};
        const PathLengths p =
            cartesian_oracle_paths(SubModel::tx_sphere, ell, sph, lay, Side::left, at);
        CHECK(p.tx_to_scatterer == doctest::Approx(sph.radius_tx).epsilon(1e-12));
    }

    // Focal-chord sum: planar cylinder point, both legs sum to 2a.
    for (int i = 0; i < 200; ++i) {
        const AnglePair at{wrap_azimuth(az(rng)), 0.0};
        const PathLengths p =
            cartesian_oracle_paths(SubModel::cylinder, ell, sph, lay, Side::left, at);
        CHECK(p.total() == doctest::Approx(2.0 * ell.a).epsilon(1e-9));
    }

    // Triangle inequality against the direct headlight-to-detector distance.
    HeadlampLayout offset;  // defaults: 0.6 m offsets
    for (int i = 0; i < 1000; ++i) {
        const auto sub = static_cast<SubModel>(i % 3);
        const AnglePair at{wrap_azimuth(az(rng)), el(rng)};
        const PathLengths p =
            cartesian_oracle_paths(sub, ell, sph, offset, Side::right, at);
        const Vec3 lamp = headlamp_position(offset, Side::right);
        const Vec3 rx{ell.d, 0.0, 0.0};
        const double direct = (rx - lamp).norm();
        CHECK(p.total() >= direct - 1e-9);
    }
}

TEST_CASE("mirror symmetry swaps headlights") {
    const EllipseGeometry ell = table_ellipse();
    const SphereGeometry sph;
    const HeadlampLayout lay;  // symmetric offsets, no tilt
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> az(-3.1, 3.1), el(-1.4, 1.4);
    for (int i = 0; i < 300; ++i) {
        const auto sub = static_cast<SubModel>(i % 3);
        const AnglePair at{wrap_azimuth(az(rng)), el(rng)};
        const AnglePair mirrored{wrap_azimuth(-at.azimuth), at.elevation};
        const PathLengths l =
            cartesian_oracle_paths(sub, ell, sph, lay, Side::left, at);
        const PathLengths r =
            cartesian_oracle_paths(sub, ell, sph, lay, Side::right, mirrored);
        CHECK(l.tx_to_scatterer == doctest::Approx(r.tx_to_scatterer).epsilon(1e-12));
        CHECK(l.scatterer_to_rx == doctest::Approx(r.scatterer_to_rx).epsilon(1e-12));
    }
}

TEST_CASE("forward-hemisphere filter") {
    CHECK(forward_hemisphere(SubModel::tx_sphere, {0.3, 0.1}));
    CHECK_FALSE(forward_hemisphere(SubModel::tx_sphere, {2.8, 0.1}));
    CHECK(forward_hemisphere(SubModel::rx_sphere, {0.3, 0.1}));
    CHECK_FALSE(forward_hemisphere(SubModel::rx_sphere, {2.9, 0.0}));
    CHECK(forward_hemisphere(SubModel::cylinder, {2.9, 0.0}));
}
