// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vvlc/angles.hpp"
#include "vvlc/geometry.hpp"

namespace vvlc::scatterfield {

/// Von-Mises-Fisher field of effective scatterers around a mean direction.
/// elevation_collapsed folds the field onto the road plane (2D model): all
/// elevations are 0 and the azimuth follows a von Mises law with the same
/// concentration.
struct VmfField {
    AnglePair mean{};
    double concentration = 0.0;  // k >= 0
    int count = 100;             // N
    geometry::SubModel region = geometry::SubModel::tx_sphere;
    geometry::Side side = geometry::Side::left;
    bool elevation_collapsed = false;
};

void check_field(const VmfField& field);

struct ScattererSet {
    std::vector<std::pair<AnglePair, double>> entries;  // (direction, probability mass)
};

/// VMF density per rad^2 over azimuth (-pi, pi) x elevation (-pi/2, pi/2);
/// the cos(beta) factor is the spherical Jacobian so the density integrates
/// to 1 over the full domain. k = 0 is the isotropic limit cos(beta)/(4*pi).
double vmf_pdf(const VmfField& field, const AnglePair& at);
double vmf_log_pdf(const VmfField& field, const AnglePair& at);

/// Marginal elevation density (azimuth integrated out).
double vmf_marginal_elevation_pdf(const VmfField& field, double beta);

/// Equal-probability-mass discretization: ceil(sqrt(N)) elevation bands from
/// the marginal CDF, each split into equal-mass azimuth cells, cell counts
/// balanced to exactly N. Entries are probability-weighted cell centroids with
/// weight 1/N. N = 1 returns the distribution mode.
ScattererSet mev_discretize(const VmfField& field);

/// i.i.d. draws from the field, deterministic per seed.
std::vector<AnglePair> vmf_sample(const VmfField& field, std::uint64_t seed, std::size_t n);

}  // namespace vvlc::scatterfield
