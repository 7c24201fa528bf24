// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <string>

#include "vvlc/scenario.hpp"

namespace vvlc::oracle {

struct DeviationRecord {
    std::string quantity;
    double primary_value = 0.0;
    double oracle_value = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;  // |primary - oracle| / max(|oracle|, 1e-30)
    std::string fingerprint;
};

DeviationRecord make_deviation(const std::string& quantity, double primary_value,
                               double oracle_value, const std::string& fingerprint);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Sample mean of f under the field's own sampler; deterministic per seed.
McEstimate mc_integrate(const std::function<double(const AnglePair&)>& f,
                        const scatterfield::VmfField& field, std::uint64_t seed,
                        std::size_t n);

struct QuadEstimate {
    double value = 0.0;
    double achieved_tol = 0.0;  // relative; may exceed the request on refusal
    bool converged = true;
};

/// Expectation of f under the field via panel-refined Gauss-Legendre
/// quadrature of f times the density. Independent of the primary integrator.
QuadEstimate quad_integrate(const std::function<double(const AnglePair&)>& f,
                            const scatterfield::VmfField& field, double tol);

/// Compares the discretized DC gain at a near-delta concentration against the
/// single-ray gain evaluated exactly at the mean direction.
DeviationRecord concentration_limit_check(geometry::SubModel sub,
                                          const scenario::ScenarioConfig& scn,
                                          double distance, double k_large = 1000.0);

}  // namespace vvlc::oracle
