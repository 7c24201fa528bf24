// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vvlc/cir.hpp"

namespace vvlc::oracle {

DeviationRecord make_deviation(const std::string& quantity, double primary_value,
                               double oracle_value, const std::string& fingerprint) {
    DeviationRecord rec;
    rec.quantity = quantity;
    rec.primary_value = primary_value;
    rec.oracle_value = oracle_value;
    rec.abs_dev = std::abs(primary_value - oracle_value);
    rec.rel_dev = rec.abs_dev / std::max(std::abs(oracle_value), 1e-30);
    rec.fingerprint = fingerprint;
    return rec;
}

McEstimate mc_integrate(const std::function<double(const AnglePair&)>& f,
                        const scatterfield::VmfField& field, std::uint64_t seed,
                        std::size_t n) {
    if (n < 1000) throw std::invalid_argument("Monte-Carlo oracle needs n >= 1000");
    const std::vector<AnglePair> draws = scatterfield::vmf_sample(field, seed, n);
    double sum = 0.0, sum_sq = 0.0;
    for (const AnglePair& at : draws) {
        const double v = f(at);
        sum += v;
        sum_sq += v * v;
    }
    McEstimate out;
    const double dn = static_cast<double>(n);
    out.value = sum / dn;
    const double var = std::max(0.0, sum_sq / dn - out.value * out.value);
    out.std_error = std::sqrt(var / dn);
    return out;
}

namespace {

constexpr double kBetaEdge = kPi / 2.0 - 1e-9;

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGx[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                           0.538469310105683, 0.906179845938664};
constexpr double kGw[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                           0.478628670499366, 0.236926885056189};

struct Panel {
    double ax, bx, ay, by;
    double estimate;
};

double gauss_panel_2d(const std::function<double(double, double)>& f, double ax,
                      double bx, double ay, double by) {
    const double hx = 0.5 * (bx - ax), cx = 0.5 * (bx + ax);
    const double hy = 0.5 * (by - ay), cy = 0.5 * (by + ay);
    double sum = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            sum += kGw[i] * kGw[j] * f(cx + hx * kGx[i], cy + hy * kGx[j]);
    return sum * hx * hy;
}

double gauss_panel_1d(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) sum += kGw[i] * f(c + h * kGx[i]);
    return sum * h;
}

}  // namespace

QuadEstimate quad_integrate(const std::function<double(const AnglePair&)>& f,
                            const scatterfield::VmfField& field, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    if (field.elevation_collapsed) {
        auto g = [&](double alpha) {
            const AnglePair at{wrap_azimuth(alpha), 0.0};
            return f(at) * scatterfield::vmf_pdf(field, at);
        };
        const double a = field.mean.azimuth - kPi, b = field.mean.azimuth + kPi;
        int panels = 32;
        double prev = 0.0;
        QuadEstimate out;
        for (int round = 0; round < 8; ++round) {
            double total = 0.0;
            for (int i = 0; i < panels; ++i)
                total += gauss_panel_1d(g, a + (b - a) * i / panels,
                                        a + (b - a) * (i + 1) / panels);
            if (round > 0) {
                out.achieved_tol =
                    std::abs(total - prev) / std::max(std::abs(total), 1e-30);
                if (out.achieved_tol <= tol) {
                    out.value = total;
                    return out;
                }
            }
            prev = total;
            panels *= 2;
        }
        out.value = prev;
        out.converged = false;
        return out;
    }

    auto g = [&](double alpha, double beta) {
        const AnglePair at{wrap_azimuth(alpha), beta};
        return f(at) * scatterfield::vmf_pdf(field, at);
    };
    const double ax = field.mean.azimuth - kPi, bx = field.mean.azimuth + kPi;
    const double ay = -kBetaEdge, by = kBetaEdge;
    int nx = 16, ny = 8;
    double prev = 0.0;
    QuadEstimate out;
    for (int round = 0; round < 7; ++round) {
        double total = 0.0;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                total += gauss_panel_2d(g, ax + (bx - ax) * i / nx,
                                        ax + (bx - ax) * (i + 1) / nx,
                                        ay + (by - ay) * j / ny,
                                        ay + (by - ay) * (j + 1) / ny);
        if (round > 0) {
            out.achieved_tol = std::abs(total - prev) / std::max(std::abs(total), 1e-30);
            if (out.achieved_tol <= tol) {
                out.value = total;
                return out;
            }
        }
        prev = total;
        nx *= 2;
        ny *= 2;
    }
    out.value = prev;
    out.converged = false;
    return out;
}

DeviationRecord concentration_limit_check(geometry::SubModel sub,
                                          const scenario::ScenarioConfig& scn,
                                          double distance, double k_large) {
    scenario::ScenarioConfig concentrated = scn;
    concentrated.vmf.concentration = k_large;
    for (auto& ov : concentrated.vmf_override) ov.has_concentration = false;

    const cir::DcGain dc =
        cir::dc_gain_sb(concentrated, distance, geometry::Side::left, sub,
                        cir::DcMethod{}, cir::Population::left_side);

    // Single ray exactly at the mean direction of the left population.
    const scatterfield::VmfField field =
        scenario::field_for(concentrated, sub, geometry::Side::left);
    const geometry::EllipseGeometry ell = scenario::ellipse_at(concentrated, distance);
    const cir::SbRay ray =
        cir::sb_ray(concentrated, ell, sub, geometry::Side::left, field.mean);
    const AnglePair dep =
        sub == geometry::SubModel::tx_sphere
            ? field.mean
            : geometry::sb_coupled(concentrated.backend, sub, ell, concentrated.spheres,
                                   field.mean);
    const double single =
        ray.excluded ? 0.0 : cir::nlos_lambertian(concentrated, dep) * ray.component.gain;

    return make_deviation("dc_gain_concentration_limit", dc.value, single,
                          "sub=" + std::to_string(static_cast<int>(sub)) +
                              " d=" + std::to_string(distance) +
                              " k=" + std::to_string(k_large));
}

}  // namespace vvlc::oracle
