// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/cir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace vvlc::cir {

namespace {

constexpr double kNlosModeNumber = 1.0;  // reflected paths use the base cosine pattern
constexpr double kBetaEdge = kPi / 2.0 - 1e-9;

double closing_speed(const scenario::MotionState& m) {
    return m.speed_tx * std::cos(m.dir_tx) - m.speed_rx * std::cos(m.dir_rx);
}

double side_offset(const geometry::HeadlampLayout& lay, geometry::Side side) {
    return side == geometry::Side::left ? lay.side_offset_left : lay.side_offset_right;
}

// Adaptive Simpson in 1D, relative tolerance on the running whole-integral
// scale. Depth-capped; worst leftover interval error is accumulated.
struct QuadStatus {
    double worst_err = 0.0;
};

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol_abs, int depth,
               QuadStatus& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol_abs) {
        if (depth <= 0) st.worst_err = std::max(st.worst_err, std::abs(err));
        return left + right + err / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol_abs, depth - 1, st)
         + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol_abs, depth - 1, st);
}

double adaptive_1d(const std::function<double(double)>& f, double a, double b,
                   double tol_abs, QuadStatus& st) {
    // Seed with a few panels so narrow concentrated peaks are not missed.
    const int panels = 16;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + (b - a) * i / panels;
        const double x1 = a + (b - a) * (i + 1) / panels;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), f1 = f(x1), fm = f(xm);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson(f, x0, x1, f0, fm, f1, whole, tol_abs / panels, 24, st);
    }
    return total;
}

}  // namespace

double stop_time(const scenario::MotionState& motion) {
    const double c = closing_speed(motion);
    if (c <= 0.0) return std::numeric_limits<double>::infinity();
    return (motion.start_distance - motion.stop_distance) / c;
}

double los_distance(const scenario::MotionState& motion, double t) {
    if (t < 0.0) throw std::out_of_range("time before scenario start");
    if (t > stop_time(motion) * (1.0 + 1e-12))
        throw std::out_of_range("scenario ended: time past the stop distance");
    const double d = motion.start_distance - closing_speed(motion) * t;
    return std::max(d, motion.stop_distance);
}

CirComponent los_cir_at(const scenario::ScenarioConfig& scn, double distance,
                        geometry::Side side) {
    if (!(distance > 0.0)) throw std::invalid_argument("distance must be positive");
    const double delta = side_offset(scn.layout, side);
    const double d_los = std::sqrt(delta * delta + distance * distance);
    // Lamp at (0, +/-delta, 0), detector at (distance, 0, 0), same height.
    const geometry::Vec3 lamp = geometry::headlamp_position(scn.layout, side);
    const geometry::Vec3 to_rx{distance - lamp.x, -lamp.y, -lamp.z};
    const double range = to_rx.norm();
    const geometry::Vec3 bore =
        geometry::unit_vector(scn.layout.tilt_azimuth, scn.layout.tilt_elevation);
    const double cos_bt =
        (bore.x * to_rx.x + bore.y * to_rx.y + bore.z * to_rx.z) / range;
    const double cos_br = to_rx.x / range;  // detector normal faces the Tx (-x)

    CirComponent out;
    out.source = side;
    out.path_class = PathClass::los;
    out.delay = d_los / kSpeedOfLight;
    const double beta_r = std::acos(std::clamp(cos_br, -1.0, 1.0));
    if (beta_r > scn.receiver.fov || cos_bt <= 0.0) return out;  // gain stays 0
    const double g = optics::lens_gain(scn.receiver, beta_r);
    out.gain = (scn.lamp.mode_number + 1.0) * g * scn.receiver.filter_transmission
             * scn.receiver.area / (2.0 * kPi * d_los * d_los)
             * std::pow(cos_bt, scn.lamp.mode_number) * cos_br;
    return out;
}

CirComponent los_cir(const scenario::ScenarioConfig& scn, double t, geometry::Side side) {
    return los_cir_at(scn, los_distance(scn.motion, t), side);
}

double dc_gain_los(const scenario::ScenarioConfig& scn, double distance,
                   geometry::Side side) {
    // Printed DC-gain form: pi normalization, single cosine power.
    const CirComponent impulse = los_cir_at(scn, distance, side);
    if (impulse.gain == 0.0) return 0.0;
    return impulse.gain * 2.0 / (scn.lamp.mode_number + 1.0);
}

SbRay sb_ray(const scenario::ScenarioConfig& scn, const geometry::EllipseGeometry& ell,
             geometry::SubModel sub, geometry::Side side, const AnglePair& angle) {
    SbRay out;
    out.component.source = side;
    out.component.path_class = sub == geometry::SubModel::tx_sphere ? PathClass::sb1
                             : sub == geometry::SubModel::rx_sphere ? PathClass::sb2
                                                                    : PathClass::sb3;
    try {
        check_angles(angle);
        if (!geometry::forward_hemisphere(sub, angle)) {
            out.excluded = true;
            return out;
        }
        const geometry::PathLengths paths = geometry::sb_paths(
            scn.backend, sub, ell, scn.spheres, scn.layout, side, angle);
        const AnglePair coupled =
            geometry::sb_coupled(scn.backend, sub, ell, scn.spheres, angle);
        const AnglePair dep = sub == geometry::SubModel::tx_sphere ? angle : coupled;
        const AnglePair arr = sub == geometry::SubModel::tx_sphere ? coupled : angle;

        out.component.delay = paths.total() / kSpeedOfLight;
        const double beta_r = std::abs(arr.elevation);
        if (beta_r > scn.receiver.fov) {
            out.excluded = true;
            return out;
        }
        const double four_cos = std::cos(dep.azimuth) * std::cos(dep.elevation)
                              * std::cos(arr.azimuth) * std::cos(arr.elevation);
        if (four_cos <= 0.0) {
            out.excluded = true;
            return out;
        }
        const double gt = optics::lens_gain(scn.receiver, beta_r)
                        * scn.receiver.filter_transmission;
        double denom, rho;
        if (sub == geometry::SubModel::tx_sphere) {
            denom = kPi * kPi * paths.tx_to_scatterer * paths.tx_to_scatterer
                  * paths.scatterer_to_rx * paths.scatterer_to_rx;
            rho = scn.reflectivity_vehicles;
        } else {
            const double eps = paths.total();
            denom = kPi * eps * eps;
            rho = sub == geometry::SubModel::rx_sphere ? scn.reflectivity_vehicles
                                                       : scn.reflectivity_roadside;
        }
        out.component.gain = gt * scn.receiver.area * rho / denom * four_cos;
    } catch (const std::exception&) {
        out.component.gain = 0.0;
        out.excluded = true;
    }
    return out;
}

SbCirResult sb_cir(const scenario::ScenarioConfig& scn, double distance,
                   geometry::Side side, geometry::SubModel sub,
                   const scatterfield::ScattererSet& scatterers) {
    const geometry::EllipseGeometry ell = scenario::ellipse_at(scn, distance);
    SbCirResult out;
    out.components.reserve(scatterers.entries.size());
    for (const auto& [angle, weight] : scatterers.entries) {
        SbRay ray = sb_ray(scn, ell, sub, side, angle);
        ray.component.gain *= weight;
        if (ray.excluded) ++out.excluded;
        out.components.push_back(ray.component);
    }
    return out;
}

namespace {

}  // namespace

double nlos_lambertian(const scenario::ScenarioConfig& scn, const AnglePair& dep) {
    // Source intensity at the full off-boresight angle of the departure
    // direction; reflected paths use mode number 1.
    const geometry::Vec3 bore =
        geometry::unit_vector(scn.layout.tilt_azimuth, scn.layout.tilt_elevation);
    const geometry::Vec3 dir = geometry::unit_vector(dep.azimuth, dep.elevation);
    const double cos_off = bore.x * dir.x + bore.y * dir.y + bore.z * dir.z;
    if (cos_off <= 0.0) return 0.0;
    return (kNlosModeNumber + 1.0) / (2.0 * kPi) * std::pow(cos_off, kNlosModeNumber);
}

namespace {

// Per-direction DC-gain integrand for one scatterer field: Lambertian
// intensity at the departure direction times the per-ray gain. The scatterer
// density is applied by the caller.
double dc_integrand(const scenario::ScenarioConfig& scn,
                    const geometry::EllipseGeometry& ell, geometry::SubModel sub,
                    geometry::Side side, const AnglePair& angle) {
    const SbRay ray = sb_ray(scn, ell, sub, side, angle);
    if (ray.excluded || ray.component.gain <= 0.0) return 0.0;
    const AnglePair dep = sub == geometry::SubModel::tx_sphere
                              ? angle
                              : geometry::sb_coupled(scn.backend, sub, ell, scn.spheres, angle);
    return nlos_lambertian(scn, dep) * ray.component.gain;
}

DcGain dc_gain_field(const scenario::ScenarioConfig& scn, double distance,
                     geometry::Side side, geometry::SubModel sub,
                     const scatterfield::VmfField& field, const DcMethod& method) {
    const geometry::EllipseGeometry ell = scenario::ellipse_at(scn, distance);
    DcGain out;
    switch (method.kind) {
        case DcMethod::Kind::mev_sum: {
            const scatterfield::ScattererSet set = scatterfield::mev_discretize(field);
            for (const auto& [angle, weight] : set.entries)
                out.value += weight * dc_integrand(scn, ell, sub, side, angle);
            return out;
        }
        case DcMethod::Kind::monte_carlo: {
            const std::vector<AnglePair> draws =
                scatterfield::vmf_sample(field, method.seed, method.samples);
            double sum = 0.0, sum_sq = 0.0;
            for (const AnglePair& angle : draws) {
                const double v = dc_integrand(scn, ell, sub, side, angle);
                sum += v;
                sum_sq += v * v;
            }
            const double n = static_cast<double>(draws.size());
            out.value = sum / n;
            const double var = std::max(0.0, sum_sq / n - out.value * out.value);
            out.std_error = std::sqrt(var / n);
            return out;
        }
        case DcMethod::Kind::quadrature:
            break;
    }

    QuadStatus st;
    if (field.elevation_collapsed) {
        auto f = [&](double alpha) {
            const AnglePair at{wrap_azimuth(alpha), 0.0};
            return dc_integrand(scn, ell, sub, side, at) * scatterfield::vmf_pdf(field, at);
        };
        // Rough scale for the absolute tolerance target.
        const double scale =
            std::max(std::abs(f(field.mean.azimuth)), 1e-30) * 2.0 * kPi;
        out.value = adaptive_1d(f, field.mean.azimuth - kPi, field.mean.azimuth + kPi,
                                method.tol * scale, st);
        out.achieved_tol = st.worst_err / std::max(std::abs(out.value), 1e-30);
        return out;
    }
    auto outer = [&](double alpha) {
        auto inner = [&](double beta) {
            const AnglePair at{wrap_azimuth(alpha), beta};
            return dc_integrand(scn, ell, sub, side, at) * scatterfield::vmf_pdf(field, at);
        };
        QuadStatus st_in;
        return adaptive_1d(inner, -kBetaEdge, kBetaEdge, method.tol * 1e-10, st_in);
    };
    const double scale =
        std::max(std::abs(outer(field.mean.azimuth)), 1e-30) * 2.0 * kPi;
    out.value = adaptive_1d(outer, field.mean.azimuth - kPi, field.mean.azimuth + kPi,
                            method.tol * scale, st);
    out.achieved_tol = st.worst_err / std::max(std::abs(out.value), 1e-30);
    return out;
}

}  // namespace

DcGain dc_gain_sb(const scenario::ScenarioConfig& scn, double distance,
                  geometry::Side side, geometry::SubModel sub, const DcMethod& method,
                  Population population) {
    if (population != Population::both) {
        const geometry::Side pop = population == Population::left_side
                                       ? geometry::Side::left
                                       : geometry::Side::right;
        return dc_gain_field(scn, distance, side, sub,
                             scenario::field_for(scn, sub, pop), method);
    }
    const DcGain l = dc_gain_field(scn, distance, side, sub,
                                   scenario::field_for(scn, sub, geometry::Side::left),
                                   method);
    DcMethod m2 = method;
    m2.seed = method.seed + 0x9e3779b97f4a7c15ULL;  // decorrelate the two populations
    const DcGain r = dc_gain_field(scn, distance, side, sub,
                                   scenario::field_for(scn, sub, geometry::Side::right),
                                   m2);
    DcGain out;
    out.value = 0.5 * (l.value + r.value);
    out.std_error = 0.5 * std::sqrt(l.std_error * l.std_error + r.std_error * r.std_error);
    out.achieved_tol = std::max(l.achieved_tol, r.achieved_tol);
    return out;
}

LinkResult received_power_at(const scenario::ScenarioConfig& scn, double distance,
                             double time) {
    LinkResult out;
    out.time = time;
    out.distance = distance;
    const double p_tx = optics::tx_power_watts(scn.lamp);
    const DcMethod mev{};

    for (geometry::Side side : {geometry::Side::left, geometry::Side::right}) {
        const double g_los = dc_gain_los(scn, distance, side);
        const double g1 = dc_gain_sb(scn, distance, side, geometry::SubModel::tx_sphere,
                                     mev, Population::both).value;
        const double g2 = dc_gain_sb(scn, distance, side, geometry::SubModel::rx_sphere,
                                     mev, Population::both).value;
        const double g3 = dc_gain_sb(scn, distance, side, geometry::SubModel::cylinder,
                                     mev, Population::both).value;
        auto set = [&](ClassPower& gain, ClassPower& power, double g) {
            if (side == geometry::Side::left) {
                gain.left = g;
                power.left = p_tx * g;
            } else {
                gain.right = g;
                power.right = p_tx * g;
            }
        };
        set(out.gain_los, out.los, g_los);
        set(out.gain_sb1, out.sb1, g1);
        set(out.gain_sb2, out.sb2, g2);
        set(out.gain_sb3, out.sb3, g3);
    }
    out.power_total =
        out.los.total() + out.sb1.total() + out.sb2.total() + out.sb3.total();
    // Lens and filter gains multiply every path identically in the constant-
    // concentrator mode; report the stripped power alongside.
    const double gt = optics::lens_gain(scn.receiver, scn.receiver.fov)
                    * scn.receiver.filter_transmission;
    out.power_total_bare = gt > 0.0 ? out.power_total / gt : 0.0;
    out.noise_terms = noise::noise_breakdown(scn.noise, scn.receiver.responsivity,
                                             out.power_total, scn.receiver.area);
    const noise::SnrResult s = noise::snr(scn.noise, scn.receiver.responsivity,
                                          out.power_total, scn.receiver.area);
    out.snr_ratio = s.ratio;
    out.snr_db = s.db;
    return out;
}

LinkResult received_power(const scenario::ScenarioConfig& scn, double t) {
    return received_power_at(scn, los_distance(scn.motion, t), t);
}

scenario::ScenarioConfig reduce_to_2d(const scenario::ScenarioConfig& scn) {
    scenario::ScenarioConfig out = scn;
    out.collapse_elevation = true;
    out.layout.tilt_elevation = 0.0;
    out.vmf.beta0 = 0.0;
    for (auto& ov : out.vmf_override) {
        ov.beta0 = 0.0;
    }
    return out;
}

double calibrate_tx_power(const scenario::ScenarioConfig& scn, double distance,
                          geometry::Side side, geometry::SubModel sub,
                          Population population, double target_power_w) {
    if (!(target_power_w > 0.0))
        throw std::invalid_argument("calibration target power must be positive");
    const DcGain g = dc_gain_sb(scn, distance, side, sub, DcMethod{}, population);
    if (!(g.value > 0.0))
        throw std::domain_error("cannot calibrate: single-bounce gain is zero");
    return target_power_w / g.value;
}

}  // namespace vvlc::cir
