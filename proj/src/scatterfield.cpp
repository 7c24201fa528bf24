// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "vvlc/scatterfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>

namespace vvlc::scatterfield {

namespace {

constexpr double kBetaEdge = kPi / 2.0 - 1e-9;

double log_bessel_i0(double x) {
    // std::cyl_bessel_i overflows near x ~ 700; switch to the asymptotic
    // expansion well before that.
    if (x < 50.0) return std::log(std::cyl_bessel_i(0.0, x));
    return x - 0.5 * std::log(2.0 * kPi * x)
         + std::log1p(1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
}

double log_sinh(double k) {
    // log(sinh k) = k + log(1 - e^{-2k}) - log 2
    return k + std::log1p(-std::exp(-2.0 * k)) - std::log(2.0);
}

double von_mises_log_pdf(double kappa, double mean, double alpha) {
    if (kappa == 0.0) return -std::log(2.0 * kPi);
    return kappa * std::cos(alpha - mean) - std::log(2.0 * kPi) - log_bessel_i0(kappa);
}

double portable_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void check_field(const VmfField& field) {
    check_angles(field.mean);
    if (!(field.concentration >= 0.0))
        throw std::invalid_argument("VMF concentration must be >= 0");
    if (field.count < 1)
        throw std::invalid_argument("scatterer count must be >= 1");
}

double vmf_log_pdf(const VmfField& field, const AnglePair& at) {
    check_angles(at);
    const double k = field.concentration;
    if (field.elevation_collapsed)
        return von_mises_log_pdf(k, field.mean.azimuth, at.azimuth);
    const double log_cos_b = std::log(std::cos(at.elevation));
    if (k == 0.0) return log_cos_b - std::log(4.0 * kPi);
    const double dot = std::cos(field.mean.elevation) * std::cos(at.elevation)
                         * std::cos(at.azimuth - field.mean.azimuth)
                     + std::sin(field.mean.elevation) * std::sin(at.elevation);
    return std::log(k) + log_cos_b - std::log(4.0 * kPi) - log_sinh(k) + k * dot;
}

double vmf_pdf(const VmfField& field, const AnglePair& at) {
    return std::exp(vmf_log_pdf(field, at));
}

double vmf_marginal_elevation_pdf(const VmfField& field, double beta) {
    if (field.elevation_collapsed)
        throw std::logic_error("elevation marginal undefined for a collapsed field");
    if (std::abs(beta) >= kPi / 2.0) return 0.0;
    const double k = field.concentration;
    const double cb = std::cos(beta);
    if (k == 0.0) return cb / 2.0;
    const double log_g = std::log(k) + std::log(cb) - std::log(2.0) - log_sinh(k)
                       + k * std::sin(field.mean.elevation) * std::sin(beta)
                       + log_bessel_i0(k * std::cos(field.mean.elevation) * cb);
    return std::exp(log_g);
}

namespace {

AnglePair field_mode(const VmfField& field) {
    if (field.elevation_collapsed || field.concentration == 0.0)
        return {field.mean.azimuth, 0.0};
    // The cos(beta) Jacobian shifts the mode of the density slightly below the
    // mean elevation; scan the log density along alpha = alpha0.
    double best_beta = field.mean.elevation;
    double best = -1e300;
    const int n = 20001;
    for (int i = 0; i < n; ++i) {
        const double beta = -kBetaEdge + (2.0 * kBetaEdge) * i / (n - 1);
        const double v = vmf_log_pdf(field, {field.mean.azimuth, beta});
        if (v > best) {
            best = v;
            best_beta = beta;
        }
    }
    return {field.mean.azimuth, best_beta};
}

ScattererSet mev_collapsed(const VmfField& field) {
    const int n_alpha = 4001;
    const int n = field.count;
    std::vector<double> alpha(n_alpha), w(n_alpha);
    double max_log = -1e300;
    for (int i = 0; i < n_alpha; ++i) {
        alpha[i] = field.mean.azimuth - kPi + 2.0 * kPi * i / (n_alpha - 1);
        const double lg = von_mises_log_pdf(field.concentration, field.mean.azimuth, alpha[i]);
        max_log = std::max(max_log, lg);
        w[i] = lg;
    }
    double total = 0.0;
    for (int i = 0; i < n_alpha; ++i) {
        w[i] = std::exp(w[i] - max_log);
        total += w[i];
    }

    ScattererSet out;
    out.entries.reserve(static_cast<std::size_t>(n));
    double acc = 0.0, cell_f = 0.0, cell_fa = 0.0;
    int cell = 0;
    for (int i = 0; i < n_alpha && cell < n; ++i) {
        acc += w[i];
        cell_f += w[i];
        cell_fa += w[i] * alpha[i];
        if (acc >= total * (cell + 1) / n || i == n_alpha - 1) {
            const double a = cell_f > 0.0 ? cell_fa / cell_f : alpha[i];
            out.entries.emplace_back(AnglePair{wrap_azimuth(a), 0.0}, 1.0 / n);
            cell_f = cell_fa = 0.0;
            ++cell;
        }
    }
    while (static_cast<int>(out.entries.size()) < n)
        out.entries.emplace_back(AnglePair{field.mean.azimuth, 0.0}, 1.0 / n);
    return out;
}

}  // namespace

namespace {

ScattererSet mev_discretize_uncached(const VmfField& field);

}  // namespace

ScattererSet mev_discretize(const VmfField& field) {
    check_field(field);
    // The construction depends only on the distribution parameters; sweeps
    // re-request the same field per row, so memoize.
    using Key = std::tuple<double, double, double, int, bool>;
    static std::map<Key, ScattererSet> cache;
    static std::mutex mutex;
    const Key key{field.mean.azimuth, field.mean.elevation, field.concentration,
                  field.count, field.elevation_collapsed};
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    ScattererSet out = mev_discretize_uncached(field);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, out);
    return out;
}

namespace {

ScattererSet mev_discretize_uncached(const VmfField& field) {
    const int n = field.count;
    if (n == 1) {
        ScattererSet out;
        out.entries.emplace_back(field_mode(field), 1.0);
        return out;
    }
    if (field.elevation_collapsed) return mev_collapsed(field);

    // Marginal elevation CDF on a fine grid.
    const int n_beta = 4001;
    std::vector<double> beta(n_beta), g(n_beta), cdf(n_beta);
    for (int i = 0; i < n_beta; ++i) {
        beta[i] = -kBetaEdge + 2.0 * kBetaEdge * i / (n_beta - 1);
        g[i] = vmf_marginal_elevation_pdf(field, beta[i]);
    }
    cdf[0] = 0.0;
    const double db = beta[1] - beta[0];
    for (int i = 1; i < n_beta; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (g[i] + g[i - 1]) * db;
    const double mass = cdf[n_beta - 1];

    const int n_bands = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<double> edges(n_bands + 1);
    edges[0] = beta.front();
    edges[n_bands] = beta.back();
    int j = 0;
    for (int b = 1; b < n_bands; ++b) {
        const double target = mass * b / n_bands;
        while (j < n_beta - 1 && cdf[j + 1] < target) ++j;
        const double span = cdf[j + 1] - cdf[j];
        const double frac = span > 0.0 ? (target - cdf[j]) / span : 0.0;
        edges[b] = beta[j] + frac * db;
    }

    // Balance cell counts across bands to exactly N.
    std::vector<int> cells(n_bands, n / n_bands);
    for (int b = 0; b < n % n_bands; ++b) ++cells[b];

    const int n_alpha = 2001;
    const int n_sub = 96;  // elevation sub-grid per band
    ScattererSet out;
    out.entries.reserve(static_cast<std::size_t>(n));

    for (int b = 0; b < n_bands; ++b) {
        const int nc = cells[b];
        if (nc == 0) continue;
        const double lo = edges[b], hi = edges[b + 1];

        // Column masses h(alpha) = integral of the density over the band, with
        // per-column centroid accumulators.
        std::vector<double> h(n_alpha, 0.0), hb(n_alpha, 0.0);
        std::vector<double> alpha(n_alpha);
        for (int i = 0; i < n_alpha; ++i)
            alpha[i] = field.mean.azimuth - kPi + 2.0 * kPi * i / (n_alpha - 1);
        double peak_log = -1e300;
        for (int s = 0; s < n_sub; ++s) {
            const double bb = lo + (hi - lo) * (s + 0.5) / n_sub;
            peak_log = std::max(peak_log,
                                vmf_log_pdf(field, {field.mean.azimuth, bb}));
        }
        for (int s = 0; s < n_sub; ++s) {
            const double bb = lo + (hi - lo) * (s + 0.5) / n_sub;
            for (int i = 0; i < n_alpha; ++i) {
                const double v =
                    std::exp(vmf_log_pdf(field, {wrap_azimuth(alpha[i]), bb}) - peak_log);
                h[i] += v;
                hb[i] += v * bb;
            }
        }

        double band_total = 0.0;
        for (int i = 0; i < n_alpha; ++i) band_total += h[i];
        if (band_total <= 0.0) {
            for (int c = 0; c < nc; ++c)
                out.entries.emplace_back(
                    AnglePair{field.mean.azimuth, 0.5 * (lo + hi)}, 1.0 / n);
            continue;
        }

        double acc = 0.0, cf = 0.0, cfa = 0.0, cfb = 0.0;
        int cell = 0;
        for (int i = 0; i < n_alpha && cell < nc; ++i) {
            acc += h[i];
            cf += h[i];
            cfa += h[i] * alpha[i];
            cfb += hb[i];
            if (acc >= band_total * (cell + 1) / nc || i == n_alpha - 1) {
                const double a = cf > 0.0 ? cfa / cf : alpha[i];
                const double e = cf > 0.0 ? cfb / cf : 0.5 * (lo + hi);
                out.entries.emplace_back(AnglePair{wrap_azimuth(a), e}, 1.0 / n);
                cf = cfa = cfb = 0.0;
                ++cell;
            }
        }
        while (cell < nc) {
            out.entries.emplace_back(AnglePair{field.mean.azimuth, 0.5 * (lo + hi)}, 1.0 / n);
            ++cell;
        }
    }
    return out;
}

}  // namespace

std::vector<AnglePair> vmf_sample(const VmfField& field, std::uint64_t seed, std::size_t n) {
    check_field(field);
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<AnglePair> out;
    out.reserve(n);

    if (field.elevation_collapsed) {
        // Numeric inverse CDF of the azimuth von Mises law.
        const int ng = 8193;
        std::vector<double> alpha(ng), cdf(ng);
        for (int i = 0; i < ng; ++i)
            alpha[i] = field.mean.azimuth - kPi + 2.0 * kPi * i / (ng - 1);
        cdf[0] = 0.0;
        const double da = alpha[1] - alpha[0];
        double prev = std::exp(von_mises_log_pdf(field.concentration, field.mean.azimuth, alpha[0]));
        for (int i = 1; i < ng; ++i) {
            const double cur =
                std::exp(von_mises_log_pdf(field.concentration, field.mean.azimuth, alpha[i]));
            cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * da;
            prev = cur;
        }
        const double total = cdf[ng - 1];
        for (std::size_t s = 0; s < n; ++s) {
            const double u = portable_uniform(rng) * total;
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            const int i = std::max<int>(1, static_cast<int>(it - cdf.begin()));
            const double span = cdf[i] - cdf[i - 1];
            const double frac = span > 0.0 ? (u - cdf[i - 1]) / span : 0.0;
            out.push_back({wrap_azimuth(alpha[i - 1] + frac * da), 0.0});
        }
        return out;
    }

    // Tangent-normal construction on the unit sphere.
    const double k = field.concentration;
    const geometry::Vec3 mu = geometry::unit_vector(field.mean.azimuth, field.mean.elevation);
    // Orthonormal tangent basis.
    geometry::Vec3 e1{-mu.y, mu.x, 0.0};
    const double e1n = e1.norm();
    if (e1n < 1e-12) e1 = {1.0, 0.0, 0.0}; else e1 = e1 * (1.0 / e1n);
    const geometry::Vec3 e2{mu.y * e1.z - mu.z * e1.y,
                            mu.z * e1.x - mu.x * e1.z,
                            mu.x * e1.y - mu.y * e1.x};

    for (std::size_t s = 0; s < n; ++s) {
        double u = portable_uniform(rng);
        if (u <= 0.0) u = 0x1.0p-53;
        const double theta = 2.0 * kPi * portable_uniform(rng);
        double w;
        if (k == 0.0) {
            w = 2.0 * u - 1.0;
        } else if (k > 350.0) {
            w = 1.0 + std::log(u) / k;  // e^{-2k} underflows
        } else {
            w = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * k)) / k;
        }
        w = std::clamp(w, -1.0, 1.0);
        const double v = std::sqrt(std::max(0.0, 1.0 - w * w));
        const geometry::Vec3 x = e1 * (v * std::cos(theta)) + e2 * (v * std::sin(theta)) + mu * w;
        AnglePair ang;
        ang.azimuth = wrap_azimuth(std::atan2(x.y, x.x));
        ang.elevation = std::asin(std::clamp(x.z, -1.0, 1.0));
        ang.elevation = std::clamp(ang.elevation, -kBetaEdge, kBetaEdge);
        out.push_back(ang);
    }
    return out;
}

}  // namespace vvlc::scatterfield
