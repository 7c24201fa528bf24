// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

// Release gate: one PASS/FAIL line per criterion; exit code = failure count.

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "vvlc/cir.hpp"
#include "vvlc/oracle.hpp"
#include "vvlc/scatterfield.hpp"
#include "vvlc/sweep.hpp"

using namespace vvlc;

namespace {

int g_failures = 0;

void run_criterion(int id, const std::string& label, double budget_s,
                   const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("criterion %d [%s]: %s (%.2f s)%s%s\n", id, label.c_str(),
                ok ? "PASS" : "FAIL", elapsed, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::vector<double> split_row(const std::string& row) {
    std::vector<double> out;
    std::stringstream ss(row);
    std::string cell;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
        if (first && (cell.empty() || std::isalpha(static_cast<unsigned char>(cell[0])))) {
            out.push_back(0.0);  // leading label cell
        } else {
            out.push_back(std::strtod(cell.c_str(), nullptr));
        }
        first = false;
    }
    return out;
}

std::string num(double v) { return sweep::format_cell(v); }

// run_sweep row layout: label, sweep_value, time_s, distance_m, then the power
// block starting at index 4.
constexpr int kLosL = 4, kLosR = 5, kSb1L = 6, kSb1R = 7, kSb2L = 8, kSb2R = 9,
              kSb3L = 10, kSb3R = 11, kTotal = 12, kSnrTotalDb = 19;

}  // namespace

int main() {
    const scenario::ScenarioConfig preset = scenario::paper_table_preset();

    run_criterion(1, "anchor power ratio", 5.0, [&](std::string& detail) {
        const double target10 = 3.37e-8;
        const double p = cir::calibrate_tx_power(preset, 10.0, geometry::Side::left,
                                                 geometry::SubModel::tx_sphere,
                                                 cir::Population::left_side, target10);
        scenario::ScenarioConfig wide = preset;
        wide.lamp.tx_power = p;
        wide.vmf.alpha0 = deg2rad(45.0);
        const double g45 = cir::dc_gain_sb(wide, 10.0, geometry::Side::left,
                                           geometry::SubModel::tx_sphere, cir::DcMethod{},
                                           cir::Population::left_side)
                               .value;
        const double p45 = p * g45;
        detail = "tx_power_w=" + num(p) + " power_45deg_w=" + num(p45) +
                 " band=[1.0875e-08,1.8125e-08]";
        return p45 >= 1.45e-8 * 0.75 && p45 <= 1.45e-8 * 1.25;
    });

    run_criterion(2, "monotonicity", 30.0, [&](std::string& detail) {
        bool ok = true;
        auto sb_total = [](const std::vector<double>& c) {
            return c[kSb1L] + c[kSb1R] + c[kSb2L] + c[kSb2R] + c[kSb3L] + c[kSb3R];
        };

        sweep::SweepSpec kspec;
        kspec.variable = sweep::SweepSpec::Variable::k;
        kspec.values = {3.0, 10.0, 30.0};
        const sweep::CsvDocument kdoc = sweep::run_sweep(preset, kspec);
        double prev = -1.0;
        for (const std::string& row : kdoc.rows) {
            const double sb = sb_total(split_row(row));
            if (sb < prev * (1.0 - 1e-12)) {
                ok = false;
                detail += "sb power decreased in k; ";
            }
            prev = sb;
        }

        sweep::SweepSpec aspec;
        aspec.variable = sweep::SweepSpec::Variable::alpha0;
        aspec.values = {deg2rad(10.0), deg2rad(30.0), deg2rad(45.0)};
        const sweep::CsvDocument adoc = sweep::run_sweep(preset, aspec);
        prev = 1e300;
        for (const std::string& row : adoc.rows) {
            const double sb = sb_total(split_row(row));
            if (sb > prev * (1.0 + 1e-12)) {
                ok = false;
                detail += "sb power increased in alpha0; ";
            }
            prev = sb;
        }

        const sweep::CsvDocument ddoc = sweep::run_sweep(preset, sweep::SweepSpec{});
        double prev_p = -1.0, prev_snr = -1e300;
        int checked = 0;
        for (const std::string& row : ddoc.rows) {
            const std::vector<double> c = split_row(row);
            const double d = c[3];
            if (d < 10.0 || d > 70.0) continue;
            // Rows advance in time, so distance decreases row to row.
            if (c[kTotal] <= prev_p) {
                ok = false;
                detail += "total power not strictly decreasing in distance; ";
            }
            if (c[kSnrTotalDb] <= prev_snr) {
                ok = false;
                detail += "snr not strictly decreasing in distance; ";
            }
            prev_p = c[kTotal];
            prev_snr = c[kSnrTotalDb];
            ++checked;
        }
        detail += "distance rows checked=" + std::to_string(checked);
        return ok && checked > 100;
    });

    run_criterion(3, "inverse square", 1.0, [&](std::string& detail) {
        scenario::ScenarioConfig axial = preset;
        axial.layout.side_offset_left = 0.0;
        axial.layout.side_offset_right = 0.0;
        const double g1 = cir::los_cir_at(axial, 10.0, geometry::Side::left).gain;
        const double g2 = cir::los_cir_at(axial, 20.0, geometry::Side::left).gain;
        const double ratio = g2 / g1;
        detail = "ratio=" + num(ratio);
        return std::abs(ratio - 0.25) <= 0.25 * 1e-9;
    });

    run_criterion(4, "normalizations", 10.0, [&](std::string& detail) {
        bool ok = true;
        for (double m : {1.0, 3.0, 10.0, 20.0}) {
            const int n = 200000;
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double t = (i + 0.5) * (kPi / 2) / n;
                sum += optics::lambertian_intensity(m, t) * 2.0 * kPi * std::sin(t);
            }
            sum *= (kPi / 2) / n;
            if (std::abs(sum - 1.0) > 1e-6) {
                ok = false;
                detail += "lambertian m=" + num(m) + " integral=" + num(sum) + "; ";
            }
        }
        for (double k : {0.0, 3.0, 10.0, 30.0}) {
            scatterfield::VmfField f;
            f.mean = {deg2rad(10.0), deg2rad(2.0)};
            f.concentration = k;
            const oracle::QuadEstimate q =
                oracle::quad_integrate([](const AnglePair&) { return 1.0; }, f, 1e-8);
            if (std::abs(q.value - 1.0) > 1e-6) {
                ok = false;
                detail += "vmf k=" + num(k) + " integral=" + num(q.value) + "; ";
            }
        }
        if (ok) detail = "all hemisphere/domain integrals = 1 within 1e-6";
        return ok;
    });

    run_criterion(5, "planar model overestimates", 30.0, [&](std::string& detail) {
        const sweep::CsvDocument doc = sweep::compare_2d3d(preset);
        // Ratio columns sit at indices 4, 7, 10, 13, 16.
        double worst = 1e300;
        int bad = 0;
        for (const std::string& row : doc.rows) {
            const std::vector<double> c = split_row(row);
            for (int idx : {4, 7, 10, 13, 16}) {
                if (c[idx] < worst) worst = c[idx];
                if (c[idx] < 1.0 - 1e-9) ++bad;
            }
        }
        detail = "rows=" + std::to_string(doc.rows.size()) + " min_ratio=" + num(worst) +
                 " below_one=" + std::to_string(bad);
        return bad == 0 && !doc.rows.empty();
    });

    run_criterion(6, "backend equivalence", 60.0, [&](std::string& detail) {
        const sweep::ValidationResult res = sweep::validate(preset);
        bool ok = true;
        int silent = 0;
        for (const sweep::GeometryDeviationStats& st : res.geometry) {
            // Agreement to 1e-9, or an itemized deviation with nonzero count.
            const bool agreed = st.max_abs <= 1e-9;
            const bool itemized = st.deviating > 0;
            if (!agreed && !itemized) {
                ok = false;
                ++silent;
                detail += "silent disagreement in " + st.quantity + "; ";
            }
        }
        double mc_se[3] = {0, 0, 0};
        for (const oracle::DeviationRecord& rec : res.records) {
            for (int s = 0; s < 3; ++s) {
                const char* names[3] = {"tx_sphere", "rx_sphere", "cylinder"};
                if (rec.quantity == std::string("dc.") + names[s] + ".mc_std_error")
                    mc_se[s] = rec.primary_value;
            }
        }
        for (const oracle::DeviationRecord& rec : res.records) {
            if (rec.quantity.find(".mev_vs_mc") != std::string::npos &&
                rec.rel_dev > 0.02) {
                ok = false;
                detail += rec.quantity + " rel_dev=" + num(rec.rel_dev) + "; ";
            }
            if (rec.quantity.find(".quad_vs_mc") != std::string::npos) {
                int s = rec.quantity.find("tx_sphere") != std::string::npos  ? 0
                        : rec.quantity.find("rx_sphere") != std::string::npos ? 1
                                                                              : 2;
                if (rec.abs_dev > 3.0 * mc_se[s]) {
                    ok = false;
                    detail += rec.quantity + " abs_dev=" + num(rec.abs_dev) +
                              " > 3*se=" + num(3.0 * mc_se[s]) + "; ";
                }
            }
        }
        if (ok)
            detail = "geometry quantities=" + std::to_string(res.geometry.size()) +
                     " (exact or itemized), dc cross-checks within gates";
        return ok;
    });

    run_criterion(7, "noise arithmetic", 1.0, [&](std::string& detail) {
        const noise::NoiseBreakdown nb = noise::noise_breakdown(
            preset.noise, preset.receiver.responsivity, 1e-6, preset.receiver.area);
        bool ok = true;
        if (std::abs(nb.background - 1.834e-14) > 1.834e-14 * 1e-3) {
            ok = false;
            detail += "background=" + num(nb.background) + "; ";
        }
        const double sum = nb.shot + nb.background + nb.dark + nb.thermal;
        if (std::abs(nb.total - sum) > 1e-15 * std::abs(sum)) {
            ok = false;
            detail += "total != sum of parts; ";
        }
        if (ok) detail = "background=" + num(nb.background) + " total=sum";
        return ok;
    });

    run_criterion(8, "dominance orderings", 30.0, [&](std::string& detail) {
        const sweep::CsvDocument doc = sweep::run_sweep(preset, sweep::SweepSpec{});
        int los_bad = 0, cyl_vs_sb1_bad = 0, cyl_vs_sb2_bad = 0;
        double first_bad_d = 0.0;
        for (const std::string& row : doc.rows) {
            const std::vector<double> c = split_row(row);
            const double los = c[kLosL] + c[kLosR];
            const double sb1 = c[kSb1L] + c[kSb1R];
            const double sb2 = c[kSb2L] + c[kSb2R];
            const double sb3 = c[kSb3L] + c[kSb3R];
            if (los < sb1 || los < sb2 || los < sb3) ++los_bad;
            if (!(sb3 < sb1)) {
                if (cyl_vs_sb1_bad == 0) first_bad_d = c[3];
                ++cyl_vs_sb1_bad;
            }
            if (!(sb3 < sb2)) ++cyl_vs_sb2_bad;
        }
        detail = "rows=" + std::to_string(doc.rows.size()) +
                 " los_dominance_violations=" + std::to_string(los_bad) +
                 " cylinder_below_sb2_violations=" + std::to_string(cyl_vs_sb2_bad) +
                 " cylinder_below_sb1_violations=" + std::to_string(cyl_vs_sb1_bad);
        if (cyl_vs_sb1_bad > 0)
            detail += " (first at distance_m=" + num(first_bad_d) +
                      "; the cylinder gain exceeds the Tx-sphere gain at long range "
                      "under the as-printed denominators)";
        return los_bad == 0 && cyl_vs_sb1_bad == 0 && cyl_vs_sb2_bad == 0;
    });

    run_criterion(9, "determinism", 10.0, [&](std::string& detail) {
        const std::string a = sweep::run_sweep(preset, sweep::SweepSpec{}).str();
        const std::string b = sweep::run_sweep(preset, sweep::SweepSpec{}).str();
        detail = "bytes=" + std::to_string(a.size());
        return !a.empty() && a == b;
    });

    std::printf("failures: %d\n", g_failures);
    return g_failures;
}
