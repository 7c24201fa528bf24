// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vvlc/sweep.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string backend;
    std::string lens_mode;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario_path, "scenario config file");
    cmd->add_option("--seed", opts.seed, "override the scenario seed");
    cmd->add_option("--out", opts.out_path, "output file (default stdout)");
    cmd->add_option("--geometry-backend", opts.backend, "oracle or paper")
        ->check(CLI::IsMember({"oracle", "paper"}));
    cmd->add_option("--lens-mode", opts.lens_mode, "constant-cpc or paper-form")
        ->check(CLI::IsMember({"constant-cpc", "paper-form"}));
}

vvlc::scenario::ScenarioConfig make_scenario(const CommonOpts& opts) {
    vvlc::scenario::ScenarioConfig scn = opts.scenario_path.empty()
                                             ? vvlc::scenario::paper_table_preset()
                                             : vvlc::scenario::load_scenario(opts.scenario_path);
    if (opts.seed) scn.seed = *opts.seed;
    if (opts.backend == "paper") scn.backend = vvlc::geometry::Backend::paper;
    if (opts.backend == "oracle") scn.backend = vvlc::geometry::Backend::oracle;
    if (opts.lens_mode == "constant-cpc")
        scn.receiver.lens_mode = vvlc::optics::LensMode::constant_cpc;
    if (opts.lens_mode == "paper-form")
        scn.receiver.lens_mode = vvlc::optics::LensMode::paper_form;
    return scn;
}

void write_output(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vehicular visible-light channel simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<double> k_values, alpha0_deg, mode_numbers;
    double fixed_distance = 10.0;

    CLI::App* los = app.add_subcommand(
        "los-sweep", "line-of-sight power over the approach (or a mode-number sweep)");
    add_common(los, opts);
    los->add_option("--mode-numbers", mode_numbers,
                    "sweep the Lambertian mode number at a fixed distance");
    los->add_option("--distance", fixed_distance, "evaluation distance for value sweeps");

    CLI::App* sb = app.add_subcommand(
        "sb-sweep", "single-bounce power: distance, concentration, or mean-angle sweep");
    add_common(sb, opts);
    sb->add_option("--k-values", k_values, "sweep the VMF concentration");
    sb->add_option("--alpha0-deg", alpha0_deg, "sweep the azimuth mean (degrees)");
    sb->add_option("--distance", fixed_distance, "evaluation distance for value sweeps");

    CLI::App* snr = app.add_subcommand("snr-sweep", "SNR over the approach");
    add_common(snr, opts);

    CLI::App* cmp = app.add_subcommand("compare-2d3d",
                                       "3D model vs its elevation-collapsed 2D image");
    add_common(cmp, opts);

    CLI::App* val = app.add_subcommand("validate",
                                       "closed-form vs Cartesian geometry discrepancy report");
    add_common(val, opts);

    CLI::App* preset = app.add_subcommand("emit-preset", "write the built-in scenario preset");
    add_common(preset, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (preset->parsed()) {
            write_output(opts, vvlc::scenario::emit_scenario(make_scenario(opts)));
            return 0;
        }
        const vvlc::scenario::ScenarioConfig scn = make_scenario(opts);
        if (val->parsed()) {
            write_output(opts, vvlc::sweep::validate(scn).text);
            return 0;
        }
        if (cmp->parsed()) {
            write_output(opts, vvlc::sweep::compare_2d3d(scn).str());
            return 0;
        }
        vvlc::sweep::SweepSpec spec;
        spec.fixed_distance = fixed_distance;
        if (los->parsed() && !mode_numbers.empty()) {
            spec.variable = vvlc::sweep::SweepSpec::Variable::mode_number;
            spec.values = mode_numbers;
        } else if (sb->parsed() && !k_values.empty() && !alpha0_deg.empty()) {
            throw vvlc::scenario::ConfigError(
                "--k-values and --alpha0-deg are mutually exclusive");
        } else if (sb->parsed() && !k_values.empty()) {
            spec.variable = vvlc::sweep::SweepSpec::Variable::k;
            spec.values = k_values;
        } else if (sb->parsed() && !alpha0_deg.empty()) {
            spec.variable = vvlc::sweep::SweepSpec::Variable::alpha0;
            for (double a : alpha0_deg) spec.values.push_back(vvlc::deg2rad(a));
        }
        write_output(opts, vvlc::sweep::run_sweep(scn, spec).str());
        return 0;
    } catch (const vvlc::scenario::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
