// vvlc-gbsm: 3D geometry-based stochastic channel simulator for vehicular VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "vvlc/cir.hpp"
#include "vvlc/oracle.hpp"
#include "vvlc/scenario.hpp"

namespace vvlc::sweep {

struct SweepSpec {
    enum class Variable { distance, k, alpha0, mode_number };
    Variable variable = Variable::distance;
    std::vector<double> values;   // ignored for distance (time grid drives it)
    double fixed_distance = 10.0; // evaluation distance for non-distance sweeps
};

/// LF-terminated CSV: header row, data rows, '#'-prefixed footer notes.
/// Numeric cells use scientific notation with 9 significant digits.
struct CsvDocument {
    std::string header;
    std::vector<std::string> rows;
    std::vector<std::string> footer;

    std::string str() const;
};

std::string format_cell(double v);

/// One row per time step (distance sweeps) or per sweep value. Row order
/// follows the sweep index; rows carry the full power/noise/SNR breakdown.
CsvDocument run_sweep(const scenario::ScenarioConfig& scn, const SweepSpec& spec);

/// The scenario against its elevation-collapsed image on the same time grid,
/// with per-class 2D/3D ratio columns.
CsvDocument compare_2d3d(const scenario::ScenarioConfig& scn);

struct GeometryDeviationStats {
    std::string quantity;  // e.g. "tx_sphere.delta_zero.tx_leg"
    int draws = 0;         // evaluated draws (post filtering)
    int deviating = 0;     // draws with |dev| > 1e-9
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

struct ValidationResult {
    std::vector<GeometryDeviationStats> geometry;  // both passes, all sub-models
    std::vector<oracle::DeviationRecord> records;  // DC-gain and audit entries
    std::string text;                              // line-oriented key-value report
};

/// Closed-form backend vs Cartesian reconstruction on seeded draws, DC-gain
/// method cross-checks, and formula audits. Deviations are data, not errors.
ValidationResult validate(const scenario::ScenarioConfig& scn);

}  // namespace vvlc::sweep
