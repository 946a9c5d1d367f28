// Copyright 2026 The tpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tpe/system_model.hpp"

namespace tpe {

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

enum class GridScale { Linear, Log };

/// Axis values may be given in units of a base-point quantity.
enum class AxisUnit { Gamma, R, J, Omega2p };

struct Axis {
    std::string name;  // a SystemParams field, or "C" when g_over_kappa is set
    GridScale scale = GridScale::Linear;
    double min = 0.0;
    double max = 0.0;
    int count = 2;
    AxisUnit unit = AxisUnit::Gamma;

    /// Grid values in units of the chosen quantity.
    std::vector<double> values() const;
    bool operator==(const Axis&) const = default;
};

/// Cavity detuning pinned to a dressed transition, re-evaluated at every grid point.
enum class CavityResonance { None, Omega34, Omega24, Omega21, Omega23, MinusOmega23, TwoPhoton };

enum class Model { Full, BlochRedfield, CollectivePurcell };

std::string to_string(Model m);

struct ObservableSet {
    bool concurrence = true;
    std::vector<std::string> populations;  // any of "bare", "SA", "plus_minus", "dressed"
    bool intensity = false;
    bool g2 = false;
    bool g2_freq = false;
    bool gap = false;
    bool spectrum = false;  // peak position of the emitter spectrum
    bool classify = false;
    bool operator==(const ObservableSet&) const = default;
};

struct EvolveOptions {
    bool enabled = false;
    std::string initial = "gg";  // bare two-qubit label; the cavity starts in vacuum
    GridScale scale = GridScale::Log;
    double t_min = 1e-2;
    double t_max = 1e2;
    int count = 2;
    std::optional<double> switch_off;  // drive removed after this time

    std::vector<double> times() const;
    bool operator==(const EvolveOptions&) const = default;
};

struct SpectrumOptions {
    std::string field = "emitters";  // "emitters" (sigma_1 + sigma_2) or "cavity"
    double omega_min = -2.0;
    double omega_max = 2.0;
    int count = 401;
    AxisUnit unit = AxisUnit::R;
    bool operator==(const SpectrumOptions&) const = default;
};

struct SweepSpec {
    std::string name = "sweep";
    SystemParams base;
    std::optional<double> g_over_kappa;    // ties g to kappa at every point
    std::optional<double> cooperativity;   // fixes kappa through g_over_kappa
    CavityResonance resonance = CavityResonance::None;
    std::vector<Axis> axes;
    ObservableSet observables;
    std::vector<Model> models{Model::Full};
    EvolveOptions evolve;
    SpectrumOptions spectrum;

    /// Throws ConfigError for an inconsistent specification.
    void validate() const;
    /// Stable 64-bit digest of every field, as 16 hex digits.
    std::string hash() const;
    /// Number of rows a sweep produces.
    std::size_t cardinality() const;
    bool operator==(const SweepSpec&) const = default;
};

/// Overrides are "section.key=value" assignments applied before interpretation;
/// the section defaults to system.
SweepSpec load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
SweepSpec parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       const std::string& source = "<string>");

/// Base point with the axis values applied and derived quantities resolved.
SystemParams point_params(const SweepSpec& spec, const std::vector<double>& axis_values);
double unit_scale(const SystemParams& base, AxisUnit unit);

using Cell = std::variant<double, std::string>;

struct SweepMetadata {
    std::string spec_hash;
    std::string code_version;
    double wall_time_s = 0.0;
    int threads = 1;
    std::vector<std::string> axes;
    std::vector<std::string> log_axes;
    bool operator==(const SweepMetadata&) const = default;
};

struct SweepResult {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    SweepMetadata metadata;

    std::size_t column(const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
};

/// NaN-aware equality of cells, used by round-trip checks.
bool same_cells(const Cell& a, const Cell& b);
bool operator==(const SweepResult& a, const SweepResult& b);

SweepResult run_sweep(const SweepSpec& spec, int threads = 1);
/// Single point at the base parameters; the time axis is expanded when evolution is enabled.
SweepResult run_point(const SweepSpec& spec);
SweepResult run_spectrum(const SweepSpec& spec);

inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace tpe
