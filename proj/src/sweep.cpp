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


#include "tpe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "tpe/effective_models.hpp"
#include "tpe/liouville.hpp"
#include "tpe/observables.hpp"

namespace tpe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int line_of(const toml::node& n) { return static_cast<int>(n.source().begin.line); }

// ---------------------------------------------------------------------------
// Parameter field table shared by the config reader, the axis resolver and the hash.

struct Field {
    const char* name;
    double SystemParams::*member;
};

constexpr Field kFields[] = {
    {"delta", &SystemParams::delta},     {"Delta", &SystemParams::Delta},
    {"Delta_a", &SystemParams::Delta_a}, {"Omega", &SystemParams::Omega},
    {"J", &SystemParams::J},             {"gamma", &SystemParams::gamma},
    {"gamma12", &SystemParams::gamma12}, {"kappa", &SystemParams::kappa},
    {"g", &SystemParams::g},             {"Gamma_extra", &SystemParams::Gamma_extra},
    {"gamma_phi", &SystemParams::gamma_phi}, {"Gamma_phi", &SystemParams::Gamma_phi},
};

double* field_ptr(SystemParams& p, const std::string& name) {
    for (const Field& f : kFields)
        if (name == f.name) return &(p.*f.member);
    return nullptr;
}

bool is_axis_name(const std::string& name) {
    SystemParams p;
    return name == "C" || name == "gamma2" || field_ptr(p, name) != nullptr;
}

void set_param(SystemParams& p, const std::string& name, double v) {
    if (name == "gamma2") {
        p.gamma2 = v;
        return;
    }
    double* f = field_ptr(p, name);
    if (!f) throw ConfigError("unknown parameter: " + name);
    *f = v;
}

const std::map<std::string, CavityResonance> kResonances = {
    {"none", CavityResonance::None},         {"omega_34", CavityResonance::Omega34},
    {"omega_24", CavityResonance::Omega24},  {"omega_21", CavityResonance::Omega21},
    {"omega_23", CavityResonance::Omega23},  {"-omega_23", CavityResonance::MinusOmega23},
    {"two_photon", CavityResonance::TwoPhoton},
};

const std::map<std::string, AxisUnit> kUnits = {
    {"gamma", AxisUnit::Gamma}, {"R", AxisUnit::R}, {"J", AxisUnit::J}, {"Omega_2p", AxisUnit::Omega2p}};

const std::map<std::string, Model> kModels = {
    {"full", Model::Full}, {"bloch_redfield", Model::BlochRedfield}, {"collective_purcell", Model::CollectivePurcell}};

const std::set<std::string> kBases = {"bare", "SA", "plus_minus", "dressed"};

template <class Map>
std::string key_of(const Map& m, const typename Map::mapped_type& v) {
    for (const auto& [k, x] : m)
        if (x == v) return k;
    return "?";
}

template <class Map>
typename Map::mapped_type lookup(const Map& m, const std::string& key, const char* what, int line) {
    const auto it = m.find(key);
    if (it == m.end()) throw ConfigError(std::string("unknown ") + what + ": " + key, line);
    return it->second;
}

// ---------------------------------------------------------------------------
// TOML readers

double as_number(const toml::node& n, const std::string& key) {
    if (auto v = n.value<double>()) return *v;
    throw ConfigError("expected a number for " + key, line_of(n));
}

int as_int(const toml::node& n, const std::string& key) {
    if (auto v = n.value_exact<int64_t>()) return static_cast<int>(*v);
    throw ConfigError("expected an integer for " + key, line_of(n));
}

bool as_bool(const toml::node& n, const std::string& key) {
    if (auto v = n.value_exact<bool>()) return *v;
    throw ConfigError("expected true or false for " + key, line_of(n));
}

std::string as_string(const toml::node& n, const std::string& key) {
    if (auto v = n.value_exact<std::string>()) return *v;
    throw ConfigError("expected a string for " + key, line_of(n));
}

std::vector<std::string> as_strings(const toml::node& n, const std::string& key) {
    const toml::array* arr = n.as_array();
    if (!arr) throw ConfigError("expected an array of strings for " + key, line_of(n));
    std::vector<std::string> out;
    for (const toml::node& e : *arr) out.push_back(as_string(e, key));
    return out;
}

const toml::table& as_table(const toml::node& n, const std::string& key) {
    if (const toml::table* t = n.as_table()) return *t;
    throw ConfigError("expected a table for [" + key + "]", line_of(n));
}

GridScale as_scale(const toml::node& n, const std::string& key) {
    const std::string s = as_string(n, key);
    if (s == "linear") return GridScale::Linear;
    if (s == "log") return GridScale::Log;
    throw ConfigError("scale must be \"linear\" or \"log\"", line_of(n));
}

void read_system(const toml::table& t, SweepSpec& spec) {
    std::optional<double> r12, mu_dot_r, wavelength;
    bool explicit_coupling = false;
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "n_max") {
            spec.base.n_max = as_int(node, key);
        } else if (key == "gamma2") {
            spec.base.gamma2 = as_number(node, key);
        } else if (key == "C") {
            spec.cooperativity = as_number(node, key);
        } else if (key == "r12_nm") {
            r12 = as_number(node, key);
        } else if (key == "mu_dot_r") {
            mu_dot_r = as_number(node, key);
        } else if (key == "wavelength_nm") {
            wavelength = as_number(node, key);
        } else if (double* f = field_ptr(spec.base, key)) {
            *f = as_number(node, key);
            if (key == "J" || key == "gamma12") explicit_coupling = true;
        } else {
            throw ConfigError("unknown key system." + key, line_of(node));
        }
    }
    if (r12) {
        if (explicit_coupling) throw ConfigError("r12_nm conflicts with an explicit J or gamma12");
        if (!(*r12 > 0.0)) throw ConfigError("r12_nm must be positive");
        DipoleGeometry geom;
        geom.kr12 = kr12_from_separation(*r12, wavelength.value_or(780.0));
        geom.mu_dot_r = mu_dot_r.value_or(0.0);
        geom.gamma1 = spec.base.gamma;
        geom.gamma2 = spec.base.gamma_2();
        const DipoleCoupling c = dipole_coupling(geom);
        spec.base.J = c.J;
        spec.base.gamma12 = c.gamma12;
    } else if (mu_dot_r || wavelength) {
        throw ConfigError("mu_dot_r and wavelength_nm need r12_nm");
    }
}

void read_axis(const toml::table& t, Axis& axis) {
    bool has_name = false, has_min = false, has_max = false;
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "name") {
            axis.name = as_string(node, key);
            has_name = true;
        } else if (key == "scale") {
            axis.scale = as_scale(node, key);
        } else if (key == "min") {
            axis.min = as_number(node, key);
            has_min = true;
        } else if (key == "max") {
            axis.max = as_number(node, key);
            has_max = true;
        } else if (key == "count") {
            axis.count = as_int(node, key);
        } else if (key == "unit") {
            axis.unit = lookup(kUnits, as_string(node, key), "axis unit", line_of(node));
        } else {
            throw ConfigError("unknown key sweep.axis." + key, line_of(node));
        }
    }
    if (!has_name || !has_min || !has_max) throw ConfigError("axis needs name, min and max", line_of(t));
}

void read_sweep(const toml::table& t, SweepSpec& spec) {
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "name") {
            spec.name = as_string(node, key);
        } else if (key == "g_over_kappa") {
            spec.g_over_kappa = as_number(node, key);
        } else if (key == "cavity_resonance") {
            spec.resonance = lookup(kResonances, as_string(node, key), "cavity resonance", line_of(node));
        } else if (key == "axis") {
            const toml::array* arr = node.as_array();
            if (!arr) throw ConfigError("sweep.axis must be an array of tables", line_of(node));
            if (arr->size() > 2) throw ConfigError("at most 2 axes", line_of(node));
            for (const toml::node& e : *arr) {
                Axis axis;
                read_axis(as_table(e, "sweep.axis"), axis);
                spec.axes.push_back(axis);
            }
        } else {
            throw ConfigError("unknown key sweep." + key, line_of(node));
        }
    }
}

void read_observables(const toml::table& t, ObservableSet& o) {
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "concurrence") o.concurrence = as_bool(node, key);
        else if (key == "populations") {
            o.populations = as_strings(node, key);
            for (const auto& b : o.populations)
                if (!kBases.count(b)) throw ConfigError("unknown population basis: " + b, line_of(node));
        } else if (key == "intensity") o.intensity = as_bool(node, key);
        else if (key == "g2") o.g2 = as_bool(node, key);
        else if (key == "g2_freq") o.g2_freq = as_bool(node, key);
        else if (key == "gap") o.gap = as_bool(node, key);
        else if (key == "spectrum") o.spectrum = as_bool(node, key);
        else if (key == "classify") o.classify = as_bool(node, key);
        else throw ConfigError("unknown key observables." + key, line_of(node));
    }
}

void read_models(const toml::table& t, SweepSpec& spec) {
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key != "run") throw ConfigError("unknown key models." + key, line_of(node));
        spec.models.clear();
        for (const auto& name : as_strings(node, key)) spec.models.push_back(lookup(kModels, name, "model", line_of(node)));
    }
}

void read_evolve(const toml::table& t, EvolveOptions& e) {
    e.enabled = true;
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "initial") e.initial = as_string(node, key);
        else if (key == "scale") e.scale = as_scale(node, key);
        else if (key == "t_min") e.t_min = as_number(node, key);
        else if (key == "t_max") e.t_max = as_number(node, key);
        else if (key == "count") e.count = as_int(node, key);
        else if (key == "switch_off") e.switch_off = as_number(node, key);
        else throw ConfigError("unknown key evolve." + key, line_of(node));
    }
}

void read_spectrum(const toml::table& t, SpectrumOptions& s) {
    for (const auto& [k, node] : t) {
        const std::string key(k.str());
        if (key == "field") s.field = as_string(node, key);
        else if (key == "omega_min") s.omega_min = as_number(node, key);
        else if (key == "omega_max") s.omega_max = as_number(node, key);
        else if (key == "count") s.count = as_int(node, key);
        else if (key == "unit") s.unit = lookup(kUnits, as_string(node, key), "spectrum unit", line_of(node));
        else throw ConfigError("unknown key spectrum." + key, line_of(node));
    }
}

void apply_override(toml::table& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    std::string section = "system", key = path;
    if (const auto dot = path.find('.'); dot != std::string::npos) {
        section = path.substr(0, dot);
        key = path.substr(dot + 1);
    }
    if (key.empty() || key.find('.') != std::string::npos) throw ConfigError("cannot override " + path);
    toml::table parsed;
    try {
        parsed = toml::parse("v = " + value);
    } catch (const toml::parse_error&) {
        parsed = toml::table{{"v", value}};
    }
    if (!root.contains(section)) root.insert(section, toml::table{});
    toml::table* sec = root[section].as_table();
    if (!sec) throw ConfigError("cannot override inside " + section);
    sec->insert_or_assign(key, *parsed.get("v"));
}

SweepSpec interpret(const toml::table& root) {
    SweepSpec spec;
    if (!root.contains("system")) throw ConfigError("missing [system]");
    for (const auto& [k, node] : root) {
        const std::string key(k.str());
        if (key == "system") read_system(as_table(node, key), spec);
        else if (key == "sweep") read_sweep(as_table(node, key), spec);
        else if (key == "observables") read_observables(as_table(node, key), spec.observables);
        else if (key == "models") read_models(as_table(node, key), spec);
        else if (key == "evolve") read_evolve(as_table(node, key), spec.evolve);
        else if (key == "spectrum") read_spectrum(as_table(node, key), spec.spectrum);
        else throw ConfigError("unknown section [" + key + "]", line_of(node));
    }
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Canonical form used for the hash

nlohmann::json params_json(const SystemParams& p) {
    nlohmann::json j;
    for (const Field& f : kFields) j[f.name] = p.*f.member;
    j["n_max"] = p.n_max;
    j["gamma2"] = p.gamma2 ? nlohmann::json(*p.gamma2) : nlohmann::json();
    return j;
}

nlohmann::json spec_json(const SweepSpec& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["system"] = params_json(s.base);
    j["g_over_kappa"] = s.g_over_kappa ? nlohmann::json(*s.g_over_kappa) : nlohmann::json();
    j["cooperativity"] = s.cooperativity ? nlohmann::json(*s.cooperativity) : nlohmann::json();
    j["resonance"] = key_of(kResonances, s.resonance);
    j["axes"] = nlohmann::json::array();
    for (const Axis& a : s.axes)
        j["axes"].push_back({{"name", a.name}, {"scale", a.scale == GridScale::Log ? "log" : "linear"}, {"min", a.min},
                             {"max", a.max}, {"count", a.count}, {"unit", key_of(kUnits, a.unit)}});
    const ObservableSet& o = s.observables;
    j["observables"] = {{"concurrence", o.concurrence}, {"populations", o.populations}, {"intensity", o.intensity},
                        {"g2", o.g2}, {"g2_freq", o.g2_freq}, {"gap", o.gap}, {"spectrum", o.spectrum},
                        {"classify", o.classify}};
    j["models"] = nlohmann::json::array();
    for (Model m : s.models) j["models"].push_back(to_string(m));
    const EvolveOptions& e = s.evolve;
    j["evolve"] = {{"enabled", e.enabled}, {"initial", e.initial}, {"scale", e.scale == GridScale::Log ? "log" : "linear"},
                   {"t_min", e.t_min}, {"t_max", e.t_max}, {"count", e.count},
                   {"switch_off", e.switch_off ? nlohmann::json(*e.switch_off) : nlohmann::json()}};
    const SpectrumOptions& sp = s.spectrum;
    j["spectrum"] = {{"field", sp.field}, {"omega_min", sp.omega_min}, {"omega_max", sp.omega_max},
                     {"count", sp.count}, {"unit", key_of(kUnits, sp.unit)}};
    return j;
}

std::vector<double> grid(GridScale scale, double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        v[i] = scale == GridScale::Log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    if (count > 1) {
        v.front() = lo;
        v.back() = hi;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Point evaluation

int initial_index(const std::string& label) {
    static const std::map<std::string, int> idx = {{"gg", 0}, {"ge", 1}, {"eg", 2}, {"ee", 3}};
    const auto it = idx.find(label);
    if (it == idx.end()) throw ConfigError("unknown initial state: " + label);
    return it->second;
}

Superoperator generator(Model m, const SystemParams& p) {
    switch (m) {
        case Model::Full:
            // No cavity at all: the emitters alone.
            if (p.kappa == 0.0 && p.g == 0.0) return cavity_free_liouvillian(p);
            return full_liouvillian(p);
        case Model::BlochRedfield: return bloch_redfield_liouvillian(p);
        case Model::CollectivePurcell: return collective_purcell_liouvillian(p);
    }
    throw Error("unknown model");
}

PopulationBasis basis_of(const std::string& name) {
    if (name == "bare") return PopulationBasis::Bare;
    if (name == "SA") return PopulationBasis::SymmetricAntisymmetric;
    if (name == "plus_minus") return PopulationBasis::PlusMinus;
    return PopulationBasis::Dressed;
}

std::vector<std::string> population_labels(const std::string& basis) {
    if (basis == "bare") return {"gg", "ge", "eg", "ee"};
    if (basis == "SA") return {"gg", "S", "A", "ee"};
    if (basis == "plus_minus") return {"gg", "plus", "minus", "ee"};
    return {"U1", "U2", "U3", "U4", "S2", "A2"};
}

// Column layout for one model. The error column is always last.
std::vector<std::string> model_columns(const SweepSpec& s, Model m) {
    const std::string pre = to_string(m) + ".";
    const ObservableSet& o = s.observables;
    std::vector<std::string> c;
    if (o.concurrence) c.push_back(pre + "concurrence");
    for (const auto& b : o.populations)
        for (const auto& l : population_labels(b)) c.push_back(pre + "pop_" + b + "_" + l);
    if (!o.populations.empty()) {
        c.push_back(pre + "rho_gg_ee_re");
        c.push_back(pre + "rho_gg_ee_im");
    }
    if (m == Model::Full && o.intensity) c.push_back(pre + "intensity");
    if (m == Model::Full && o.g2) c.push_back(pre + "g2_zero");
    if (o.g2_freq) c.push_back(pre + "g2_freq");
    if (!s.evolve.enabled && o.gap) c.push_back(pre + "gap");
    if (!s.evolve.enabled && o.spectrum) c.push_back(pre + "spectrum_peak");
    c.push_back(pre + "error");
    return c;
}

std::vector<Cell> state_cells(const SweepSpec& s, Model m, const SystemParams& p, const StateMatrix& rho) {
    const ObservableSet& o = s.observables;
    std::vector<Cell> out;
    auto guarded = [&](auto&& f) {
        try {
            out.emplace_back(f());
        } catch (const UndefinedObservableError&) {
            out.emplace_back(kNaN);
        }
    };
    if (o.concurrence) out.emplace_back(concurrence(rho));
    for (const auto& b : o.populations)
        for (double v : basis_populations(rho, basis_of(b), &p).values) out.emplace_back(v);
    if (!o.populations.empty()) {
        const cplx c = qubit_state(rho).matrix()(0, 3);
        out.emplace_back(c.real());
        out.emplace_back(c.imag());
    }
    if (m == Model::Full && o.intensity) out.emplace_back(cavity_intensity(rho));
    if (m == Model::Full && o.g2) guarded([&] { return g2_zero(rho); });
    if (o.g2_freq) guarded([&] { return freq_resolved_g2(rho); });
    return out;
}

std::vector<double> spectrum_grid(const SweepSpec& s, const SystemParams& p) {
    const double u = unit_scale(p, s.spectrum.unit);
    std::vector<double> w = grid(GridScale::Linear, s.spectrum.omega_min, s.spectrum.omega_max, s.spectrum.count);
    for (double& x : w) x *= u;
    return w;
}

Operator spectrum_field(const SweepSpec& s, const HilbertSpace& space) {
    if (s.spectrum.field == "cavity") return cavity_annihilation(space);
    return qubit_lowering(space, 1) + qubit_lowering(space, 2);
}

// Rows for one grid point: one row, or one per time when evolving.
std::vector<std::vector<Cell>> evaluate_point(const SweepSpec& s, const std::vector<double>& axis_values) {
    const SystemParams p = point_params(s, axis_values);
    const std::vector<double> times = s.evolve.enabled ? s.evolve.times() : std::vector<double>{};
    const std::size_t nrows = s.evolve.enabled ? times.size() : 1;
    std::vector<std::vector<Cell>> rows(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
        for (double v : axis_values) rows[r].emplace_back(v);
        rows[r].emplace_back(p.cooperativity());
        if (s.resonance != CavityResonance::None) rows[r].emplace_back(p.Delta_a);
        if (s.evolve.enabled) rows[r].emplace_back(times[r]);
    }
    for (Model m : s.models) {
        const std::size_t width = model_columns(s, m).size();
        std::vector<std::vector<Cell>> block(nrows);
        try {
            const Superoperator L = generator(m, p);
            if (s.evolve.enabled) {
                const StateMatrix rho0 = StateMatrix::basis_state(L.space(), initial_index(s.evolve.initial) * (L.hilbert_dim() / 4));
                Trajectory traj;
                if (s.evolve.switch_off) {
                    SystemParams off = p;
                    off.Omega = 0.0;
                    traj = evolve_switched(L, generator(m, off), rho0, *s.evolve.switch_off, times);
                } else {
                    traj = evolve(L, rho0, times);
                }
                for (std::size_t r = 0; r < nrows; ++r) block[r] = state_cells(s, m, p, traj.states[r]);
            } else {
                const StateMatrix rho = steady_state(L);
                block[0] = state_cells(s, m, p, rho);
                if (s.observables.gap) block[0].emplace_back(liouvillian_gap(L));
                if (s.observables.spectrum) {
                    const std::vector<double> w = spectrum_grid(s, p);
                    const std::vector<double> spec = emission_spectrum(L, rho, spectrum_field(s, L.space()), w);
                    std::size_t best = 0;
                    for (std::size_t i = 1; i < spec.size(); ++i)
                        if (spec[i] > spec[best]) best = i;
                    block[0].emplace_back(w[best]);
                }
            }
            for (auto& b : block) b.emplace_back(std::string());
        } catch (const std::exception& e) {
            for (auto& b : block) {
                b.assign(width - 1, kNaN);
                b.emplace_back(std::string(e.what()));
            }
        }
        for (std::size_t r = 0; r < nrows; ++r) rows[r].insert(rows[r].end(), block[r].begin(), block[r].end());
    }
    if (s.observables.classify) {
        std::string label;
        try {
            for (Mechanism m : classify_mechanisms(p).mechanisms) label += (label.empty() ? "" : "+") + to_string(m);
            if (label.empty()) label = "none";
        } catch (const std::exception& e) {
            label = std::string("error: ") + e.what();
        }
        for (auto& r : rows) r.emplace_back(label);
    }
    return rows;
}

std::vector<std::string> result_columns(const SweepSpec& s) {
    std::vector<std::string> cols;
    for (const Axis& a : s.axes) cols.push_back(a.name);
    cols.push_back("cooperativity");
    if (s.resonance != CavityResonance::None) cols.push_back("Delta_a");
    if (s.evolve.enabled) cols.push_back("t");
    for (Model m : s.models)
        for (auto& c : model_columns(s, m)) cols.push_back(c);
    if (s.observables.classify) cols.push_back("mechanisms");
    return cols;
}

SweepMetadata metadata_for(const SweepSpec& s, int threads) {
    SweepMetadata md;
    md.spec_hash = s.hash();
    md.code_version = kCodeVersion;
    md.threads = threads;
    for (const Axis& a : s.axes) {
        md.axes.push_back(a.name);
        if (a.scale == GridScale::Log) md.log_axes.push_back(a.name);
    }
    if (s.evolve.enabled && s.evolve.scale == GridScale::Log) md.log_axes.push_back("t");
    return md;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Model m) { return key_of(kModels, m); }

std::vector<double> Axis::values() const { return grid(scale, min, max, count); }

std::vector<double> EvolveOptions::times() const { return grid(scale, t_min, t_max, count); }

void SweepSpec::validate() const {
    if (axes.size() > 2) throw ConfigError("at most 2 axes");
    std::set<std::string> seen;
    for (const Axis& a : axes) {
        if (!is_axis_name(a.name)) throw ConfigError("axis " + a.name + " is not a system parameter");
        if (a.name == "C" && !g_over_kappa) throw ConfigError("a C axis needs sweep.g_over_kappa");
        if (a.name == "C" && (std::find_if(axes.begin(), axes.end(), [](const Axis& b) {
                                  return b.name == "kappa" || b.name == "g";
                              }) != axes.end()))
            throw ConfigError("a C axis cannot be combined with kappa or g axes");
        if (!seen.insert(a.name).second) throw ConfigError("duplicate axis " + a.name);
        if (a.count < 2) throw ConfigError("axis " + a.name + " needs count >= 2");
        if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max))
            throw ConfigError("axis " + a.name + " needs finite min < max");
        if (a.scale == GridScale::Log && !(a.min > 0.0)) throw ConfigError("log axis " + a.name + " needs min > 0");
    }
    if (g_over_kappa && !(*g_over_kappa > 0.0)) throw ConfigError("g_over_kappa must be positive");
    if (cooperativity && !g_over_kappa) throw ConfigError("system.C needs sweep.g_over_kappa");
    if (cooperativity && !(*cooperativity > 0.0)) throw ConfigError("system.C must be positive");
    if (models.empty()) throw ConfigError("no models requested");
    if (std::set<Model>(models.begin(), models.end()).size() != models.size()) throw ConfigError("duplicate model");
    if (evolve.enabled) {
        initial_index(evolve.initial);
        if (evolve.count < 2) throw ConfigError("evolve.count must be >= 2");
        if (!(evolve.t_min >= 0.0) || !(evolve.t_min < evolve.t_max)) throw ConfigError("evolve needs 0 <= t_min < t_max");
        if (evolve.scale == GridScale::Log && !(evolve.t_min > 0.0)) throw ConfigError("log time grid needs t_min > 0");
        if (evolve.switch_off && !(*evolve.switch_off >= 0.0)) throw ConfigError("switch_off must be non-negative");
    }
    if (spectrum.field != "emitters" && spectrum.field != "cavity")
        throw ConfigError("spectrum.field must be \"emitters\" or \"cavity\"");
    if (spectrum.count < 2 || !(spectrum.omega_min < spectrum.omega_max))
        throw ConfigError("spectrum needs count >= 2 and omega_min < omega_max");
    try {
        std::vector<double> lo, hi;
        for (const Axis& a : axes) {
            lo.push_back(a.min);
            hi.push_back(a.max);
        }
        point_params(*this, lo).validate();
        point_params(*this, hi).validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("out-of-range value: ") + e.what());
    }
}

std::string SweepSpec::hash() const {
    const std::string text = spec_json(*this).dump();
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::size_t SweepSpec::cardinality() const {
    std::size_t n = 1;
    for (const Axis& a : axes) n *= static_cast<std::size_t>(a.count);
    if (evolve.enabled) n *= static_cast<std::size_t>(evolve.count);
    return n;
}

SweepSpec parse_config(const std::string& text, const std::vector<std::string>& overrides, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw ConfigError(std::string(e.description()), static_cast<int>(e.source().begin.line));
    }
    for (const auto& o : overrides) apply_override(root, o);
    return interpret(root);
}

SweepSpec load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides, path.string());
}

double unit_scale(const SystemParams& base, AxisUnit unit) {
    switch (unit) {
        case AxisUnit::Gamma: return 1.0;
        case AxisUnit::R: return base.R();
        case AxisUnit::J: return base.J;
        case AxisUnit::Omega2p: return dressed_basis(base).Omega_2p;
    }
    return 1.0;
}

SystemParams point_params(const SweepSpec& spec, const std::vector<double>& axis_values) {
    if (axis_values.size() != spec.axes.size()) throw DimensionError("axis value count does not match the spec");
    SystemParams p = spec.base;
    std::optional<double> C = spec.cooperativity;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        const Axis& a = spec.axes[i];
        const double v = axis_values[i] * unit_scale(spec.base, a.unit);
        if (a.name == "C") C = v;
        else set_param(p, a.name, v);
    }
    if (spec.g_over_kappa) {
        const double r = *spec.g_over_kappa;
        // C = 4 g^2 / (kappa gamma) with g = r kappa.
        if (C) p.kappa = *C * p.gamma / (4.0 * r * r);
        p.g = r * p.kappa;
    }
    if (spec.resonance != CavityResonance::None) {
        if (spec.resonance == CavityResonance::TwoPhoton) {
            p.Delta_a = 0.0;
        } else {
            const DressedBasis db = dressed_basis(p);
            switch (spec.resonance) {
                case CavityResonance::Omega34: p.Delta_a = db.omega_ij(2, 3); break;
                case CavityResonance::Omega24: p.Delta_a = db.omega_ij(1, 3); break;
                case CavityResonance::Omega21: p.Delta_a = db.omega_ij(1, 0); break;
                case CavityResonance::Omega23: p.Delta_a = db.omega_ij(1, 2); break;
                case CavityResonance::MinusOmega23: p.Delta_a = -db.omega_ij(1, 2); break;
                default: break;
            }
        }
    }
    return p;
}

std::size_t SweepResult::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw Error("no column named " + name);
}

double SweepResult::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column(name));
    if (const double* d = std::get_if<double>(&c)) return *d;
    throw Error("column " + name + " is not numeric");
}

bool same_cells(const Cell& a, const Cell& b) {
    if (a.index() != b.index()) return false;
    if (const double* x = std::get_if<double>(&a)) {
        const double y = std::get<double>(b);
        return (std::isnan(*x) && std::isnan(y)) || *x == y;
    }
    return std::get<std::string>(a) == std::get<std::string>(b);
}

bool operator==(const SweepResult& a, const SweepResult& b) {
    if (a.name != b.name || a.columns != b.columns || !(a.metadata == b.metadata) || a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].size() != b.rows[i].size()) return false;
        for (std::size_t j = 0; j < a.rows[i].size(); ++j)
            if (!same_cells(a.rows[i][j], b.rows[i][j])) return false;
    }
    return true;
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<double>> points{{}};
    for (const Axis& a : spec.axes) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : points)
            for (double v : a.values()) {
                next.push_back(prefix);
                next.back().push_back(v);
            }
        points = std::move(next);
    }
    std::vector<std::vector<std::vector<Cell>>> per_point(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) per_point[i] = evaluate_point(spec, points[i]);
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(points.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SweepResult res;
    res.name = spec.name;
    res.columns = result_columns(spec);
    for (auto& block : per_point)
        for (auto& row : block) res.rows.push_back(std::move(row));
    res.metadata = metadata_for(spec, std::max(1, threads));
    res.metadata.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SweepResult run_point(const SweepSpec& spec) {
    SweepSpec single = spec;
    single.axes.clear();
    return run_sweep(single, 1);
}

SweepResult run_spectrum(const SweepSpec& spec) {
    SweepSpec single = spec;
    single.axes.clear();
    single.validate();
    const auto start = std::chrono::steady_clock::now();
    const SystemParams p = point_params(single, {});
    const Model m = single.models.front();
    const Superoperator L = generator(m, p);
    const StateMatrix rho = steady_state(L);
    const std::vector<double> w = spectrum_grid(single, p);
    const std::vector<double> s = emission_spectrum(L, rho, spectrum_field(single, L.space()), w);
    SweepResult res;
    res.name = single.name;
    res.columns = {"omega", to_string(m) + ".spectrum"};
    for (std::size_t i = 0; i < w.size(); ++i) res.rows.push_back({w[i], s[i]});
    res.metadata = metadata_for(single, 1);
    res.metadata.axes = {"omega"};
    res.metadata.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace tpe
