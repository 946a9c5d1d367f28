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


#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "tpe/acceptance.hpp"
#include "tpe/effective_models.hpp"
#include "tpe/report.hpp"
#include "tpe/sweep.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kSolver = 3 };

struct Common {
    std::string config;
    std::vector<std::string> overrides;
    std::string out;
    std::string format = "csv";
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", c.config, "TOML configuration file");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", c.overrides, "override, section.key=value (section defaults to system)");
    cmd->add_option("--out", c.out, "output directory; CSV goes to stdout when omitted");
    cmd->add_option("--format", c.format, "comma-separated list of csv, json, svg");
    cmd->add_option("--threads", c.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
}

bool has_errors(const tpe::SweepResult& r) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
        const std::string& name = r.columns[c];
        if (name.size() < 6 || name.compare(name.size() - 6, 6, ".error") != 0) continue;
        for (const auto& row : r.rows)
            if (const auto* s = std::get_if<std::string>(&row[c]); s && !s->empty()) return true;
    }
    return false;
}

void print_errors(const tpe::SweepResult& r) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
        const std::string& name = r.columns[c];
        if (name.size() < 6 || name.compare(name.size() - 6, 6, ".error") != 0) continue;
        for (const auto& row : r.rows)
            if (const auto* s = std::get_if<std::string>(&row[c]); s && !s->empty())
                std::cerr << "tpe: " << name << ": " << *s << "\n";
    }
}

void emit(const tpe::SweepResult& r, const Common& c) {
    if (c.out.empty()) {
        tpe::write_csv(r, std::cout);
        return;
    }
    for (const auto& path : tpe::emit_report(r, c.out, tpe::parse_formats(c.format)))
        std::cerr << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon entanglement of non-identical emitters in a lossy cavity"};
    app.require_subcommand(1);

    Common steady_o, evolve_o, sweep_o, spectrum_o, classify_o;
    auto* steady = app.add_subcommand("steady", "steady state at the base point");
    add_common(steady, steady_o);
    auto* evolve = app.add_subcommand("evolve", "time evolution at the base point");
    add_common(evolve, evolve_o);
    auto* sweep = app.add_subcommand("sweep", "parameter grid");
    add_common(sweep, sweep_o);
    auto* spectrum = app.add_subcommand("spectrum", "emission spectrum at the base point");
    add_common(spectrum, spectrum_o);
    auto* classify = app.add_subcommand("classify", "mechanism labels at the base point");
    add_common(classify, classify_o);

    auto* validate = app.add_subcommand("validate", "acceptance criteria table");
    std::vector<int> only;
    bool corrupt = false;
    validate->add_option("--only", only, "criterion numbers to run")->check(CLI::Range(1, 11));
    validate->add_flag("--corrupt-gamma12-sign", corrupt, "negative control for the dipole fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (validate->parsed()) {
        tpe::AcceptanceOptions opt;
        opt.only = std::set<int>(only.begin(), only.end());
        opt.corrupt_gamma12_sign = corrupt;
        opt.progress = &std::cout;
        const auto results = tpe::validate_paper_fixtures(opt);
        int failed = 0;
        double total = 0.0;
        for (const auto& r : results) {
            failed += r.pass ? 0 : 1;
            total += r.wall_time_s;
        }
        std::cout << results.size() - failed << "/" << results.size() << " passed in " << total << " s\n";
        return failed == 0 ? kOk : kSolver;
    }

    const Common& c = steady->parsed()     ? steady_o
                      : evolve->parsed()   ? evolve_o
                      : sweep->parsed()    ? sweep_o
                      : spectrum->parsed() ? spectrum_o
                                           : classify_o;
    tpe::SweepSpec spec;
    try {
        spec = tpe::load_config(c.config, c.overrides);
        tpe::parse_formats(c.format);
    } catch (const tpe::ConfigError& e) {
        std::cerr << "tpe: " << c.config << ": " << e.what() << "\n";
        return kConfig;
    } catch (const tpe::Error& e) {
        std::cerr << "tpe: " << c.config << ": " << e.what() << "\n";
        return kConfig;
    }

    try {
        if (classify->parsed()) {
            spec.axes.clear();
            const tpe::SystemParams p = tpe::point_params(spec, {});
            const tpe::Classification cl = tpe::classify_mechanisms(p);
            std::cout << "mechanisms:";
            if (cl.mechanisms.empty()) std::cout << " none";
            for (auto m : cl.mechanisms) std::cout << ' ' << tpe::to_string(m);
            std::cout << "\n";
            for (const auto& [name, ok] : cl.conditions) std::cout << "  " << (ok ? "[x] " : "[ ] ") << name << "\n";
            return kOk;
        }
        if (sweep->parsed()) {
            if (spec.axes.empty()) {
                std::cerr << "tpe: sweep needs at least one [[sweep.axis]]\n";
                return kConfig;
            }
            const tpe::SweepResult r = tpe::run_sweep(spec, c.threads);
            emit(r, c);
            return kOk;
        }
        tpe::SweepResult r;
        if (spectrum->parsed()) {
            r = tpe::run_spectrum(spec);
        } else {
            spec.axes.clear();
            spec.evolve.enabled = evolve->parsed();
            r = tpe::run_point(spec);
        }
        if (has_errors(r)) {
            print_errors(r);
            return kSolver;
        }
        emit(r, c);
    } catch (const tpe::ConfigError& e) {
        std::cerr << "tpe: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "tpe: " << e.what() << "\n";
        return kSolver;
    }
    return kOk;
}
