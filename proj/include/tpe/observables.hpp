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

#include <optional>
#include <string>
#include <vector>

#include "tpe/effective_models.hpp"
#include "tpe/operator_core.hpp"
#include "tpe/system_model.hpp"

namespace tpe {

/// Qubit reduced state. Two-qubit inputs are returned unchanged.
StateMatrix qubit_state(const StateMatrix& rho);

/// Wootters concurrence of the qubit pair. Accepts a full state and traces the cavity out.
double concurrence(const StateMatrix& rho);

enum class PopulationBasis { Bare, SymmetricAntisymmetric, PlusMinus, Dressed };

struct Populations {
    std::vector<std::string> labels;
    std::vector<double> values;

    /// Throws Error for an unknown label.
    double at(const std::string& label) const;
};

/// Diagonal of the qubit state in the requested basis.
/// Bare: gg ge eg ee.  SymmetricAntisymmetric: gg S A ee.  PlusMinus: gg + - ee (needs params).
/// Dressed: U1..U4 followed by S2 and A2 (needs params).
Populations basis_populations(const StateMatrix& rho, PopulationBasis basis,
                              const SystemParams* params = nullptr);

double cavity_intensity(const StateMatrix& rho);
/// <a+ a+ a a> / <a+ a>^2; throws UndefinedObservableError below an intensity of 1e-12.
double g2_zero(const StateMatrix& rho);

/// <ee|rho|ee> / (<s1+ s1><s2+ s2>); throws UndefinedObservableError for an unexcited emitter.
double freq_resolved_g2(const StateMatrix& rho);

/// Same ratio evaluated a time `delay` after the drive is switched off at the state `rho`.
double freq_resolved_g2_after_switch_off(const SystemParams& p, const StateMatrix& rho, double delay);

struct OpticalReadout {
    double intensity = 0.0;
    std::optional<double> g2_zero;
    std::optional<double> g2_freq_resolved;
    double population_1 = 0.0;
    double population_2 = 0.0;
};

OpticalReadout optical_readout(const StateMatrix& rho);

}  // namespace tpe
