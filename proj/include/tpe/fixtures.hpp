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

#include "tpe/effective_models.hpp"
#include "tpe/system_model.hpp"

namespace tpe::fixtures {

/// Strongly coupled dimer at 2.5 nm: J = 9.18e4, gamma12 = 0.999.
SystemParams dimer_2p5nm();
/// Weakly coupled pair at 50 nm: J = 10.65, gamma12 = 0.967.
SystemParams pair_50nm();
/// Dimer at 0.5 nm: J = 1.15e7, gamma12 = 0.999.
SystemParams dimer_0p5nm();

/// Sets kappa = 25 C and g = kappa / 10, so that C = 4 g^2 / kappa.
void set_cooperativity(SystemParams& p, double C);

/// delta = J/100, Omega = 1e4, kappa = 1e4, g = 1e3, Delta_a = -R.
SystemParams fig3();
/// fig3 point set with kappa from C and the cavity on the dressed transition.
SystemParams fig5(double C, Transition which);
/// delta = J/1e4, Omega = 1e6, kappa = 1e5, g = 1e4, Delta_a = +2 Omega_2p.
SystemParams fig8();
/// Omega = 1e4, kappa from C, cavity on omega_34 (antisymmetric) or omega_21 (symmetric).
SystemParams fig9a(double C, double delta, Transition which);
/// 50 nm pair, Omega = 1e4, kappa from C; cavity on omega_34 or at the two-photon point.
SystemParams fig9b(double C, double delta, bool two_photon);
/// 50 nm pair, Omega = 1e4, Delta_a = 0, kappa from C.
SystemParams mechanism2_point(double C, double delta);
/// J = 0, delta = 100, gamma12 = 0.9, no cavity.
SystemParams waveguide(double Omega);
/// 2.5 nm dimer with delta = 1e3, Omega = 1e4, kappa from C, cavity on the chosen transition.
SystemParams fig11(double C, Transition which);

}  // namespace tpe::fixtures
