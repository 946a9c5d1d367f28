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


#include "tpe/fixtures.hpp"

namespace tpe::fixtures {

namespace {

void tune_cavity(SystemParams& p, Transition which) {
    const DressedBasis db = dressed_basis(p);
    p.Delta_a = which == Transition::Antisymmetric ? db.omega_ij(2, 3) : db.omega_ij(1, 0);
}

}  // namespace

SystemParams dimer_2p5nm() {
    SystemParams p;
    p.J = 9.18e4;
    p.gamma12 = 0.999;
    return p;
}

SystemParams pair_50nm() {
    SystemParams p;
    p.J = 10.65;
    p.gamma12 = 0.967;
    return p;
}

SystemParams dimer_0p5nm() {
    SystemParams p;
    p.J = 1.15e7;
    p.gamma12 = 0.999;
    return p;
}

void set_cooperativity(SystemParams& p, double C) {
    p.kappa = 25.0 * C * p.gamma;
    p.g = 0.1 * p.kappa;
}

SystemParams fig3() {
    SystemParams p = dimer_2p5nm();
    p.delta = 1e-2 * p.J;
    p.Omega = 1e4;
    p.kappa = 1e4;
    p.g = 1e3;
    p.Delta_a = -p.R();
    return p;
}

SystemParams fig5(double C, Transition which) {
    SystemParams p = fig3();
    set_cooperativity(p, C);
    tune_cavity(p, which);
    return p;
}

SystemParams fig8() {
    SystemParams p = dimer_0p5nm();
    p.delta = 1e-4 * p.J;
    p.Omega = 1e6;
    p.kappa = 1e5;
    p.g = 1e4;
    p.Delta_a = 2.0 * dressed_basis(p).Omega_2p;
    return p;
}

SystemParams fig9a(double C, double delta, Transition which) {
    SystemParams p = dimer_2p5nm();
    p.delta = delta;
    p.Omega = 1e4;
    set_cooperativity(p, C);
    tune_cavity(p, which);
    return p;
}

SystemParams fig9b(double C, double delta, bool two_photon) {
    SystemParams p = pair_50nm();
    p.delta = delta;
    p.Omega = 1e4;
    set_cooperativity(p, C);
    if (two_photon) p.Delta_a = 0.0;
    else tune_cavity(p, Transition::Antisymmetric);
    return p;
}

SystemParams mechanism2_point(double C, double delta) { return fig9b(C, delta, true); }

SystemParams waveguide(double Omega) {
    SystemParams p;
    p.delta = 1e2;
    p.gamma12 = 0.9;
    p.Omega = Omega;
    return p;
}

SystemParams fig11(double C, Transition which) {
    SystemParams p = dimer_2p5nm();
    p.delta = 1e3;
    p.Omega = 1e4;
    set_cooperativity(p, C);
    tune_cavity(p, which);
    return p;
}

}  // namespace tpe::fixtures
