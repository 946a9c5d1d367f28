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

#include "tpe/system_model.hpp"

#include <cmath>
#include <numbers>

namespace tpe {

double SystemParams::R() const noexcept { return std::hypot(J, delta); }

double SystemParams::beta() const noexcept { return std::atan2(delta, J); }

double SystemParams::purcell_rate() const noexcept {
    if (kappa <= 0.0) return 0.0;
    return 4.0 * g * g / kappa;
}

void SystemParams::validate() const {
    const double values[] = {delta, Delta, Delta_a, Omega, J, gamma, gamma12, kappa, g, Gamma_extra, gamma_phi, Gamma_phi};
    for (double v : values)
        if (!std::isfinite(v)) throw Error("system parameters must be finite");
    if (gamma <= 0.0) throw Error("gamma must be positive");
    if (gamma2 && (!std::isfinite(*gamma2) || *gamma2 <= 0.0)) throw Error("gamma2 must be positive");
    if (kappa < 0.0) throw Error("kappa must be non-negative");
    if (n_max < 1) throw Error("n_max must be >= 1");
    if (std::abs(gamma12) > std::sqrt(gamma * gamma_2()) * (1.0 + 1e-12))
        throw Error("|gamma12| must not exceed sqrt(gamma1 gamma2)");
    if (Gamma_extra < 0.0) throw Error("Gamma_extra must be non-negative");
    if (gamma_phi < 0.0) throw Error("gamma_phi must be non-negative");
    if (Gamma_phi < 0.0) throw Error("Gamma_phi must be non-negative");
}

DipoleCoupling dipole_coupling(const DipoleGeometry& geom) {
    if (!(geom.kr12 > 0.0)) throw Error("kr12 must be positive");
    if (std::abs(geom.mu_dot_r) > 1.0) throw Error("|mu_dot_r| must not exceed 1");
    if (geom.gamma1 <= 0.0 || geom.gamma2 <= 0.0) throw Error("local rates must be positive");
    const double x = geom.kr12;
    const double c2 = geom.mu_dot_r * geom.mu_dot_r;
    const double s = std::sin(x), c = std::cos(x);
    const double root = std::sqrt(geom.gamma1 * geom.gamma2);
    const double J = 0.75 * root * (-(1.0 - c2) * c / x + (1.0 - 3.0 * c2) * (s / (x * x) + c / (x * x * x)));
    const double g12 = 1.5 * root * ((1.0 - c2) * s / x + (1.0 - 3.0 * c2) * (c / (x * x) - s / (x * x * x)));
    return {J, g12};
}

double kr12_from_separation(double r12_nm, double wavelength_nm) {
    return 2.0 * std::numbers::pi * r12_nm / wavelength_nm;
}

double waveguide_gamma12(double beta_factor, double d_over_L, double gamma) {
    if (!(beta_factor >= 0.0 && beta_factor <= 1.0)) throw Error("beta factor must lie in [0, 1]");
    if (!(d_over_L >= 0.0)) throw Error("d/L must be non-negative");
    if (std::isinf(d_over_L)) return 0.0;
    return gamma * beta_factor * std::exp(-0.5 * d_over_L);
}

std::vector<Channel> ChannelSet::terms() const {
    std::vector<Channel> out;
    const Operator s[2] = {qubit_lowering(space, 1), qubit_lowering(space, 2)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (gamma_matrix(i, j) != 0.0)
                out.push_back({"gamma" + std::to_string(i + 1) + std::to_string(j + 1), gamma_matrix(i, j), s[i], s[j]});
    if (kappa > 0.0 && space.cavity_factor()) {
        const Operator a = cavity_annihilation(space);
        out.push_back({"kappa", kappa, a, a});
    }
    for (const auto& ch : extra)
        if (ch.rate != 0.0) out.push_back(ch);
    return out;
}

HilbertSpace full_space(const SystemParams& p) { return HilbertSpace::qubits_and_cavity(p.n_max); }

Operator build_hamiltonian(const SystemParams& p, const HilbertSpace& space) {
    if (auto c = space.cavity_factor(); c && space.n_max() != p.n_max)
        throw DimensionError("cavity cutoff of the space differs from n_max");
    const Operator s1 = qubit_lowering(space, 1);
    const Operator s2 = qubit_lowering(space, 2);
    const Operator n1 = s1.adjoint() * s1;
    const Operator n2 = s2.adjoint() * s2;
    const Operator hop = s1.adjoint() * s2;
    const Operator sum = s1 + s2;

    Operator h = (p.Delta - p.delta) * n1 + (p.Delta + p.delta) * n2 + p.J * (hop + hop.adjoint());
    h = h + p.Omega * (sum + sum.adjoint());
    if (space.cavity_factor()) {
        const Operator a = cavity_annihilation(space);
        const Operator coupling = a.adjoint() * sum;
        h = h + p.Delta_a * (a.adjoint() * a) + p.g * (coupling + coupling.adjoint());
    }
    return h;
}

Operator build_qubit_hamiltonian(const SystemParams& p) { return build_hamiltonian(p, HilbertSpace::two_qubits()); }

ChannelSet build_channels(const SystemParams& p, const HilbertSpace& space) {
    p.validate();
    ChannelSet ch;
    ch.space = space;
    ch.gamma_matrix << p.gamma, p.gamma12, p.gamma12, p.gamma_2();
    ch.kappa = p.kappa;
    if (p.Gamma_extra > 0.0) {
        for (int i = 1; i <= 2; ++i) {
            const Operator s = qubit_lowering(space, i);
            ch.extra.push_back({"Gamma_extra_" + std::to_string(i), p.Gamma_extra, s, s});
        }
    }
    if (p.gamma_phi > 0.0) {
        for (int i = 1; i <= 2; ++i) {
            const Operator z = qubit_sigma_z(space, i);
            ch.extra.push_back({"gamma_phi_" + std::to_string(i), p.gamma_phi, z, z});
        }
    }
    if (p.Gamma_phi > 0.0) {
        const Operator z = qubit_sigma_z(space, 1) + qubit_sigma_z(space, 2);
        ch.extra.push_back({"Gamma_phi", p.Gamma_phi, z, z});
    }
    return ch;
}

}  // namespace tpe
