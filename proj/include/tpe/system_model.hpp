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

// Physical parameters, Hamiltonian and dissipation channels of two driven
// emitters coupled to a single cavity mode. All rates are in units of the
// local decay rate gamma.

#include <optional>
#include <string>
#include <vector>

#include "tpe/operator_core.hpp"

namespace tpe {

struct SystemParams {
    double delta = 0.0;    // half-detuning between the emitters
    double Delta = 0.0;    // laser-emitter detuning
    double Delta_a = 0.0;  // laser-cavity detuning
    double Omega = 0.0;
    double J = 0.0;
    double gamma = 1.0;
    double gamma12 = 0.0;
    double kappa = 0.0;
    double g = 0.0;
    double Gamma_extra = 0.0;
    double gamma_phi = 0.0;
    double Gamma_phi = 0.0;
    int n_max = 3;
    /// Local decay of emitter 2 when it differs from gamma.
    std::optional<double> gamma2;

    double gamma_2() const noexcept { return gamma2.value_or(gamma); }
    double R() const noexcept;
    double beta() const noexcept;
    /// 4 g^2 / kappa, zero when kappa or g vanish.
    double purcell_rate() const noexcept;
    double cooperativity() const noexcept { return purcell_rate() / gamma; }

    /// Throws Error describing the first violated invariant.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

struct DipoleGeometry {
    double kr12 = 0.0;
    double mu_dot_r = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
};

struct DipoleCoupling {
    double J;
    double gamma12;
};

DipoleCoupling dipole_coupling(const DipoleGeometry& geom);

/// k r12 for a separation in nm and a wavelength in nm.
double kr12_from_separation(double r12_nm, double wavelength_nm = 780.0);

/// gamma * beta_factor * exp(-d/(2L))
double waveguide_gamma12(double beta_factor, double d_over_L, double gamma = 1.0);

/// One term (rate/2) D[a, b] of the master equation.
struct Channel {
    std::string name;
    double rate;
    Operator a;
    Operator b;
};

struct ChannelSet {
    HilbertSpace space;
    /// gamma_ij, acting through (gamma_ij/2) D[sigma_i, sigma_j].
    Eigen::Matrix2d gamma_matrix = Eigen::Matrix2d::Zero();
    /// Cavity leakage; ignored on spaces without a cavity.
    double kappa = 0.0;
    std::vector<Channel> extra;

    /// Every nonzero (rate/2) D[a, b] term, gamma matrix first.
    std::vector<Channel> terms() const;
};

/// Two qubits plus a cavity truncated at p.n_max.
HilbertSpace full_space(const SystemParams& p);

/// H_q + H_a + H_d. On a qubit-only space the cavity part is dropped.
Operator build_hamiltonian(const SystemParams& p, const HilbertSpace& space);
/// H_q + H_d on the two-qubit space.
Operator build_qubit_hamiltonian(const SystemParams& p);

ChannelSet build_channels(const SystemParams& p, const HilbertSpace& space);

}  // namespace tpe
