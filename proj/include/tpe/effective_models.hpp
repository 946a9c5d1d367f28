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

// Reduced descriptions of the driven dimer: dressed basis, cavity-eliminated
// generators, jump-operator models, closed-form mechanism analytics and the
// mechanism classifier.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tpe/liouville.hpp"
#include "tpe/system_model.hpp"

namespace tpe {

struct DressedBasis {
    double beta = 0.0;
    double R = 0.0;
    double Omega_2p = 0.0;
    Eigen::Vector4d eigenvalues;  // descending
    CMatrix eigenvectors;         // column i is |U_{i+1}> in the bare basis
    CMatrix gij;                  // gij(i, j) = g <U_j| sigma_1 + sigma_2 |U_i>
    Eigen::Matrix4d omega_ij;     // lambda_i - lambda_j
};

/// Exact diagonalisation of H_q + H_d. Throws when J = delta = 0.
DressedBasis dressed_basis(const SystemParams& p);

/// Bare-basis kets of the dimer eigenstates |+> and |->.
CVector plus_state(double beta);
CVector minus_state(double beta);

enum class RedfieldDenominators { Exact, Flat };

/// Qubit-only generator with the cavity adiabatically eliminated. `Flat`
/// replaces every denominator by kappa/2.
Superoperator bloch_redfield_liouvillian(const SystemParams& p,
                                         RedfieldDenominators mode = RedfieldDenominators::Exact);
/// Qubit-only generator with an extra (Gamma_P/2) D[sigma_1 + sigma_2].
Superoperator collective_purcell_liouvillian(const SystemParams& p);

enum class Transition { Antisymmetric, Symmetric };

struct JumpOperatorModel {
    Operator xi;                      // on the two-qubit space
    double rate = 0.0;                // Gamma_P, entering as Gamma_P D[xi]
    double dominant_eigenvalue = 0.0; // of the restricted Redfield coefficient matrix
    double subdominant_ratio = 0.0;   // second / first eigenvalue magnitude
    double xi_mismatch = 0.0;         // ||xi_numeric - xi||_F / ||xi||_F
};

/// Single jump operator of the resolved-sideband regime. Throws when beta
/// exceeds `max_beta`.
JumpOperatorModel mechanism1_jump_operator(const SystemParams& p, Transition which, double max_beta = 0.3);
/// -i[H_2p, .] + Gamma_P D[xi] + (gamma_ij/2) D[sigma_i, sigma_j] on the two
/// qubits, where H_2p = -Omega_2p (|gg><ee| + h.c.).
Superoperator mechanism1_jump_liouvillian(const SystemParams& p, Transition which);

struct MechanismIAnalytics {
    double beta = 0.0;
    double Gamma_P = 0.0;
    double Omega_2p = 0.0;
    double Gamma_IA = 0.0;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    double rho_A_ss = 0.0;
    double P_S = 0.0;
    double rho_S_ss = 0.0;
    double tau_IA = 0.0;
    double tau_IS = 0.0;
    double r_tau = 0.0;
    bool antisymmetric_active = false;  // beta^2 > (2/C)(1 - gamma12/gamma)
    bool symmetric_active = false;      // (Omega_2p/gamma)^2 > C
};

struct MechanismIIAnalytics {
    double Gamma_S = 0.0;
    double Gamma_A = 0.0;
    double Gamma_eff_full = 0.0;
    double Gamma_eff_simple = 0.0;
    double rho_A_ss = 0.0;
    bool efficient = false;  // Gamma_eff > 10 Gamma_A
};

struct MechanismIIIAnalytics {
    double rho_gg = 0.0;
    double rho_ee = 0.0;
    cplx rho_gg_ee = 0.0;
    double rho_SS = 0.0;  // equal to rho_AA
    double concurrence = 0.0;
    double delta_max = 0.0;
    bool detuning_valid = false;  // delta >~ J
    bool drive_valid = false;     // Omega << R
};

MechanismIAnalytics mechanism1_analytics(const SystemParams& p);
MechanismIIAnalytics mechanism2_analytics(const SystemParams& p);
MechanismIIIAnalytics mechanism3_analytics(const SystemParams& p);

enum class Mechanism { IA, IS, II, IIIsp, IIIcav, IV };

std::string to_string(Mechanism m);

struct ClassifierThresholds {
    double much_greater = 5.0;  // a >> b  means  a >= much_greater * b
    double approx = 2.0;        // a ~ b   means  b/approx <= a <= approx * b
};

struct Classification {
    std::set<Mechanism> mechanisms;
    std::vector<std::pair<std::string, bool>> conditions;
};

Classification classify_mechanisms(const SystemParams& p, const ClassifierThresholds& th = {});

}  // namespace tpe
