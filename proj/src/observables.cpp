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


#include "tpe/observables.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tpe/liouville.hpp"

namespace tpe {

namespace {

constexpr double kRadicandError = -1e-8;
constexpr double kMomentFloor = 1e-12;

CMatrix sigma_y_pair() {
    CMatrix sy(2, 2);
    sy << 0.0, -kI, kI, 0.0;
    return Eigen::kroneckerProduct(sy, sy).eval();
}

double diag_in(const CMatrix& rho, const CVector& ket) { return (ket.adjoint() * rho * ket)(0, 0).real(); }

CVector ket4(cplx gg, cplx ge, cplx eg, cplx ee) {
    CVector v(4);
    v << gg, ge, eg, ee;
    return v;
}

Operator qubit_number(const HilbertSpace& s, int which) {
    const Operator sm = qubit_lowering(s, which);
    return sm.adjoint() * sm;
}

}  // namespace

StateMatrix qubit_state(const StateMatrix& rho) {
    const HilbertSpace& s = rho.space();
    if (s.num_qubits() != 2) throw DimensionError("state does not contain two qubits");
    if (s.num_factors() == 2) return rho;
    return partial_trace(rho, {s.qubit_factor(1), s.qubit_factor(2)});
}

double concurrence(const StateMatrix& state) {
    const CMatrix rho = qubit_state(state).matrix();
    // sqrt(rho) rho~ sqrt(rho) shares its spectrum with rho rho~ and is Hermitian.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const CMatrix root = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix yy = sigma_y_pair();
    const CMatrix tilde = yy * rho.conjugate() * yy;
    CMatrix m = root * tilde * root;
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::VectorXd lam = Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < kRadicandError) throw InvalidStateError("negative Wootters eigenvalue");
        lam(i) = std::max(lam(i), 0.0);
    }
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
    const double c = std::sqrt(lam(0)) - std::sqrt(lam(1)) - std::sqrt(lam(2)) - std::sqrt(lam(3));
    return std::clamp(c, 0.0, 1.0);
}

double Populations::at(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return values[i];
    throw Error("unknown population label: " + label);
}

Populations basis_populations(const StateMatrix& state, PopulationBasis basis, const SystemParams* params) {
    const CMatrix rho = qubit_state(state).matrix();
    const double r = 1.0 / std::sqrt(2.0);
    Populations out;
    auto add = [&](const std::string& label, const CVector& ket) {
        out.labels.push_back(label);
        out.values.push_back(diag_in(rho, ket));
    };
    const CVector gg = ket4(1, 0, 0, 0), ee = ket4(0, 0, 0, 1);
    switch (basis) {
        case PopulationBasis::Bare:
            add("gg", gg);
            add("ge", ket4(0, 1, 0, 0));
            add("eg", ket4(0, 0, 1, 0));
            add("ee", ee);
            break;
        case PopulationBasis::SymmetricAntisymmetric:
            add("gg", gg);
            add("S", ket4(0, r, r, 0));
            add("A", ket4(0, r, -r, 0));
            add("ee", ee);
            break;
        case PopulationBasis::PlusMinus: {
            if (!params) throw Error("the plus/minus basis needs system parameters");
            const double beta = params->beta();
            add("gg", gg);
            add("+", plus_state(beta));
            add("-", minus_state(beta));
            add("ee", ee);
            break;
        }
        case PopulationBasis::Dressed: {
            if (!params) throw Error("the dressed basis needs system parameters");
            const DressedBasis db = dressed_basis(*params);
            for (int i = 0; i < 4; ++i) add("U" + std::to_string(i + 1), db.eigenvectors.col(i));
            add("S2", ket4(r, 0, 0, r));
            add("A2", ket4(r, 0, 0, -r));
            break;
        }
    }
    return out;
}

double cavity_intensity(const StateMatrix& rho) {
    const Operator a = cavity_annihilation(rho.space());
    return rho.expectation(a.adjoint() * a).real();
}

double g2_zero(const StateMatrix& rho) {
    const Operator a = cavity_annihilation(rho.space());
    const Operator ad = a.adjoint();
    const double n = rho.expectation(ad * a).real();
    if (n <= kMomentFloor) throw UndefinedObservableError("g2(0) undefined for an empty cavity");
    return std::max(0.0, rho.expectation(ad * ad * a * a).real()) / (n * n);
}

double freq_resolved_g2(const StateMatrix& state) {
    const StateMatrix q = qubit_state(state);
    const double n1 = q.expectation(qubit_number(q.space(), 1)).real();
    const double n2 = q.expectation(qubit_number(q.space(), 2)).real();
    if (n1 <= kMomentFloor || n2 <= kMomentFloor)
        throw UndefinedObservableError("frequency-resolved g2 undefined for an unexcited emitter");
    return std::max(0.0, q.matrix()(3, 3).real()) / (n1 * n2);
}

double freq_resolved_g2_after_switch_off(const SystemParams& p, const StateMatrix& rho, double delay) {
    if (!(delay >= 0.0)) throw Error("switch-off delay must be non-negative");
    SystemParams off = p;
    off.Omega = 0.0;
    const bool with_cavity = rho.space().cavity_factor().has_value();
    const Superoperator L = with_cavity ? full_liouvillian(off) : cavity_free_liouvillian(off);
    const Trajectory traj = evolve(L, rho, {delay});
    return freq_resolved_g2(traj.states.back());
}

OpticalReadout optical_readout(const StateMatrix& rho) {
    OpticalReadout out;
    const StateMatrix q = qubit_state(rho);
    out.population_1 = q.expectation(qubit_number(q.space(), 1)).real();
    out.population_2 = q.expectation(qubit_number(q.space(), 2)).real();
    if (rho.space().cavity_factor()) {
        out.intensity = std::max(0.0, cavity_intensity(rho));
        try {
            out.g2_zero = g2_zero(rho);
        } catch (const UndefinedObservableError&) {
        }
    }
    try {
        out.g2_freq_resolved = freq_resolved_g2(q);
    } catch (const UndefinedObservableError&) {
    }
    return out;
}

}  // namespace tpe
