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

#include "tpe/effective_models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace tpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr int kGG = 0, kGE = 1, kEG = 2, kEE = 3;

CMatrix ket(int i) {
    CMatrix v = CMatrix::Zero(4, 1);
    v(i, 0) = 1.0;
    return v;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

double two_photon_rabi(const SystemParams& p) {
    const double R = p.R();
    if (R == 0.0) return 0.0;
    return 2.0 * p.Omega * p.Omega * std::cos(p.beta()) / R;
}

// Local decay including the optional extra channel.
double total_local_rate(const SystemParams& p) { return p.gamma + p.Gamma_extra; }

Superoperator qubit_base_liouvillian(const SystemParams& p) { return cavity_free_liouvillian(p); }

}  // namespace

CVector plus_state(double beta) {
    const double s = std::sin(beta);
    CVector v = CVector::Zero(4);
    v(kEG) = std::sqrt(1.0 - s) / std::sqrt(2.0);
    v(kGE) = std::sqrt(1.0 + s) / std::sqrt(2.0);
    return v;
}

CVector minus_state(double beta) {
    const double s = std::sin(beta);
    CVector v = CVector::Zero(4);
    v(kEG) = std::sqrt(1.0 + s) / std::sqrt(2.0);
    v(kGE) = -std::sqrt(1.0 - s) / std::sqrt(2.0);
    return v;
}

DressedBasis dressed_basis(const SystemParams& p) {
    if (p.J == 0.0 && p.delta == 0.0) throw Error("dressed basis undefined for J = delta = 0");
    DressedBasis db;
    db.beta = p.beta();
    db.R = p.R();
    db.Omega_2p = two_photon_rabi(p);

    const HilbertSpace space = HilbertSpace::two_qubits();
    const CMatrix h = build_hamiltonian(p, space).matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw Error("dressed-basis diagonalisation failed");

    std::array<int, 4> order{0, 1, 2, 3};
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double la = es.eigenvalues()(a), lb = es.eigenvalues()(b);
        if (std::abs(la - lb) > 1e-12 * scale) return la > lb;
        return std::abs(es.eigenvectors()(kEE, a)) > std::abs(es.eigenvectors()(kEE, b));
    });

    db.eigenvectors = CMatrix(4, 4);
    for (int i = 0; i < 4; ++i) {
        db.eigenvalues(i) = es.eigenvalues()(order[i]);
        CVector u = es.eigenvectors().col(order[i]);
        Eigen::Index big = 0;
        u.cwiseAbs().maxCoeff(&big);
        u *= std::conj(u(big)) / std::abs(u(big));
        db.eigenvectors.col(i) = u;
    }

    const CMatrix s = (qubit_lowering(space, 1) + qubit_lowering(space, 2)).matrix();
    db.gij = CMatrix(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            db.gij(i, j) = p.g * (db.eigenvectors.col(j).adjoint() * s * db.eigenvectors.col(i))(0, 0);
            db.omega_ij(i, j) = db.eigenvalues(i) - db.eigenvalues(j);
        }
    return db;
}

Superoperator bloch_redfield_liouvillian(const SystemParams& p, RedfieldDenominators mode) {
    Superoperator base = qubit_base_liouvillian(p);
    if (p.g == 0.0) return {base.space(), base.matrix(), base.source() + " + redfield(g=0)"};
    if (!(p.kappa > 0.0)) throw Error("cavity elimination requires kappa > 0");

    const DressedBasis db = dressed_basis(p);
    CMatrix Xi = CMatrix::Zero(4, 4);
    CMatrix xi = CMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const CMatrix sij = db.eigenvectors.col(j) * db.eigenvectors.col(i).adjoint();  // |j><i|
            const cplx denom = mode == RedfieldDenominators::Flat
                                   ? cplx(0.5 * p.kappa, 0.0)
                                   : cplx(0.5 * p.kappa, p.Delta_a - db.omega_ij(i, j));
            Xi += db.gij(i, j) / denom * sij;
            xi += db.gij(i, j) * sij;
        }
    // rho -> Xi rho xi^+ + xi rho Xi^+ - xi^+ Xi rho - rho Xi^+ xi
    const CMatrix id = CMatrix::Identity(4, 4);
    const CMatrix left = xi.adjoint() * Xi;
    const CMatrix right = Xi.adjoint() * xi;
    const CMatrix m = kron(xi.conjugate(), Xi) + kron(Xi.conjugate(), xi) - kron(id, left) - kron(right.transpose(), id);
    return {base.space(), base.matrix() + m, base.source() + " + redfield"};
}

Superoperator collective_purcell_liouvillian(const SystemParams& p) {
    Superoperator base = qubit_base_liouvillian(p);
    const double gp = p.purcell_rate();
    if (gp == 0.0) return base;
    const HilbertSpace space = HilbertSpace::two_qubits();
    const Operator s = qubit_lowering(space, 1) + qubit_lowering(space, 2);
    Superoperator d = dissipator_superoperator(s, s, gp);
    return {space, base.matrix() + d.matrix(), base.source() + " + collective_purcell"};
}

JumpOperatorModel mechanism1_jump_operator(const SystemParams& p, Transition which, double max_beta) {
    const double beta = p.beta();
    if (std::abs(beta) > max_beta)
        throw Error("jump-operator model needs beta << 1 (beta = " + std::to_string(beta) + ")");
    const HilbertSpace space = HilbertSpace::two_qubits();
    const CVector plus = plus_state(beta), minus = minus_state(beta);
    CMatrix xi;
    using Pair = std::pair<int, int>;
    std::vector<Pair> mu;
    if (which == Transition::Antisymmetric) {
        xi = ket(kGG) * plus.adjoint() - 0.5 * beta * minus * ket(kEE).adjoint();
        mu = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    } else {
        xi = -plus * ket(kEE).adjoint() + 0.5 * beta * ket(kGG) * minus.adjoint();
        mu = {{1, 0}, {2, 0}, {3, 1}, {3, 2}};
    }

    JumpOperatorModel out;
    out.xi = Operator(space, xi);
    out.rate = p.purcell_rate();
    if (p.g == 0.0 || !(p.kappa > 0.0)) return out;

    const DressedBasis db = dressed_basis(p);
    CVector gv(4);
    for (int k = 0; k < 4; ++k) gv(k) = db.gij(mu[k].first, mu[k].second);
    const CMatrix a = (4.0 / p.kappa) * gv * gv.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    const auto& ev = es.eigenvalues();
    out.dominant_eigenvalue = ev(3);
    out.subdominant_ratio = std::abs(ev(2)) / std::abs(ev(3));

    CMatrix xi_num = CMatrix::Zero(4, 4);
    const CVector v = es.eigenvectors().col(3);
    for (int k = 0; k < 4; ++k)
        xi_num += v(k) * db.eigenvectors.col(mu[k].second) * db.eigenvectors.col(mu[k].first).adjoint();
    xi_num *= std::sqrt(out.dominant_eigenvalue / (2.0 * out.rate));
    const cplx overlap = (xi.adjoint() * xi_num).trace();
    if (std::abs(overlap) > 0.0) xi_num *= std::conj(overlap) / std::abs(overlap);
    out.xi_mismatch = (xi_num - xi).norm() / xi.norm();
    return out;
}

Superoperator mechanism1_jump_liouvillian(const SystemParams& p, Transition which) {
    const HilbertSpace space = HilbertSpace::two_qubits();
    const double w = two_photon_rabi(p);
    CMatrix h2p = CMatrix::Zero(4, 4);
    h2p(kGG, kEE) = -w;
    h2p(kEE, kGG) = -w;
    const JumpOperatorModel jm = mechanism1_jump_operator(p, which);
    std::vector<Channel> terms = build_channels(p, space).terms();
    terms.push_back({"xi", 2.0 * jm.rate, jm.xi, jm.xi});
    Superoperator L = build_liouvillian(Operator(space, h2p), terms);
    return {space, L.matrix(), "two-photon drive + jump operator"};
}

MechanismIAnalytics mechanism1_analytics(const SystemParams& p) {
    MechanismIAnalytics m;
    m.beta = p.beta();
    m.Gamma_P = p.purcell_rate();
    m.Omega_2p = two_photon_rabi(p);
    const double g0 = total_local_rate(p);
    const double cb = std::cos(m.beta);
    m.Gamma_IA = m.beta * m.beta * m.Gamma_P / 2.0;
    m.gamma_minus = g0 - p.gamma12 * cb;
    m.gamma_plus = g0 + p.gamma12 * cb;
    m.rho_A_ss = m.Gamma_IA / (m.Gamma_IA + m.gamma_minus);
    m.tau_IA = 2.0 / (m.Gamma_IA + m.gamma_minus);
    if (m.Gamma_P > 0.0) {
        m.P_S = 2.0 * m.Omega_2p * m.Omega_2p / m.Gamma_P;
        m.rho_S_ss = m.P_S > 0.0 ? 1.0 / (1.0 + m.gamma_plus * (1.0 / m.P_S + 1.0 / m.Gamma_P)) : 0.0;
        const double disc = m.Gamma_P * m.Gamma_P - 4.0 * m.Omega_2p * m.Omega_2p;
        const double root = disc > 0.0 ? std::sqrt(disc) : 0.0;
        const double rate = m.Gamma_P - root;
        m.tau_IS = rate > 0.0 ? 2.0 / rate : kInf;
        const double x = 2.0 * m.Omega_2p / m.Gamma_P;
        const double rr = 1.0 - x * x > 0.0 ? std::sqrt(1.0 - x * x) : 0.0;
        m.r_tau = (1.0 - rr) > 0.0 ? 0.5 * m.beta * m.beta / (1.0 - rr) : kInf;
    } else {
        m.P_S = 0.0;
        m.rho_S_ss = 0.0;
        m.tau_IS = kInf;
        m.r_tau = kInf;
    }
    const double C = m.Gamma_P / p.gamma;
    m.antisymmetric_active = C > 0.0 && m.beta * m.beta > (2.0 / C) * (1.0 - p.gamma12 / p.gamma);
    m.symmetric_active = std::pow(m.Omega_2p / p.gamma, 2) > C;
    return m;
}

MechanismIIAnalytics mechanism2_analytics(const SystemParams& p) {
    MechanismIIAnalytics m;
    const double g0 = total_local_rate(p);
    m.Gamma_S = 2.0 * p.purcell_rate() + g0 + p.gamma12;
    m.Gamma_A = g0 - p.gamma12;
    const double G = m.Gamma_S, d2 = p.delta * p.delta, W2 = p.Omega * p.Omega;
    const double chi = std::pow(G, 4) * (d2 + 2.0 * W2) + G * G * (6.0 * d2 * d2 - 4.0 * d2 * W2 + 64.0 * W2 * W2) +
                       8.0 * (d2 * d2 * d2 - 4.0 * d2 * d2 * W2 + 4.0 * d2 * W2 * W2 + 48.0 * W2 * W2 * W2);
    m.Gamma_eff_full = chi > 0.0 ? 4.0 * G * d2 * (d2 + 2.0 * W2) * (G * G + 2.0 * d2 + 8.0 * W2) / chi : 0.0;
    m.Gamma_eff_simple = 4.0 * G * d2 / (G * G + 24.0 * W2);
    m.rho_A_ss = (d2 + 2.0 * W2) > 0.0 ? 2.0 * W2 / (d2 + 2.0 * W2) : 0.0;
    m.efficient = m.Gamma_eff_full > 10.0 * m.Gamma_A;
    return m;
}

MechanismIIIAnalytics mechanism3_analytics(const SystemParams& p) {
    MechanismIIIAnalytics m;
    const double R = p.R(), cb = std::cos(p.beta()), g = p.gamma, D = p.Delta;
    const double W4c2 = std::pow(p.Omega, 4) * cb * cb;
    const double base = R * R * (g * g + 4.0 * D * D);
    const double den = base + 16.0 * W4c2;
    if (den > 0.0) {
        m.rho_gg = (base + 4.0 * W4c2) / den;
        m.rho_ee = 4.0 * W4c2 / den;
        m.rho_gg_ee = 2.0 * R * cplx(2.0 * D, -g) * p.Omega * p.Omega * cb / den;
        m.rho_SS = 4.0 * W4c2 / den;
    } else {
        m.rho_gg = 1.0;
    }
    const double J = p.J, d2 = p.delta * p.delta, W2 = p.Omega * p.Omega;
    const double cden = g * g * d2 * d2 + 16.0 * J * J * W2 * W2;
    m.concurrence = cden > 0.0 ? std::max(0.0, 4.0 * J * W2 * (g * d2 - 2.0 * J * W2) / cden) : 0.0;
    m.delta_max = p.Omega * std::sqrt(2.0 * (1.0 + std::sqrt(5.0)) * J / g);
    m.detuning_valid = std::abs(p.delta) >= 0.5 * std::abs(J);
    m.drive_valid = std::abs(p.Omega) <= 0.2 * R;
    return m;
}

std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::IA: return "I_A";
        case Mechanism::IS: return "I_S";
        case Mechanism::II: return "II";
        case Mechanism::IIIsp: return "III_sp";
        case Mechanism::IIIcav: return "III_cav";
        case Mechanism::IV: return "IV";
    }
    return "?";
}

Classification classify_mechanisms(const SystemParams& p, const ClassifierThresholds& th) {
    const double F = th.much_greater, A = th.approx;
    auto gg = [F](double a, double b) { return a >= F * b; };
    auto approx = [A](double a, double b) {
        if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) return false;
        const double r = a / b;
        return r >= 1.0 / A && r <= A;
    };
    auto lesssim = [A](double a, double b) { return a <= A * b; };
    auto gtrsim = [A](double a, double b) { return a >= b / A; };

    Classification out;
    auto& c = out.conditions;
    auto add = [&c](std::string name, bool v) {
        c.emplace_back(std::move(name), v);
        return v;
    };

    const double R = p.R(), W = std::abs(p.Omega), k = p.kappa, J = std::abs(p.J), d = std::abs(p.delta);
    const double C = p.cooperativity(), GP = p.purcell_rate();
    const MechanismIAnalytics m1 = mechanism1_analytics(p);
    const MechanismIIAnalytics m2 = mechanism2_analytics(p);
    const double W2p = std::abs(m1.Omega_2p);

    const bool driven = add("Omega > 0", W > 0.0);
    const bool two_photon = add("two-photon resonance", p.Delta == 0.0 || F * std::abs(p.Delta) <= R);
    const bool coop = add("C > 1", C > 1.0);

    const bool i_common = coop & add("I: R >> kappa", gg(R, k)) & add("I: R >> delta", gg(R, d)) &
                          add("I: R >> Omega", gg(R, W)) & add("I: Omega_2p <~ kappa", lesssim(W2p, k)) &
                          add("I: kappa <~ J", lesssim(k, J));
    const bool ia = add("I_A: Delta_a ~ R", approx(p.Delta_a, R)) & add("I_A: delta != 0", d > 0.0) &
                    add("I_A: Gamma_IA > gamma_-", m1.Gamma_IA > m1.gamma_minus);
    const bool is = add("I_S: Delta_a ~ -R", approx(p.Delta_a, -R)) & add("I_S: kappa >> Omega_2p", gg(k, W2p)) &
                    add("I_S: P_S > gamma_+", m1.P_S > m1.gamma_plus);

    const bool ii = coop & add("II: kappa >> R", gg(k, R)) & add("II: kappa >> Omega", gg(k, W)) &
                    add("II: Omega >> delta", gg(W, d)) & add("II: Gamma_eff >> Gamma_A", gg(m2.Gamma_eff_full, m2.Gamma_A));

    const bool iii_sp = add("III_sp: delta >~ J", gtrsim(d, J)) & add("III_sp: kappa < J", k < J) &
                        add("III_sp: Omega_2p ~ gamma", approx(W2p, p.gamma));
    const bool iii_cav = coop & add("III_cav: kappa >~ J", gtrsim(k, J)) & add("III_cav: kappa >~ delta", gtrsim(k, d)) &
                         add("III_cav: kappa >~ Omega", gtrsim(k, W)) &
                         add("III_cav: Gamma_P > Omega when Omega >~ J", !gtrsim(W, J) || GP > W);

    const bool iv = coop & add("IV: kappa <~ J", lesssim(k, J)) & add("IV: kappa <~ Omega_2p", lesssim(k, W2p)) &
                    add("IV: R >> Omega", gg(R, W)) &
                    add("IV: Delta_a ~ +-2 Omega_2p",
                        approx(p.Delta_a, 2.0 * W2p) || approx(p.Delta_a, -2.0 * W2p));

    if (driven && two_photon) {
        if (i_common && ia) out.mechanisms.insert(Mechanism::IA);
        if (i_common && is) out.mechanisms.insert(Mechanism::IS);
        if (ii) out.mechanisms.insert(Mechanism::II);
        if (iii_sp) out.mechanisms.insert(Mechanism::IIIsp);
        if (iii_cav) out.mechanisms.insert(Mechanism::IIIcav);
        if (iv) out.mechanisms.insert(Mechanism::IV);
    }
    return out;
}

}  // namespace tpe
