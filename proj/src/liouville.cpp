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

#include "tpe/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace tpe {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Restriction of L to traceless matrices. Coordinates are every vec index
// except 0; diagonal coordinates k = i(d+1) stand for e_k - e_0.
CMatrix traceless_restriction(const Superoperator& L) {
    const int d = L.hilbert_dim();
    const int n = L.dim();
    const CMatrix& m = L.matrix();
    CMatrix out(n - 1, n - 1);
    for (int k = 1; k < n; ++k) {
        CVector col = m.col(k);
        if (k % (d + 1) == 0) col -= m.col(0);
        out.col(k - 1) = col.tail(n - 1);
    }
    return out;
}

void check_times(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) throw Error("evolution times must be finite and non-negative");
        if (i > 0 && times[i] < times[i - 1]) throw Error("evolution times must be ascending");
    }
}

// Propagated states are hermitised. Drift above 1e-8 sends the spectral path to the fallback;
// smaller drift is removed by renormalising.
bool acceptable_state(const CMatrix& rho) {
    if (!rho.allFinite()) return false;
    return std::abs(rho.trace() - 1.0) <= 1e-8;
}

Trajectory evolve_expm(const Superoperator& L, const StateMatrix& rho0, const std::vector<double>& times) {
    Trajectory traj;
    traj.path = EvolutionPath::MatrixExponential;
    const int d = L.hilbert_dim();
    CVector x = vec(rho0.matrix());
    double t_prev = 0.0;
    for (double t : times) {
        if (t > t_prev) {
            const CMatrix step = (L.matrix() * (t - t_prev)).exp();
            x = step * x;
            t_prev = t;
        }
        CMatrix rho = hermitize(unvec(x, d));
        if (!rho.allFinite()) throw Error("matrix exponential produced a non-finite state");
        rho /= rho.trace();
        x = vec(rho);
        traj.times.push_back(t);
        traj.states.emplace_back(rho0.space(), rho);
    }
    return traj;
}

}  // namespace

// ---------------------------------------------------------------------------

Superoperator::Superoperator(HilbertSpace space, CMatrix matrix, std::string source)
    : space_(std::move(space)), matrix_(std::move(matrix)), source_(std::move(source)) {
    const int d2 = space_.total_dim() * space_.total_dim();
    if (matrix_.rows() != d2 || matrix_.cols() != d2)
        throw DimensionError("superoperator matrix does not match the vectorised dimension");
    norm_ = matrix_.norm();
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
    if (rho.rows() != hilbert_dim() || rho.cols() != hilbert_dim())
        throw DimensionError("matrix does not match superoperator dimension");
    return unvec(matrix_ * vec(rho), hilbert_dim());
}

const Eigendecomposition& Superoperator::eigen() const {
    std::call_once(cache_->once, [this] {
        Eigendecomposition& e = cache_->value;
        Eigen::ComplexEigenSolver<CMatrix> es(matrix_);
        if (es.info() != Eigen::Success) return;
        e.values = es.eigenvalues();
        e.vectors = es.eigenvectors();
        Eigen::PartialPivLU<CMatrix> lu(e.vectors);
        e.inverse = lu.inverse();
        if (!e.inverse.allFinite()) return;
        const CMatrix rebuilt = e.vectors * e.values.asDiagonal() * e.inverse;
        e.reconstruction_error = (rebuilt - matrix_).norm() / std::max(norm_, 1e-300);
        e.usable = e.reconstruction_error < 1e-8;
    });
    return cache_->value;
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
    if (!(a.space_ == b.space_)) throw DimensionError("superoperator sum across different spaces");
    return {a.space_, a.matrix_ + b.matrix_, a.source_ + " + " + b.source_};
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, int d) {
    if (v.size() != static_cast<Eigen::Index>(d) * d) throw DimensionError("vector length is not d^2");
    return Eigen::Map<const CMatrix>(v.data(), d, d);
}

Superoperator hamiltonian_superoperator(const Operator& h) {
    const int d = h.dim();
    const CMatrix id = CMatrix::Identity(d, d);
    return {h.space(), -kI * (kron(id, h.matrix()) - kron(h.matrix().transpose(), id)), "H"};
}

Superoperator dissipator_superoperator(const Operator& a, const Operator& b, double rate) {
    if (!(a.space() == b.space())) throw DimensionError("dissipator operators act on different spaces");
    const int d = a.dim();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix bda = b.matrix().adjoint() * a.matrix();
    const CMatrix m = 2.0 * kron(b.matrix().conjugate(), a.matrix()) - kron(id, bda) - kron(bda.transpose(), id);
    return {a.space(), 0.5 * rate * m, "D"};
}

Superoperator build_liouvillian(const Operator& h, const std::vector<Channel>& terms) {
    CMatrix m = hamiltonian_superoperator(h).matrix();
    std::string source = "H";
    for (const auto& t : terms) {
        if (!(t.a.space() == h.space())) throw DimensionError("channel operator does not match the Hamiltonian space");
        m += dissipator_superoperator(t.a, t.b, t.rate).matrix();
        source += " + " + t.name;
    }
    return {h.space(), std::move(m), source};
}

Superoperator build_liouvillian(const Operator& h, const ChannelSet& channels) {
    if (!(channels.space == h.space())) throw DimensionError("channel set does not match the Hamiltonian space");
    return build_liouvillian(h, channels.terms());
}

Superoperator full_liouvillian(const SystemParams& p) {
    const HilbertSpace space = full_space(p);
    return build_liouvillian(build_hamiltonian(p, space), build_channels(p, space));
}

Superoperator cavity_free_liouvillian(const SystemParams& p) {
    const HilbertSpace space = HilbertSpace::two_qubits();
    return build_liouvillian(build_hamiltonian(p, space), build_channels(p, space));
}

// ---------------------------------------------------------------------------

double stationarity_residual(const Superoperator& L, const CMatrix& rho) {
    return (L.matrix() * vec(rho)).norm() / std::max(L.norm(), 1e-300);
}

StateMatrix steady_state(const Superoperator& L) {
    const int d = L.hilbert_dim();
    const int n = L.dim();
    if (L.norm() == 0.0) throw DegenerateKernelError("generator is identically zero", n);
    const double scale = L.norm() / n;
    CMatrix m = L.matrix();
    m.row(0).setZero();
    for (int i = 0; i < d; ++i) m(0, i * (d + 1)) = scale;
    CVector rhs = CVector::Zero(n);
    rhs(0) = scale;

    Eigen::PartialPivLU<CMatrix> lu(m);
    CVector x = lu.solve(rhs);
    const bool suspicious = !x.allFinite() || lu.rcond() < 1e-15;
    if (suspicious) {
        const int k = kernel_dimension(L);
        if (k > 1) throw DegenerateKernelError("generator has " + std::to_string(k) + " stationary states", k);
    }
    CMatrix rho = hermitize(unvec(x, d));
    rho /= rho.trace();
    const double res = stationarity_residual(L, rho);
    if (!(res < kSteadyResidualTol)) {
        const int k = kernel_dimension(L);
        if (k > 1) throw DegenerateKernelError("generator has " + std::to_string(k) + " stationary states", k);
        throw Error("steady-state residual " + std::to_string(res) + " above tolerance");
    }
    return {L.space(), rho};
}

CVector nonstationary_spectrum(const Superoperator& L) {
    Eigen::ComplexEigenSolver<CMatrix> es(traceless_restriction(L), false);
    if (es.info() != Eigen::Success) throw Error("eigenvalue solver did not converge");
    CVector ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size(), [](cplx a, cplx b) { return a.real() > b.real(); });
    return ev;
}

int kernel_dimension(const Superoperator& L) {
    if (L.norm() == 0.0) return L.dim();
    const CVector ev = nonstationary_spectrum(L);
    const double tol = kZeroModeTol * L.norm();
    int k = 1;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) < tol) ++k;
    return k;
}

double liouvillian_gap(const Superoperator& L) {
    if (L.norm() == 0.0) return 0.0;
    const CVector ev = nonstationary_spectrum(L);
    const double tol = kZeroModeTol * L.norm();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) < tol) return 0.0;
    return -ev(0).real();
}

// ---------------------------------------------------------------------------

Trajectory evolve(const Superoperator& L, const StateMatrix& rho0, const std::vector<double>& times) {
    if (!(rho0.space() == L.space())) throw DimensionError("initial state does not match the generator space");
    check_times(times);
    const int d = L.hilbert_dim();
    if (L.norm() == 0.0) {
        Trajectory traj;
        traj.times = times;
        traj.states.assign(times.size(), rho0);
        return traj;
    }
    const Eigendecomposition& e = L.eigen();
    if (e.usable) {
        const CVector c = e.inverse * vec(rho0.matrix());
        Trajectory traj;
        bool ok = true;
        for (double t : times) {
            const CVector w = (e.values * t).array().exp() * c.array();
            CMatrix rho = hermitize(unvec(e.vectors * w, d));
            if (!acceptable_state(rho)) {
                ok = false;
                break;
            }
            rho /= rho.trace();
            traj.times.push_back(t);
            traj.states.emplace_back(L.space(), rho);
        }
        if (ok) return traj;
    }
    return evolve_expm(L, rho0, times);
}

Trajectory evolve_switched(const Superoperator& before, const Superoperator& after, const StateMatrix& rho0,
                           double t_cut, const std::vector<double>& times) {
    check_times(times);
    std::vector<double> early, late;
    for (double t : times) (t <= t_cut ? early : late).push_back(t);
    Trajectory out = evolve(before, rho0, early);
    if (late.empty()) return out;
    const Trajectory cut = evolve(before, rho0, {t_cut});
    for (double& t : late) t -= t_cut;
    const Trajectory rest = evolve(after, cut.states.back(), late);
    if (cut.path == EvolutionPath::MatrixExponential || rest.path == EvolutionPath::MatrixExponential)
        out.path = EvolutionPath::MatrixExponential;
    for (std::size_t i = 0; i < late.size(); ++i) {
        out.times.push_back(late[i] + t_cut);
        out.states.push_back(rest.states[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_stationary(const Superoperator& L, const StateMatrix& rho, Stationarity check) {
    if (check == Stationarity::Skip) return;
    const double res = stationarity_residual(L, rho.matrix());
    if (res > 1e-8) throw InvalidStateError("state is not stationary (relative residual " + std::to_string(res) + ")");
}

}  // namespace

std::vector<cplx> two_time_correlator(const Superoperator& L, const Operator& a, const Operator& b,
                                      const StateMatrix& rho, const std::vector<double>& taus, Stationarity check) {
    if (!(a.space() == L.space()) || !(b.space() == L.space()) || !(rho.space() == L.space()))
        throw DimensionError("correlator operands do not match the generator space");
    require_stationary(L, rho, check);
    const CVector x0 = vec(rho.matrix() * a.matrix());
    const CVector bt = vec(b.matrix().transpose());
    std::vector<cplx> out;
    out.reserve(taus.size());
    const Eigendecomposition& e = L.eigen();
    if (e.usable) {
        const CVector left = (bt.transpose() * e.vectors).transpose();
        const CVector right = e.inverse * x0;
        const CVector coef = left.cwiseProduct(right);
        for (double tau : taus) out.push_back((coef.array() * (e.values * tau).array().exp()).sum());
        return out;
    }
    for (double tau : taus) {
        const CVector x = (L.matrix() * tau).exp() * x0;
        out.push_back(bt.cwiseProduct(x).sum());
    }
    return out;
}

std::vector<double> emission_spectrum(const Superoperator& L, const StateMatrix& rho, const Operator& field,
                                      const std::vector<double>& omegas, Stationarity check) {
    if (!(field.space() == L.space()) || !(rho.space() == L.space()))
        throw DimensionError("spectrum operands do not match the generator space");
    require_stationary(L, rho, check);
    const Operator a = field.adjoint();
    const CVector x0 = vec(rho.matrix() * a.matrix());
    const CVector bt = vec(field.matrix().transpose());
    std::vector<double> s(omegas.size(), 0.0);
    const Eigendecomposition& e = L.eigen();
    if (e.usable) {
        const CVector left = (bt.transpose() * e.vectors).transpose();
        const CVector coef = left.cwiseProduct(e.inverse * x0);
        Eigen::Index zero = 0;
        e.values.cwiseAbs().minCoeff(&zero);
        const bool drop = std::abs(e.values(zero)) < 1e-8 * L.norm();
        for (std::size_t w = 0; w < omegas.size(); ++w) {
            cplx acc = 0.0;
            for (Eigen::Index k = 0; k < e.values.size(); ++k) {
                if (drop && k == zero) continue;
                acc += -coef(k) / (kI * omegas[w] + e.values(k));
            }
            s[w] = acc.real() / std::numbers::pi;
        }
    } else {
        // Resolvent solve on the fluctuation part (coherent part removed).
        const StateMatrix ss = steady_state(L);
        const int d = L.hilbert_dim();
        cplx tr = 0.0;
        for (int i = 0; i < d; ++i) tr += x0(i * (d + 1));
        const CVector x = x0 - vec(ss.matrix()) * tr;
        for (std::size_t w = 0; w < omegas.size(); ++w) {
            CMatrix m = L.matrix();
            m.diagonal().array() += kI * omegas[w];
            const CVector y = Eigen::PartialPivLU<CMatrix>(m).solve(-x);
            s[w] = bt.cwiseProduct(y).sum().real() / std::numbers::pi;
        }
    }
    const double peak = *std::max_element(s.begin(), s.end());
    if (!(peak > 0.0)) throw UndefinedObservableError("emission spectrum vanishes on the grid");
    for (double& v : s) v /= peak;
    return s;
}

}  // namespace tpe
