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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tpe/effective_models.hpp"
#include "tpe/fixtures.hpp"
#include "tpe/liouville.hpp"
#include "tpe/observables.hpp"

using namespace tpe;

namespace {

const HilbertSpace kQubit = HilbertSpace::single_qubit();

Operator lowering() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return Operator(kQubit, m);
}

Superoperator decaying_qubit(double gamma = 1.0, double Omega = 0.0, double detuning = 0.0) {
    const Operator sm = lowering();
    const Operator h = detuning * (sm.adjoint() * sm) + Omega * (sm + sm.adjoint());
    return build_liouvillian(h, std::vector<Channel>{{"decay", gamma, sm, sm}});
}

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> d;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(d(rng), d(rng));
    return a + a.adjoint();
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> sorted_real(const CVector& v) {
    std::vector<double> out;
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i).real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("undriven qubit spectrum and gap") {
    const Superoperator L = decaying_qubit();
    CHECK(L.dim() == 4);
    const std::vector<double> ev = sorted_real(L.eigen().values);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(-0.5));
    CHECK(ev[2] == doctest::Approx(-0.5));
    CHECK(std::abs(ev[3]) < 1e-12);
    CHECK(liouvillian_gap(L) == doctest::Approx(0.5).epsilon(1e-12));

    const StateMatrix rho = steady_state(L);
    CHECK(std::abs(rho.matrix()(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("unitary generator") {
    std::mt19937_64 rng(1);
    const HilbertSpace s = HilbertSpace::two_qubits();
    const Superoperator L = build_liouvillian(Operator(s, random_hermitian(rng, 4)), std::vector<Channel>{});
    const CVector ev = L.eigen().values;
    for (int i = 0; i < ev.size(); ++i) CHECK(std::abs(ev(i).real()) < 1e-10);
    CHECK(liouvillian_gap(L) == 0.0);
    CHECK_THROWS_AS(steady_state(L), DegenerateKernelError);
}

TEST_CASE("trace preservation of built generators") {
    std::mt19937_64 rng(2);
    SystemParams p = fixtures::fig3();
    p.gamma_phi = 0.3;
    p.Gamma_phi = 0.2;
    p.Gamma_extra = 0.1;
    p.n_max = 2;
    for (const Superoperator& L : {full_liouvillian(p), cavity_free_liouvillian(p)}) {
        for (int k = 0; k < 20; ++k) {
            const CMatrix x = random_hermitian(rng, L.hilbert_dim());
            const CMatrix y = L.apply(x);
            CHECK(std::abs(y.trace()) < 1e-10 * L.norm() * x.norm());
            CHECK((y - y.adjoint()).norm() < 1e-10 * L.norm() * x.norm());
        }
    }
}

TEST_CASE("vectorization is column-major") {
    CMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const CVector v = vec(m);
    CHECK(v(1) == cplx(3.0));
    CHECK(v(2) == cplx(2.0));
    CHECK((unvec(v, 2) - m).norm() == 0.0);
}

TEST_CASE("fig 3 generator has a unique stationary state") {
    const Superoperator L = full_liouvillian(fixtures::fig3());
    CHECK(L.hilbert_dim() == 16);
    CHECK(kernel_dimension(L) == 1);
    const StateMatrix rho = steady_state(L);
    CHECK(stationarity_residual(L, rho.matrix()) < kSteadyResidualTol);
}

TEST_CASE("driven two-level emitter") {
    // Omega (sigma + sigma^dagger) drive; at resonance |<s>| = 2 W / (1 + 8 W^2) for gamma = 1.
    for (double W : {0.05, 0.3, 1.0, 4.0}) {
        const StateMatrix rho = steady_state(decaying_qubit(1.0, W));
        const double s = std::abs(rho.expectation(lowering()));
        CHECK(s == doctest::Approx(2.0 * W / (1.0 + 8.0 * W * W)).epsilon(1e-10));
    }
    const StateMatrix rho = steady_state(decaying_qubit(1.0, 1.0));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("evolution") {
    SUBCASE("zero generator") {
        const Superoperator L(kQubit, CMatrix::Zero(4, 4), "zero");
        CMatrix m(2, 2);
        m << 0.3, 0.1, 0.1, 0.7;
        const StateMatrix rho0(kQubit, m);
        const Trajectory t = evolve(L, rho0, {0.0, 1.0, 10.0});
        for (const auto& s : t.states) CHECK((s.matrix() - m).norm() < 1e-12);
    }
    SUBCASE("exponential decay") {
        const Superoperator L = decaying_qubit();
        const std::vector<double> ts{0.5, 1.0, 2.0};
        const Trajectory t = evolve(L, StateMatrix::basis_state(kQubit, 1), ts);
        CHECK(t.path == EvolutionPath::Spectral);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(t.states[i].matrix()(1, 1).real() == doctest::Approx(std::exp(-ts[i])).epsilon(1e-10));
    }
    SUBCASE("long times reach the steady state") {
        SystemParams p = fixtures::fig3();
        p.n_max = 2;
        const Superoperator L = full_liouvillian(p);
        const double tail = 40.0 / liouvillian_gap(L);
        const Trajectory t = evolve(L, StateMatrix::basis_state(L.space(), 0), {tail});
        CHECK(std::abs(t.states[0].matrix().trace() - 1.0) < 1e-8);
        CHECK(trace_distance(t.states[0].matrix(), steady_state(L).matrix()) < 1e-6);
    }
    SUBCASE("unsorted times") {
        CHECK_THROWS(evolve(decaying_qubit(), StateMatrix::basis_state(kQubit, 1), {1.0, 0.5}));
    }
}

TEST_CASE("fig 8 metastable plateau") {
    const SystemParams p = fixtures::fig8();
    const Superoperator L = full_liouvillian(p);
    const std::vector<double> ts{1.0, 10.0, 100.0};
    const Trajectory t = evolve(L, StateMatrix::basis_state(L.space(), 0), ts);
    const double s = 1.0 / std::sqrt(2.0);
    CVector s2 = CVector::Zero(4);
    s2(0) = s2(3) = s;
    for (const auto& rho : t.states) {
        const double pop = (s2.adjoint() * qubit_state(rho).matrix() * s2)(0, 0).real();
        CHECK(pop == doctest::Approx(0.66).epsilon(0.07 / 0.66));
    }
}

TEST_CASE("two-time correlators") {
    const Superoperator L = decaying_qubit();
    const Operator sm = lowering();
    const StateMatrix gnd = steady_state(L);
    for (cplx c : two_time_correlator(L, sm.adjoint(), sm, gnd, {0.0, 0.5, 2.0})) CHECK(std::abs(c) < 1e-14);

    // <s^dagger(0) s(tau)> from |e><e| decays at gamma/2.
    const StateMatrix excited = StateMatrix::basis_state(kQubit, 1);
    const std::vector<double> taus{0.0, 0.5, 1.0, 3.0};
    const auto c = two_time_correlator(L, sm.adjoint(), sm, excited, taus, Stationarity::Skip);
    for (std::size_t i = 0; i < taus.size(); ++i) CHECK(std::abs(c[i] - std::exp(-0.5 * taus[i])) < 1e-10);

    CHECK_THROWS(two_time_correlator(L, sm.adjoint(), sm, excited, taus));

    const StateMatrix driven = steady_state(decaying_qubit(1.0, 0.7, 0.3));
    const Superoperator Ld = decaying_qubit(1.0, 0.7, 0.3);
    const cplx c0 = two_time_correlator(Ld, sm.adjoint(), sm, driven, {0.0})[0];
    CHECK(std::abs(c0 - driven.expectation(sm.adjoint() * sm)) < 1e-10);
}

TEST_CASE("emission spectrum") {
    // Incoherent excitation: Lorentzian of FWHM gamma at the qubit frequency (zero here).
    const Superoperator L = decaying_qubit();
    const Operator sm = lowering();
    std::vector<double> w;
    for (int i = -40; i <= 40; ++i) w.push_back(0.1 * i);
    const auto s = emission_spectrum(L, StateMatrix::basis_state(kQubit, 1), sm, w, Stationarity::Skip);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(s[i] == doctest::Approx(0.25 / (0.25 + w[i] * w[i])).epsilon(1e-9));

    // Two-photon resonance fluorescence at delta = J: sidebands near +-R.
    SystemParams p = fixtures::dimer_2p5nm();
    p.delta = p.J;
    p.Omega = 1e3;
    const Superoperator Lq = cavity_free_liouvillian(p);
    const StateMatrix rho = steady_state(Lq);
    const HilbertSpace q2 = HilbertSpace::two_qubits();
    const Operator field = qubit_lowering(q2, 1) + qubit_lowering(q2, 2);
    const double R = p.R();
    std::vector<double> grid;
    for (int i = 0; i <= 600; ++i) grid.push_back(R * (-1.5 + 3.0 * i / 600.0));
    const auto spec = emission_spectrum(Lq, rho, field, grid);
    for (double v : spec) CHECK(v >= 0.0);
    double best_neg = 0.0, best_pos = 0.0, at_neg = 0.0, at_pos = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < -0.5 * R && spec[i] > best_neg) best_neg = spec[i], at_neg = grid[i];
        if (grid[i] > 0.5 * R && spec[i] > best_pos) best_pos = spec[i], at_pos = grid[i];
    }
    CHECK(std::abs(at_neg / R + 1.0) < 0.01);
    CHECK(std::abs(at_pos / R - 1.0) < 0.01);
}

TEST_CASE("mechanism II gap") {
    const SystemParams p = fixtures::mechanism2_point(1e4, 1e3);
    const double ratio = liouvillian_gap(full_liouvillian(p)) / mechanism2_analytics(p).Gamma_eff_full;
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("fock cutoff convergence") {
    for (const SystemParams& base : {fixtures::fig3(), fixtures::fig5(100.0, Transition::Antisymmetric),
                                      fixtures::mechanism2_point(1e4, 1e3)}) {
        SystemParams p3 = base, p4 = base;
        p3.n_max = 3;
        p4.n_max = 4;
        const StateMatrix r3 = steady_state(full_liouvillian(p3)), r4 = steady_state(full_liouvillian(p4));
        CHECK(std::abs(concurrence(r3) - concurrence(r4)) < 1e-4);
        CHECK(std::abs(cavity_intensity(r3) - cavity_intensity(r4)) < 1e-4);
        // Top Fock level stays empty.
        const CMatrix cav = partial_trace(r4, {2}).matrix();
        CHECK(cav(4, 4).real() < 1e-6);
    }
}
