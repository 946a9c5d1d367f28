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

#include <random>

#include "tpe/effective_models.hpp"
#include "tpe/liouville.hpp"
#include "tpe/observables.hpp"

using namespace tpe;

namespace {

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p;
    p.J = 200.0 * u(rng);
    p.delta = 1.0 + 100.0 * u(rng);
    p.Delta = 40.0 * (u(rng) - 0.5);
    p.Delta_a = 200.0 * (u(rng) - 0.5);
    p.Omega = 30.0 * u(rng);
    p.gamma12 = 1.8 * (u(rng) - 0.5);
    p.kappa = 1.0 + 300.0 * u(rng);
    p.g = 0.2 * p.kappa * u(rng);
    p.Gamma_extra = 0.5 * u(rng);
    p.gamma_phi = 0.5 * u(rng);
    p.Gamma_phi = 0.5 * u(rng);
    p.n_max = 1 + static_cast<int>(3.0 * u(rng));
    return p;
}

void check_state(const StateMatrix& rho) {
    const CMatrix& m = rho.matrix();
    CHECK(std::abs(m.trace() - 1.0) < 1e-10);
    CHECK((m - m.adjoint()).norm() < 1e-10);
    CHECK(rho.min_eigenvalue() > -1e-8);
}

}  // namespace

TEST_CASE("random builds give physical steady states") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 40; ++k) {
        const SystemParams p = random_params(rng);
        CAPTURE(k);
        CHECK(hermitian_check(build_hamiltonian(p, full_space(p))));
        for (const Superoperator& L : {full_liouvillian(p), cavity_free_liouvillian(p), bloch_redfield_liouvillian(p),
                                       collective_purcell_liouvillian(p)}) {
            const StateMatrix rho = steady_state(L);
            check_state(rho);
            CHECK(stationarity_residual(L, rho.matrix()) < kSteadyResidualTol);
            const double c = concurrence(rho);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
            CHECK(liouvillian_gap(L) > 0.0);
        }
    }
}

TEST_CASE("evolution preserves the trace") {
    std::mt19937_64 rng(103);
    for (int k = 0; k < 10; ++k) {
        const SystemParams p = random_params(rng);
        const Superoperator L = full_liouvillian(p);
        const Trajectory t = evolve(L, StateMatrix::basis_state(L.space(), 0), {1e-3, 1e-1, 1.0, 10.0, 1e3});
        for (const auto& s : t.states) CHECK(std::abs(s.matrix().trace() - 1.0) < 1e-8);
    }
}

TEST_CASE("flat redfield denominators equal the collective model") {
    std::mt19937_64 rng(107);
    for (int k = 0; k < 20; ++k) {
        const SystemParams p = random_params(rng);
        const Superoperator a = bloch_redfield_liouvillian(p, RedfieldDenominators::Flat);
        const Superoperator b = collective_purcell_liouvillian(p);
        CHECK((a.matrix() - b.matrix()).norm() < 1e-12 * b.norm());
    }
}

TEST_CASE("mechanism analytics stay physical") {
    std::mt19937_64 rng(109);
    for (int k = 0; k < 50; ++k) {
        SystemParams p = random_params(rng);
        p.gamma12 = std::abs(p.gamma12);
        const MechanismIAnalytics a = mechanism1_analytics(p);
        CHECK(a.rho_A_ss >= 0.0);
        CHECK(a.rho_A_ss <= 1.0);
        CHECK(a.rho_S_ss >= 0.0);
        CHECK(a.rho_S_ss <= 1.0);
        CHECK(a.tau_IA > 0.0);
        CHECK(a.tau_IS > 0.0);
        const MechanismIIIAnalytics c = mechanism3_analytics(p);
        CHECK(c.rho_gg + c.rho_ee + 2.0 * c.rho_SS == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.concurrence >= 0.0);
        if (p.Omega >= 10.0 * p.delta) {
            const MechanismIIAnalytics b = mechanism2_analytics(p);
            CHECK(b.Gamma_eff_full == doctest::Approx(b.Gamma_eff_simple).epsilon(0.05));
        }
    }
}
