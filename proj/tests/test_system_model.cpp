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

#include <Eigen/Eigenvalues>
#include <random>

#include "tpe/system_model.hpp"

using namespace tpe;

namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST_CASE("dipole coupling fixtures") {
    struct Case {
        double r_nm, J, g12;
    };
    for (const Case c : {Case{2.5, 9.18e4, 0.999}, Case{50.0, 10.65, 0.967}, Case{0.5, 1.15e7, 0.999}}) {
        CAPTURE(c.r_nm);
        DipoleGeometry geom;
        geom.kr12 = kr12_from_separation(c.r_nm);
        const DipoleCoupling d = dipole_coupling(geom);
        CHECK(rel(d.J, c.J) < 5e-3);
        CHECK(rel(d.gamma12, c.g12) < 5e-3);
    }
    DipoleGeometry zero;
    CHECK_THROWS_AS(dipole_coupling(zero), Error);
    DipoleGeometry tilted;
    tilted.kr12 = 1.0;
    tilted.mu_dot_r = 1.5;
    CHECK_THROWS_AS(dipole_coupling(tilted), Error);
}

TEST_CASE("dipole coupling bounds and far field") {
    for (double lx = -3.0; lx <= 3.0; lx += 0.05) {
        for (double mu : {0.0, 0.5, 1.0}) {
            DipoleGeometry geom;
            geom.kr12 = std::pow(10.0, lx);
            geom.mu_dot_r = mu;
            CHECK(std::abs(dipole_coupling(geom).gamma12) <= 1.0 + 1e-12);
        }
    }
    DipoleGeometry far;
    far.kr12 = 100.0;
    CHECK(std::abs(dipole_coupling(far).J) < 0.05);
}

TEST_CASE("waveguide collective decay") {
    CHECK(waveguide_gamma12(0.9, 0.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(waveguide_gamma12(0.7, 1e3) < 1e-200);
    CHECK(waveguide_gamma12(0.7, std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(waveguide_gamma12(1.0, 2.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS(waveguide_gamma12(1.2, 0.0));
    CHECK_THROWS(waveguide_gamma12(0.5, -1.0));
}

TEST_CASE("hamiltonian") {
    SystemParams p;
    p.J = 3.0;
    p.delta = 4.0;
    CHECK(p.R() == doctest::Approx(5.0));

    const Operator h = build_qubit_hamiltonian(p);
    const Eigen::Matrix2cd block = h.matrix().block(1, 1, 2, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-5.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(5.0));

    SystemParams zero;
    CHECK(build_hamiltonian(zero, full_space(zero)).matrix().norm() == 0.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 20; ++k) {
        SystemParams q;
        q.J = u(rng);
        q.delta = u(rng);
        q.Delta = u(rng);
        q.Delta_a = u(rng);
        q.Omega = u(rng);
        q.g = u(rng);
        q.n_max = 1 + k % 3;
        CHECK(hermitian_check(build_hamiltonian(q, full_space(q))));
    }

    SystemParams mismatch;
    mismatch.n_max = 2;
    CHECK_THROWS_AS(build_hamiltonian(mismatch, HilbertSpace::qubits_and_cavity(3)), DimensionError);
}

TEST_CASE("channels") {
    SystemParams p;
    p.gamma12 = 0.5;
    p.kappa = 2.0;
    const HilbertSpace s = full_space(p);
    ChannelSet ch = build_channels(p, s);
    CHECK(ch.gamma_matrix(0, 1) == ch.gamma_matrix(1, 0));
    CHECK(ch.gamma_matrix(0, 0) > 0.0);
    CHECK(ch.kappa == 2.0);
    CHECK(ch.extra.empty());

    p.gamma_phi = 2.0;
    ch = build_channels(p, s);
    REQUIRE(ch.extra.size() == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(ch.extra[i].rate == 2.0);
        CHECK((ch.extra[i].a.matrix() - qubit_sigma_z(s, i + 1).matrix()).norm() == 0.0);
    }

    p.gamma_phi = 0.0;
    p.Gamma_phi = 1.0;
    ch = build_channels(p, s);
    REQUIRE(ch.extra.size() == 1);
    CHECK((ch.extra[0].a.matrix() - (qubit_sigma_z(s, 1) + qubit_sigma_z(s, 2)).matrix()).norm() == 0.0);

    SystemParams bad;
    bad.kappa = -1.0;
    CHECK_THROWS_AS(build_channels(bad, full_space(bad)), Error);
    bad = {};
    bad.gamma_phi = -0.1;
    CHECK_THROWS_AS(build_channels(bad, full_space(bad)), Error);
    bad = {};
    bad.gamma12 = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("purcell rate and cooperativity") {
    SystemParams p;
    p.kappa = 100.0;
    p.g = 10.0;
    CHECK(p.purcell_rate() == doctest::Approx(4.0));
    CHECK(p.cooperativity() == doctest::Approx(4.0));
    p.kappa = 0.0;
    CHECK(p.purcell_rate() == 0.0);
}
