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

#include "tpe/fixtures.hpp"
#include "tpe/liouville.hpp"
#include "tpe/observables.hpp"

using namespace tpe;

namespace {

const HilbertSpace kTwo = HilbertSpace::two_qubits();

CVector ket(double gg, double ge, double eg, double ee) {
    CVector v(4);
    v << gg, ge, eg, ee;
    return v;
}

StateMatrix pure(const CVector& v) { return StateMatrix::pure(kTwo, v.normalized()); }

CMatrix random_density(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> d;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(d(rng), d(rng));
    CMatrix r = a * a.adjoint();
    return r / r.trace();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    CMatrix a(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = cplx(d(rng), d(rng));
    return Eigen::HouseholderQR<CMatrix>(a).householderQ();
}

// Wootters eigenvalues by brute force on rho (sy x sy) rho* (sy x sy).
double wootters_oracle(const CMatrix& rho) {
    CMatrix sy(2, 2);
    sy << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
    const CMatrix yy = kron(sy, sy);
    const CMatrix m = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    std::vector<double> l;
    for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    std::sort(l.rbegin(), l.rend());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace

TEST_CASE("concurrence examples") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(concurrence(pure(ket(s, 0, 0, s))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(StateMatrix(kTwo, 0.25 * CMatrix::Identity(4, 4))) == doctest::Approx(0.0));

    const CVector phi = ket(s, 0, 0, s);
    const CMatrix werner = 0.5 * phi * phi.adjoint() + 0.125 * CMatrix::Identity(4, 4);
    CHECK(concurrence(StateMatrix(kTwo, werner)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(wootters_oracle(werner) == doctest::Approx(0.25).epsilon(1e-10));

    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
        const CMatrix r = random_density(rng, 4);
        const CMatrix mix = 0.6 * phi * phi.adjoint() + 0.4 * r;
        CHECK(concurrence(StateMatrix(kTwo, mix)) == doctest::Approx(wootters_oracle(mix)).epsilon(1e-8));
    }
}

TEST_CASE("concurrence traces out the cavity") {
    const HilbertSpace full = HilbertSpace::qubits_and_cavity(2);
    const double s = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(12);
    v(0) = s;       // gg, 0
    v(3 * 3) = s;   // ee, 0
    CHECK(concurrence(StateMatrix::pure(full, v)) == doctest::Approx(1.0));
}

TEST_CASE("concurrence invariants") {
    std::mt19937_64 rng(23);
    const double s = 1.0 / std::sqrt(2.0);
    const CVector phi = ket(s, 0, 0, s);
    for (int k = 0; k < 50; ++k) {
        const CMatrix rho = 0.7 * phi * phi.adjoint() + 0.3 * random_density(rng, 4);
        const CMatrix U = kron(random_unitary(rng), random_unitary(rng));
        CMatrix rot = U * rho * U.adjoint();
        rot = 0.5 * (rot + rot.adjoint());
        CHECK(std::abs(concurrence(StateMatrix(kTwo, rho)) - concurrence(StateMatrix(kTwo, rot))) < 1e-10);
    }
    std::uniform_real_distribution<double> u;
    for (int k = 0; k < 50; ++k) {
        CMatrix mix = CMatrix::Zero(4, 4);
        double total = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double w = u(rng);
            total += w;
            mix += w * kron(random_density(rng, 2), random_density(rng, 2));
        }
        mix /= total;
        CHECK(concurrence(StateMatrix(kTwo, mix)) < 1e-10);
    }
}

TEST_CASE("basis populations") {
    const double s = 1.0 / std::sqrt(2.0);
    const Populations a = basis_populations(pure(ket(0, -s, s, 0)), PopulationBasis::SymmetricAntisymmetric);
    CHECK(a.at("A") == doctest::Approx(1.0));
    CHECK(a.at("S") == doctest::Approx(0.0));

    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    SystemParams p = fixtures::fig8();
    const Populations d = basis_populations(StateMatrix(kTwo, m), PopulationBasis::Dressed, &p);
    CHECK(d.at("S2") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.at("A2") == doctest::Approx(0.5).epsilon(1e-10));

    std::mt19937_64 rng(29);
    const StateMatrix r(kTwo, random_density(rng, 4));
    for (PopulationBasis b : {PopulationBasis::Bare, PopulationBasis::SymmetricAntisymmetric, PopulationBasis::PlusMinus,
                              PopulationBasis::Dressed}) {
        const Populations q = basis_populations(r, b, &p);
        double sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) sum += q.values[i];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS(basis_populations(r, PopulationBasis::Dressed));
    CHECK_THROWS(a.at("nope"));

    // Mechanism I_A point: steady state close to |A>.
    const StateMatrix ss = steady_state(full_liouvillian(fixtures::fig5(1000.0, Transition::Antisymmetric)));
    CHECK(basis_populations(ss, PopulationBasis::SymmetricAntisymmetric).at("A") > 0.9);
}

TEST_CASE("cavity g2 at zero delay") {
    const HilbertSpace c = HilbertSpace::qubits_and_cavity(8);
    const int nc = 9;
    CVector one = CVector::Zero(4 * nc);
    one(1) = 1.0;
    CHECK(g2_zero(StateMatrix::pure(c, one)) == doctest::Approx(0.0));

    // Coherent state |alpha> with alpha = 0.5 from its Fock expansion.
    const double alpha = 0.5;
    CVector coh = CVector::Zero(4 * nc);
    double fact = 1.0;
    for (int n = 0; n < nc; ++n) {
        if (n > 0) fact *= n;
        coh(n) = std::exp(-0.5 * alpha * alpha) * std::pow(alpha, n) / std::sqrt(fact);
    }
    coh.normalize();
    CHECK(g2_zero(StateMatrix::pure(c, coh)) == doctest::Approx(1.0).epsilon(1e-6));

    CVector vac = CVector::Zero(4 * nc);
    vac(0) = 1.0;
    CHECK_THROWS_AS(g2_zero(StateMatrix::pure(c, vac)), UndefinedObservableError);
}

TEST_CASE("bunching on the antisymmetric resonance") {
    // Cavity scan around +R: the concurrence peak coincides with an intensity dip and a g2 peak.
    const SystemParams base = fixtures::fig5(400.0, Transition::Antisymmetric);
    const double R = base.R();
    std::vector<double> c, in, g2;
    for (int i = 0; i <= 20; ++i) {
        SystemParams p = base;
        p.Delta_a = R * (0.8 + 0.02 * i);
        const StateMatrix rho = steady_state(full_liouvillian(p));
        c.push_back(concurrence(rho));
        in.push_back(cavity_intensity(rho));
        g2.push_back(g2_zero(rho));
    }
    const auto at = [](const std::vector<double>& v, bool max) {
        return static_cast<int>((max ? std::max_element(v.begin(), v.end()) : std::min_element(v.begin(), v.end())) -
                                v.begin());
    };
    const int peak = at(c, true);
    CHECK(peak > 0);
    CHECK(peak < 20);
    CHECK(std::abs(at(in, false) - peak) <= 1);
    CHECK(std::abs(at(g2, true) - peak) <= 1);
    CHECK(g2[peak] > 1.0);
}

TEST_CASE("frequency-resolved g2") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k) {
        const CMatrix prod = kron(random_density(rng, 2), random_density(rng, 2));
        CHECK(freq_resolved_g2(StateMatrix(kTwo, prod)) == doctest::Approx(1.0).epsilon(1e-10));
    }
    const double s = 1.0 / std::sqrt(2.0);
    const CVector A = ket(0, -s, s, 0);
    const double eps = 1e-6;
    const CMatrix reg = (1.0 - 4.0 * eps) * A * A.adjoint() + eps * CMatrix::Identity(4, 4);
    CHECK(freq_resolved_g2(StateMatrix(kTwo, reg)) < 1e-4);
    CHECK(freq_resolved_g2(pure(ket(0, 0, 0, 1))) == doctest::Approx(1.0));
    CHECK_THROWS_AS(freq_resolved_g2(pure(ket(1, 0, 0, 0))), UndefinedObservableError);

    const SystemParams p = fixtures::fig5(400.0, Transition::Antisymmetric);
    const StateMatrix rho = steady_state(full_liouvillian(p));
    CHECK(freq_resolved_g2_after_switch_off(p, rho, 0.0) == doctest::Approx(freq_resolved_g2(rho)).epsilon(1e-8));
}

TEST_CASE("optical readout") {
    const StateMatrix rho = steady_state(full_liouvillian(fixtures::fig3()));
    const OpticalReadout r = optical_readout(rho);
    CHECK(r.intensity >= 0.0);
    REQUIRE(r.g2_zero.has_value());
    CHECK(*r.g2_zero >= 0.0);
    CHECK(r.population_1 > 0.0);
    CHECK(r.population_2 > 0.0);
}
