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

#include "tpe/operator_core.hpp"

using namespace tpe;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> d;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
    return m;
}

CMatrix random_density(std::mt19937_64& rng, int n) {
    const CMatrix a = random_matrix(rng, n);
    CMatrix r = a * a.adjoint();
    return r / r.trace();
}

CMatrix outer(int n, int i, int j) {
    CMatrix m = CMatrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

Operator single_lowering() { return Operator(HilbertSpace::single_qubit(), outer(2, 0, 1)); }

}  // namespace

TEST_CASE("hilbert space dimensions") {
    const HilbertSpace s = HilbertSpace::qubits_and_cavity(3);
    CHECK(s.total_dim() == 16);
    CHECK(s.num_qubits() == 2);
    CHECK(s.cavity_factor().value() == 2);
    CHECK(s.n_max() == 3);
    CHECK_THROWS_AS(HilbertSpace::qubits_and_cavity(0), Error);
    CHECK_THROWS(HilbertSpace::two_qubits().n_max());
}

TEST_CASE("qubit lowering") {
    const HilbertSpace s = HilbertSpace::two_qubits();
    const Operator s1 = qubit_lowering(s, 1), s2 = qubit_lowering(s, 2);
    CHECK((s1 * s1).matrix().norm() == 0.0);
    CHECK((s2 * s2).matrix().norm() == 0.0);
    // |e> -> |g> on qubit 1 only: eg -> gg and ee -> ge.
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 2) = 1.0;
    expect(1, 3) = 1.0;
    CHECK((s1.matrix() - expect).norm() == 0.0);

    const Operator anti = s1.adjoint() * s1 + s1 * s1.adjoint();
    CHECK((anti.matrix() - CMatrix::Identity(4, 4)).norm() < 1e-15);

    // sigma_1^dagger sigma_2 moves ge (index 1) to eg (index 2).
    const CMatrix hop = (s1.adjoint() * s2).matrix();
    CHECK(hop(2, 1) == cplx(1.0));
    CHECK((hop - outer(4, 2, 1)).norm() == 0.0);

    CHECK_THROWS(qubit_lowering(s, 3));
    CHECK_THROWS(qubit_lowering(HilbertSpace::cavity(2), 1));

    const HilbertSpace full = HilbertSpace::qubits_and_cavity(2);
    const Operator f1 = qubit_lowering(full, 1);
    CHECK((f1 * f1).matrix().norm() == 0.0);
}

TEST_CASE("cavity annihilation") {
    const HilbertSpace c1 = HilbertSpace::cavity(1);
    CHECK((cavity_annihilation(c1).matrix() - outer(2, 0, 1)).norm() == 0.0);

    const int n = 4;
    const HilbertSpace c = HilbertSpace::cavity(n);
    const Operator a = cavity_annihilation(c);
    for (int k = 1; k <= n; ++k) CHECK(a.matrix()(k - 1, k).real() == doctest::Approx(std::sqrt(double(k))));
    const CMatrix comm = (a * a.adjoint() - a.adjoint() * a).matrix();
    CMatrix expect = CMatrix::Identity(n + 1, n + 1);
    expect(n, n) -= double(n + 1);
    CHECK((comm - expect).norm() < 1e-12);
    const CMatrix num = (a.adjoint() * a).matrix();
    for (int k = 0; k <= n; ++k) CHECK(num(k, k).real() == doctest::Approx(k));
    CHECK((num - CMatrix(num.diagonal().asDiagonal())).norm() < 1e-15);

    CHECK_THROWS(cavity_annihilation(HilbertSpace::two_qubits()));
}

TEST_CASE("tensor product") {
    std::mt19937_64 rng(7);
    const HilbertSpace q = HilbertSpace::single_qubit();
    const Operator i1 = Operator::identity(q);
    CHECK((tensor(i1, i1).matrix() - CMatrix::Identity(4, 4)).norm() == 0.0);

    const Operator a(q, random_matrix(rng, 2)), b(q, random_matrix(rng, 2));
    const Operator c(q, random_matrix(rng, 2)), d(q, random_matrix(rng, 2));
    CHECK(std::abs(tensor(a, b).matrix().trace() - a.matrix().trace() * b.matrix().trace()) < 1e-12);

    // Element-wise Kronecker oracle for (a x b)(c x d) = (ac) x (bd).
    const CMatrix lhs = (tensor(a, b) * tensor(c, d)).matrix();
    const CMatrix ac = a.matrix() * c.matrix(), bd = b.matrix() * d.matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(lhs(i, j) - ac(i / 2, j / 2) * bd(i % 2, j % 2)) < 1e-12);

    const Operator x = tensor(a, b);
    CHECK_THROWS_AS(x * a, DimensionError);
}

TEST_CASE("partial trace") {
    std::mt19937_64 rng(11);
    const HilbertSpace s = HilbertSpace::qubits_and_cavity(3);
    const CMatrix rq = random_density(rng, 4);
    CMatrix vac = CMatrix::Zero(4, 4);
    vac(0, 0) = 1.0;
    const HilbertSpace q2 = HilbertSpace::two_qubits(), cav = HilbertSpace::cavity(3);
    const CMatrix prod = tensor(Operator(q2, rq), Operator(cav, vac)).matrix();
    CHECK((partial_trace(s, prod, {0, 1}) - rq).norm() < 1e-12);

    // |g,1> + |e,0> on qubit x cavity(1).
    const HilbertSpace qc({{FactorKind::Qubit, 2}, {FactorKind::Cavity, 2}});
    CVector bell = CVector::Zero(4);
    bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
    const StateMatrix reduced = partial_trace(StateMatrix::pure(qc, bell), {0});
    CHECK((reduced.matrix() - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-12);

    const CMatrix r16 = random_density(rng, 16);
    CHECK(std::abs(partial_trace(s, r16, {0, 1}).trace() - 1.0) < 1e-12);
    // Direct summation over the cavity index.
    const CMatrix pt = partial_trace(s, r16, {0, 1});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx sum = 0.0;
            for (int n = 0; n < 4; ++n) sum += r16(4 * i + n, 4 * j + n);
            CHECK(std::abs(pt(i, j) - sum) < 1e-12);
        }

    // tensor/partial_trace consistency with an unnormalized second factor.
    const CMatrix ra = random_density(rng, 2), rb = 3.0 * random_density(rng, 2);
    const CMatrix ab = tensor(Operator(HilbertSpace::single_qubit(), ra), Operator(HilbertSpace::single_qubit(), rb)).matrix();
    CHECK((partial_trace(q2, ab, {0}) - ra * rb.trace()).norm() < 1e-12);

    CHECK_THROWS(partial_trace(s, r16, {}));
}

TEST_CASE("dissipator") {
    std::mt19937_64 rng(3);
    const HilbertSpace q = HilbertSpace::single_qubit();
    const Operator sm = single_lowering();
    const CMatrix ee = outer(2, 1, 1), gg = outer(2, 0, 0);
    CHECK((dissipator_apply(sm, sm, ee) - (2.0 * gg - 2.0 * ee)).norm() < 1e-15);

    const HilbertSpace s = HilbertSpace::qubits_and_cavity(2);
    const Operator a(s, random_matrix(rng, 12));
    const CMatrix rho = random_density(rng, 12);
    const CMatrix d = dissipator_apply(a, a, rho);
    CHECK(std::abs(d.trace()) < 1e-12);
    CHECK((d - d.adjoint()).norm() < 1e-12 * std::max(1.0, d.norm()));

    // Cross term on |ee><ee|, brute-force 4x4 arithmetic.
    const HilbertSpace q2 = HilbertSpace::two_qubits();
    const Operator s1 = qubit_lowering(q2, 1), s2 = qubit_lowering(q2, 2);
    const CMatrix r = outer(4, 3, 3);
    const CMatrix s1m = s1.matrix(), s2m = s2.matrix();
    const CMatrix brute = 2.0 * s1m * r * s2m.adjoint() - s2m.adjoint() * s1m * r - r * s2m.adjoint() * s1m;
    const CMatrix got = dissipator_apply(s1, s2, r);
    CHECK((got - brute).norm() < 1e-15);
    // sigma_1 |ee> = |ge>, sigma_2 |ee> = |eg>: only 2|ge><eg| survives.
    CHECK((got - 2.0 * outer(4, 1, 2)).norm() < 1e-15);

    CHECK_THROWS_AS(dissipator_apply(s1, s2, CMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("state matrix invariants") {
    const HilbertSpace q = HilbertSpace::single_qubit();
    CHECK_THROWS_AS(StateMatrix(q, 2.0 * outer(2, 0, 0)), InvalidStateError);
    CMatrix nonherm = 0.5 * CMatrix::Identity(2, 2);
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(StateMatrix(q, nonherm), InvalidStateError);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    CHECK_THROWS_AS(StateMatrix(q, neg), InvalidStateError);
    CHECK_NOTHROW(StateMatrix(q, 0.5 * CMatrix::Identity(2, 2)));
    CHECK(hermitian_check(Operator::identity(q)));
    CHECK_FALSE(hermitian_check(single_lowering()));
    CHECK_THROWS(qubit_lowering(q, 1));
}
