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

// Tensor-product Hilbert spaces and dense complex operators.
//
// Factor ordering is always qubit1 (x) qubit2 (x) cavity. Qubit basis is
// {|g>, |e>} with |g> at index 0, so the two-qubit basis reads
// {|gg>, |ge>, |eg>, |ee>} with qubit 1 as the most significant digit.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tpe {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// Raised when a generator has more than one stationary state.
class DegenerateKernelError : public Error {
public:
    DegenerateKernelError(const std::string& what, int kernel_dim)
        : Error(what), kernel_dim_(kernel_dim) {}
    int kernel_dim() const noexcept { return kernel_dim_; }

private:
    int kernel_dim_;
};

/// An observable whose normalisation vanishes (e.g. g2 of a vacuum cavity).
class UndefinedObservableError : public Error {
public:
    using Error::Error;
};

enum class FactorKind { Qubit, Cavity };

struct Factor {
    FactorKind kind;
    int dim;
    bool operator==(const Factor&) const = default;
};

class HilbertSpace {
public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<Factor> factors);

    static HilbertSpace single_qubit();
    static HilbertSpace two_qubits();
    static HilbertSpace qubits_and_cavity(int n_max);
    static HilbertSpace cavity(int n_max);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    int num_factors() const noexcept { return static_cast<int>(factors_.size()); }
    int total_dim() const noexcept { return total_dim_; }
    int num_qubits() const noexcept;

    /// Factor index of qubit `which` (1-based). Throws for unknown qubits.
    int qubit_factor(int which) const;
    std::optional<int> cavity_factor() const noexcept;
    /// Fock cutoff of the cavity factor; throws when there is none.
    int n_max() const;

    /// Space spanned by the listed factors, in their original order.
    HilbertSpace subspace(const std::vector<int>& keep) const;

    bool operator==(const HilbertSpace& other) const { return factors_ == other.factors_; }

private:
    std::vector<Factor> factors_;
    int total_dim_ = 1;
};

class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, CMatrix matrix);

    static Operator identity(const HilbertSpace& space);
    static Operator zero(const HilbertSpace& space);

    const HilbertSpace& space() const noexcept { return space_; }
    const CMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return space_.total_dim(); }

    Operator adjoint() const { return {space_, matrix_.adjoint()}; }

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(cplx s, const Operator& a) { return {a.space_, s * a.matrix_}; }
    friend Operator operator*(double s, const Operator& a) { return {a.space_, s * a.matrix_}; }

private:
    HilbertSpace space_;
    CMatrix matrix_;
};

/// True when ||A - A^dagger|| <= rel_tol * max(1, ||A||) (Frobenius norms).
bool hermitian_check(const CMatrix& a, double rel_tol = 1e-12);
bool hermitian_check(const Operator& a, double rel_tol = 1e-12);

/// Density matrix with unit trace, Hermitian and positive semidefinite.
class StateMatrix {
public:
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kPsdTol = 1e-8;

    StateMatrix() = default;
    /// Validates all invariants; throws InvalidStateError on violation.
    StateMatrix(HilbertSpace space, CMatrix matrix);

    static StateMatrix pure(const HilbertSpace& space, const CVector& ket);
    static StateMatrix basis_state(const HilbertSpace& space, int index);

    const HilbertSpace& space() const noexcept { return space_; }
    const CMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return space_.total_dim(); }
    double min_eigenvalue() const;

    /// tr(op * rho)
    cplx expectation(const Operator& op) const;

private:
    HilbertSpace space_;
    CMatrix matrix_;
};

/// Embeds a local operator acting on factor `factor` with identities elsewhere.
Operator embed(const HilbertSpace& space, int factor, const CMatrix& local);

/// sigma_which = |g><e| on qubit `which` (1 or 2).
Operator qubit_lowering(const HilbertSpace& space, int which);
/// 2 sigma^dagger sigma - 1 on qubit `which`.
Operator qubit_sigma_z(const HilbertSpace& space, int which);
/// Truncated ladder operator on the cavity factor.
Operator cavity_annihilation(const HilbertSpace& space);

/// Kronecker product; the factor list of `a` comes first.
Operator tensor(const Operator& a, const Operator& b);

/// Partial trace of an arbitrary matrix over every factor not in `keep`.
CMatrix partial_trace(const HilbertSpace& space, const CMatrix& m, const std::vector<int>& keep);
StateMatrix partial_trace(const StateMatrix& rho, const std::vector<int>& keep);

/// 2 A rho B^dagger - B^dagger A rho - rho B^dagger A
CMatrix dissipator_apply(const Operator& a, const Operator& b, const CMatrix& rho);

}  // namespace tpe
