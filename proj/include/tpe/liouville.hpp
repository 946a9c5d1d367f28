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

// Vectorised Lindblad generators and the solvers built on them.
//
// Vectorisation is column-major: vec(rho)[i + d*j] = rho(i, j), so that
// vec(A rho B) = (B^T (x) A) vec(rho).

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tpe/operator_core.hpp"
#include "tpe/system_model.hpp"

namespace tpe {

/// Right eigendecomposition L = V diag(values) V^-1.
struct Eigendecomposition {
    CVector values;
    CMatrix vectors;
    CMatrix inverse;
    double reconstruction_error = 0.0;  // ||V D V^-1 - L||_F / ||L||_F
    bool usable = false;
};

class Superoperator {
public:
    Superoperator() = default;
    Superoperator(HilbertSpace space, CMatrix matrix, std::string source);

    const HilbertSpace& space() const noexcept { return space_; }
    int hilbert_dim() const noexcept { return space_.total_dim(); }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    const CMatrix& matrix() const noexcept { return matrix_; }
    const std::string& source() const noexcept { return source_; }
    /// Frobenius norm, used as the scale for relative thresholds.
    double norm() const noexcept { return norm_; }

    CMatrix apply(const CMatrix& rho) const;

    /// Computed once and cached; safe to call from several threads.
    const Eigendecomposition& eigen() const;

    friend Superoperator operator+(const Superoperator& a, const Superoperator& b);

private:
    struct Cache {
        std::once_flag once;
        Eigendecomposition value;
    };
    HilbertSpace space_;
    CMatrix matrix_;
    std::string source_;
    double norm_ = 0.0;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, int d);

/// -i [H, .]
Superoperator hamiltonian_superoperator(const Operator& h);
/// (rate/2) D[a, b]
Superoperator dissipator_superoperator(const Operator& a, const Operator& b, double rate);

Superoperator build_liouvillian(const Operator& h, const ChannelSet& channels);
Superoperator build_liouvillian(const Operator& h, const std::vector<Channel>& terms);
/// Full qubits + cavity generator for the given parameters.
Superoperator full_liouvillian(const SystemParams& p);
/// Qubit-only generator with the cavity removed (H_q + H_d, gamma_ij, extras).
Superoperator cavity_free_liouvillian(const SystemParams& p);

/// Relative zero-mode threshold, in units of ||L||.
inline constexpr double kZeroModeTol = 1e-13;
inline constexpr double kSteadyResidualTol = 1e-10;

StateMatrix steady_state(const Superoperator& L);

enum class EvolutionPath { Spectral, MatrixExponential };

struct Trajectory {
    std::vector<double> times;
    std::vector<StateMatrix> states;
    EvolutionPath path = EvolutionPath::Spectral;
};

Trajectory evolve(const Superoperator& L, const StateMatrix& rho0, const std::vector<double>& times);
/// Evolves under `before` up to t_cut and under `after` from there on.
Trajectory evolve_switched(const Superoperator& before, const Superoperator& after, const StateMatrix& rho0,
                           double t_cut, const std::vector<double>& times);

/// Eigenvalues of L with the stationary mode removed (restriction to
/// traceless matrices). Sorted by descending real part.
CVector nonstationary_spectrum(const Superoperator& L);

/// -max Re(lambda) over non-stationary modes; 0 when the kernel is degenerate.
double liouvillian_gap(const Superoperator& L);
/// Number of stationary modes found at threshold kZeroModeTol * ||L||.
int kernel_dimension(const Superoperator& L);

enum class Stationarity { Require, Skip };

/// <A(0) B(tau)> = tr[B e^{L tau}(rho A)].
std::vector<cplx> two_time_correlator(const Superoperator& L, const Operator& a, const Operator& b,
                                      const StateMatrix& rho, const std::vector<double>& taus,
                                      Stationarity check = Stationarity::Require);

/// Incoherent part of (1/pi) Re int_0^inf e^{i w tau} <E^-(0) E^+(tau)>,
/// with E^+ = `field`. Normalised to unit peak on the grid.
std::vector<double> emission_spectrum(const Superoperator& L, const StateMatrix& rho, const Operator& field,
                                      const std::vector<double>& omegas,
                                      Stationarity check = Stationarity::Require);

/// Relative residual ||L vec(rho)|| / ||L||.
double stationarity_residual(const Superoperator& L, const CMatrix& rho);

}  // namespace tpe
