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

#include "tpe/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace tpe {

namespace {

void validate_ordering(const std::vector<Factor>& factors) {
    bool seen_cavity = false;
    int qubits = 0;
    for (const auto& f : factors) {
        if (f.kind == FactorKind::Qubit) {
            if (f.dim != 2) throw DimensionError("qubit factor must have dimension 2");
            if (seen_cavity) throw DimensionError("qubit factors must precede the cavity factor");
            if (++qubits > 2) throw DimensionError("at most two qubit factors are supported");
        } else {
            if (seen_cavity) throw DimensionError("at most one cavity factor is supported");
            if (f.dim < 2) throw DimensionError("cavity cutoff n_max must be >= 1");
            seen_cavity = true;
        }
    }
}

// Row-major multi-index strides: the first factor is the most significant digit.
std::vector<int> strides_of(const std::vector<Factor>& factors) {
    std::vector<int> strides(factors.size(), 1);
    for (int k = static_cast<int>(factors.size()) - 2; k >= 0; --k)
        strides[k] = strides[k + 1] * factors[k + 1].dim;
    return strides;
}

}  // namespace

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw DimensionError("Hilbert space needs at least one factor");
    validate_ordering(factors_);
    total_dim_ = 1;
    for (const auto& f : factors_) total_dim_ *= f.dim;
}

HilbertSpace HilbertSpace::single_qubit() { return HilbertSpace({{FactorKind::Qubit, 2}}); }

HilbertSpace HilbertSpace::two_qubits() {
    return HilbertSpace({{FactorKind::Qubit, 2}, {FactorKind::Qubit, 2}});
}

HilbertSpace HilbertSpace::qubits_and_cavity(int n_max) {
    if (n_max < 1) throw DimensionError("cavity cutoff n_max must be >= 1");
    return HilbertSpace({{FactorKind::Qubit, 2}, {FactorKind::Qubit, 2}, {FactorKind::Cavity, n_max + 1}});
}

HilbertSpace HilbertSpace::cavity(int n_max) {
    if (n_max < 1) throw DimensionError("cavity cutoff n_max must be >= 1");
    return HilbertSpace({{FactorKind::Cavity, n_max + 1}});
}

int HilbertSpace::num_qubits() const noexcept {
    return static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                          [](const Factor& f) { return f.kind == FactorKind::Qubit; }));
}

int HilbertSpace::qubit_factor(int which) const {
    int seen = 0;
    for (int k = 0; k < num_factors(); ++k) {
        if (factors_[k].kind == FactorKind::Qubit && ++seen == which) return k;
    }
    throw DimensionError("unknown qubit index " + std::to_string(which));
}

std::optional<int> HilbertSpace::cavity_factor() const noexcept {
    for (int k = 0; k < num_factors(); ++k)
        if (factors_[k].kind == FactorKind::Cavity) return k;
    return std::nullopt;
}

int HilbertSpace::n_max() const {
    auto c = cavity_factor();
    if (!c) throw DimensionError("no cavity factor declared");
    return factors_[*c].dim - 1;
}

HilbertSpace HilbertSpace::subspace(const std::vector<int>& keep) const {
    if (keep.empty()) throw DimensionError("empty keep set");
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionError("duplicate factor in keep set");
    std::vector<Factor> kept;
    for (int k : sorted) {
        if (k < 0 || k >= num_factors()) throw DimensionError("keep set names an undeclared factor");
        kept.push_back(factors_[k]);
    }
    return HilbertSpace(std::move(kept));
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(HilbertSpace space, CMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim())
        throw DimensionError("operator matrix does not match Hilbert space dimension");
}

Operator Operator::identity(const HilbertSpace& space) {
    return {space, CMatrix::Identity(space.total_dim(), space.total_dim())};
}

Operator Operator::zero(const HilbertSpace& space) {
    return {space, CMatrix::Zero(space.total_dim(), space.total_dim())};
}

Operator operator+(const Operator& a, const Operator& b) {
    if (!(a.space_ == b.space_)) throw DimensionError("operator sum across different spaces");
    return {a.space_, a.matrix_ + b.matrix_};
}

Operator operator-(const Operator& a, const Operator& b) {
    if (!(a.space_ == b.space_)) throw DimensionError("operator difference across different spaces");
    return {a.space_, a.matrix_ - b.matrix_};
}

Operator operator*(const Operator& a, const Operator& b) {
    if (!(a.space_ == b.space_)) throw DimensionError("operator product across different spaces");
    return {a.space_, a.matrix_ * b.matrix_};
}

bool hermitian_check(const CMatrix& a, double rel_tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.norm());
    return (a - a.adjoint()).norm() <= rel_tol * scale;
}

bool hermitian_check(const Operator& a, double rel_tol) { return hermitian_check(a.matrix(), rel_tol); }

// ---------------------------------------------------------------------------
// StateMatrix

StateMatrix::StateMatrix(HilbertSpace space, CMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim())
        throw DimensionError("density matrix does not match Hilbert space dimension");
    const cplx tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw InvalidStateError("density matrix trace deviates from 1 by " + std::to_string(std::abs(tr - 1.0)));
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw InvalidStateError("density matrix is not Hermitian");
    if (min_eigenvalue() < -kPsdTol)
        throw InvalidStateError("density matrix has eigenvalue " + std::to_string(min_eigenvalue()));
}

StateMatrix StateMatrix::pure(const HilbertSpace& space, const CVector& ket) {
    if (ket.size() != space.total_dim()) throw DimensionError("ket does not match Hilbert space dimension");
    const CVector k = ket / ket.norm();
    return {space, k * k.adjoint()};
}

StateMatrix StateMatrix::basis_state(const HilbertSpace& space, int index) {
    if (index < 0 || index >= space.total_dim()) throw DimensionError("basis index out of range");
    CMatrix m = CMatrix::Zero(space.total_dim(), space.total_dim());
    m(index, index) = 1.0;
    return {space, m};
}

double StateMatrix::min_eigenvalue() const {
    const CMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

cplx StateMatrix::expectation(const Operator& op) const {
    if (!(op.space() == space_)) throw DimensionError("expectation value across different spaces");
    return (op.matrix() * matrix_).trace();
}

// ---------------------------------------------------------------------------
// Construction helpers

Operator embed(const HilbertSpace& space, int factor, const CMatrix& local) {
    if (factor < 0 || factor >= space.num_factors()) throw DimensionError("factor index out of range");
    const auto& fs = space.factors();
    if (local.rows() != fs[factor].dim || local.cols() != fs[factor].dim)
        throw DimensionError("local operator does not match factor dimension");
    int left = 1, right = 1;
    for (int k = 0; k < factor; ++k) left *= fs[k].dim;
    for (int k = factor + 1; k < space.num_factors(); ++k) right *= fs[k].dim;
    const int d = fs[factor].dim;
    CMatrix m = CMatrix::Zero(space.total_dim(), space.total_dim());
    for (int l = 0; l < left; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (local(i, j) == cplx(0.0)) continue;
                for (int r = 0; r < right; ++r)
                    m((l * d + i) * right + r, (l * d + j) * right + r) = local(i, j);
            }
    return {space, m};
}

Operator qubit_lowering(const HilbertSpace& space, int which) {
    if (space.num_qubits() != 2) throw DimensionError("space must declare two qubit factors");
    if (which != 1 && which != 2) throw DimensionError("unknown qubit index " + std::to_string(which));
    CMatrix sigma = CMatrix::Zero(2, 2);
    sigma(0, 1) = 1.0;  // |g><e|
    return embed(space, space.qubit_factor(which), sigma);
}

Operator qubit_sigma_z(const HilbertSpace& space, int which) {
    const Operator s = qubit_lowering(space, which);
    return 2.0 * (s.adjoint() * s) - Operator::identity(space);
}

Operator cavity_annihilation(const HilbertSpace& space) {
    const auto c = space.cavity_factor();
    if (!c) throw DimensionError("no cavity factor declared");
    const int d = space.factors()[*c].dim;
    CMatrix a = CMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return embed(space, *c, a);
}

Operator tensor(const Operator& a, const Operator& b) {
    std::vector<Factor> fs = a.space().factors();
    const auto& fb = b.space().factors();
    fs.insert(fs.end(), fb.begin(), fb.end());
    HilbertSpace space(std::move(fs));  // validates ordering
    const CMatrix& ma = a.matrix();
    const CMatrix& mb = b.matrix();
    const Eigen::Index db = mb.rows();
    CMatrix m(ma.rows() * db, ma.cols() * db);
    for (Eigen::Index i = 0; i < ma.rows(); ++i)
        for (Eigen::Index j = 0; j < ma.cols(); ++j) m.block(i * db, j * db, db, db) = ma(i, j) * mb;
    return {space, m};
}

CMatrix partial_trace(const HilbertSpace& space, const CMatrix& m, const std::vector<int>& keep) {
    if (m.rows() != space.total_dim() || m.cols() != space.total_dim())
        throw DimensionError("matrix does not match Hilbert space dimension");
    const HilbertSpace reduced = space.subspace(keep);
    const auto& fs = space.factors();
    const int nf = space.num_factors();
    std::vector<bool> kept(nf, false);
    for (int k : keep) kept[k] = true;

    const auto strides = strides_of(fs);
    const auto red_strides = strides_of(reduced.factors());
    // Map each full index onto (kept index, traced index).
    const int dim = space.total_dim();
    std::vector<int> kept_idx(dim), traced_idx(dim);
    for (int idx = 0; idx < dim; ++idx) {
        int rem = idx, k_out = 0, t_out = 0, red_pos = 0;
        for (int f = 0; f < nf; ++f) {
            const int digit = rem / strides[f];
            rem %= strides[f];
            if (kept[f]) {
                k_out += digit * red_strides[red_pos++];
            } else {
                t_out = t_out * fs[f].dim + digit;
            }
        }
        kept_idx[idx] = k_out;
        traced_idx[idx] = t_out;
    }
    CMatrix out = CMatrix::Zero(reduced.total_dim(), reduced.total_dim());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += m(i, j);
    return out;
}

StateMatrix partial_trace(const StateMatrix& rho, const std::vector<int>& keep) {
    return {rho.space().subspace(keep), partial_trace(rho.space(), rho.matrix(), keep)};
}

CMatrix dissipator_apply(const Operator& a, const Operator& b, const CMatrix& rho) {
    if (!(a.space() == b.space())) throw DimensionError("dissipator operators act on different spaces");
    if (rho.rows() != a.dim() || rho.cols() != a.dim())
        throw DimensionError("density matrix does not match dissipator dimension");
    const CMatrix bda = b.matrix().adjoint() * a.matrix();
    return 2.0 * a.matrix() * rho * b.matrix().adjoint() - bda * rho - rho * bda;
}

}  // namespace tpe
