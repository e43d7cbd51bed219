// Copyright 2026 The aud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aud/qmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aud {

bool all_finite(const ComplexMatrix &a) {
    for (Eigen::Index c = 0; c < a.cols(); c++) {
        for (Eigen::Index r = 0; r < a.rows(); r++) {
            if (!std::isfinite(a(r, c).real()) || !std::isfinite(a(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ValidationError("pure state must have positive dimension");
    }
    if (!all_finite(amplitudes_)) {
        throw ValidationError("pure state has non-finite amplitudes");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw ValidationError("pure state is not normalized");
    }
}

PureState PureState::unchecked(ComplexVector amplitudes) {
    return PureState(std::move(amplitudes), NoCheck{});
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) {
        throw ValidationError("density matrix must be square and non-empty");
    }
    if (!all_finite(mat_)) {
        throw ValidationError("density matrix has non-finite entries");
    }
    if (!is_hermitian(mat_)) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(mat_.trace() - Complex(1.0)) > kTraceTolerance) {
        throw ValidationError("density matrix trace is not 1");
    }
    if (hermitian_eigen(mat_).values.minCoeff() < -kEigenvalueClamp) {
        throw ValidationError("density matrix is not positive semi-definite");
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix mat) {
    return DensityMatrix(std::move(mat), NoCheck{});
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.projector(), NoCheck{});
}

StateEnsemble::StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.size() < 2) {
        throw ValidationError("an ensemble needs at least two states");
    }
    if (states_.size() != priors_.size()) {
        throw ValidationError("number of priors does not match number of states");
    }
    for (const auto &s : states_) {
        if (s.dim() != states_.front().dim()) {
            throw ValidationError("ensemble states have different dimensions");
        }
    }
    double total = 0;
    for (double p : priors_) {
        if (!(p >= 0.0)) {
            throw ValidationError("priors must be non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("priors must sum to 1");
    }
}

ComplexMatrix StateEnsemble::average() const {
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (int n = 0; n < size(); n++) {
        out += priors_[n] * states_[n].mat();
    }
    return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw ValidationError("eigendecomposition needs a square matrix");
    }
    ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_sqrt(const ComplexMatrix &a) {
    if (!is_hermitian(a, 1e-8)) {
        throw ValidationError("matrix_sqrt needs a Hermitian matrix");
    }
    auto eig = hermitian_eigen(a);
    Eigen::VectorXd root(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); k++) {
        double v = eig.values[k];
        if (v < -kEigenvalueClamp) {
            throw ValidationError("matrix_sqrt input is not positive semi-definite");
        }
        root[k] = std::sqrt(std::max(v, 0.0));
    }
    return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw ValidationError("trace_norm needs a square matrix");
    }
    return hermitian_eigen(a).values.cwiseAbs().sum();
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("fidelity arguments have different dimensions");
    }
    // ||sqrt(rho) sqrt(sigma)||_1 equals Tr sqrt(sqrt(sigma) rho sqrt(sigma)) and
    // is symmetric in its arguments by construction.
    ComplexMatrix product = matrix_sqrt(rho.mat()) * matrix_sqrt(sigma.mat());
    Eigen::JacobiSVD<ComplexMatrix> svd(product);
    return std::clamp(svd.singularValues().sum(), 0.0, 1.0);
}

PureState max_entangled(int d) {
    if (d < 2) {
        throw ValidationError("max_entangled needs d >= 2");
    }
    ComplexVector v = ComplexVector::Zero(d * d);
    for (int l = 0; l < d; l++) {
        v[l * d + l] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return PureState::unchecked(std::move(v));
}

DensityMatrix partial_trace(const DensityMatrix &rho, int dim_a, int dim_b, Subsystem traced) {
    if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim()) {
        throw ValidationError("partial_trace: dimension does not factor as declared");
    }
    const auto &m = rho.mat();
    if (traced == Subsystem::kB) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; i++) {
            for (int j = 0; j < dim_a; j++) {
                for (int k = 0; k < dim_b; k++) {
                    out(i, j) += m(i * dim_b + k, j * dim_b + k);
                }
            }
        }
        return DensityMatrix::unchecked(std::move(out));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_b; i++) {
        for (int j = 0; j < dim_b; j++) {
            for (int k = 0; k < dim_a; k++) {
                out(i, j) += m(k * dim_b + i, k * dim_b + j);
            }
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor_power(const DensityMatrix &rho, int copies) {
    if (copies < 1) {
        throw ValidationError("tensor_power needs at least one copy");
    }
    ComplexMatrix out = rho.mat();
    for (int k = 1; k < copies; k++) {
        out = kron(out, rho.mat());
    }
    return DensityMatrix::unchecked(std::move(out));
}

}  // namespace aud
