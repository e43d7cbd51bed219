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

#ifndef AUD_QMATH_H
#define AUD_QMATH_H

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace aud {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kEigenvalueClamp = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;

bool is_hermitian(const ComplexMatrix &a, double tol = kHermitianTolerance);
bool all_finite(const ComplexMatrix &a);

/// Unit-norm state vector.
class PureState {
   public:
    explicit PureState(ComplexVector amplitudes);
    static PureState unchecked(ComplexVector amplitudes);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

   private:
    struct NoCheck {};
    PureState(ComplexVector amplitudes, NoCheck) : amplitudes_(std::move(amplitudes)) {}
    ComplexVector amplitudes_;
};

/// Hermitian, positive semi-definite, unit-trace matrix.
///
/// The checking constructor enforces Hermiticity (max entry deviation 1e-10),
/// eigenvalues >= -1e-10 and |tr - 1| <= 1e-10. `unchecked` skips all of it
/// and is meant for inner sweep loops whose inputs are valid by construction.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix mat);
    static DensityMatrix unchecked(ComplexMatrix mat);
    static DensityMatrix from_pure(const PureState &psi);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix &mat() const { return mat_; }

   private:
    struct NoCheck {};
    DensityMatrix(ComplexMatrix mat, NoCheck) : mat_(std::move(mat)) {}
    ComplexMatrix mat_;
};

/// States with prior probabilities. At least two hypotheses, common dimension.
class StateEnsemble {
   public:
    StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors);

    int size() const { return static_cast<int>(states_.size()); }
    int dim() const { return states_.front().dim(); }
    const std::vector<DensityMatrix> &states() const { return states_; }
    const std::vector<double> &priors() const { return priors_; }
    const DensityMatrix &state(int n) const { return states_[n]; }
    double prior(int n) const { return priors_[n]; }

    /// sum_n P_n rho_n
    ComplexMatrix average() const;

   private:
    std::vector<DensityMatrix> states_;
    std::vector<double> priors_;
};

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;
};

/// Eigendecomposition of the Hermitian part of `a`.
HermitianEigen hermitian_eigen(const ComplexMatrix &a);

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0] are
/// clamped to zero; anything more negative is rejected.
ComplexMatrix matrix_sqrt(const ComplexMatrix &a);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix &a);

/// Uhlmann fidelity Tr sqrt(sqrt(sigma) rho sqrt(sigma)), in [0, 1].
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// (1/sqrt(d)) sum_l |l, l>, on dimension d*d.
PureState max_entangled(int d);

enum class Subsystem { kA, kB };

/// Traces out `traced` from a state on A (x) B with the given factor dims.
DensityMatrix partial_trace(const DensityMatrix &rho, int dim_a, int dim_b, Subsystem traced);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
DensityMatrix tensor_power(const DensityMatrix &rho, int copies);

}  // namespace aud

#endif
