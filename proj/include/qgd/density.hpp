// Copyright 2026 The qgd Authors
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

#pragma once

#include "qgd/poly.hpp"
#include "qgd/statevector.hpp"

namespace qgd {

/// Hermitian, unit-trace, positive semidefinite matrix (tolerance 1e-10).
class DensityMatrix {
public:
    /// Throws ContractViolation when any of the three properties fails.
    static DensityMatrix from_matrix(CMatrix entries);
    /// |psi><psi| for a unit vector psi.
    static DensityMatrix pure(const CVector& psi);
    static DensityMatrix pure(const QState& state) { return pure(state.amplitudes()); }
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const CMatrix& entries() const { return entries_; }
    double purity() const;

private:
    explicit DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {}
    CMatrix entries_;
};

/// (1 - eps) rho + eps I / dim. Throws ContractViolation for eps outside [0, 1].
DensityMatrix depolarize(const DensityMatrix& rho, double eps);

/// tr(a b) / sqrt(tr(a^2) tr(b^2)).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Dominant eigenvector, phase-fixed so its largest-magnitude entry is real
/// positive, imaginary parts dropped, renormalized. Throws AmbiguityError if the
/// top two eigenvalues are closer than 1e-10.
RVector purify(const DensityMatrix& rho);

}  // namespace qgd
