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

#include "qgd/density.hpp"

#include "qgd/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qgd {

namespace {
constexpr double kDensityTol = 1e-10;
}

DensityMatrix DensityMatrix::from_matrix(CMatrix entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw ContractViolation("density matrix must be square and non-empty");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
        throw ContractViolation("density matrix must be Hermitian");
    }
    if (std::abs(entries.trace() - std::complex<double>(1.0, 0.0)) > kDensityTol) {
        throw ContractViolation("density matrix must have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kDensityTol) {
        throw ContractViolation("density matrix must be positive semidefinite");
    }
    return DensityMatrix(std::move(entries));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    if (psi.size() == 0 || std::abs(psi.squaredNorm() - 1.0) > 1e-12) {
        throw ContractViolation("pure state must be a unit vector");
    }
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw ContractViolation("dimension must be positive");
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

DensityMatrix depolarize(const DensityMatrix& rho, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw ContractViolation("depolarizing strength must lie in [0, 1]");
    const int n = rho.dim();
    return DensityMatrix::from_matrix((1.0 - eps) * rho.entries() +
                                      eps * CMatrix::Identity(n, n) / static_cast<double>(n));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) detail::throw_dimension("fidelity", a.dim(), b.dim());
    const double overlap = (a.entries() * b.entries()).trace().real();
    return overlap / std::sqrt(a.purity() * b.purity());
}

RVector purify(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.entries());
    const auto& values = solver.eigenvalues();  // ascending
    const auto n = values.size();
    if (n > 1 && values[n - 1] - values[n - 2] < 1e-10) {
        throw AmbiguityError("purify: dominant eigenvalue is degenerate");
    }
    CVector v = solver.eigenvectors().col(n - 1);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    v *= std::conj(v[lead]) / std::abs(v[lead]);
    RVector out = v.real();
    return out / out.norm();
}

}  // namespace qgd
