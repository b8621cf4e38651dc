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

#include "qgd/poly.hpp"

#include "qgd/errors.hpp"
#include "qgd/pauli.hpp"

#include <cmath>
#include <complex>

namespace qgd {

namespace {

using cd = std::complex<double>;

void check_dim(const char* where, const TensorDecomposition& decomp, const Point& x) {
    if (decomp.dim() != x.dim()) detail::throw_dimension(where, decomp.dim(), x.dim());
}

CVector as_complex(const RVector& v) { return v.cast<cd>(); }

RVector real_or_throw(const CVector& v, const char* where) {
    if (v.imag().cwiseAbs().maxCoeff() > kImagTol) {
        throw ContractViolation(std::string(where) + ": result has a non-negligible imaginary part");
    }
    return v.real();
}

}  // namespace

UnitaryFactor UnitaryFactor::from_matrix(CMatrix matrix, std::optional<std::string> pauli_tag) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw ContractViolation("unitary factor must be a non-empty square matrix");
    }
    const auto n = matrix.rows();
    const CMatrix residual = matrix * matrix.adjoint() - CMatrix::Identity(n, n);
    if (residual.cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw ContractViolation("factor is not unitary within 1e-10");
    }
    const bool symmetric = (matrix - matrix.transpose()).cwiseAbs().maxCoeff() <= kSymmetricTol;
    return UnitaryFactor(std::move(matrix), std::move(pauli_tag), symmetric);
}

UnitaryFactor UnitaryFactor::pauli(std::string_view name) {
    std::string tag(name);
    double sign = 1.0;
    if (!name.empty() && name.front() == '-') {
        sign = -1.0;
        name.remove_prefix(1);
    }
    if (name.size() != 1) throw ContractViolation("unknown Pauli label '" + tag + "'");
    return from_matrix(sign * pauli_matrix(name.front()), tag);
}

TensorDecomposition::TensorDecomposition(std::vector<Term> terms, double prefactor)
    : terms_(std::move(terms)), prefactor_(prefactor), dim_(0), order_(0) {
    if (terms_.empty()) throw ContractViolation("decomposition needs at least one term");
    if (!std::isfinite(prefactor_)) throw ContractViolation("prefactor must be finite");
    order_ = static_cast<int>(terms_.front().size());
    if (order_ < 1) throw ContractViolation("decomposition order p must be >= 1");
    dim_ = terms_.front().front().dim();
    for (const auto& term : terms_) {
        if (static_cast<int>(term.size()) != order_) {
            throw ContractViolation("every term must have exactly p factors");
        }
        for (const auto& f : term) {
            if (f.dim() != dim_) detail::throw_dimension("TensorDecomposition", dim_, f.dim());
        }
    }
}

const UnitaryFactor& TensorDecomposition::factor(int m) const {
    if (m < 0 || m >= num_factors()) throw ContractViolation("flattened factor index out of range");
    return terms_[m / order_][m % order_];
}

bool TensorDecomposition::all_symmetric() const {
    for (const auto& term : terms_) {
        for (const auto& f : term) {
            if (!f.is_symmetric()) return false;
        }
    }
    return true;
}

bool TensorDecomposition::operator==(const TensorDecomposition& other) const {
    if (dim_ != other.dim_ || order_ != other.order_ || prefactor_ != other.prefactor_ ||
        terms_.size() != other.terms_.size()) {
        return false;
    }
    for (std::size_t a = 0; a < terms_.size(); ++a) {
        for (int j = 0; j < order_; ++j) {
            if (terms_[a][j].matrix() != other.terms_[a][j].matrix()) return false;
        }
    }
    return true;
}

Point::Point(RVector coords) : coords_(std::move(coords)) {
    if (coords_.size() == 0) throw ContractViolation("point must be non-empty");
    if (std::abs(coords_.norm() - 1.0) > kUnitNormTol) {
        throw ContractViolation("point must have unit norm within 1e-12");
    }
}

Point Point::normalized(RVector coords) {
    const double n = coords.norm();
    if (!std::isfinite(n) || n == 0.0) throw ContractViolation("cannot normalize a zero or non-finite vector");
    return Point(coords / n);
}

double DenseTensor::at(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != rank) throw DimensionError("DenseTensor::at: wrong index rank");
    std::size_t flat = 0;
    for (int i : index) flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i);
    return values.at(flat);
}

DenseTensor expand_coefficients(const TensorDecomposition& decomp) {
    const int n = decomp.dim();
    const int p = decomp.order();
    const int rank = 2 * p;
    std::size_t total = 1;
    for (int r = 0; r < rank; ++r) {
        total *= static_cast<std::size_t>(n);
        if (total > kMaxDenseTensorEntries) {
            throw CapacityError("expand_coefficients: N^(2p) exceeds 2^20 entries");
        }
    }

    DenseTensor out{n, rank, std::vector<double>(total, 0.0)};
    std::vector<int> idx(rank, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int r = rank - 1; r >= 0; --r) {
            idx[r] = static_cast<int>(rem % n);
            rem /= n;
        }
        cd sum = 0.0;
        for (const auto& term : decomp.terms()) {
            cd prod = 1.0;
            for (int k = 0; k < p; ++k) prod *= term[k].matrix()(idx[k], idx[p + k]);
            sum += prod;
        }
        // The imaginary parts cancel against real x, so only Re(a) contributes.
        out.values[flat] = decomp.prefactor() * sum.real();
    }
    return out;
}

double contract(const DenseTensor& tensor, const RVector& x) {
    if (x.size() != tensor.dim) detail::throw_dimension("contract", tensor.dim, x.size());
    const int n = tensor.dim;
    std::vector<int> idx(tensor.rank, 0);
    double sum = 0.0;
    for (std::size_t flat = 0; flat < tensor.values.size(); ++flat) {
        double prod = tensor.values[flat];
        for (int r = 0; r < tensor.rank && prod != 0.0; ++r) prod *= x[idx[r]];
        sum += prod;
        for (int r = tensor.rank - 1; r >= 0; --r) {
            if (++idx[r] < n) break;
            idx[r] = 0;
        }
    }
    return sum;
}

double evaluate_objective(const TensorDecomposition& decomp, const Point& x) {
    check_dim("evaluate_objective", decomp, x);
    const CVector cx = as_complex(x.coords());
    cd sum = 0.0;
    for (const auto& term : decomp.terms()) {
        cd prod = 1.0;
        for (const auto& f : term) prod *= cx.dot(f.matrix() * cx);
        sum += prod;
    }
    return decomp.prefactor() * sum.real();
}

double rayleigh(const UnitaryFactor& factor, const Point& x) {
    if (factor.dim() != x.dim()) detail::throw_dimension("rayleigh", factor.dim(), x.dim());
    const CVector cx = as_complex(x.coords());
    const cd value = cx.dot(factor.matrix() * cx);
    if (std::abs(value.imag()) > kImagTol) {
        throw ContractViolation("rayleigh: x^T U x has a non-negligible imaginary part");
    }
    return value.real();
}

CoefficientSet coefficients(const TensorDecomposition& decomp, const Point& x) {
    check_dim("coefficients", decomp, x);
    const int k = decomp.num_terms();
    const int p = decomp.order();
    CoefficientSet out;
    out.b.resize(k, p);
    out.big_m.resize(k);
    out.c.resize(k * p);
    for (int a = 0; a < k; ++a) {
        for (int j = 0; j < p; ++j) out.b(a, j) = rayleigh(decomp.terms()[a][j], x);
        out.big_m[a] = out.b.row(a).prod();
        for (int j = 0; j < p; ++j) {
            double prod = 1.0;
            for (int i = 0; i < p; ++i) {
                if (i != j) prod *= out.b(a, i);
            }
            out.c[a * p + j] = decomp.prefactor() * prod;
        }
    }
    out.total_weight = 1.0 + out.c.cwiseAbs().sum();
    return out;
}

DOperator build_d(const TensorDecomposition& decomp, const Point& x) {
    const CoefficientSet coeffs = coefficients(decomp, x);
    const int n = decomp.dim();
    DOperator d{CMatrix::Zero(n, n)};
    for (int m = 0; m < decomp.num_factors(); ++m) d.matrix += coeffs.c[m] * decomp.factor(m).matrix();
    return d;
}

RVector classical_gradient(const TensorDecomposition& decomp, const Point& x) {
    const DOperator d = build_d(decomp, x);
    return real_or_throw(d.matrix * as_complex(x.coords()), "classical_gradient");
}

ClassicalStep classical_step(const TensorDecomposition& decomp, const Point& x, double eta) {
    if (!(eta > 0.0)) throw ContractViolation("learning rate must be positive");
    const RVector diff = x.coords() - eta * classical_gradient(decomp, x);
    const double norm = diff.norm();
    if (norm < 1e-14) throw DegenerateStep("x - eta*D*x vanished; next point undefined");
    return {Point(diff / norm), norm};
}

Point classical_iterate(const TensorDecomposition& decomp, const Point& x, double eta) {
    return classical_step(decomp, x, eta).point;
}

bool is_stationary(const TensorDecomposition& decomp, const Point& x, double tol) {
    if (!(tol > 0.0)) throw ContractViolation("stationarity tolerance must be positive");
    const RVector dx = classical_gradient(decomp, x);
    const double lambda = x.coords().dot(dx);
    return (dx - lambda * x.coords()).norm() <= tol;
}

}  // namespace qgd
