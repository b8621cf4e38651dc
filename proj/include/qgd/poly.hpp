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

// Tensor-decomposed homogeneous polynomials on the unit sphere.
//
// An objective of order 2p is held as
//
//     f(x) = s * sum_alpha prod_{i=1..p} x^T A_i^alpha x
//
// with every A_i^alpha an N x N unitary. The gradient-like operator
//
//     D(x) = sum_m c_m A_m,   c_m = s * prod_{i != j} x^T A_i^alpha x
//
// (m = alpha * p + j, zero based) drives the normalized iteration
// x <- (x - eta D x) / |x - eta D x|. For symmetric factors the Euclidean
// gradient of f is exactly 2 D x; D x itself is what the iteration uses.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgd {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kSymmetricTol = 1e-12;
inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kImagTol = 1e-12;

/// Dense N x N unitary with an optional Pauli tag kept for compact I/O.
class UnitaryFactor {
public:
    /// Throws ContractViolation unless U U^dagger = I within 1e-10 entrywise.
    static UnitaryFactor from_matrix(CMatrix matrix, std::optional<std::string> pauli_tag = std::nullopt);

    /// One of "I", "X", "Y", "Z", optionally prefixed with '-'.
    static UnitaryFactor pauli(std::string_view name);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }
    bool is_symmetric() const { return symmetric_; }
    const std::optional<std::string>& pauli_tag() const { return tag_; }

private:
    UnitaryFactor(CMatrix matrix, std::optional<std::string> tag, bool symmetric)
        : matrix_(std::move(matrix)), tag_(std::move(tag)), symmetric_(symmetric) {}

    CMatrix matrix_;
    std::optional<std::string> tag_;
    bool symmetric_;
};

/// A = sum over K terms of p-fold tensor products of unitary factors, times a prefactor.
class TensorDecomposition {
public:
    using Term = std::vector<UnitaryFactor>;

    /// Throws ContractViolation on an empty or ragged term list and
    /// DimensionError when factor dimensions disagree.
    explicit TensorDecomposition(std::vector<Term> terms, double prefactor = 1.0);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    /// K * p, the number of flattened factors.
    int num_factors() const { return num_terms() * order_; }
    double prefactor() const { return prefactor_; }
    const std::vector<Term>& terms() const { return terms_; }

    /// Flattened access, m = alpha * p + j.
    const UnitaryFactor& factor(int m) const;

    bool all_symmetric() const;

    bool operator==(const TensorDecomposition& other) const;

private:
    std::vector<Term> terms_;
    double prefactor_;
    int dim_;
    int order_;
};

/// A real unit vector.
class Point {
public:
    /// Throws ContractViolation unless |coords| = 1 within 1e-12.
    explicit Point(RVector coords);

    /// Rescales to unit norm; throws ContractViolation for zero or non-finite input.
    static Point normalized(RVector coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    const RVector& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }

private:
    RVector coords_;
};

struct CoefficientSet {
    RMatrix b;      // K x p, b(alpha, j) = x^T A_j^alpha x
    RVector big_m;  // K, product of each row of b
    RVector c;      // K*p, prefactor-scaled, flattened as alpha * p + j
    double total_weight = 1.0;  // 1 + sum |c_m|
};

struct DOperator {
    CMatrix matrix;
};

/// Row-major dense coefficient tensor of rank 2p.
struct DenseTensor {
    int dim = 0;
    int rank = 0;
    std::vector<double> values;

    double at(std::span<const int> index) const;
};

inline constexpr std::size_t kMaxDenseTensorEntries = std::size_t{1} << 20;

/// Coefficients a_{i1..i2p} such that sum a x_i1 ... x_i2p = f(x).
/// Index pair (i_k, i_{p+k}) addresses the row and column of factor k.
/// Throws CapacityError if N^(2p) exceeds 2^20.
DenseTensor expand_coefficients(const TensorDecomposition& decomp);

/// Full contraction of a rank-2p tensor with x on every index.
double contract(const DenseTensor& tensor, const RVector& x);

double evaluate_objective(const TensorDecomposition& decomp, const Point& x);

/// x^T U x. Throws ContractViolation if the imaginary part exceeds 1e-12.
double rayleigh(const UnitaryFactor& factor, const Point& x);

/// c_m is the direct product over i != j (never M / b_j), so b_j = 0 is safe.
CoefficientSet coefficients(const TensorDecomposition& decomp, const Point& x);

DOperator build_d(const TensorDecomposition& decomp, const Point& x);

/// D x. Half the Euclidean gradient when every factor is symmetric.
RVector classical_gradient(const TensorDecomposition& decomp, const Point& x);

struct ClassicalStep {
    Point point;
    double residual_norm;  // |x - eta D x| before normalization
};

/// Throws ContractViolation for eta <= 0 and DegenerateStep when |x - eta D x| < 1e-14.
ClassicalStep classical_step(const TensorDecomposition& decomp, const Point& x, double eta = 1.0);

Point classical_iterate(const TensorDecomposition& decomp, const Point& x, double eta = 1.0);

/// |D x - (x^T D x) x| <= tol, the Lagrange condition on the sphere.
bool is_stationary(const TensorDecomposition& decomp, const Point& x, double tol);

}  // namespace qgd
