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

// Metric multidimensional scaling in trace form.
//
//   stress(X) = 1/2 sum_ij w_ij (d_ij(X) - delta_ij)^2
//             = 1/2 sum_ij w_ij delta_ij^2 - 2 g(X) + h^2(X)
//   g(X)      = tr X^T B(X) X,   B = 1/2 sum_ij w_ij delta_ij k_ij A_ij
//   h^2(X)    = tr X^T C X,      C = 1/2 sum_ij w_ij A_ij
//   D(X)      = C - 2 B(X)
//
// with A_ij = (e_i - e_j)(e_i - e_j)^T and k_ij = 1/d_ij (0 when d_ij = 0).
// The optimizer steps along G(X) X with G = C - B, since grad stress = 2 G(X) X.

#include "qgd/poly.hpp"

#include <vector>

namespace qgd {

/// Symmetric, non-negative, zero-diagonal n x n matrix.
class Dissimilarities {
public:
    /// Throws ContractViolation on asymmetric, negative, non-finite or non-zero-diagonal input.
    static Dissimilarities from_matrix(RMatrix delta);
    int size() const { return static_cast<int>(delta_.rows()); }
    const RMatrix& matrix() const { return delta_; }

private:
    explicit Dissimilarities(RMatrix delta) : delta_(std::move(delta)) {}
    RMatrix delta_;
};

class Weights {
public:
    static Weights from_matrix(RMatrix w);
    /// 1 off the diagonal.
    static Weights uniform(int n);
    int size() const { return static_cast<int>(w_.rows()); }
    const RMatrix& matrix() const { return w_; }

private:
    explicit Weights(RMatrix w) : w_(std::move(w)) {}
    RMatrix w_;
};

/// n points in m dimensions, one per row.
using Configuration = RMatrix;

RMatrix distances(const Configuration& x);

struct StressBreakdown {
    double value;     // the loss itself
    double constant;  // 1/2 sum w delta^2
    double g;
    double h2;
};

StressBreakdown stress(const Dissimilarities& delta, const Weights& w, const Configuration& x);

/// (e_i - e_j)(e_i - e_j)^T.
RMatrix pair_operator(int n, int i, int j);

RMatrix b_matrix(const Dissimilarities& delta, const Weights& w, const Configuration& x);
RMatrix c_matrix(const Weights& w);
RMatrix d_matrix(const Dissimilarities& delta, const Weights& w, const Configuration& x);
/// C - B; the stress gradient is 2 * gradient_operator * X.
RMatrix gradient_operator(const Dissimilarities& delta, const Weights& w, const Configuration& x);

/// sum over columns v of v^T D(X) v, i.e. -2 g + h^2.
double f_prime(const Dissimilarities& delta, const Weights& w, const Configuration& x);

struct MdsOptions {
    double eta = 0.05;
    int max_iters = 200;
    double tol = 1e-12;
};

struct MdsStep {
    int iter;
    Configuration config;
    double stress;
    bool increased;  // stress went up on this step
};

/// X <- X - eta G(X) X. Iteration 0 is x0. Stops once a step improves stress by
/// less than tol (increases are recorded and iteration continues) or after max_iters.
std::vector<MdsStep> mds_optimize(const Dissimilarities& delta, const Weights& w, const Configuration& x0,
                                  const MdsOptions& options = {});

struct MdsColumnStep {
    Point quantum;     // from the LCU circuit
    Point classical;   // normalize(v - eta G v)
    double success_prob;
    int num_terms;     // Pauli strings in G(X)
};

/// Runs one normalized column of X through the LCU circuit, with G(X) expanded
/// as Pauli strings. Needs n to be a power of two.
MdsColumnStep mds_quantum_column_step(const Dissimilarities& delta, const Weights& w, const Configuration& x,
                                      int column, double eta);

}  // namespace qgd
