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

// One gradient-descent step as a linear combination of unitaries.
//
// Registers (most significant first): flag (1 qubit), select (T1 qubits),
// working (n qubits holding x, zero padded to 2^n). A step runs
//
//   1. |0>|0>|x>
//   2. V0 on flag, then V on select controlled by flag = 1
//   3. for each m: sigma_m * A_m on working, controlled by flag = 1, select = m
//   4. the inverse of step 2
//   5. post-select flag = 0, select = 0
//
// With V0|0> = (1/sqrt(beta), sqrt((beta-1)/beta)), V|0> = (sqrt(|c_m| / sum|c|))_m,
// beta = 1 + eta * sum|c_m| and sigma_m = sign(-c_m), the surviving working state is
// (x - eta * sum_m c_m A_m x) / beta, found with probability |x - eta D x|^2 / beta^2.

#include "qgd/poly.hpp"
#include "qgd/statevector.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qgd {

struct RegisterLayout {
    int select_width = 1;
    int work_width = 1;

    /// select_width = max(1, ceil(log2(num_branches))), work_width = max(1, ceil(log2(dim))).
    static RegisterLayout for_problem(int num_branches, int dim);

    int total_qubits() const { return 1 + select_width + work_width; }
    int padded_dim() const { return 1 << work_width; }
    int select_size() const { return 1 << select_width; }
    std::vector<int> ancilla_qubits() const;  // flag followed by select
    std::vector<int> select_qubits() const;
    std::vector<int> work_qubits() const;
};

struct PrepareSpec {
    double beta = 1.0;
    RMatrix v0;                // 2 x 2
    RMatrix v;                 // select_size x select_size, first column = amplitudes
    RVector amplitudes;        // sqrt(|c_m| / sum|c|), zero padded
    std::vector<int> signs;    // sign(-eta * c_m), +1 for c_m = 0
};

/// Prepare unitaries for weights c (one per branch). When every weight is zero
/// beta = 1 and both V0 and V are the identity.
PrepareSpec build_prepare(const RVector& weights, double eta, int select_width);
PrepareSpec build_prepare(const CoefficientSet& coeffs, double eta);

/// Completes a unit first column to a real orthogonal matrix by Gram-Schmidt over
/// e_0, e_1, ..., dropping candidates whose residual norm is below 1e-10.
RMatrix complete_orthonormal(const RVector& first_column);

/// U embedded as diag(U, I) on the padded working register.
CMatrix pad_unitary(const CMatrix& u, int padded_dim);

struct LcuCircuit {
    RegisterLayout layout;
    PrepareSpec prepare;
    std::vector<CMatrix> selected;  // sigma_m * A_m, padded
};

/// Realizes x -> x - eta * sum_m weights[m] * unitaries[m] x.
LcuCircuit build_lcu_circuit(const std::vector<CMatrix>& unitaries, const RVector& weights, double eta);

/// Runs steps 1-4 and returns the full register state before post-selection.
QState run_lcu_circuit(const LcuCircuit& circuit, const RVector& x);

enum class Mode { Exact, Sampled };
enum class Label { Continue, Converged };

struct IterationOptions {
    double eta = 1.0;
    Mode mode = Mode::Exact;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    double threshold = 1e-3;
};

struct IterationOutcome {
    Point next_point;
    double success_prob;        // exact in Exact mode, empirical in Sampled mode
    double exact_success_prob;
    double expected_bernoulli_reps;
    int aa_reps_estimate;
    QState raw_state;           // before post-selection
    CVector working_state;      // post-selected working register, padded
    double step_norm;           // |next - x| after sign alignment
    Label label;
};

/// ceil(pi / (4 asin(sqrt(p)))).
int amplitude_amplification_reps(double success_prob);

/// Phase-fixes a post-selected working state, drops the padding and flips the
/// sign so the result has a non-negative inner product with previous.
Point working_state_to_point(const CVector& working, int dim, const Point& previous);

/// Runs one step on the simulator. Throws DegenerateStep when x - eta D x
/// vanishes and PostSelectionFailure when no sampled shot succeeds.
IterationOutcome run_iteration(const TensorDecomposition& decomp, const Point& x, const IterationOptions& options = {});

struct BEstimate {
    RMatrix b;                // K x p
    RMatrix hit_frequency;    // sampled: fraction of branch-m shots landing on |x>
    RMatrix branch_shots;     // sampled: shots that landed in branch m
    RMatrix exact_hit_prob;   // |<x|A_m|x>|^2
};

/// Hadamards on select, select-controlled A_m on |x>, then a |x><x| projective
/// readout per branch. Sampled magnitudes take their sign from the exact overlap.
BEstimate estimate_b(const TensorDecomposition& decomp, const Point& x, Mode mode = Mode::Exact,
                     std::uint64_t shots = 100000, std::uint64_t seed = 0);

/// Real orthogonal reflection mapping the unit vector x to e_0.
RMatrix householder_to_e0(const RVector& x);

struct OptimizeOptions {
    double eta = 1.0;
    double threshold = 1e-3;
    int max_iters = 50;
    Mode mode = Mode::Exact;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    double noise_eps = 0.0;
    std::optional<Point> reference;
};

struct IterationRecord {
    int iter;
    Point point;
    double f_value;
    double success_prob;
    double step_norm;
    int aa_reps_estimate;
    std::optional<double> overlap;
    std::optional<double> fidelity;  // noisy runs: F(exact working state, depolarized one)
    Label label;
};

/// Repeats run_iteration until the sign-aligned step is <= threshold or
/// max_iters is reached. With noise_eps > 0 each post-selected working state is
/// depolarized and purified before it becomes the next iterate.
std::vector<IterationRecord> optimize(const TensorDecomposition& decomp, const Point& x0,
                                      const OptimizeOptions& options = {});

struct ResourceEstimate {
    int total_qubits;
    int select_width;
    int work_width;
    int controlled_unitaries;     // Kp
    double basic_gate_order;      // Kp * log2 N
    double amplification_reps;    // sqrt(Kp)
    double steps_per_iteration;   // (Kp)^{3/2} log2 N + sqrt(Kp) log2(N + Kp + 1)
};

ResourceEstimate estimate_resources(const TensorDecomposition& decomp);

}  // namespace qgd
