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

// The two-dimensional quartic on the unit circle,
//
//     f(x) = 1/2 (x (x) x)^T A (x (x) x),   A = -I (x) X + X (x) Z,
//
// which reduces to f(theta) = -2 sin^3(theta) cos(theta) at x = (cos, sin).
// Minima sit at theta = pi/3 (+ pi); theta = 0 is a saddle of the iteration.

#include "qgd/lcu.hpp"
#include "qgd/poly.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qgd {

enum class Case { S1, S2 };

std::string case_name(Case c);

struct ExperimentConfig {
    TensorDecomposition decomp;
    Point x0_s1;
    Point x0_s2;
    Point x_opt;
    double eta;
    double threshold;
    int max_iters;

    static ExperimentConfig standard();
    const Point& start(Case c) const { return c == Case::S1 ? x0_s1 : x0_s2; }
};

/// -I (x) X + X (x) Z with prefactor 1/2.
TensorDecomposition quartic_decomposition();

double objective_theta(double theta);
/// d/dtheta of objective_theta.
double objective_theta_derivative(double theta);

double overlap(const Point& a, const Point& b);

struct TrajectoryRecord {
    int iter;
    Point point;
    double f_value;
    double overlap;
    std::optional<double> success_prob;  // empty for the initial point
    std::optional<double> fidelity;
};

struct RunCaseOptions {
    Mode mode = Mode::Exact;
    double noise_eps = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t shots = 10000;
    std::optional<double> eta;        // overrides the config
    std::optional<int> max_iters;     // overrides the config
    std::optional<double> threshold;  // overrides the config
};

/// Iteration 0 is the starting point; later rows come from optimize().
std::vector<TrajectoryRecord> run_case(const ExperimentConfig& config, Case c, const RunCaseOptions& options = {});

/// True when the last record's step met the threshold.
bool trajectory_converged(const ExperimentConfig& config, const std::vector<TrajectoryRecord>& records,
                          const RunCaseOptions& options = {});

/// Header iter,case,x1,x2,f,overlap,success_prob,fidelity.
void write_trajectory_csv_header(std::ostream& out);
void write_trajectory_csv(std::ostream& out, Case c, const std::vector<TrajectoryRecord>& records);

}  // namespace qgd
