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

#include "qgd/experiment.hpp"

#include "qgd/errors.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace qgd {

std::string case_name(Case c) { return c == Case::S1 ? "s1" : "s2"; }

TensorDecomposition quartic_decomposition() {
    using U = UnitaryFactor;
    return TensorDecomposition({{U::pauli("-I"), U::pauli("X")}, {U::pauli("X"), U::pauli("Z")}}, 0.5);
}

ExperimentConfig ExperimentConfig::standard() {
    return ExperimentConfig{
        quartic_decomposition(),
        Point::normalized(RVector{{-0.38, 0.92}}),
        Point::normalized(RVector{{0.86, 0.50}}),
        Point(RVector{{0.5, std::sqrt(3.0) / 2.0}}),
        // eta = 1 overshoots from S1 into the theta = pi saddle; 0.5 keeps f monotone.
        0.5,
        1e-3,
        8,
    };
}

double objective_theta(double theta) {
    const double s = std::sin(theta);
    return -2.0 * s * s * s * std::cos(theta);
}

double objective_theta_derivative(double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return -2.0 * s * s * (3.0 * c * c - s * s);
}

double overlap(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) detail::throw_dimension("overlap", a.dim(), b.dim());
    return a.coords().dot(b.coords());
}

namespace {

OptimizeOptions to_optimize_options(const ExperimentConfig& config, const RunCaseOptions& options) {
    OptimizeOptions opt;
    opt.eta = options.eta.value_or(config.eta);
    opt.threshold = options.threshold.value_or(config.threshold);
    opt.max_iters = options.max_iters.value_or(config.max_iters);
    opt.mode = options.mode;
    opt.shots = options.shots;
    opt.seed = options.seed;
    opt.noise_eps = options.noise_eps;
    opt.reference = config.x_opt;
    return opt;
}

}  // namespace

std::vector<TrajectoryRecord> run_case(const ExperimentConfig& config, Case c, const RunCaseOptions& options) {
    const Point& start = config.start(c);
    std::vector<TrajectoryRecord> out;
    out.push_back({0, start, evaluate_objective(config.decomp, start), overlap(start, config.x_opt), std::nullopt,
                   std::nullopt});
    for (const auto& r : optimize(config.decomp, start, to_optimize_options(config, options))) {
        out.push_back({r.iter, r.point, r.f_value, *r.overlap, r.success_prob, r.fidelity});
    }
    return out;
}

bool trajectory_converged(const ExperimentConfig& config, const std::vector<TrajectoryRecord>& records,
                          const RunCaseOptions& options) {
    if (records.size() < 2) return false;
    const auto& last = records.back().point.coords();
    const auto& prev = records[records.size() - 2].point.coords();
    return (last - prev).norm() <= options.threshold.value_or(config.threshold);
}

void write_trajectory_csv_header(std::ostream& out) {
    out << "iter,case,x1,x2,f,overlap,success_prob,fidelity\n";
}

void write_trajectory_csv(std::ostream& out, Case c, const std::vector<TrajectoryRecord>& records) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(12);
    for (const auto& r : records) {
        out << r.iter << ',' << case_name(c) << ',' << r.point[0] << ',' << r.point[1] << ',' << r.f_value << ','
            << r.overlap << ',';
        if (r.success_prob) out << *r.success_prob;
        out << ',';
        if (r.fidelity) out << *r.fidelity;
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

}  // namespace qgd
