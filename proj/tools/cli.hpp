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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qgd::cli {

enum ExitCode : int {
    kConverged = 0,
    kInputError = 1,
    kBudgetExhausted = 2,
};

struct RunConfig {
    std::string subcommand;
    std::string problem;
    std::string x0;
    double eta = 1.0;
    double threshold = 1e-3;
    int max_iters = 50;
    std::string mode = "exact";
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    double noise_eps = 0.0;
    std::string out;
    std::string summary;
    std::string format = "csv";
    bool parallel = false;

    // repro
    std::string case_name = "both";
    // mds
    std::string delta;
    std::string weights;
    int dims = 2;
    double tol = 1e-12;
    std::string coords;
    bool demo_lcu = false;
    // optimize
    std::string write_problem;
};

/// Validates shots/noise ranges; returns an error message or nothing.
std::optional<std::string> validate(const RunConfig& config);

int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_repro(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_estimate_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgd::cli
