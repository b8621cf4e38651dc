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

// JSON form of a decomposition:
//
//   {"dim": N, "p": p, "prefactor": s,
//    "terms": [[factor, ...], ...]}
//
// where each factor is {"pauli": "X" | "Y" | "Z" | "I" | "-I" | ...} or
// {"dense": [[re, im], ...]} holding N*N entries in row-major order.
// Problem files may also carry optional "x0" and "reference" arrays.

#include "qgd/poly.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace qgd {

TensorDecomposition decomposition_from_json(const nlohmann::json& doc);
nlohmann::json decomposition_to_json(const TensorDecomposition& decomp);

struct Problem {
    TensorDecomposition decomp;
    std::optional<Point> x0;
    std::optional<Point> reference;
};

/// Throws ParseError on malformed JSON or schema violations.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);
nlohmann::json problem_to_json(const Problem& problem);

}  // namespace qgd
