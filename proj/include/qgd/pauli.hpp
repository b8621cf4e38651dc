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

#include <string>
#include <string_view>
#include <vector>

namespace qgd {

/// 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
CMatrix pauli_matrix(char name);

/// Kronecker product of single-qubit Paulis, leftmost label most significant.
CMatrix pauli_string_matrix(std::string_view labels);

struct PauliTerm {
    std::string labels;
    double coefficient;
};

/// Expands a real symmetric 2^q x 2^q matrix as sum_P a_P P. Only terms with
/// |a_P| > drop_tol are returned, in lexicographic label order (I < X < Y < Z).
std::vector<PauliTerm> pauli_decompose(const RMatrix& matrix, double drop_tol = 1e-12);

}  // namespace qgd
