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

#include "qgd/pauli.hpp"

#include "qgd/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qgd {

using cd = std::complex<double>;

CMatrix pauli_matrix(char name) {
    CMatrix m(2, 2);
    switch (name) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw ContractViolation(std::string("unknown Pauli label '") + name + "'");
    }
    return m;
}

CMatrix pauli_string_matrix(std::string_view labels) {
    if (labels.empty()) throw ContractViolation("empty Pauli string");
    CMatrix out = pauli_matrix(labels.front());
    for (std::size_t i = 1; i < labels.size(); ++i) {
        CMatrix next = Eigen::kroneckerProduct(out, pauli_matrix(labels[i])).eval();
        out = std::move(next);
    }
    return out;
}

std::vector<PauliTerm> pauli_decompose(const RMatrix& matrix, double drop_tol) {
    const auto n = matrix.rows();
    if (matrix.cols() != n) throw DimensionError("pauli_decompose: matrix must be square");
    int qubits = 0;
    while ((Eigen::Index{1} << qubits) < n) ++qubits;
    if ((Eigen::Index{1} << qubits) != n || qubits == 0) {
        throw ContractViolation("pauli_decompose: dimension must be a power of two >= 2");
    }
    static constexpr char kLabels[] = {'I', 'X', 'Y', 'Z'};
    std::vector<PauliTerm> terms;
    const CMatrix m = matrix.cast<cd>();
    const std::size_t total = std::size_t{1} << (2 * qubits);
    for (std::size_t code = 0; code < total; ++code) {
        std::string labels(qubits, 'I');
        for (int q = 0; q < qubits; ++q) {
            labels[q] = kLabels[(code >> (2 * (qubits - 1 - q))) & 3];
        }
        const cd a = (pauli_string_matrix(labels) * m).trace() / static_cast<double>(n);
        if (std::abs(a.real()) > drop_tol) terms.push_back({labels, a.real()});
    }
    return terms;
}

}  // namespace qgd
