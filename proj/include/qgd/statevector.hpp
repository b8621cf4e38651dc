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

// Dense statevector simulation.
//
// Qubit 0 is the most significant position: in a q-qubit state, qubit k is
// bit (q - 1 - k) of the amplitude index. Circuits in this library lay out
// registers as (flag, select, working), so the flag is qubit 0.

#include "qgd/poly.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <vector>

namespace qgd {

inline constexpr int kMaxQubits = 20;

class QState {
public:
    /// |0...0> on num_qubits qubits (0 qubits gives the scalar state 1).
    static QState zero(int num_qubits);
    static QState basis(int num_qubits, std::uint64_t index);
    /// Throws ContractViolation unless the length is a power of two and the norm is 1 within 1e-12.
    static QState from_amplitudes(CVector amps);
    /// |a> (x) |b>, with a's qubits first.
    static QState tensor(const QState& a, const QState& b);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t size() const { return std::uint64_t{1} << num_qubits_; }
    const CVector& amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::uint64_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
    double norm_squared() const { return amps_.squaredNorm(); }

    /// [[re, im], ...]
    nlohmann::json to_json() const;

private:
    QState(int num_qubits, CVector amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {}
    friend QState apply_controlled(const QState&, const CMatrix&, const std::vector<int>&, const std::vector<int>&,
                                   const std::vector<int>&);
    friend struct PostSelection postselect(const QState&, const std::vector<int>&, const std::vector<int>&);

    int num_qubits_;
    CVector amps_;
};

/// u acts on targets, targets[0] being the most significant bit of u's index.
/// Throws ContractViolation for a non-unitary u or bad/duplicate targets.
QState apply_unitary(const QState& state, const CMatrix& u, const std::vector<int>& targets);

/// Applies u only on the subspace where controls read pattern.
QState apply_controlled(const QState& state, const CMatrix& u, const std::vector<int>& controls,
                        const std::vector<int>& pattern, const std::vector<int>& targets);

struct PostSelection {
    QState state;  // remaining (unmeasured) qubits, renormalized
    double probability;
};

/// Projects qubits onto outcome. Throws PostSelectionFailure if the probability is <= 1e-14.
PostSelection postselect(const QState& state, const std::vector<int>& qubits, const std::vector<int>& outcome);

/// Exact marginal distribution of qubits; entry v has qubits[0] as its most significant bit.
std::vector<double> marginal_probabilities(const QState& state, const std::vector<int>& qubits);

/// Multinomial sample of the marginal over qubits; counts indexed like marginal_probabilities.
std::vector<std::uint64_t> measure_sample(const QState& state, const std::vector<int>& qubits, std::uint64_t seed,
                                          std::uint64_t shots);

/// Multinomial counts for an explicit distribution, deterministic per seed.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities, std::uint64_t seed,
                                         std::uint64_t shots);

}  // namespace qgd
