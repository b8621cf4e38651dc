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

#include "qgd/statevector.hpp"

#include "qgd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qgd {

namespace {

void check_qubit_count(int q) {
    if (q < 0) throw ContractViolation("qubit count must be non-negative");
    if (q > kMaxQubits) throw CapacityError("dense statevector limited to 20 qubits");
}

std::uint64_t bit_of(int num_qubits, int qubit) { return std::uint64_t{1} << (num_qubits - 1 - qubit); }

void check_qubits(int num_qubits, const std::vector<int>& qubits, const char* what) {
    std::vector<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits) throw ContractViolation(std::string(what) + ": qubit index out of range");
        if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
            throw ContractViolation(std::string(what) + ": repeated qubit index");
        }
        seen.push_back(q);
    }
}

void check_bits(const std::vector<int>& bits, std::size_t expected, const char* what) {
    if (bits.size() != expected) throw ContractViolation(std::string(what) + ": pattern length mismatch");
    for (int b : bits) {
        if (b != 0 && b != 1) throw ContractViolation(std::string(what) + ": pattern entries must be 0 or 1");
    }
}

// Value of the listed qubits read from index, qubits[0] most significant.
std::uint64_t extract(std::uint64_t index, int num_qubits, const std::vector<int>& qubits) {
    std::uint64_t v = 0;
    for (int q : qubits) v = (v << 1) | ((index & bit_of(num_qubits, q)) ? 1 : 0);
    return v;
}

}  // namespace

QState QState::zero(int num_qubits) { return basis(num_qubits, 0); }

QState QState::basis(int num_qubits, std::uint64_t index) {
    check_qubit_count(num_qubits);
    const std::uint64_t n = std::uint64_t{1} << num_qubits;
    if (index >= n) throw ContractViolation("basis index out of range");
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(n));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return QState(num_qubits, std::move(amps));
}

QState QState::from_amplitudes(CVector amps) {
    const auto n = static_cast<std::uint64_t>(amps.size());
    if (n == 0 || (n & (n - 1)) != 0) throw ContractViolation("amplitude count must be a power of two");
    int q = 0;
    while ((std::uint64_t{1} << q) < n) ++q;
    check_qubit_count(q);
    if (std::abs(amps.squaredNorm() - 1.0) > 1e-12) throw ContractViolation("state must have unit norm");
    return QState(q, std::move(amps));
}

QState QState::tensor(const QState& a, const QState& b) {
    check_qubit_count(a.num_qubits_ + b.num_qubits_);
    CVector amps(a.amps_.size() * b.amps_.size());
    for (Eigen::Index i = 0; i < a.amps_.size(); ++i) {
        amps.segment(i * b.amps_.size(), b.amps_.size()) = a.amps_[i] * b.amps_;
    }
    return QState(a.num_qubits_ + b.num_qubits_, std::move(amps));
}

nlohmann::json QState::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < amps_.size(); ++i) out.push_back({amps_[i].real(), amps_[i].imag()});
    return out;
}

QState apply_unitary(const QState& state, const CMatrix& u, const std::vector<int>& targets) {
    return apply_controlled(state, u, {}, {}, targets);
}

QState apply_controlled(const QState& state, const CMatrix& u, const std::vector<int>& controls,
                        const std::vector<int>& pattern, const std::vector<int>& targets) {
    const int q = state.num_qubits();
    if (targets.empty()) throw ContractViolation("apply: at least one target required");
    check_qubits(q, targets, "apply targets");
    check_qubits(q, controls, "apply controls");
    check_bits(pattern, controls.size(), "apply controls");
    for (int c : controls) {
        if (std::find(targets.begin(), targets.end(), c) != targets.end()) {
            throw ContractViolation("apply: controls and targets overlap");
        }
    }
    const auto k = static_cast<Eigen::Index>(std::uint64_t{1} << targets.size());
    if (u.rows() != k || u.cols() != k) detail::throw_dimension("apply: unitary size", k, u.rows());
    if ((u * u.adjoint() - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw ContractViolation("apply: matrix is not unitary");
    }

    std::uint64_t target_mask = 0;
    for (int t : targets) target_mask |= bit_of(q, t);
    std::uint64_t control_mask = 0;
    std::uint64_t control_value = 0;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        control_mask |= bit_of(q, controls[i]);
        if (pattern[i]) control_value |= bit_of(q, controls[i]);
    }
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(k), 0);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (j & (Eigen::Index{1} << (targets.size() - 1 - t))) offsets[j] |= bit_of(q, targets[t]);
        }
    }

    CVector out = state.amplitudes();
    CVector local(k);
    for (std::uint64_t base = 0; base < state.size(); ++base) {
        if ((base & target_mask) != 0 || (base & control_mask) != control_value) continue;
        for (Eigen::Index j = 0; j < k; ++j) local[j] = out[static_cast<Eigen::Index>(base | offsets[j])];
        const CVector mixed = u * local;
        for (Eigen::Index j = 0; j < k; ++j) out[static_cast<Eigen::Index>(base | offsets[j])] = mixed[j];
    }
    return QState(q, std::move(out));
}

PostSelection postselect(const QState& state, const std::vector<int>& qubits, const std::vector<int>& outcome) {
    const int q = state.num_qubits();
    check_qubits(q, qubits, "postselect");
    check_bits(outcome, qubits.size(), "postselect");
    std::uint64_t wanted = 0;
    for (int b : outcome) wanted = (wanted << 1) | static_cast<std::uint64_t>(b);

    std::vector<int> kept;
    for (int i = 0; i < q; ++i) {
        if (std::find(qubits.begin(), qubits.end(), i) == qubits.end()) kept.push_back(i);
    }
    const int rest = static_cast<int>(kept.size());
    CVector amps = CVector::Zero(Eigen::Index{1} << rest);
    double probability = 0.0;
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if (extract(i, q, qubits) != wanted) continue;
        const auto a = state.amplitude(i);
        probability += std::norm(a);
        amps[static_cast<Eigen::Index>(extract(i, q, kept))] = a;
    }
    if (probability <= 1e-14) throw PostSelectionFailure("post-selected outcome has zero probability");
    amps /= std::sqrt(probability);
    return {QState(rest, std::move(amps)), probability};
}

std::vector<double> marginal_probabilities(const QState& state, const std::vector<int>& qubits) {
    check_qubits(state.num_qubits(), qubits, "marginal");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        probs[extract(i, state.num_qubits(), qubits)] += std::norm(state.amplitude(i));
    }
    return probs;
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities, std::uint64_t seed,
                                         std::uint64_t shots) {
    if (shots < 1) throw ContractViolation("shots must be >= 1");
    if (probabilities.empty()) throw ContractViolation("empty distribution");
    double total = 0.0;
    for (double p : probabilities) {
        if (!std::isfinite(p) || p < -1e-12) throw ContractViolation("probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ContractViolation("probabilities must sum to 1");
    std::mt19937_64 rng(seed);
    const std::size_t n = probabilities.size();
    std::vector<std::uint64_t> counts(n, 0);
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + std::max(probabilities[i], 0.0);
    std::uint64_t remaining = shots;
    // Conditional binomials: outcome i takes Binomial(remaining, p_i / tail_i).
    for (std::size_t i = 0; i < n && remaining > 0; ++i) {
        const double p = std::max(probabilities[i], 0.0);
        if (tail[i + 1] <= 0.0) {
            counts[i] = remaining;
            break;
        }
        if (p > 0.0) {
            std::binomial_distribution<std::uint64_t> draw(remaining, std::min(p / tail[i], 1.0));
            counts[i] = draw(rng);
        }
        remaining -= counts[i];
    }
    return counts;
}

std::vector<std::uint64_t> measure_sample(const QState& state, const std::vector<int>& qubits, std::uint64_t seed,
                                          std::uint64_t shots) {
    return sample_counts(marginal_probabilities(state, qubits), seed, shots);
}

}  // namespace qgd
