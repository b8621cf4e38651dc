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

#include "qgd/mds.hpp"

#include "qgd/errors.hpp"
#include "qgd/lcu.hpp"
#include "qgd/pauli.hpp"

#include <cmath>

namespace qgd {

namespace {

void check_square_symmetric(const RMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) throw ContractViolation(std::string(what) + " must be square");
    if (!m.allFinite()) throw ContractViolation(std::string(what) + " must be finite");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ContractViolation(std::string(what) + " must be symmetric");
    }
    if (m.minCoeff() < 0.0) throw ContractViolation(std::string(what) + " must be non-negative");
    if (m.diagonal().cwiseAbs().maxCoeff() != 0.0) {
        throw ContractViolation(std::string(what) + " must have a zero diagonal");
    }
}

void check_shapes(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    if (w.size() != delta.size()) detail::throw_dimension("mds weights", delta.size(), w.size());
    if (x.rows() != delta.size()) detail::throw_dimension("mds configuration rows", delta.size(), x.rows());
    if (!x.allFinite()) throw ContractViolation("configuration must be finite");
}

}  // namespace

Dissimilarities Dissimilarities::from_matrix(RMatrix delta) {
    check_square_symmetric(delta, "dissimilarity matrix");
    return Dissimilarities(std::move(delta));
}

Weights Weights::from_matrix(RMatrix w) {
    check_square_symmetric(w, "weight matrix");
    return Weights(std::move(w));
}

Weights Weights::uniform(int n) {
    return Weights(RMatrix::Ones(n, n) - RMatrix::Identity(n, n));
}

RMatrix distances(const Configuration& x) {
    const auto n = x.rows();
    RMatrix d = RMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (x.row(i) - x.row(j)).norm();
    }
    return d;
}

StressBreakdown stress(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    check_shapes(delta, w, x);
    const RMatrix d = distances(x);
    const RMatrix& dl = delta.matrix();
    const RMatrix& wm = w.matrix();
    StressBreakdown out{};
    out.value = 0.5 * (wm.array() * (d - dl).array().square()).sum();
    out.constant = 0.5 * (wm.array() * dl.array().square()).sum();
    out.g = 0.5 * (wm.array() * dl.array() * d.array()).sum();
    out.h2 = 0.5 * (wm.array() * d.array().square()).sum();
    return out;
}

RMatrix pair_operator(int n, int i, int j) {
    RVector e = RVector::Zero(n);
    e[i] += 1.0;
    e[j] -= 1.0;
    return e * e.transpose();
}

RMatrix b_matrix(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    check_shapes(delta, w, x);
    const int n = delta.size();
    const RMatrix d = distances(x);
    RMatrix b = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || d(i, j) == 0.0) continue;  // k_ij = 0
            const double coeff = 0.5 * w.matrix()(i, j) * delta.matrix()(i, j) / d(i, j);
            b(i, i) += coeff;
            b(j, j) += coeff;
            b(i, j) -= coeff;
            b(j, i) -= coeff;
        }
    }
    return b;
}

RMatrix c_matrix(const Weights& w) {
    const int n = w.size();
    RMatrix c = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double coeff = 0.5 * w.matrix()(i, j);
            c(i, i) += coeff;
            c(j, j) += coeff;
            c(i, j) -= coeff;
            c(j, i) -= coeff;
        }
    }
    return c;
}

RMatrix d_matrix(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    return c_matrix(w) - 2.0 * b_matrix(delta, w, x);
}

RMatrix gradient_operator(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    return c_matrix(w) - b_matrix(delta, w, x);
}

double f_prime(const Dissimilarities& delta, const Weights& w, const Configuration& x) {
    const RMatrix d = d_matrix(delta, w, x);
    double sum = 0.0;
    for (Eigen::Index v = 0; v < x.cols(); ++v) sum += x.col(v).dot(d * x.col(v));
    return sum;
}

std::vector<MdsStep> mds_optimize(const Dissimilarities& delta, const Weights& w, const Configuration& x0,
                                  const MdsOptions& options) {
    if (!(options.eta > 0.0)) throw ContractViolation("learning rate must be positive");
    if (options.max_iters < 0) throw ContractViolation("max_iters must be non-negative");
    std::vector<MdsStep> steps;
    Configuration x = x0;
    double current = stress(delta, w, x).value;
    steps.push_back({0, x, current, false});
    for (int t = 1; t <= options.max_iters; ++t) {
        x = x - options.eta * gradient_operator(delta, w, x) * x;
        const double next = stress(delta, w, x).value;
        const double improvement = current - next;
        steps.push_back({t, x, next, next > current});
        current = next;
        if (improvement >= 0.0 && improvement < options.tol) break;
    }
    return steps;
}

MdsColumnStep mds_quantum_column_step(const Dissimilarities& delta, const Weights& w, const Configuration& x,
                                      int column, double eta) {
    check_shapes(delta, w, x);
    if (column < 0 || column >= x.cols()) throw ContractViolation("column index out of range");
    const RMatrix g = gradient_operator(delta, w, x);
    const auto terms = pauli_decompose(g);
    const Point v = Point::normalized(x.col(column));

    const RVector classical_diff = v.coords() - eta * g * v.coords();
    Point classical = Point::normalized(classical_diff);
    if (terms.empty()) return {v, v, 1.0, 0};

    std::vector<CMatrix> unitaries;
    RVector weights(static_cast<Eigen::Index>(terms.size()));
    for (std::size_t k = 0; k < terms.size(); ++k) {
        unitaries.push_back(pauli_string_matrix(terms[k].labels));
        weights[static_cast<Eigen::Index>(k)] = terms[k].coefficient;
    }
    const LcuCircuit circuit = build_lcu_circuit(unitaries, weights, eta);
    const QState raw = run_lcu_circuit(circuit, v.coords());
    const auto ancilla = circuit.layout.ancilla_qubits();
    const auto kept = postselect(raw, ancilla, std::vector<int>(ancilla.size(), 0));
    Point quantum = working_state_to_point(kept.state.amplitudes(), delta.size(), v);
    if (classical.coords().dot(v.coords()) < 0.0) classical = Point(-classical.coords());
    return {std::move(quantum), std::move(classical), kept.probability, static_cast<int>(terms.size())};
}

}  // namespace qgd
