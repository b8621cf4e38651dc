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

#include "qgd/lcu.hpp"

#include "qgd/density.hpp"
#include "qgd/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qgd {

namespace {

using cd = std::complex<double>;

int ceil_log2(int n) {
    int w = 0;
    while ((1 << w) < n) ++w;
    return w;
}

std::vector<int> bits_of(int value, int width) {
    std::vector<int> bits(width);
    for (int i = 0; i < width; ++i) bits[i] = (value >> (width - 1 - i)) & 1;
    return bits;
}

RVector pad(const RVector& x, int padded_dim) {
    RVector out = RVector::Zero(padded_dim);
    out.head(x.size()) = x;
    return out;
}

QState working_register(const RVector& x, int padded_dim) {
    return QState::from_amplitudes(pad(x, padded_dim).cast<cd>());
}

}  // namespace

RegisterLayout RegisterLayout::for_problem(int num_branches, int dim) {
    if (num_branches < 1 || dim < 1) throw ContractViolation("layout needs positive branch count and dimension");
    RegisterLayout layout{std::max(1, ceil_log2(num_branches)), std::max(1, ceil_log2(dim))};
    if (layout.total_qubits() > kMaxQubits) throw CapacityError("circuit needs more than 20 qubits");
    return layout;
}

std::vector<int> RegisterLayout::ancilla_qubits() const {
    std::vector<int> q{0};
    for (int i = 0; i < select_width; ++i) q.push_back(1 + i);
    return q;
}

std::vector<int> RegisterLayout::select_qubits() const {
    std::vector<int> q;
    for (int i = 0; i < select_width; ++i) q.push_back(1 + i);
    return q;
}

std::vector<int> RegisterLayout::work_qubits() const {
    std::vector<int> q;
    for (int i = 0; i < work_width; ++i) q.push_back(1 + select_width + i);
    return q;
}

RMatrix complete_orthonormal(const RVector& first_column) {
    const auto n = first_column.size();
    if (std::abs(first_column.norm() - 1.0) > 1e-12) throw ContractViolation("first column must be a unit vector");
    RMatrix out(n, n);
    out.col(0) = first_column;
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
        RVector candidate = RVector::Unit(n, e);
        // Two passes of modified Gram-Schmidt keep the columns orthogonal to ~1e-16.
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < filled; ++k) candidate -= out.col(k).dot(candidate) * out.col(k);
        }
        const double norm = candidate.norm();
        if (norm < 1e-10) continue;
        out.col(filled++) = candidate / norm;
    }
    if (filled != n) throw ContractViolation("Gram-Schmidt completion failed");
    return out;
}

PrepareSpec build_prepare(const RVector& weights, double eta, int select_width) {
    if (!(eta > 0.0)) throw ContractViolation("learning rate must be positive");
    const int size = 1 << select_width;
    if (weights.size() > size) throw ContractViolation("more weights than select-register branches");

    PrepareSpec spec;
    const double total = weights.cwiseAbs().sum();
    spec.beta = 1.0 + eta * total;
    spec.signs.resize(weights.size());
    for (Eigen::Index m = 0; m < weights.size(); ++m) spec.signs[m] = (-eta * weights[m] < 0.0) ? -1 : 1;

    if (total == 0.0) {
        spec.v0 = RMatrix::Identity(2, 2);
        spec.v = RMatrix::Identity(size, size);
        spec.amplitudes = RVector::Unit(size, 0);
        return spec;
    }
    const double keep = 1.0 / std::sqrt(spec.beta);
    const double branch = std::sqrt((spec.beta - 1.0) / spec.beta);
    spec.v0.resize(2, 2);
    spec.v0 << keep, branch, branch, -keep;

    spec.amplitudes = RVector::Zero(size);
    for (Eigen::Index m = 0; m < weights.size(); ++m) spec.amplitudes[m] = std::sqrt(std::abs(weights[m]) / total);
    spec.amplitudes /= spec.amplitudes.norm();
    spec.v = complete_orthonormal(spec.amplitudes);
    return spec;
}

PrepareSpec build_prepare(const CoefficientSet& coeffs, double eta) {
    const auto layout = RegisterLayout::for_problem(static_cast<int>(coeffs.c.size()), 1);
    return build_prepare(coeffs.c, eta, layout.select_width);
}

CMatrix pad_unitary(const CMatrix& u, int padded_dim) {
    if (u.rows() > padded_dim) throw ContractViolation("unitary larger than the padded register");
    CMatrix out = CMatrix::Identity(padded_dim, padded_dim);
    out.topLeftCorner(u.rows(), u.cols()) = u;
    return out;
}

LcuCircuit build_lcu_circuit(const std::vector<CMatrix>& unitaries, const RVector& weights, double eta) {
    if (unitaries.empty() || static_cast<Eigen::Index>(unitaries.size()) != weights.size()) {
        throw ContractViolation("need one weight per unitary");
    }
    const int dim = static_cast<int>(unitaries.front().rows());
    for (const auto& u : unitaries) {
        if (u.rows() != dim || u.cols() != dim) detail::throw_dimension("build_lcu_circuit", dim, u.rows());
    }
    LcuCircuit circuit;
    circuit.layout = RegisterLayout::for_problem(static_cast<int>(unitaries.size()), dim);
    circuit.prepare = build_prepare(weights, eta, circuit.layout.select_width);
    for (std::size_t m = 0; m < unitaries.size(); ++m) {
        circuit.selected.push_back(static_cast<double>(circuit.prepare.signs[m]) *
                                   pad_unitary(unitaries[m], circuit.layout.padded_dim()));
    }
    return circuit;
}

QState run_lcu_circuit(const LcuCircuit& circuit, const RVector& x) {
    const auto& layout = circuit.layout;
    const auto& prep = circuit.prepare;
    const std::vector<int> flag{0};
    const std::vector<int> one{1};
    const auto select = layout.select_qubits();
    const auto work = layout.work_qubits();

    QState state = QState::tensor(QState::zero(1 + layout.select_width), working_register(x, layout.padded_dim()));
    state = apply_unitary(state, prep.v0.cast<cd>(), flag);
    state = apply_controlled(state, prep.v.cast<cd>(), flag, one, select);

    std::vector<int> controls = layout.ancilla_qubits();
    for (std::size_t m = 0; m < circuit.selected.size(); ++m) {
        std::vector<int> pattern{1};
        for (int b : bits_of(static_cast<int>(m), layout.select_width)) pattern.push_back(b);
        state = apply_controlled(state, circuit.selected[m], controls, pattern, work);
    }

    state = apply_controlled(state, prep.v.transpose().cast<cd>(), flag, one, select);
    state = apply_unitary(state, prep.v0.transpose().cast<cd>(), flag);
    return state;
}

int amplitude_amplification_reps(double success_prob) {
    if (!(success_prob > 0.0 && success_prob <= 1.0 + 1e-12)) {
        throw ContractViolation("success probability must lie in (0, 1]");
    }
    const double angle = std::asin(std::sqrt(std::min(success_prob, 1.0)));
    return static_cast<int>(std::ceil(std::numbers::pi / (4.0 * angle)));
}

Point working_state_to_point(const CVector& working, int dim, const Point& previous) {
    Eigen::Index lead = 0;
    working.cwiseAbs().maxCoeff(&lead);
    const CVector fixed = working * (std::conj(working[lead]) / std::abs(working[lead]));
    if (fixed.imag().cwiseAbs().maxCoeff() > 1e-10) {
        throw ContractViolation("post-selected state is not real; factors must keep x real");
    }
    RVector coords = fixed.real().head(dim);
    if (coords.dot(previous.coords()) < 0.0) coords = -coords;
    return Point::normalized(std::move(coords));
}

IterationOutcome run_iteration(const TensorDecomposition& decomp, const Point& x, const IterationOptions& options) {
    if (decomp.dim() != x.dim()) detail::throw_dimension("run_iteration", decomp.dim(), x.dim());
    if (options.mode == Mode::Sampled && options.shots < 1) throw ContractViolation("shots must be >= 1");

    const CoefficientSet coeffs = coefficients(decomp, x);
    std::vector<CMatrix> unitaries;
    for (int m = 0; m < decomp.num_factors(); ++m) unitaries.push_back(decomp.factor(m).matrix());
    const LcuCircuit circuit = build_lcu_circuit(unitaries, coeffs.c, options.eta);
    QState raw = run_lcu_circuit(circuit, x.coords());

    const auto ancilla = circuit.layout.ancilla_qubits();
    const std::vector<int> zeros(ancilla.size(), 0);
    PostSelection kept = [&] {
        try {
            return postselect(raw, ancilla, zeros);
        } catch (const PostSelectionFailure&) {
            throw DegenerateStep("x - eta*D*x vanished; post-selection has zero probability");
        }
    }();

    double success = kept.probability;
    if (options.mode == Mode::Sampled) {
        const auto counts = measure_sample(raw, ancilla, options.seed, options.shots);
        if (counts[0] == 0) {
            throw PostSelectionFailure("no shot landed on the all-zero ancilla outcome");
        }
        success = static_cast<double>(counts[0]) / static_cast<double>(options.shots);
    }

    Point next = working_state_to_point(kept.state.amplitudes(), decomp.dim(), x);
    const double step = (next.coords() - x.coords()).norm();
    return IterationOutcome{
        std::move(next),
        success,
        kept.probability,
        1.0 / success,
        amplitude_amplification_reps(success),
        std::move(raw),
        kept.state.amplitudes(),
        step,
        step <= options.threshold ? Label::Converged : Label::Continue,
    };
}

RMatrix householder_to_e0(const RVector& x) {
    const auto n = x.size();
    RVector v = x;
    v[0] -= 1.0;
    const double norm2 = v.squaredNorm();
    if (norm2 < 1e-30) return RMatrix::Identity(n, n);
    return RMatrix::Identity(n, n) - 2.0 * v * v.transpose() / norm2;
}

BEstimate estimate_b(const TensorDecomposition& decomp, const Point& x, Mode mode, std::uint64_t shots,
                     std::uint64_t seed) {
    if (decomp.dim() != x.dim()) detail::throw_dimension("estimate_b", decomp.dim(), x.dim());
    const int kp = decomp.num_factors();
    const auto layout = RegisterLayout::for_problem(kp, decomp.dim());
    const int t1 = layout.select_width;
    const int padded = layout.padded_dim();

    std::vector<int> select;
    for (int i = 0; i < t1; ++i) select.push_back(i);
    std::vector<int> work;
    for (int i = 0; i < layout.work_width; ++i) work.push_back(t1 + i);

    const RVector xp = pad(x.coords(), padded);
    QState state = QState::tensor(QState::zero(t1), working_register(x.coords(), padded));
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    for (int q : select) state = apply_unitary(state, h, {q});
    for (int m = 0; m < kp; ++m) {
        state = apply_controlled(state, pad_unitary(decomp.factor(m).matrix(), padded), select, bits_of(m, t1), work);
    }

    const int k = decomp.num_terms();
    const int p = decomp.order();
    BEstimate out{RMatrix::Zero(k, p), RMatrix::Zero(k, p), RMatrix::Zero(k, p), RMatrix::Zero(k, p)};
    for (int m = 0; m < kp; ++m) {
        const auto branch = postselect(state, select, bits_of(m, t1));
        const cd overlap = xp.cast<cd>().dot(branch.state.amplitudes());
        if (std::abs(overlap.imag()) > kImagTol) {
            throw ContractViolation("estimate_b: <x|A_m|x> has a non-negligible imaginary part");
        }
        out.b(m / p, m % p) = overlap.real();
        out.exact_hit_prob(m / p, m % p) = std::norm(overlap);
    }
    if (mode == Mode::Exact) return out;

    // |x><x| readout: rotate x to |0...0> and count branch-m shots with working = 0.
    const QState rotated = apply_unitary(state, householder_to_e0(xp).cast<cd>(), work);
    std::vector<int> all = select;
    all.insert(all.end(), work.begin(), work.end());
    const auto counts = measure_sample(rotated, all, seed, shots);
    for (int m = 0; m < kp; ++m) {
        std::uint64_t in_branch = 0;
        for (int w = 0; w < padded; ++w) in_branch += counts[static_cast<std::size_t>(m) * padded + w];
        const std::uint64_t hits = counts[static_cast<std::size_t>(m) * padded];
        const double freq = in_branch ? static_cast<double>(hits) / static_cast<double>(in_branch) : 0.0;
        const double exact = out.b(m / p, m % p);
        out.branch_shots(m / p, m % p) = static_cast<double>(in_branch);
        out.hit_frequency(m / p, m % p) = freq;
        out.b(m / p, m % p) = (exact < 0.0 ? -1.0 : 1.0) * std::sqrt(freq);
    }
    return out;
}

std::vector<IterationRecord> optimize(const TensorDecomposition& decomp, const Point& x0,
                                      const OptimizeOptions& options) {
    if (options.max_iters < 1) throw ContractViolation("max_iters must be >= 1");
    if (!(options.threshold > 0.0)) throw ContractViolation("threshold must be positive");
    if (!(options.noise_eps >= 0.0 && options.noise_eps <= 1.0)) {
        throw ContractViolation("noise strength must lie in [0, 1]");
    }
    if (options.reference && options.reference->dim() != x0.dim()) {
        detail::throw_dimension("optimize reference", x0.dim(), options.reference->dim());
    }

    std::mt19937_64 seeds(options.seed);
    std::vector<IterationRecord> records;
    Point x = x0;
    for (int t = 1; t <= options.max_iters; ++t) {
        IterationOptions step_options{options.eta, options.mode, options.shots, seeds(), options.threshold};
        IterationOutcome outcome = run_iteration(decomp, x, step_options);

        Point next = outcome.next_point;
        std::optional<double> fid;
        if (options.noise_eps > 0.0) {
            const auto exact = DensityMatrix::pure(outcome.working_state);
            const auto noisy = depolarize(exact, options.noise_eps);
            fid = fidelity(exact, noisy);
            RVector purified = purify(noisy).head(decomp.dim());
            if (purified.dot(x.coords()) < 0.0) purified = -purified;
            next = Point::normalized(std::move(purified));
        }

        const double step = (next.coords() - x.coords()).norm();
        const Label label = step <= options.threshold ? Label::Converged : Label::Continue;
        std::optional<double> ov;
        if (options.reference) ov = next.coords().dot(options.reference->coords());
        records.push_back(IterationRecord{t, next, evaluate_objective(decomp, next), outcome.success_prob, step,
                                          outcome.aa_reps_estimate, ov, fid, label});
        x = std::move(next);
        if (label == Label::Converged) break;
    }
    return records;
}

ResourceEstimate estimate_resources(const TensorDecomposition& decomp) {
    const int kp = decomp.num_factors();
    const auto layout = RegisterLayout::for_problem(kp, decomp.dim());
    const double log_n = std::max(1.0, std::log2(static_cast<double>(decomp.dim())));
    const double root = std::sqrt(static_cast<double>(kp));
    return ResourceEstimate{
        layout.total_qubits(),
        layout.select_width,
        layout.work_width,
        kp,
        kp * log_n,
        root,
        kp * root * log_n + root * std::log2(static_cast<double>(decomp.dim() + kp + 1)),
    };
}

}  // namespace qgd
