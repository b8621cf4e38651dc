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

#include "qgd/density.hpp"
#include "qgd/errors.hpp"
#include "qgd/experiment.hpp"
#include "qgd/lcu.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qgd;
using qgd::testing::diagonal_point;
using qgd::testing::optimum_point;
using qgd::testing::random_decomposition;
using qgd::testing::random_point;
using cd = std::complex<double>;

namespace {

// Oracle for the post-selected working register: (x - eta D x) / beta, padded.
CVector expected_working(const TensorDecomposition& decomp, const Point& x, double eta, int padded) {
    const auto c = coefficients(decomp, x);
    const double beta = 1.0 + eta * c.c.cwiseAbs().sum();
    const CVector dx = build_d(decomp, x).matrix * x.coords().cast<cd>();
    CVector out = CVector::Zero(padded);
    out.head(x.dim()) = (x.coords().cast<cd>() - eta * dx) / beta;
    return out;
}

bool is_orthogonal(const RMatrix& m, double tol) {
    return (m.transpose() * m - RMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST(RegisterLayout, Widths) {
    const auto q = RegisterLayout::for_problem(4, 2);
    EXPECT_EQ(q.select_width, 2);
    EXPECT_EQ(q.work_width, 1);
    EXPECT_EQ(q.total_qubits(), 4);
    EXPECT_EQ(q.ancilla_qubits(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(q.work_qubits(), (std::vector<int>{3}));
    const auto one = RegisterLayout::for_problem(1, 1);
    EXPECT_EQ(one.select_width, 1);
    EXPECT_EQ(one.work_width, 1);
    const auto odd = RegisterLayout::for_problem(5, 3);
    EXPECT_EQ(odd.select_width, 3);
    EXPECT_EQ(odd.work_width, 2);
    EXPECT_EQ(odd.padded_dim(), 4);
    EXPECT_EQ(odd.select_qubits(), (std::vector<int>{1, 2, 3}));
}

TEST(CompleteOrthonormal, FirstColumnKept) {
    std::mt19937_64 rng(51);
    for (int n : {1, 2, 3, 8}) {
        const RVector v = qgd::testing::random_vector(n, rng).normalized();
        const RMatrix m = complete_orthonormal(v);
        EXPECT_LE((m.col(0) - v).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_TRUE(is_orthogonal(m, 1e-12));
    }
    RVector e1 = RVector::Zero(4);
    e1[1] = 1.0;
    EXPECT_TRUE(is_orthogonal(complete_orthonormal(e1), 1e-15));
}

TEST(BuildPrepare, QuarticAtDiagonal) {
    const auto prep = build_prepare(coefficients(quartic_decomposition(), diagonal_point()), 1.0);
    EXPECT_NEAR(prep.beta, 2.5, 1e-15);
    EXPECT_EQ(prep.signs, (std::vector<int>{-1, 1, 1, -1}));
    EXPECT_NEAR(prep.v0(0, 0), 1.0 / std::sqrt(2.5), 1e-15);
    EXPECT_NEAR(prep.v0(1, 0), std::sqrt(1.5 / 2.5), 1e-15);
    EXPECT_NEAR(prep.v0(1, 1), -1.0 / std::sqrt(2.5), 1e-15);
    EXPECT_TRUE(is_orthogonal(prep.v0, 1e-15));
    EXPECT_TRUE(is_orthogonal(prep.v, 1e-12));
    const double amp = std::sqrt(0.5 / 1.5);
    EXPECT_NEAR(prep.v(0, 0), amp, 1e-15);
    EXPECT_NEAR(prep.v(2, 0), 0.0, 1e-15);
    EXPECT_NEAR(prep.v(3, 0), amp, 1e-15);
}

TEST(BuildPrepare, EtaScalesBeta) {
    const auto prep = build_prepare(coefficients(quartic_decomposition(), diagonal_point()), 0.5);
    EXPECT_NEAR(prep.beta, 1.75, 1e-15);
    // signs follow -eta*c, and eta > 0
    EXPECT_EQ(prep.signs, (std::vector<int>{-1, 1, 1, -1}));
}

TEST(BuildPrepare, AllZeroWeights) {
    const auto prep = build_prepare(RVector::Zero(3), 1.0, 2);
    EXPECT_DOUBLE_EQ(prep.beta, 1.0);
    EXPECT_EQ(prep.v0, RMatrix::Identity(2, 2));
    EXPECT_EQ(prep.v, RMatrix::Identity(4, 4));
}

TEST(BuildPrepare, Errors) {
    EXPECT_THROW(build_prepare(RVector::Ones(5), 1.0, 2), ContractViolation);
    EXPECT_THROW(build_prepare(RVector::Ones(2), 0.0, 1), ContractViolation);
}

TEST(PadUnitary, BlockDiagonal) {
    const CMatrix u = UnitaryFactor::pauli("X").matrix();
    const CMatrix p = pad_unitary(u, 4);
    EXPECT_EQ(p.block(0, 0, 2, 2), u);
    EXPECT_EQ(p.block(2, 2, 2, 2), CMatrix::Identity(2, 2));
    EXPECT_EQ(p.block(0, 2, 2, 2), CMatrix::Zero(2, 2));
}

TEST(LcuCircuit, FrozenStepFromDiagonal) {
    const auto out = run_iteration(quartic_decomposition(), diagonal_point());
    EXPECT_NEAR(out.success_prob, 0.68, 1e-12);
    EXPECT_NEAR(out.next_point[0], 0.514496, 1e-6);
    EXPECT_NEAR(out.next_point[1], 0.857493, 1e-6);
    EXPECT_EQ(out.raw_state.num_qubits(), 4);
    EXPECT_EQ(out.aa_reps_estimate, 1);
    EXPECT_NEAR(out.expected_bernoulli_reps, 1.0 / 0.68, 1e-12);
    EXPECT_EQ(out.label, Label::Continue);
}

TEST(LcuCircuit, PostSelectedStateMatchesClassicalStep) {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = (trial % 3 == 0) ? 3 : (trial % 3 == 1 ? 2 : 4);
        const int p = 1 + trial % 3;
        const int k = 1 + (trial / 3) % 3;
        const auto decomp = random_decomposition(n, p, k, rng, trial % 2 == 0, 0.5 + 0.1 * (trial % 5));
        const Point x = random_point(n, rng);
        const double eta = 0.25 + 0.25 * (trial % 4);
        IterationOptions opts;
        opts.eta = eta;
        const auto out = run_iteration(decomp, x, opts);
        const auto layout = RegisterLayout::for_problem(decomp.num_factors(), n);
        const CVector want = expected_working(decomp, x, eta, layout.padded_dim());
        EXPECT_NEAR(out.exact_success_prob, want.squaredNorm(), 1e-10) << trial;
        // the post-selected register is the normalized oracle, up to a global phase
        const cd ip = want.normalized().dot(out.working_state);
        EXPECT_NEAR(std::abs(ip), 1.0, 1e-10) << trial;
        const auto classical = classical_iterate(decomp, x, eta);
        EXPECT_LE(qgd::testing::distance_up_to_sign(out.next_point.coords(), classical.coords()), 1e-10) << trial;
        EXPECT_GE(out.next_point.coords().dot(x.coords()), 0.0);
    }
}

TEST(LcuCircuit, ZeroStepIsDegenerate) {
    const TensorDecomposition id({{UnitaryFactor::pauli("I")}}, 1.0);
    EXPECT_THROW(run_iteration(id, diagonal_point()), DegenerateStep);
}

TEST(LcuCircuit, ZeroDGivesSameState) {
    const Point x(RVector{{1.0, 0.0}});
    const auto out = run_iteration(quartic_decomposition(), x);
    // c = (0, -1/2, 1/2, 0): D cancels but beta = 2, so P = 1 / beta^2
    EXPECT_NEAR(out.success_prob, 0.25, 1e-12);
    EXPECT_LE((out.next_point.coords() - x.coords()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(out.label, Label::Converged);
}

TEST(LcuCircuit, SampledSuccessTracksExact) {
    IterationOptions opts;
    opts.mode = Mode::Sampled;
    opts.shots = 100000;
    opts.seed = 7;
    const auto out = run_iteration(quartic_decomposition(), diagonal_point(), opts);
    const double sigma = std::sqrt(0.68 * 0.32 / 100000.0);
    EXPECT_NEAR(out.success_prob, 0.68, 4 * sigma);
    EXPECT_NEAR(out.exact_success_prob, 0.68, 1e-12);
    opts.seed = 8;
    const auto again = run_iteration(quartic_decomposition(), diagonal_point(), opts);
    EXPECT_NE(again.success_prob, out.success_prob);
}

TEST(AmplitudeAmplification, Reps) {
    EXPECT_EQ(amplitude_amplification_reps(1.0), 1);
    EXPECT_EQ(amplitude_amplification_reps(0.68), 1);
    EXPECT_EQ(amplitude_amplification_reps(0.01), 8);
    EXPECT_EQ(amplitude_amplification_reps(0.25), 2);  // asin(0.5) = pi/6 -> 1.5
    EXPECT_THROW(amplitude_amplification_reps(0.0), ContractViolation);
    EXPECT_THROW(amplitude_amplification_reps(1.5), ContractViolation);
}

TEST(WorkingStateToPoint, PhaseAndSign) {
    CVector w(4);
    w << cd(0, -0.6), cd(0, 0.8), 0, 0;
    const Point prev(RVector{{-1.0, 0.0}});
    const Point got = working_state_to_point(w, 2, prev);
    EXPECT_NEAR(got[0], -0.6, 1e-15);
    EXPECT_NEAR(got[1], 0.8, 1e-15);
    CVector complex_state(2);
    complex_state << cd(0.6, 0), cd(0, 0.8);
    EXPECT_THROW(working_state_to_point(complex_state, 2, prev), ContractViolation);
}

TEST(Householder, MapsToE0) {
    std::mt19937_64 rng(53);
    for (int n : {2, 4, 5}) {
        const RVector x = random_point(n, rng).coords();
        const RMatrix h = householder_to_e0(x);
        EXPECT_TRUE(is_orthogonal(h, 1e-12));
        RVector e0 = RVector::Zero(n);
        e0[0] = 1.0;
        EXPECT_LE((h * x - e0).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_EQ(householder_to_e0(RVector::Unit(3, 0)), RMatrix::Identity(3, 3));
}

TEST(EstimateB, ExactMatchesRayleigh) {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const auto decomp = random_decomposition(3, 2, 3, rng, true);
        const Point x = random_point(3, rng);
        const auto est = estimate_b(decomp, x);
        const auto c = coefficients(decomp, x);
        EXPECT_LE((est.b - c.b).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((est.exact_hit_prob - c.b.cwiseAbs2()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EstimateB, SampledWithinFourSigma) {
    const auto decomp = quartic_decomposition();
    const Point x = Point::normalized(RVector{{0.86, 0.5}});
    const auto exact = coefficients(decomp, x);
    int within = 0;
    int total = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto est = estimate_b(decomp, x, Mode::Sampled, 20000, seed);
        for (int a = 0; a < 2; ++a) {
            for (int j = 0; j < 2; ++j) {
                const double prob = est.exact_hit_prob(a, j);
                const double n = est.branch_shots(a, j);
                const double sigma = std::sqrt(prob * (1 - prob) / n);
                ++total;
                within += std::abs(est.hit_frequency(a, j) - prob) <= 4 * sigma + 1e-15;
                if (prob > 0.05) {
                    EXPECT_EQ(std::signbit(est.b(a, j)), std::signbit(exact.b(a, j)));
                }
            }
        }
    }
    EXPECT_GE(within, static_cast<int>(0.99 * total));
}

TEST(Optimize, QuarticConvergesFromS2) {
    OptimizeOptions opts;
    opts.eta = 0.5;
    opts.reference = optimum_point();
    const auto records = optimize(quartic_decomposition(), Point::normalized(RVector{{0.86, 0.5}}), opts);
    ASSERT_FALSE(records.empty());
    EXPECT_EQ(records.front().iter, 1);
    EXPECT_EQ(records.back().label, Label::Converged);
    EXPECT_GE(*records.back().overlap, 0.999);
    for (std::size_t i = 1; i < records.size(); ++i) {
        EXPECT_LE(records[i].f_value, records[i - 1].f_value + 1e-12);
    }
}

TEST(Optimize, MatchesClassicalTrajectory) {
    std::mt19937_64 rng(55);
    const auto decomp = random_decomposition(4, 2, 2, rng, true, 0.3);
    const Point x0 = random_point(4, rng);
    OptimizeOptions opts;
    opts.max_iters = 10;
    opts.threshold = 1e-12;
    const auto records = optimize(decomp, x0, opts);
    Point x = x0;
    for (const auto& r : records) {
        RVector next = classical_iterate(decomp, x).coords();
        if (next.dot(x.coords()) < 0) next = -next;
        EXPECT_LE((r.point.coords() - next).cwiseAbs().maxCoeff(), 1e-9);
        x = Point::normalized(next);
    }
}

TEST(Optimize, NoiseKeepsTrajectoryAndReportsFidelity) {
    OptimizeOptions clean;
    clean.eta = 0.5;
    clean.max_iters = 4;
    OptimizeOptions noisy = clean;
    noisy.noise_eps = 0.2;
    const Point x0 = Point::normalized(RVector{{-0.38, 0.92}});
    const auto a = optimize(quartic_decomposition(), x0, clean);
    const auto b = optimize(quartic_decomposition(), x0, noisy);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LE((a[i].point.coords() - b[i].point.coords()).cwiseAbs().maxCoeff(), 1e-9);
        ASSERT_TRUE(b[i].fidelity.has_value());
        EXPECT_FALSE(a[i].fidelity.has_value());
        // dim 2 depolarizing: (1 - e/2) / sqrt((1-e)^2 + (1-e)e + e^2/2)
        const double e = 0.2;
        EXPECT_NEAR(*b[i].fidelity, (1 - e / 2) / std::sqrt((1 - e) * (1 - e) + (1 - e) * e + e * e / 2), 1e-12);
    }
}

TEST(Optimize, SeededSampledRunsRepeat) {
    OptimizeOptions opts;
    opts.eta = 0.5;
    opts.mode = Mode::Sampled;
    opts.seed = 99;
    const Point x0 = Point::normalized(RVector{{0.86, 0.5}});
    const auto a = optimize(quartic_decomposition(), x0, opts);
    const auto b = optimize(quartic_decomposition(), x0, opts);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].success_prob, b[i].success_prob);
}

TEST(Optimize, Validation) {
    const Point x0 = diagonal_point();
    OptimizeOptions opts;
    opts.max_iters = 0;
    EXPECT_THROW(optimize(quartic_decomposition(), x0, opts), ContractViolation);
    opts = {};
    opts.noise_eps = 1.5;
    EXPECT_THROW(optimize(quartic_decomposition(), x0, opts), ContractViolation);
    opts = {};
    opts.threshold = 0.0;
    EXPECT_THROW(optimize(quartic_decomposition(), x0, opts), ContractViolation);
}

TEST(Resources, Quartic) {
    const auto r = estimate_resources(quartic_decomposition());
    EXPECT_EQ(r.total_qubits, 4);
    EXPECT_EQ(r.controlled_unitaries, 4);
    EXPECT_DOUBLE_EQ(r.basic_gate_order, 4.0);
    EXPECT_DOUBLE_EQ(r.amplification_reps, 2.0);
    EXPECT_NEAR(r.steps_per_iteration, 8.0 + 2.0 * std::log2(7.0), 1e-12);
}

TEST(LcuCircuit, OptimumSuccessProbability) {
    const Point x = optimum_point();
    const auto out = run_iteration(quartic_decomposition(), x);
    const double lambda = -3.0 * std::sqrt(3.0) / 4.0;
    const double beta = 1.0 + std::sqrt(3.0) / 4.0 + 0.5 + 0.25 + std::sqrt(3.0) / 4.0;
    EXPECT_NEAR(out.success_prob, (1 - lambda) * (1 - lambda) / (beta * beta), 1e-12);
    EXPECT_LE((out.next_point.coords() - x.coords()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EstimateB, QuarticAtDiagonal) {
    const auto est = estimate_b(quartic_decomposition(), diagonal_point());
    RMatrix expected(2, 2);
    expected << -1, 1, 1, 0;
    EXPECT_LE((est.b - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Optimize, FullStepFromS2) {
    OptimizeOptions opts;
    opts.reference = optimum_point();
    const auto records = optimize(quartic_decomposition(), Point::normalized(RVector{{0.86, 0.5}}), opts);
    EXPECT_EQ(records.back().label, Label::Converged);
    EXPECT_GE(std::abs(*records.back().overlap), 0.999);
}

TEST(Optimize, S1MonotoneToMinimum) {
    OptimizeOptions opts;
    opts.eta = 0.5;
    const Point x0 = Point::normalized(RVector{{-0.38, 0.92}});
    const auto records = optimize(quartic_decomposition(), x0, opts);
    double previous = evaluate_objective(quartic_decomposition(), x0);
    for (const auto& r : records) {
        EXPECT_LE(r.f_value, previous + 1e-12);
        previous = r.f_value;
    }
    EXPECT_NEAR(records.back().f_value, -3.0 * std::sqrt(3.0) / 8.0, 1e-3);
}
