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

#include "qgd/errors.hpp"
#include "qgd/mds.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qgd;

namespace {

Dissimilarities unit_square() {
    const double r = std::sqrt(2.0);
    RMatrix d(4, 4);
    d << 0, 1, r, 1, 1, 0, 1, r, r, 1, 0, 1, 1, r, 1, 0;
    return Dissimilarities::from_matrix(d);
}

Configuration perturbed_square() {
    Configuration x(4, 2);
    x << 0.1, -0.05, 0.95, 0.1, 1.05, 0.9, -0.1, 1.1;
    return x;
}

struct Instance {
    Dissimilarities delta;
    Weights w;
    Configuration x;
};

// Random instance; with coincident = true rows 0 and 1 of X are equal.
Instance random_instance(int n, int dims, std::mt19937_64& rng, bool coincident) {
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    RMatrix delta = RMatrix::Zero(n, n);
    RMatrix w = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            delta(i, j) = delta(j, i) = unit(rng);
            w(i, j) = w(j, i) = unit(rng);
        }
    }
    Configuration x(n, dims);
    for (int i = 0; i < n; ++i) x.row(i) = qgd::testing::random_vector(dims, rng).transpose();
    if (coincident) x.row(1) = x.row(0);
    return {Dissimilarities::from_matrix(delta), Weights::from_matrix(w), x};
}

// Independent loop over unordered pairs.
double stress_by_pairs(const RMatrix& delta, const RMatrix& w, const Configuration& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
            const double d = (x.row(i) - x.row(j)).norm();
            s += w(i, j) * (d - delta(i, j)) * (d - delta(i, j));
        }
    }
    return s;
}

}  // namespace

TEST(Mds, InputValidation) {
    RMatrix asym = RMatrix::Zero(2, 2);
    asym(0, 1) = 1.0;
    EXPECT_THROW(Dissimilarities::from_matrix(asym), ContractViolation);
    RMatrix neg = RMatrix::Zero(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    EXPECT_THROW(Dissimilarities::from_matrix(neg), ContractViolation);
    RMatrix diag = RMatrix::Identity(2, 2);
    EXPECT_THROW(Weights::from_matrix(diag), ContractViolation);
    RMatrix nan = RMatrix::Zero(2, 2);
    nan(0, 1) = nan(1, 0) = std::nan("");
    EXPECT_THROW(Dissimilarities::from_matrix(nan), ContractViolation);
    EXPECT_THROW(stress(unit_square(), Weights::uniform(3), perturbed_square()), DimensionError);
}

TEST(Mds, PairOperator) {
    const RMatrix a = pair_operator(3, 0, 2);
    EXPECT_EQ(a(0, 0), 1.0);
    EXPECT_EQ(a(2, 2), 1.0);
    EXPECT_EQ(a(0, 2), -1.0);
    EXPECT_EQ(a(1, 1), 0.0);
    const RVector v = RVector::Ones(3);
    EXPECT_EQ((a * v).norm(), 0.0);
}

TEST(Mds, TraceIdentities) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const bool coincident = trial % 4 == 0;
        const auto inst = random_instance(3 + trial % 6, 1 + trial % 3, rng, coincident);
        const auto s = stress(inst.delta, inst.w, inst.x);
        EXPECT_NEAR(s.value, stress_by_pairs(inst.delta.matrix(), inst.w.matrix(), inst.x), 1e-10);
        EXPECT_NEAR(s.value, s.constant - 2.0 * s.g + s.h2, 1e-10);
        EXPECT_NEAR(s.g, (inst.x.transpose() * b_matrix(inst.delta, inst.w, inst.x) * inst.x).trace(), 1e-10);
        EXPECT_NEAR(s.h2, (inst.x.transpose() * c_matrix(inst.w) * inst.x).trace(), 1e-10);
        EXPECT_NEAR(f_prime(inst.delta, inst.w, inst.x), -2.0 * s.g + s.h2, 1e-10);
    }
}

TEST(Mds, CoincidentPointsContributeNothingToB) {
    std::mt19937_64 rng(62);
    const auto inst = random_instance(4, 2, rng, true);
    const RMatrix b = b_matrix(inst.delta, inst.w, inst.x);
    EXPECT_TRUE(b.allFinite());
    // rows 0 and 1 coincide, so the (0,1) pair has k = 0 and B(0,1) stays 0
    EXPECT_EQ(b(0, 1), 0.0);
}

TEST(Mds, GradientIsTwiceGX) {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(5, 2, rng, false);
        const RMatrix grad = 2.0 * gradient_operator(inst.delta, inst.w, inst.x) * inst.x;
        const double h = 1e-6;
        for (Eigen::Index i = 0; i < inst.x.rows(); ++i) {
            for (Eigen::Index k = 0; k < inst.x.cols(); ++k) {
                Configuration up = inst.x;
                Configuration down = inst.x;
                up(i, k) += h;
                down(i, k) -= h;
                const double fd =
                    (stress(inst.delta, inst.w, up).value - stress(inst.delta, inst.w, down).value) / (2 * h);
                EXPECT_NEAR(fd, grad(i, k), 1e-6 * std::max(1.0, std::abs(grad(i, k))));
            }
        }
    }
}

TEST(Mds, DMatrixForm) {
    std::mt19937_64 rng(64);
    const auto inst = random_instance(4, 2, rng, false);
    const RMatrix expected = c_matrix(inst.w) - 2.0 * b_matrix(inst.delta, inst.w, inst.x);
    EXPECT_LE((d_matrix(inst.delta, inst.w, inst.x) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Mds, UnitSquareRecovery) {
    MdsOptions opts;
    opts.eta = 0.05;
    opts.max_iters = 200;
    const auto steps = mds_optimize(unit_square(), Weights::uniform(4), perturbed_square(), opts);
    EXPECT_EQ(steps.front().iter, 0);
    EXPECT_LE(steps.back().iter, 200);
    EXPECT_LE(steps.back().stress, 1e-3);
    const RMatrix d = distances(steps.back().config);
    EXPECT_LE((d - unit_square().matrix()).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(Mds, StressNeverIncreasesAtSmallEta) {
    std::mt19937_64 rng(65);
    const auto inst = random_instance(6, 2, rng, false);
    MdsOptions opts;
    opts.eta = 0.01;
    opts.max_iters = 100;
    for (const auto& step : mds_optimize(inst.delta, inst.w, inst.x, opts)) EXPECT_FALSE(step.increased);
}

TEST(Mds, QuantumColumnStepMatchesClassical) {
    const auto steps = mds_optimize(unit_square(), Weights::uniform(4), perturbed_square(), {0.05, 3, 1e-12});
    for (int col = 0; col < 2; ++col) {
        const auto out = mds_quantum_column_step(unit_square(), Weights::uniform(4), steps.back().config, col, 0.05);
        EXPECT_GT(out.num_terms, 0);
        EXPECT_GT(out.success_prob, 0.0);
        EXPECT_LE((out.quantum.coords() - out.classical.coords()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Mds, QuantumColumnStepNeedsPowerOfTwo) {
    std::mt19937_64 rng(66);
    const auto inst = random_instance(3, 2, rng, false);
    EXPECT_THROW(mds_quantum_column_step(inst.delta, inst.w, inst.x, 0, 0.05), ContractViolation);
}

TEST(Mds, DistancesBruteForce) {
    std::mt19937_64 rng(67);
    Configuration x(4, 2);
    for (int i = 0; i < 4; ++i) x.row(i) = qgd::testing::random_vector(2, rng).transpose();
    const RMatrix d = distances(x);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double dx = x(i, 0) - x(j, 0);
            const double dy = x(i, 1) - x(j, 1);
            EXPECT_NEAR(d(i, j), std::sqrt(dx * dx + dy * dy), 1e-12);
        }
    }
}

TEST(Mds, UnitSquareStressDecreasesSteadily) {
    const auto steps = mds_optimize(unit_square(), Weights::uniform(4), perturbed_square(), {0.05, 10, 0.0});
    ASSERT_EQ(steps.size(), 11u);
    for (std::size_t i = 1; i < steps.size(); ++i) EXPECT_LT(steps[i].stress, steps[i - 1].stress);
}

TEST(Mds, EquilateralTriangle) {
    RMatrix delta = RMatrix::Ones(3, 3) - RMatrix::Identity(3, 3);
    std::mt19937_64 rng(68);
    Configuration x0(3, 2);
    for (int i = 0; i < 3; ++i) x0.row(i) = qgd::testing::random_vector(2, rng).transpose();
    const auto steps = mds_optimize(Dissimilarities::from_matrix(delta), Weights::uniform(3), x0);
    EXPECT_LE(steps.back().stress, 1e-3);
}
