// Copyright 2026 The qvlc Authors
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

#include "qvlc/classical.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

using namespace qvlc;

namespace {

double h2(double x) {
    double out = 0;
    for (double p : {x, 1 - x}) {
        if (p > 0) {
            out -= p * std::log(p);
        }
    }
    return out;
}

double d2(double x, double a) {
    double out = 0;
    if (x > 0) {
        out += x * std::log(x / a);
    }
    if (x < 1) {
        out += (1 - x) * std::log((1 - x) / (1 - a));
    }
    return out;
}

/// Brute-force min D((x, 1-x) || (a, 1-a)) over H >= rate on a fine 1-D grid.
double binary_exponent_oracle(double a, double rate, double step) {
    double best = std::numeric_limits<double>::infinity();
    for (double x = 0; x <= 1.0 + 1e-15; x += step) {
        if (h2(x) >= rate) {
            best = std::min(best, d2(x, a));
        }
    }
    return best;
}

}  // namespace

TEST(ProbVector, Validation) {
    EXPECT_THROW(ProbVector({0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(ProbVector({1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(ProbVector(std::vector<double>{}), std::invalid_argument);
    EXPECT_NO_THROW(ProbVector({0.25, 0.75}));
}

TEST(Entropy, ShannonAndRelative) {
    EXPECT_NEAR(shannon_entropy(ProbVector{0.9, 0.1}), h2(0.9), 1e-15);
    EXPECT_NEAR(shannon_entropy(ProbVector::uniform(3)), std::log(3.0), 1e-15);
    EXPECT_NEAR(relative_entropy(ProbVector{0.3, 0.7}, ProbVector{0.6, 0.4}), d2(0.3, 0.6), 1e-15);
    EXPECT_TRUE(std::isinf(relative_entropy(ProbVector{0.5, 0.5}, ProbVector{1.0, 0.0})));
    EXPECT_EQ(relative_entropy(ProbVector{1.0, 0.0}, ProbVector{1.0, 0.0}), 0.0);
}

TEST(Exponent, BinaryCaseMatchesOneDimensionalScan) {
    ProbVector a{0.9, 0.1};
    double oracle = binary_exponent_oracle(0.9, 0.5, 1e-6);
    EXPECT_NEAR(overflow_exponent_fast(a, 0.5).value, oracle, 1e-6);
    EXPECT_NEAR(overflow_exponent_grid(a, 0.5).value, oracle, 1e-6);
    EXPECT_NEAR(overflow_exponent(a, 0.5).value, oracle, 1e-6);
}

TEST(Exponent, ArgminSitsOnTheEntropyConstraint) {
    ProbVector a{0.7, 0.2, 0.1};
    ExponentResult r = overflow_exponent_fast(a, 1.0);
    EXPECT_NEAR(shannon_entropy(r.argmin), 1.0, 1e-9);
    EXPECT_NEAR(relative_entropy(r.argmin, a), r.value, 1e-12);
}

TEST(Exponent, ZeroBelowEntropyInfiniteBeyondSupport) {
    ProbVector a{0.6, 0.3, 0.1};
    EXPECT_EQ(overflow_exponent(a, shannon_entropy(a)).value, 0.0);
    EXPECT_EQ(overflow_exponent(a, 0.1).value, 0.0);
    ProbVector b{0.8, 0.2, 0.0};
    EXPECT_TRUE(std::isinf(overflow_exponent(b, 1.0).value));
    EXPECT_TRUE(std::isinf(overflow_exponent_grid(b, 1.0).value));
    EXPECT_THROW(overflow_exponent(a, 2.0), std::invalid_argument);
}

TEST(Exponent, FastPathAgreesWithOracleOnRandomInputs) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; trial++) {
        int d = 2 + trial % 2;
        std::vector<double> p(static_cast<std::size_t>(d));
        double s = 0;
        for (double &x : p) {
            x = u(rng) + 0.01;
            s += x;
        }
        for (double &x : p) {
            x /= s;
        }
        ProbVector a(p);
        double rate = shannon_entropy(a) + u(rng) * (std::log(d) - shannon_entropy(a));
        double fast = overflow_exponent_fast(a, rate).value;
        double grid = overflow_exponent_grid(a, rate).value;
        EXPECT_NEAR(fast, grid, 1e-4) << "trial " << trial;
    }
}

TEST(Exponent, NondecreasingInRate) {
    ProbVector a{0.9, 0.1};
    double prev = 0;
    for (double r = 0; r <= std::log(2.0); r += 0.05) {
        double v = overflow_exponent(a, r).value;
        EXPECT_GE(v, prev - 1e-12);
        prev = v;
    }
}

TEST(ConstantC, UniformQubitIsOneOverLn2) {
    // D(b||u) = ln 2 - H(b) = gap, so the ratio is 1/gap, minimal at gap = ln 2.
    ConstantCResult c = constant_c(ProbVector{0.5, 0.5});
    EXPECT_NEAR(c.value, 1.0 / std::numbers::ln2, 1e-6);
}

TEST(ConstantC, BelowEveryRatioOnACoarseGrid) {
    ProbVector a{0.8, 0.2};
    double c = constant_c(a).value;
    double ha = shannon_entropy(a);
    for (double x = 0.0; x <= 1.0; x += 0.01) {
        double gap = std::abs(h2(x) - ha);
        if (gap > 1e-3) {
            EXPECT_LE(c, d2(x, 0.8) / (gap * gap) + 1e-9);
        }
    }
}

TEST(Overhead, MatchesDirectArithmetic) {
    int n = 10;
    double delta = 0.3;
    int d = 2;
    double expected = delta + 8.0 * std::log(12.0) - std::log(3.0 * (std::log(2.0) / delta + 1.0));
    EXPECT_NEAR(f_overhead(n, delta, d), expected, 1e-12);
    EXPECT_THROW(f_overhead(2, 0.3, 2), std::invalid_argument);
}

TEST(Overhead, VanishesPerCopyUnderTheSchedule) {
    double prev = std::numeric_limits<double>::infinity();
    for (double n : {1e2, 1e4, 1e6}) {
        double delta = std::pow(n, -1.0 / 6.0);
        double ratio = f_overhead(static_cast<int>(n), delta, 2) / n;
        EXPECT_LT(ratio, prev);
        prev = ratio;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Bounds, ClosedForms) {
    EXPECT_NEAR(rank_bound(3, 2, 0.4), std::pow(5.0, 8.0) * std::exp(1.2), 1e-6);
    ProbVector a{0.9, 0.1};
    double e = overflow_exponent(a, 0.5).value;
    EXPECT_NEAR(trace_bound(4, 2, a, 0.5), std::pow(6.0, 8.0) * std::exp(-4 * e), 1e-6);
    EXPECT_NEAR(fixed_error_bound(4, 2, a, 0.5), 2 * trace_bound(4, 2, a, 0.5), 1e-9);
}

TEST(Bounds, VarlenErrorBoundClampsAndChecksFeasibility) {
    EXPECT_THROW(varlen_error_bound_with_c(8, 2, 1.0, 0.3, 0.2), std::invalid_argument);
    EXPECT_THROW(varlen_error_bound_with_c(8, 2, 1.0, 0.3, 0.0), std::invalid_argument);
    // At desk scale the polynomial factor swamps the exponential.
    EXPECT_EQ(varlen_error_bound_with_c(8, 2, 1.0, 0.5, 0.1), 1.0);
    // With a huge C the base tends to 1 and the bound to 1 - floor(n(delta - 2 delta'))/floor(n delta).
    double b = varlen_error_bound_with_c(20, 2, 1e9, 0.5, 0.1);
    EXPECT_NEAR(b, 1.0 - 6.0 / 10.0, 1e-12);
}

TEST(Bounds, VarlenOverflowBoundEdgeCases) {
    ProbVector a{0.9, 0.1};
    // R - f/n <= 0 returns the prefactor.
    EXPECT_EQ(varlen_overflow_bound(4, 2, a, 0.5, 0.0), std::pow(6.0, 8.0));
    // A threshold above ln d cannot be met.
    EXPECT_EQ(varlen_overflow_bound(100, 2, a, 0.5, 5.0), 0.0);
    double f = f_overhead(100, 0.5, 2);
    double threshold = 0.6 - f / 100;
    double e = overflow_exponent(a, threshold).value;
    EXPECT_NEAR(varlen_overflow_bound(100, 2, a, 0.5, 0.6), std::pow(102.0, 8.0) * std::exp(-100 * e),
                1e-6 * std::pow(102.0, 8.0) * std::exp(-100 * e));
}
