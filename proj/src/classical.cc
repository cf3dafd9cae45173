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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "qvlc/numeric.h"

namespace qvlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Grid points may sit this far below the entropy constraint; it lets the
// oracle see the single feasible point {uniform} when R = ln d.
constexpr double kFeasibilitySlack = 1e-10;

void check_rate(int d, double rate) {
    if (!(rate >= 0.0) || rate > std::log(static_cast<double>(d)) + 1e-12) {
        throw std::invalid_argument(fmt::format("rate {} outside [0, ln {}]", rate, d));
    }
}

// Visits every composition c_1 + ... + c_d = total in lexicographically
// ascending order.
template <typename F>
void for_each_composition(int d, int total, F &&visit) {
    std::vector<int> c(static_cast<std::size_t>(d), 0);
    auto recurse = [&](auto &&self, int pos, int remaining) -> void {
        if (pos == d - 1) {
            c[static_cast<std::size_t>(pos)] = remaining;
            visit(c);
            return;
        }
        for (int v = 0; v <= remaining; v++) {
            c[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    recurse(recurse, 0, total);
}

std::vector<double> tilted(std::span<const double> a, double beta) {
    std::vector<double> b(a.size(), 0.0);
    double max_log = -kInf;
    for (double x : a) {
        if (x > 0) {
            max_log = std::max(max_log, beta * std::log(x));
        }
    }
    double total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (a[i] > 0) {
            b[i] = std::exp(beta * std::log(a[i]) - max_log);
            total += b[i];
        }
    }
    for (double &x : b) {
        x /= total;
    }
    return b;
}

struct Candidate {
    double value = kInf;
    std::vector<double> point;
    double entropy = -kInf;
};

}  // namespace

ProbVector::ProbVector(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) {
        throw std::invalid_argument("probability vector must not be empty");
    }
    double total = 0;
    for (double x : p_) {
        if (!(x >= 0.0)) {
            throw std::invalid_argument(fmt::format("negative probability {}", x));
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(fmt::format("probabilities sum to {:.17g}", total));
    }
}

ProbVector ProbVector::uniform(int d) {
    return ProbVector(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

double shannon_entropy(std::span<const double> b) {
    double h = 0;
    for (double x : b) {
        if (x > 0) {
            h -= x * std::log(x);
        }
    }
    return std::max(h, 0.0);
}

double relative_entropy(std::span<const double> b, std::span<const double> a) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("relative entropy of vectors with different lengths");
    }
    double d = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (b[i] > 0) {
            if (a[i] <= 0) {
                return kInf;
            }
            d += b[i] * std::log(b[i] / a[i]);
        }
    }
    return std::max(d, 0.0);
}

std::string_view to_string(ExponentMethod m) {
    return m == ExponentMethod::kFastPath ? "fast-path" : "grid-oracle";
}

double default_grid_step(int d) {
    if (d <= 2) {
        return 1e-3;
    }
    return d == 3 ? 5e-3 : 2e-2;
}

ExponentResult overflow_exponent_fast(const ProbVector &a, double rate) {
    const int d = a.size();
    check_rate(d, rate);
    if (shannon_entropy(a) >= rate) {
        return {0.0, a, ExponentMethod::kFastPath};
    }
    int support = static_cast<int>(std::count_if(a.values().begin(), a.values().end(),
                                                 [](double x) { return x > 0; }));
    if (rate > std::log(static_cast<double>(support)) + 1e-15) {
        // Every b reaching the constraint puts mass outside supp(a).
        return {kInf, ProbVector::uniform(d), ExponentMethod::kFastPath};
    }
    // H(b_beta) falls monotonically from ln|supp a| at beta = 0 to H(a) at beta = 1.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; it++) {
        double mid = 0.5 * (lo + hi);
        if (shannon_entropy(tilted(a.values(), mid)) >= rate) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    std::vector<double> b = tilted(a.values(), lo);
    double value = relative_entropy(b, a.values());
    return {value, ProbVector(std::move(b)), ExponentMethod::kFastPath};
}

ExponentResult overflow_exponent_grid(const ProbVector &a, double rate, const GridOptions &opts) {
    const int d = a.size();
    check_rate(d, rate);
    if (shannon_entropy(a) >= rate) {
        return {0.0, a, ExponentMethod::kGridOracle};
    }
    const double step = opts.step > 0 ? opts.step : default_grid_step(d);
    const int total = std::max(1, static_cast<int>(std::lround(1.0 / step)));
    const double inv_d = 1.0 / d;

    // With H(a) < R the optimum lies on {H = R}, which is star-shaped around the
    // uniform point u. Every lattice point b is pushed along the ray u -> b onto
    // that boundary (or onto the simplex face if the ray leaves first), so each
    // candidate is feasible and the search runs over a smooth surface.
    auto project = [&](const std::vector<double> &b) -> std::vector<double> {
        std::vector<double> v(b.size());
        double t_max = kInf;
        double norm = 0;
        for (std::size_t i = 0; i < b.size(); i++) {
            v[i] = b[i] - inv_d;
            norm += v[i] * v[i];
            if (v[i] < 0) {
                t_max = std::min(t_max, inv_d / -v[i]);
            }
        }
        if (norm < 1e-30) {
            return {};
        }
        auto at = [&](double t) {
            std::vector<double> x(v.size());
            for (std::size_t i = 0; i < v.size(); i++) {
                x[i] = std::max(0.0, inv_d + t * v[i]);
            }
            return x;
        };
        if (shannon_entropy(at(t_max)) >= rate) {
            return at(t_max);
        }
        // H is concave along the ray with its maximum at u, so it decreases in t.
        double lo = 0.0;
        double hi = t_max;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * t_max; it++) {
            double mid = 0.5 * (lo + hi);
            (shannon_entropy(at(mid)) >= rate ? lo : hi) = mid;
        }
        return at(lo);
    };

    Candidate best;
    std::vector<double> best_raw;
    auto consider = [&](const std::vector<double> &raw) {
        std::vector<double> b = project(raw);
        if (b.empty()) {
            return false;
        }
        double h = shannon_entropy(b);
        if (h < rate - kFeasibilitySlack) {
            return false;
        }
        double v = relative_entropy(b, a.values());
        if (v < best.value) {
            best = {v, b, h};
            best_raw = raw;
            return true;
        }
        return false;
    };

    for_each_composition(d, total, [&](const std::vector<int> &c) {
        std::vector<double> b(c.size());
        for (std::size_t i = 0; i < c.size(); i++) {
            b[i] = static_cast<double>(c[i]) / total;
        }
        consider(b);
    });
    if (best.point.empty()) {
        return {kInf, ProbVector::uniform(d), ExponentMethod::kGridOracle};
    }

    // Local lattice search: (2*kReach+1)^(d-1) offsets in the first d-1
    // coordinates, the last coordinate absorbing the remainder. Recenter while
    // the optimum improves, otherwise shrink the step.
    constexpr int kReach = 4;
    double h = 1.0 / total;
    int recenters = 0;
    while (h > opts.refine_to) {
        const std::vector<double> center = best_raw;
        bool moved = false;
        std::vector<int> offset(static_cast<std::size_t>(d - 1), -kReach);
        while (true) {
            std::vector<double> b(center);
            double last = 1.0;
            bool inside = true;
            for (int j = 0; j < d - 1; j++) {
                b[static_cast<std::size_t>(j)] += offset[static_cast<std::size_t>(j)] * h;
                if (b[static_cast<std::size_t>(j)] < 0.0) {
                    inside = false;
                }
                last -= b[static_cast<std::size_t>(j)];
            }
            if (inside && last >= -1e-15) {
                b[static_cast<std::size_t>(d - 1)] = std::max(last, 0.0);
                moved = consider(b) || moved;
            }
            int j = 0;
            while (j < d - 1 && offset[static_cast<std::size_t>(j)] == kReach) {
                offset[static_cast<std::size_t>(j)] = -kReach;
                j++;
            }
            if (j == d - 1) {
                break;
            }
            offset[static_cast<std::size_t>(j)]++;
        }
        if (moved && recenters < 64) {
            recenters++;
        } else {
            h /= 4.0;
            recenters = 0;
        }
    }
    double sum = 0;
    for (double x : best.point) {
        sum += x;
    }
    for (double &x : best.point) {
        x /= sum;
    }
    return {best.value, ProbVector(std::move(best.point)), ExponentMethod::kGridOracle};
}

ExponentResult overflow_exponent(const ProbVector &a, double rate, const GridOptions &opts) {
    ExponentResult fast = overflow_exponent_fast(a, rate);
    if (fast.value == 0.0 || std::isinf(fast.value)) {
        return fast;
    }
    ExponentResult oracle = overflow_exponent_grid(a, rate, opts);
    if (std::abs(fast.value - oracle.value) > opts.agreement_tol) {
        return oracle;
    }
    return fast;
}

ConstantCResult constant_c(const ProbVector &a, double step) {
    const int d = a.size();
    if (step <= 0) {
        step = d == 2 ? 1e-4 : 5e-3;
    }
    const int total = std::max(1, static_cast<int>(std::lround(1.0 / step)));
    const double ha = shannon_entropy(a);
    ConstantCResult best{kInf, a, 1.0 / total};
    std::vector<double> b(static_cast<std::size_t>(d));
    for_each_composition(d, total, [&](const std::vector<int> &c) {
        for (std::size_t i = 0; i < c.size(); i++) {
            b[i] = static_cast<double>(c[i]) / total;
        }
        double gap = std::abs(ha - shannon_entropy(b));
        if (gap < 1e-6) {
            return;
        }
        double ratio = relative_entropy(b, a.values()) / (gap * gap);
        if (ratio < best.value) {
            best.value = ratio;
            best.argmin = ProbVector(b);
        }
    });
    return best;
}

double f_overhead(int n, double delta, int d) {
    double k_max = gauss_floor(n * delta);
    if (k_max < 1) {
        throw std::invalid_argument(fmt::format("floor(n delta) = 0 for n = {}, delta = {}", n, delta));
    }
    double ln_d = std::log(static_cast<double>(d));
    return delta + 4.0 * d * std::log(static_cast<double>(n + d)) - std::log(k_max * (ln_d / delta + 1.0));
}

double poly_factor(int n, int d) { return std::pow(static_cast<double>(n + d), 4.0 * d); }

double rank_bound(int n, int d, double rate) { return poly_factor(n, d) * std::exp(n * rate); }

double trace_bound(int n, int d, const ProbVector &a, double rate) {
    double e = overflow_exponent(a, rate).value;
    return std::isinf(e) ? 0.0 : poly_factor(n, d) * std::exp(-n * e);
}

double fixed_error_bound(int n, int d, const ProbVector &a, double rate) {
    return 2.0 * trace_bound(n, d, a, rate);
}

double varlen_error_bound_with_c(int n, int d, double c, double delta, double delta_prime) {
    if (!(delta_prime > 0) || !(2 * delta_prime < delta)) {
        throw std::invalid_argument(
            fmt::format("need 0 < 2 delta' < delta, got delta = {}, delta' = {}", delta, delta_prime));
    }
    double k_max = gauss_floor(n * delta);
    if (k_max < 1) {
        throw std::invalid_argument("floor(n delta) must be at least 1");
    }
    double good = gauss_floor(n * (delta - 2 * delta_prime));
    double base = std::max(0.0, 1.0 - poly_factor(n, d) * std::exp(-n * c * delta_prime * delta_prime));
    return 1.0 - (good / k_max) * std::pow(base, 1.5);
}

double varlen_error_bound(int n, int d, const ProbVector &a, double delta, double delta_prime) {
    return varlen_error_bound_with_c(n, d, constant_c(a).value, delta, delta_prime);
}

double varlen_overflow_bound(int n, int d, const ProbVector &a, double delta, double rate) {
    double threshold = rate - f_overhead(n, delta, d) / n;
    if (threshold <= 0) {
        return poly_factor(n, d);
    }
    if (threshold > std::log(static_cast<double>(d))) {
        return 0.0;
    }
    double e = overflow_exponent(a, threshold).value;
    return std::isinf(e) ? 0.0 : poly_factor(n, d) * std::exp(-n * e);
}

}  // namespace qvlc
