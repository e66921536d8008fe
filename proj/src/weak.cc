// Copyright 2026 The tsvf Authors
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

#include "tsvf/weak.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "tsvf/errors.h"

namespace tsvf {

namespace {

struct BranchAmplitude {
    double eigenvalue;
    Complex amplitude;
};

std::vector<BranchAmplitude> branch_amplitudes(const TwoStateVector &tsv, const Observable &a, double eps) {
    require_valid(a, "observable", eps);
    if (a.layout() != tsv.layout()) {
        throw DimensionError("observable layout does not match the two-state vector");
    }
    std::vector<BranchAmplitude> out;
    for (const Branch &b : a.branches()) {
        out.push_back({b.eigenvalue, matrix_element(tsv.post(), b.projector, tsv.pre())});
    }
    return out;
}

/// ∫ G(q - x) G(q - y) dq.
double pointer_overlap(double x, double y, double delta) {
    double d = x - y;
    return std::exp(-d * d / (8 * delta * delta));
}

double uniform01(std::mt19937_64 &engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void require_pointer_params(double g, double delta, bool allow_zero_g) {
    bool g_ok = std::isfinite(g) && (allow_zero_g ? g >= 0 : g > 0);
    if (!g_ok || !std::isfinite(delta) || delta <= 0) {
        std::ostringstream msg;
        msg << "pointer parameters must be finite with g " << (allow_zero_g ? ">= 0" : "> 0")
            << " and delta > 0 (got g = " << g << ", delta = " << delta << ")";
        throw ValidationError(msg.str());
    }
}

}  // namespace

Complex weak_value(const TwoStateVector &tsv, const Operator &a, double eps) {
    if (a.layout() != tsv.layout()) {
        throw DimensionError("operator layout does not match the two-state vector");
    }
    if (!a.is_hermitian(eps)) {
        throw ValidationError("weak value requires a Hermitian operator");
    }
    Complex denominator = tsv.transition_amplitude();
    if (std::abs(denominator) <= eps) {
        throw UndefinedWeakValueError("weak value undefined: pre- and post-selected states are orthogonal");
    }
    return matrix_element(tsv.post(), a, tsv.pre()) / denominator;
}

Complex weak_value(const TwoStateVector &tsv, const Observable &a, double eps) {
    require_valid(a, "observable", eps);
    return weak_value(tsv, a.as_operator(), eps);
}

void WeakMeasurementConfig::validate() const {
    require_pointer_params(g, delta, false);
    if (post_samples == 0) {
        throw ValidationError("post_samples must be positive");
    }
    if (grid_points < 16) {
        throw ValidationError("grid_points must be at least 16");
    }
    if (shards == 0 || shards > post_samples) {
        throw ValidationError("shards must be between 1 and post_samples");
    }
}

double PointerDensity::integral() const {
    double total = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); i++) {
        total += 0.5 * (grid[i + 1] - grid[i]) * (density[i] + density[i + 1]);
    }
    return total;
}

double PointerDensity::mean() const {
    double total = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); i++) {
        total += 0.5 * (grid[i + 1] - grid[i]) * (grid[i] * density[i] + grid[i + 1] * density[i + 1]);
    }
    return total / integral();
}

double PointerDensity::variance() const {
    double m = mean();
    double total = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); i++) {
        double a = grid[i] - m;
        double b = grid[i + 1] - m;
        total += 0.5 * (grid[i + 1] - grid[i]) * (a * a * density[i] + b * b * density[i + 1]);
    }
    return total / integral();
}

PointerMoments pointer_moments(const TwoStateVector &tsv, const Observable &a, double g, double delta, double eps) {
    require_pointer_params(g, delta, true);
    std::vector<BranchAmplitude> amps = branch_amplitudes(tsv, a, eps);
    double norm = 0;
    double first = 0;
    double second = 0;
    for (const BranchAmplitude &x : amps) {
        for (const BranchAmplitude &y : amps) {
            // Product of the two shifted Gaussians is a Gaussian of variance Δ² centred at the midpoint.
            double weight = (std::conj(x.amplitude) * y.amplitude).real() *
                            pointer_overlap(g * x.eigenvalue, g * y.eigenvalue, delta);
            double mid = 0.5 * g * (x.eigenvalue + y.eigenvalue);
            norm += weight;
            first += weight * mid;
            second += weight * (mid * mid + delta * delta);
        }
    }
    if (norm <= eps) {
        throw UnreachablePostSelectionError("post-selection unreachable: pointer-integrated probability is zero");
    }
    PointerMoments m;
    m.post_selection_probability = norm;
    m.mean = first / norm;
    m.variance = std::max(0.0, second / norm - m.mean * m.mean);
    return m;
}

PointerDensity pointer_density(const TwoStateVector &tsv, const Observable &a, const WeakMeasurementConfig &config,
                               double eps) {
    config.validate();
    PointerMoments moments = pointer_moments(tsv, a, config.g, config.delta, eps);
    std::vector<BranchAmplitude> amps = branch_amplitudes(tsv, a, eps);

    double a_min = amps.front().eigenvalue;
    double a_max = amps.front().eigenvalue;
    for (const BranchAmplitude &x : amps) {
        a_min = std::min(a_min, x.eigenvalue);
        a_max = std::max(a_max, x.eigenvalue);
    }
    double lo = config.g * a_min - 8 * config.delta;
    double hi = config.g * a_max + 8 * config.delta;
    std::size_t n = config.grid_points;
    double h = (hi - lo) / static_cast<double>(n - 1);
    double gauss_norm = std::pow(2 * std::numbers::pi * config.delta * config.delta, -0.25);
    double inv4var = 1 / (4 * config.delta * config.delta);

    PointerDensity out;
    out.grid.resize(n);
    out.density.resize(n);
    for (std::size_t i = 0; i < n; i++) {
        double q = lo + h * static_cast<double>(i);
        Complex psi = 0;
        for (const BranchAmplitude &x : amps) {
            double s = q - config.g * x.eigenvalue;
            psi += x.amplitude * (gauss_norm * std::exp(-s * s * inv4var));
        }
        out.grid[i] = q;
        out.density[i] = std::norm(psi);
    }
    double total = out.integral();
    if (!(total > 0)) {
        throw UnreachablePostSelectionError("post-selected pointer density vanishes on the grid");
    }
    for (double &d : out.density) {
        d /= total;
    }
    out.normalization = moments.post_selection_probability;
    return out;
}

double disturbance_fidelity(const Ket &pre, const Observable &a, double g, double delta, double eps) {
    require_pointer_params(g, delta, true);
    pre.require_normalized("pre-selected state", eps);
    require_valid(a, "observable", eps);
    if (a.layout() != pre.layout()) {
        throw DimensionError("observable layout does not match the state");
    }
    std::vector<double> w;
    for (const Branch &b : a.branches()) {
        w.push_back(apply(b.projector, pre).norm_squared());
    }
    double f = 0;
    const auto &branches = a.branches();
    for (std::size_t i = 0; i < branches.size(); i++) {
        for (std::size_t j = 0; j < branches.size(); j++) {
            f += w[i] * w[j] * pointer_overlap(g * branches[i].eigenvalue, g * branches[j].eigenvalue, delta);
        }
    }
    return f;
}

std::uint64_t shard_seed(std::uint64_t seed, std::size_t index, std::size_t shards) {
    if (shards == 1) {
        return seed;
    }
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

WeakRunReport sample_pointer(const TwoStateVector &tsv, const Observable &a, const WeakMeasurementConfig &config,
                             double eps) {
    PointerDensity density = pointer_density(tsv, a, config, eps);
    PointerMoments moments = pointer_moments(tsv, a, config.g, config.delta, eps);

    std::size_t n = density.grid.size();
    std::vector<double> cdf(n, 0.0);
    for (std::size_t i = 1; i < n; i++) {
        cdf[i] = cdf[i - 1] + 0.5 * (density.grid[i] - density.grid[i - 1]) * (density.density[i - 1] + density.density[i]);
    }
    double cdf_total = cdf.back();

    auto draw = [&](std::mt19937_64 &engine) {
        double u = uniform01(engine) * cdf_total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t i = it == cdf.begin() ? 0 : static_cast<std::size_t>(it - cdf.begin()) - 1;
        i = std::min(i, n - 2);
        double span = cdf[i + 1] - cdf[i];
        double t = span > 0 ? (u - cdf[i]) / span : 0.5;
        return density.grid[i] + t * (density.grid[i + 1] - density.grid[i]);
    };

    struct ShardResult {
        double sum = 0;
        double sum_sq = 0;
    };
    std::size_t k = config.shards;
    WeakRunReport report;
    report.config = config;
    std::vector<ShardResult> results(k);
    for (std::size_t s = 0; s < k; s++) {
        report.shard_seeds.push_back(shard_seed(config.seed, s, k));
        report.shard_sizes.push_back(config.post_samples / k + (s < config.post_samples % k ? 1 : 0));
    }
    auto run_shard = [&](std::size_t s) {
        std::mt19937_64 engine(report.shard_seeds[s]);
        ShardResult r;
        for (std::size_t i = 0; i < report.shard_sizes[s]; i++) {
            double q = draw(engine);
            r.sum += q;
            r.sum_sq += q * q;
        }
        results[s] = r;
    };
    if (k == 1) {
        run_shard(0);
    } else {
        std::vector<std::jthread> workers;
        for (std::size_t s = 0; s < k; s++) {
            workers.emplace_back(run_shard, s);
        }
    }

    double sum = 0;
    double sum_sq = 0;
    for (const ShardResult &r : results) {
        sum += r.sum;
        sum_sq += r.sum_sq;
    }
    auto count = static_cast<double>(config.post_samples);
    double mean = sum / count;
    double sample_var = config.post_samples > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1)) : 0.0;

    report.estimate = mean / config.g;
    report.exact_mean_over_g = moments.mean / config.g;
    report.standard_error = std::sqrt(moments.variance) / (config.g * std::sqrt(count));
    report.sample_std_over_g = std::sqrt(sample_var) / config.g;
    report.post_selection_rate = moments.post_selection_probability;
    report.disturbance_fidelity = disturbance_fidelity(tsv.pre(), a, config.g, config.delta, eps);
    if (std::abs(tsv.transition_amplitude()) > eps) {
        report.target_weak_value = weak_value(tsv, a, eps);
    }
    return report;
}

}  // namespace tsvf
