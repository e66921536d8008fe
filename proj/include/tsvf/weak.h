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

/**
 * @file weak.h
 * Weak measurements on pre- and post-selected ensembles.
 *
 * Pointer model: impulsive von Neumann coupling that shifts a one-dimensional pointer by
 * g*a on branch a. The pointer starts in G(q) = (2πΔ²)^{-1/4} exp(-q²/(4Δ²)), so Δ is the
 * standard deviation of its position distribution. After post-selection on ⟨φ| the pointer
 * wavefunction is Σ_a ⟨φ|P_a|ψ⟩ G(q - g a). Only the position (real-part) readout is modelled.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsvf/two_state.h"

namespace tsvf {

/// A_w = ⟨φ|A|ψ⟩ / ⟨φ|ψ⟩. A must be Hermitian; throws UndefinedWeakValueError when
/// |⟨φ|ψ⟩| <= eps.
Complex weak_value(const TwoStateVector &tsv, const Operator &a, double eps = default_epsilon());
Complex weak_value(const TwoStateVector &tsv, const Observable &a, double eps = default_epsilon());

struct WeakMeasurementConfig {
    double g = 0.05;
    double delta = 1;
    std::size_t post_samples = 1;
    std::uint64_t seed = 0;
    std::size_t grid_points = 16384;
    std::size_t shards = 1;

    /// Throws ValidationError on non-finite or non-positive parameters.
    void validate() const;
};

struct PointerDensity {
    std::vector<double> grid;
    /// Normalized so its trapezoidal integral over the grid is 1.
    std::vector<double> density;
    /// Post-selection probability Σ_ab ⟨φ|P_a|ψ⟩* ⟨φ|P_b|ψ⟩ κ_ab (pointer integrated out).
    double normalization = 0;

    double integral() const;
    double mean() const;
    double variance() const;
};

/// Post-selected pointer density on a uniform grid over [g a_min - 8Δ, g a_max + 8Δ].
/// Throws UnreachablePostSelectionError when the post-selection probability is <= eps.
PointerDensity pointer_density(const TwoStateVector &tsv, const Observable &a, const WeakMeasurementConfig &config,
                               double eps = default_epsilon());

/// Closed-form moments of the post-selected pointer position.
struct PointerMoments {
    double post_selection_probability = 0;
    double mean = 0;
    double variance = 0;
};

PointerMoments pointer_moments(const TwoStateVector &tsv, const Observable &a, double g, double delta,
                               double eps = default_epsilon());

struct WeakRunReport {
    WeakMeasurementConfig config;
    /// Sample mean of the pointer readings divided by g.
    double estimate = 0;
    double exact_mean_over_g = 0;
    /// Absent when pre and post are orthogonal.
    std::optional<Complex> target_weak_value;
    /// Exact pointer standard deviation / (g sqrt(N)).
    double standard_error = 0;
    /// Sample standard deviation of the readings divided by g (0 for a single reading).
    double sample_std_over_g = 0;
    double post_selection_rate = 0;
    double disturbance_fidelity = 0;
    std::vector<std::uint64_t> shard_seeds;
    std::vector<std::size_t> shard_sizes;
};

/// Draws config.post_samples post-selected pointer readings by inverse-CDF sampling of the
/// density grid. Bit-reproducible for a fixed (seed, grid_points, post_samples, shards).
WeakRunReport sample_pointer(const TwoStateVector &tsv, const Observable &a, const WeakMeasurementConfig &config,
                             double eps = default_epsilon());

/// ⟨ψ|ρ'|ψ⟩ after coupling to the pointer and tracing it out:
/// Σ_ab w_a w_b exp(-g²(a-b)²/(8Δ²)) with w_a = ⟨ψ|P_a|ψ⟩. g = 0 is allowed.
double disturbance_fidelity(const Ket &pre, const Observable &a, double g, double delta,
                            double eps = default_epsilon());

/// Seed of shard `index` for a run with `shards` shards (the seed itself when shards == 1).
std::uint64_t shard_seed(std::uint64_t seed, std::size_t index, std::size_t shards);

}  // namespace tsvf
