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

#include "gtest/gtest.h"

#include "generators.h"
#include "oracles.h"
#include "tsvf/errors.h"

using namespace tsvf;

namespace {

const SubsystemLayout kQubit({2});
const SubsystemLayout kTwoQubits({2, 2});

Ket from(const oracle::Vec4 &v) {
    return Ket(kTwoQubits, {v.begin(), v.end()});
}

TwoStateVector hardy() {
    return TwoStateVector(from(oracle::hardy_pre()), from(oracle::hardy_post()));
}

Observable z1() {
    return pauli_observable('z', 0, kTwoQubits);
}

Observable zz() {
    std::vector<std::pair<char, std::size_t>> f{{'z', 0}, {'z', 1}};
    return pauli_product_observable(f, kTwoQubits);
}

// Branch amplitudes <post|P_a|pre> of z1z2 on the Hardy pair, from the oracle.
std::vector<Complex> zz_amplitudes() {
    auto pre = oracle::hardy_pre();
    auto post = oracle::hardy_post();
    return {oracle::diagonal_amplitude(post, pre, [](int i) { return oracle::z_of(i, 0) * oracle::z_of(i, 1) > 0; }),
            oracle::diagonal_amplitude(post, pre, [](int i) { return oracle::z_of(i, 0) * oracle::z_of(i, 1) < 0; })};
}

double closed_form_zz_mean_over_g(double g) {
    return -3 / (5 - 4 * std::exp(-g * g / 2));
}

}  // namespace

TEST(weak_value, hardy_values) {
    auto pre = oracle::hardy_pre();
    auto post = oracle::hardy_post();
    Complex o1 = oracle::weak_value(pre, post, {1, 1, -1, -1});
    Complex o12 = oracle::weak_value(pre, post, {1, -1, -1, 1});
    ASSERT_NEAR(o1.real(), -1, 1e-15);
    ASSERT_NEAR(o12.real(), -3, 1e-14);

    Complex w1 = weak_value(hardy(), z1());
    Complex w2 = weak_value(hardy(), pauli_observable('z', 1, kTwoQubits));
    Complex w12 = weak_value(hardy(), zz());
    ASSERT_NEAR(w1.real(), -1, 1e-12);
    ASSERT_NEAR(w1.imag(), 0, 1e-12);
    ASSERT_NEAR(w2.real(), -1, 1e-12);
    ASSERT_NEAR(w12.real(), -3, 1e-12);
    ASSERT_NEAR(w12.imag(), 0, 1e-12);
    // The weak values of the factors multiply to +1, not to the weak value of the product.
    ASSERT_NEAR((w1 * w2).real(), 1, 1e-12);
    ASSERT_NEAR(weak_value(hardy(), Operator::identity(kTwoQubits)).real(), 1, 1e-12);
}

TEST(weak_value, errors) {
    TwoStateVector orth(from(oracle::hardy_pre()), Ket::basis(kTwoQubits, 3));
    ASSERT_THROW(weak_value(orth, z1()), UndefinedWeakValueError);
    Operator upper(kTwoQubits, std::vector<Complex>(16, Complex(0, 1)));
    ASSERT_THROW(weak_value(hardy(), upper), ValidationError);
}

TEST(pointer_moments, matches_quadrature_oracle) {
    std::vector<Complex> amps = zz_amplitudes();
    for (double g : {1e-3, 0.05, 0.5, 1.0, 3.0}) {
        double quad = oracle::pointer_mean_over_g(amps, {1, -1}, g, 1);
        PointerMoments m = pointer_moments(hardy(), zz(), g, 1);
        ASSERT_NEAR(m.mean / g, quad, 1e-8 + 1e-6 * std::abs(quad)) << "g=" << g;
        ASSERT_NEAR(m.mean / g, closed_form_zz_mean_over_g(g), 1e-12) << "g=" << g;
    }
}

TEST(pointer_moments, weak_and_strong_limits) {
    double weak = pointer_moments(hardy(), zz(), 1e-3, 1).mean / 1e-3;
    ASSERT_NEAR(weak, -2.999994000012, 1e-9);
    ASSERT_NEAR(weak, -3, 1e-2);
    // Well-separated peaks are weighted by the ABL probabilities of the product observable.
    double strong = pointer_moments(hardy(), zz(), 100, 1).mean / 100;
    ASSERT_NEAR(strong, -0.6, 1e-12);
    double abl_mean = 0.2 * 1 + 0.8 * -1;
    ASSERT_NEAR(strong, abl_mean, 1e-12);
}

TEST(pointer_moments, weak_limit_error_decays_quadratically) {
    double g = 0.1;
    double previous = std::abs(pointer_moments(hardy(), zz(), g, 1).mean / g + 3);
    for (int k = 0; k < 3; k++) {
        g /= 2;
        double err = std::abs(pointer_moments(hardy(), zz(), g, 1).mean / g + 3);
        double ratio = previous / err;
        ASSERT_GE(ratio, 3.5);
        ASSERT_LE(ratio, 4.5);
        previous = err;
    }
}

TEST(pointer_density, normalized_and_consistent) {
    WeakMeasurementConfig c;
    c.g = 0.5;
    PointerDensity d = pointer_density(hardy(), zz(), c);
    ASSERT_EQ(d.grid.size(), 16384u);
    ASSERT_NEAR(d.grid.front(), -0.5 - 8, 1e-12);
    ASSERT_NEAR(d.grid.back(), 0.5 + 8, 1e-12);
    ASSERT_NEAR(d.integral(), 1, 1e-9);
    PointerMoments m = pointer_moments(hardy(), zz(), 0.5, 1);
    ASSERT_NEAR(d.mean(), m.mean, 1e-7);
    ASSERT_NEAR(d.variance(), m.variance, 1e-6);
    // Post-selection probability: |<post|pre>|^2 at g -> 0.
    ASSERT_NEAR(pointer_moments(hardy(), zz(), 0, 1).post_selection_probability, 1.0 / 12, 1e-12);
    for (double x : d.density) {
        ASSERT_GE(x, 0);
    }
}

TEST(pointer_density, single_branch_is_shifted_gaussian) {
    Ket up = Ket::basis(kQubit, 0);
    WeakMeasurementConfig c;
    c.g = 0.7;
    c.delta = 0.9;
    PointerDensity d = pointer_density(TwoStateVector(up, up), pauli_observable('z', 0, kQubit), c);
    ASSERT_NEAR(d.mean(), 0.7, 1e-9);
    ASSERT_NEAR(d.variance(), 0.81, 1e-7);
    for (std::size_t i = 0; i < d.grid.size(); i += 997) {
        double s = d.grid[i] - 0.7;
        double expected = std::exp(-s * s / (2 * 0.81)) / std::sqrt(2 * M_PI * 0.81);
        ASSERT_NEAR(d.density[i], expected, 1e-9);
    }
}

TEST(pointer_density, unreachable_post_selection) {
    TwoStateVector orth(Ket::basis(kQubit, 0), Ket::basis(kQubit, 1));
    WeakMeasurementConfig c;
    ASSERT_THROW(pointer_density(orth, pauli_observable('z', 0, kQubit), c), UnreachablePostSelectionError);
}

TEST(weak_config, validation) {
    WeakMeasurementConfig c;
    ASSERT_NO_THROW(c.validate());
    c.g = 0;
    ASSERT_THROW(c.validate(), ValidationError);
    c = {};
    c.delta = -1;
    ASSERT_THROW(c.validate(), ValidationError);
    c = {};
    c.post_samples = 0;
    ASSERT_THROW(c.validate(), ValidationError);
    c = {};
    c.grid_points = 8;
    ASSERT_THROW(c.validate(), ValidationError);
    c = {};
    c.shards = 2;
    ASSERT_THROW(c.validate(), ValidationError);
}

TEST(sample_pointer, hardy_monte_carlo) {
    WeakMeasurementConfig c;
    c.g = 0.05;
    c.delta = 1;
    c.post_samples = 100000;
    c.seed = 42;
    WeakRunReport r = sample_pointer(hardy(), zz(), c);
    ASSERT_NEAR(r.exact_mean_over_g, closed_form_zz_mean_over_g(0.05), 1e-12);
    ASSERT_NEAR(r.target_weak_value->real(), -3, 1e-12);
    ASSERT_LE(std::abs(r.estimate + 3), 0.32);
    ASSERT_NEAR(r.standard_error, 1 / (0.05 * std::sqrt(1e5)), 1e-3);
    ASSERT_NEAR(r.sample_std_over_g / std::sqrt(1e5), r.standard_error, 0.05 * r.standard_error);
    ASSERT_NEAR(r.post_selection_rate, pointer_moments(hardy(), zz(), 0.05, 1).post_selection_probability, 1e-15);
    ASSERT_GT(r.disturbance_fidelity, 0.999);
}

TEST(sample_pointer, single_sample_carries_no_information) {
    WeakMeasurementConfig c;
    c.post_samples = 1;
    c.seed = 7;
    WeakRunReport r = sample_pointer(hardy(), zz(), c);
    ASSERT_NEAR(r.standard_error, 1 / c.g, 0.01 / c.g);
}

TEST(sample_pointer, deterministic_for_fixed_config) {
    WeakMeasurementConfig c;
    c.post_samples = 20000;
    c.seed = 123;
    WeakRunReport a = sample_pointer(hardy(), zz(), c);
    WeakRunReport b = sample_pointer(hardy(), zz(), c);
    ASSERT_EQ(a.estimate, b.estimate);
    ASSERT_EQ(a.sample_std_over_g, b.sample_std_over_g);
    c.seed = 124;
    ASSERT_NE(sample_pointer(hardy(), zz(), c).estimate, a.estimate);
}

TEST(sample_pointer, sharded_runs_are_deterministic) {
    WeakMeasurementConfig c;
    c.post_samples = 20001;
    c.seed = 5;
    c.shards = 4;
    WeakRunReport a = sample_pointer(hardy(), zz(), c);
    WeakRunReport b = sample_pointer(hardy(), zz(), c);
    ASSERT_EQ(a.estimate, b.estimate);
    ASSERT_EQ(a.shard_sizes, (std::vector<std::size_t>{5001, 5000, 5000, 5000}));
    ASSERT_EQ(a.shard_seeds.size(), 4u);
    ASSERT_NE(a.shard_seeds[0], a.shard_seeds[1]);
    ASSERT_EQ(shard_seed(5, 0, 1), 5u);
}

TEST(disturbance_fidelity, closed_form_and_quadrature) {
    Ket pre = from(oracle::hardy_pre());
    double f = disturbance_fidelity(pre, z1(), 1, 1);
    ASSERT_NEAR(f, 5.0 / 9 + 4.0 / 9 * std::exp(-0.5), 1e-12);
    ASSERT_NEAR(f, oracle::fidelity({2.0 / 3, 1.0 / 3}, {1, -1}, 1, 1), 1e-9);
    ASSERT_NEAR(disturbance_fidelity(pre, z1(), 0, 1), 1, 1e-15);
    Ket up = Ket::basis(kQubit, 0);
    for (double g : {0.0, 0.3, 5.0, 100.0}) {
        ASSERT_NEAR(disturbance_fidelity(up, pauli_observable('z', 0, kQubit), g, 1), 1, 1e-15);
    }
}

TEST(weak_properties, certainty_theorem) {
    auto &rng = gen::test_rng();
    int certain = 0;
    for (int t = 0; t < gen::kPropertyCases; t++) {
        Observable obs = gen::random_observable(kTwoQubits, rng);
        const Branch &b = obs.branches()[rng() % obs.branches().size()];
        Ket pre = gen::random_ket(kTwoQubits, rng);
        Ket post = gen::random_ket(kTwoQubits, rng);
        switch (t % 3) {
            case 0:
                pre = apply(b.projector, pre).normalized();
                break;
            case 1:
                post = apply(b.projector, post).normalized();
                break;
            default:
                break;
        }
        TwoStateVector tsv(pre, post, 1e-10);
        if (std::abs(tsv.transition_amplitude()) < 1e-3) {
            continue;
        }
        std::optional<Certainty> c = element_of_reality(tsv, obs, kCertaintyTolerance, 1e-10);
        if (!c) {
            continue;
        }
        certain++;
        Complex w = weak_value(tsv, obs, 1e-10);
        ASSERT_LE(std::abs(w.real() - c->eigenvalue), 1e-9);
        ASSERT_LE(std::abs(w.imag()), 1e-9);
    }
    ASSERT_GE(certain, 600);
}

TEST(weak_properties, linearity) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout = gen::random_layout(rng, 2);
        Operator a = gen::random_observable(layout, rng).as_operator();
        Operator b = gen::random_observable(layout, rng).as_operator();
        std::normal_distribution<double> n(0, 2);
        double alpha = n(rng);
        double beta = n(rng);
        TwoStateVector tsv(gen::random_ket(layout, rng), gen::random_ket(layout, rng), 1e-10);
        if (std::abs(tsv.transition_amplitude()) < 1e-2) {
            continue;
        }
        Complex lhs = weak_value(tsv, a * Complex(alpha) + b * Complex(beta), 1e-10);
        Complex rhs = alpha * weak_value(tsv, a, 1e-10) + beta * weak_value(tsv, b, 1e-10);
        ASSERT_LE(std::abs(lhs - rhs), 1e-9 * (1 + std::abs(rhs)));
    }
}

TEST(weak_properties, fidelity_monotone_in_g) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout = gen::random_layout(rng, 2);
        Observable obs = gen::random_observable(layout, rng);
        Ket pre = gen::random_ket(layout, rng);
        double delta = std::uniform_real_distribution<double>(0.2, 3)(rng);
        double previous = disturbance_fidelity(pre, obs, 0, delta, 1e-10);
        ASSERT_NEAR(previous, 1, 1e-12);
        for (int k = 1; k <= 20; k++) {
            double f = disturbance_fidelity(pre, obs, 0.1 * k, delta, 1e-10);
            ASSERT_LE(f, previous + 1e-15);
            previous = f;
        }
    }
}

TEST(weak_properties, monte_carlo_coverage_over_seeds) {
    WeakMeasurementConfig c;
    c.g = 0.05;
    c.post_samples = 2000;
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        c.seed = seed;
        WeakRunReport r = sample_pointer(hardy(), zz(), c);
        covered += std::abs(r.estimate - r.exact_mean_over_g) <= 5 * r.standard_error;
    }
    ASSERT_GE(covered, 99);
}
