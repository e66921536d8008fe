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

#include "tsvf/measurement.h"

#include "gtest/gtest.h"

#include "generators.h"
#include "oracles.h"
#include "tsvf/errors.h"

using namespace tsvf;

namespace {

const SubsystemLayout kQubit({2});
const SubsystemLayout kBoxes({3});
const SubsystemLayout kTwoQubits({2, 2});

Ket three_box() {
    auto v = oracle::three_box_pre();
    return Ket(kBoxes, {v[0], v[1], v[2]});
}

Ket psi1() {
    oracle::Vec4 v = oracle::hardy_pre();
    return Ket(kTwoQubits, {v.begin(), v.end()});
}

Observable open_box(std::size_t box) {
    return indicator_observable(projector_onto(Ket::basis(kBoxes, box)));
}

bool has_kind(const ValidationReport &r, const std::string &kind) {
    for (const Violation &v : r.violations) {
        if (v.kind == kind) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(validate_observable, examples) {
    ASSERT_TRUE(validate_observable(pauli_observable('z', 0, kQubit)).ok());
    ASSERT_TRUE(validate_observable(open_box(0)).ok());

    Operator up = projector_onto(Ket::basis(kQubit, 0));
    Observable doubled(kQubit, {{"a", 1, up}, {"b", -1, up}});
    ValidationReport r = validate_observable(doubled);
    ASSERT_FALSE(r.ok());
    ASSERT_TRUE(has_kind(r, "completeness"));
    ASSERT_TRUE(has_kind(r, "orthogonality"));
    for (const Violation &v : r.violations) {
        if (v.kind == "completeness" || v.kind == "orthogonality") {
            ASSERT_NEAR(v.norm, 1, 1e-12);
        }
    }
    ASSERT_THROW(require_valid(doubled, "event"), ValidationError);
}

TEST(validate_observable, duplicate_labels_and_non_projectors) {
    Operator up = projector_onto(Ket::basis(kQubit, 0));
    Operator down = projector_onto(Ket::basis(kQubit, 1));
    ASSERT_TRUE(has_kind(validate_observable(Observable(kQubit, {{"x", 1, up}, {"x", -1, down}})), "label"));
    Observable bad(kQubit, {{"a", 1, Operator::pauli_x()}, {"b", -1, Operator::identity(kQubit) - Operator::pauli_x()}});
    ASSERT_TRUE(has_kind(validate_observable(bad), "projector"));
}

TEST(born_distribution, examples) {
    OutcomeDistribution a = born_distribution(three_box(), open_box(0));
    ASSERT_NEAR(a.probability("found"), 1.0 / 3, 1e-12);
    ASSERT_NEAR(a.probability("not"), 2.0 / 3, 1e-12);

    Observable xx = joint_observable(pauli_observable('x', 0, kTwoQubits), pauli_observable('x', 1, kTwoQubits));
    OutcomeDistribution j = born_distribution(psi1(), xx);
    double oracle_p = std::norm(oracle::braket(oracle::hardy_post(), oracle::hardy_pre()));
    ASSERT_NEAR(oracle_p, 1.0 / 12, 1e-15);
    ASSERT_NEAR(j.probability("-1,-1"), 1.0 / 12, 1e-12);
    ASSERT_NEAR(j.total(), 1, 1e-12);

    OutcomeDistribution up = born_distribution(Ket::basis(kQubit, 0), pauli_observable('z', 0, kQubit));
    ASSERT_EQ(up.probability("+1"), 1);
    ASSERT_EQ(up.probability("-1"), 0);
}

TEST(born_distribution, rejects_unnormalized_and_invalid) {
    ASSERT_THROW(born_distribution(Ket(kQubit, {1, 1}), pauli_observable('z', 0, kQubit)), NormalizationError);
    Operator up = projector_onto(Ket::basis(kQubit, 0));
    ASSERT_THROW(born_distribution(Ket::basis(kQubit, 0), Observable(kQubit, {{"a", 1, up}})), ValidationError);
}

TEST(collapse, examples) {
    Ket mid = collapse(three_box(), open_box(0), "not");
    ASSERT_NEAR(std::abs(mid[0]), 0, 1e-15);
    ASSERT_NEAR(mid[1].real(), M_SQRT1_2, 1e-12);
    ASSERT_NEAR(mid[2].real(), M_SQRT1_2, 1e-12);

    Ket six = collapse(psi1(), pauli_observable('x', 0, kTwoQubits), "-1");
    Ket expected(kTwoQubits, {0, M_SQRT1_2, 0, -M_SQRT1_2});
    ASSERT_LE(phase_aligned_distance(six, expected), 1e-12);

    Ket up = Ket::basis(kQubit, 0);
    ASSERT_LE(phase_aligned_distance(collapse(up, pauli_observable('z', 0, kQubit), "+1"), up), 1e-15);
}

TEST(collapse, impossible_outcome) {
    ASSERT_THROW(collapse(Ket::basis(kQubit, 0), pauli_observable('z', 0, kQubit), "-1"), ImpossibleOutcomeError);
    ASSERT_THROW(collapse(Ket::basis(kQubit, 0), pauli_observable('z', 0, kQubit), "7"), ValidationError);
}

TEST(measure_sequence, three_box_chains) {
    std::vector<MeasurementStep> ac{{open_box(0), "not"}, {open_box(2), "found"}};
    SequenceResult r = measure_sequence(three_box(), ac);
    ASSERT_EQ(r.trajectory.size(), 3u);
    ASSERT_NEAR(r.step_probabilities[0], 2.0 / 3, 1e-12);
    ASSERT_NEAR(r.step_probabilities[1], 1.0 / 2, 1e-12);
    ASSERT_NEAR(r.joint_probability, 1.0 / 3, 1e-12);
    ASSERT_NEAR(overlap(r.trajectory.back(), Ket::basis(kBoxes, 2)), 1, 1e-12);

    std::vector<MeasurementStep> ca{{open_box(2), "found"}, {open_box(0), "not"}};
    SequenceResult s = measure_sequence(three_box(), ca);
    ASSERT_NEAR(s.step_probabilities[0], 1.0 / 3, 1e-12);
    ASSERT_NEAR(s.step_probabilities[1], 1, 1e-12);
    ASSERT_NEAR(s.joint_probability, 1.0 / 3, 1e-12);
}

TEST(measure_sequence, hardy_chain) {
    std::vector<MeasurementStep> steps{{pauli_observable('x', 0, kTwoQubits), "-1"},
                                       {pauli_observable('x', 1, kTwoQubits), "-1"}};
    SequenceResult r = measure_sequence(psi1(), steps);
    ASSERT_NEAR(r.step_probabilities[0], 1.0 / 6, 1e-12);
    ASSERT_NEAR(r.step_probabilities[1], 1.0 / 2, 1e-12);
    ASSERT_NEAR(r.joint_probability, 1.0 / 12, 1e-12);
    oracle::Vec4 post = oracle::hardy_post();
    ASSERT_NEAR(overlap(r.trajectory.back(), Ket(kTwoQubits, {post.begin(), post.end()})), 1, 1e-12);
}

TEST(measure_sequence, reports_failing_step) {
    std::vector<MeasurementStep> steps{{open_box(2), "found"}, {open_box(0), "found"}};
    try {
        measure_sequence(three_box(), steps);
        FAIL() << "expected ImpossibleOutcomeError";
    } catch (const ImpossibleOutcomeError &e) {
        ASSERT_EQ(e.step(), 1u);
    }
}

TEST(observables, product_observable_groups_degenerate_branches) {
    Observable zz = product_observable(pauli_observable('z', 0, kTwoQubits), pauli_observable('z', 1, kTwoQubits));
    ASSERT_EQ(zz.branches().size(), 2u);
    ASSERT_EQ(zz.branches()[0].label, "+1");
    ASSERT_EQ(zz.branches()[1].label, "-1");
    ASSERT_NEAR(zz.branches()[0].projector.trace().real(), 2, 1e-12);
    ASSERT_TRUE(validate_observable(zz).ok());
    Operator diag = zz.as_operator();
    for (std::size_t i = 0; i < 4; i++) {
        ASSERT_NEAR(diag(i, i).real(), oracle::z_of(static_cast<int>(i), 0) * oracle::z_of(static_cast<int>(i), 1),
                    1e-15);
    }
}

TEST(observables, joint_requires_commuting_operands) {
    ASSERT_THROW(joint_observable(pauli_observable('z', 0, kTwoQubits), pauli_observable('x', 0, kTwoQubits)),
                 ValidationError);
    Observable j = joint_observable(pauli_observable('z', 0, kTwoQubits), pauli_observable('z', 1, kTwoQubits));
    ASSERT_EQ(j.branches().size(), 4u);
    ASSERT_NE(j.find("-1,-1"), nullptr);
}

TEST(observables, pauli_product_matches_product_of_paulis) {
    std::vector<std::pair<char, std::size_t>> factors{{'z', 0}, {'z', 1}};
    Observable pp = pauli_product_observable(factors, kTwoQubits);
    Operator expected = lift_to_subsystem(Operator::pauli_z(), 0, kTwoQubits) *
                        lift_to_subsystem(Operator::pauli_z(), 1, kTwoQubits);
    ASSERT_LE((pp.as_operator() - expected).max_abs(), 1e-15);
}

TEST(observables, basis_observable_labels) {
    std::vector<std::string> labels{"A", "B", "C"};
    Observable b = basis_observable(0, kBoxes, labels);
    ASSERT_EQ(b.branches()[2].label, "C");
    ASSERT_EQ(b.branches()[2].eigenvalue, 2);
    ASSERT_EQ(basis_observable(0, kBoxes).branches()[1].label, "1");
}

TEST(eigenvalue_label, formats) {
    ASSERT_EQ(eigenvalue_label(1), "+1");
    ASSERT_EQ(eigenvalue_label(-1), "-1");
    ASSERT_EQ(eigenvalue_label(0), "0");
    ASSERT_EQ(eigenvalue_label(0.5), "+0.5");
}

TEST(measurement_properties, random_observables_validate) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout = gen::random_layout(rng, 2);
        Observable obs = gen::random_observable(layout, rng);
        ASSERT_TRUE(validate_observable(obs, 1e-10).ok()) << validate_observable(obs, 1e-10).summary();
        if (obs.branches().size() >= 2) {
            // Dropping a branch breaks completeness; duplicating one breaks orthogonality.
            std::vector<Branch> dropped(obs.branches().begin() + 1, obs.branches().end());
            ASSERT_TRUE(has_kind(validate_observable(Observable(layout, dropped), 1e-10), "completeness"));
            std::vector<Branch> dup = obs.branches();
            dup[1].projector = dup[0].projector;
            ValidationReport r = validate_observable(Observable(layout, dup), 1e-10);
            ASSERT_TRUE(has_kind(r, "orthogonality"));
        }
    }
}

TEST(measurement_properties, born_sums_to_one) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout = gen::random_layout(rng, 2);
        Observable obs = gen::random_observable(layout, rng);
        Ket psi = gen::random_ket(layout, rng);
        OutcomeDistribution d = born_distribution(psi, obs, 1e-10);
        ASSERT_NEAR(d.total(), 1, 1e-12);
        for (const auto &[label, p] : d.entries) {
            ASSERT_GE(p, 0);
            ASSERT_LE(p, 1 + 1e-12);
        }
    }
}

TEST(measurement_properties, collapse_normalized_eigenvector_and_repeatable) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout = gen::random_layout(rng, 2);
        Observable obs = gen::random_observable(layout, rng);
        Ket psi = gen::random_ket(layout, rng);
        OutcomeDistribution d = born_distribution(psi, obs, 1e-10);
        const std::string &label = d.entries[std::uniform_int_distribution<std::size_t>(0, d.entries.size() - 1)(rng)].first;
        if (d.probability(label) <= 1e-9) {
            continue;
        }
        Ket after = collapse(psi, obs, label, 1e-10);
        ASSERT_NEAR(after.norm_squared(), 1, 1e-12);
        ASSERT_LE(phase_aligned_distance(apply(obs.branch(label).projector, after), after), 1e-10);
        ASSERT_NEAR(born_distribution(after, obs, 1e-10).probability(label), 1, 1e-10);
    }
}

TEST(measurement_properties, disjoint_events_commute_in_sequence) {
    auto &rng = gen::test_rng();
    for (int t = 0; t < gen::kPropertyCases; t++) {
        SubsystemLayout layout({std::uniform_int_distribution<std::size_t>(2, 3)(rng),
                                std::uniform_int_distribution<std::size_t>(2, 3)(rng)});
        Observable a = gen::random_local_observable(layout, 0, rng);
        Observable b = gen::random_local_observable(layout, 1, rng);
        Ket psi = gen::random_ket(layout, rng);
        const std::string la = a.branches()[rng() % a.branches().size()].label;
        const std::string lb = b.branches()[rng() % b.branches().size()].label;
        std::vector<MeasurementStep> ab{{a, la}, {b, lb}};
        std::vector<MeasurementStep> ba{{b, lb}, {a, la}};
        SequenceResult r1 = measure_sequence(psi, ab, 1e-10);
        SequenceResult r2 = measure_sequence(psi, ba, 1e-10);
        ASSERT_NEAR(r1.joint_probability, r2.joint_probability, 1e-12);
        ASSERT_NEAR(overlap(r1.trajectory.back(), r2.trajectory.back()), 1, 1e-10);
    }
}
