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
 * @file measurement.h
 * Projective measurements: observables as labelled spectral decompositions, Born-rule
 * distributions and state reduction.
 *
 * Branches are identified by label, never by eigenvalue, so degenerate eigenvalues (several
 * branches sharing a value, or one branch with a rank > 1 projector) are fine.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsvf/hilbert.h"

namespace tsvf {

struct Branch {
    std::string label;
    double eigenvalue;
    Operator projector;
};

class Observable {
   public:
    /// No validation happens here; see validate_observable.
    Observable(SubsystemLayout layout, std::vector<Branch> branches);

    const SubsystemLayout &layout() const {
        return layout_;
    }
    const std::vector<Branch> &branches() const {
        return branches_;
    }
    /// nullptr when no branch carries `label`.
    const Branch *find(std::string_view label) const;
    /// Throws ValidationError naming the known labels when `label` is absent.
    const Branch &branch(std::string_view label) const;

    /// Σ_a a P_a.
    Operator as_operator() const;

   private:
    SubsystemLayout layout_;
    std::vector<Branch> branches_;
};

struct Violation {
    std::string kind;  // "layout", "label", "projector", "orthogonality", "completeness"
    std::string detail;
    double norm = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        return violations.empty();
    }
    std::string summary() const;
};

ValidationReport validate_observable(const Observable &obs, double eps = default_epsilon());
/// Throws ValidationError carrying the report summary.
void require_valid(const Observable &obs, const std::string &what, double eps = default_epsilon());

struct OutcomeDistribution {
    std::vector<std::pair<std::string, double>> entries;

    double probability(std::string_view label) const;
    double total() const;
};

/// P(a) = ‖P_a|ψ⟩‖².
OutcomeDistribution born_distribution(const Ket &state, const Observable &obs, double eps = default_epsilon());

/// P_a|ψ⟩ / ‖P_a|ψ⟩‖. Throws ImpossibleOutcomeError when P(a) <= eps.
Ket collapse(const Ket &state, const Observable &obs, std::string_view outcome, double eps = default_epsilon());

struct MeasurementStep {
    Observable observable;
    std::string outcome;
};

struct SequenceResult {
    /// Initial state followed by the state after each step.
    std::vector<Ket> trajectory;
    std::vector<double> step_probabilities;
    double joint_probability = 1;
};

/// Runs forced-outcome measurements in order. An ImpossibleOutcomeError carries the failing step.
SequenceResult measure_sequence(const Ket &state, std::span<const MeasurementStep> steps,
                                double eps = default_epsilon());

/// Canonical label for an eigenvalue: "+1", "-1", "+0.5", ...
std::string eigenvalue_label(double value);

/// σ_axis (axis one of 'x', 'y', 'z') on qubit `target`; branches "+1" and "-1".
Observable pauli_observable(char axis, std::size_t target, const SubsystemLayout &layout);

/// Product of Paulis on distinct qubits, split into its ±1 eigenspaces (rank > 1 projectors).
Observable pauli_product_observable(std::span<const std::pair<char, std::size_t>> factors,
                                    const SubsystemLayout &layout);

/// Computational-basis measurement of one subsystem; eigenvalue = basis index.
Observable basis_observable(std::size_t target, const SubsystemLayout &layout,
                            std::span<const std::string> labels = {});

/// Two-outcome {P, I - P} observable, e.g. "open box A": found (eigenvalue 1) / not (0).
Observable indicator_observable(const Operator &projector, std::string found_label = "found",
                                std::string missing_label = "not");

/// Fine-grained joint observable of two commuting observables: branches P_a P_b labelled
/// "a,b" with eigenvalue a*b. Zero products are dropped. Throws ValidationError if any pair
/// of projectors fails to commute within eps.
Observable joint_observable(const Observable &a, const Observable &b, double eps = default_epsilon());

/// The product observable A·B: joint branches grouped by eigenvalue product (rounded to 12
/// decimals), each group's projectors summed into one degenerate branch.
Observable product_observable(const Observable &a, const Observable &b, double eps = default_epsilon());

/// Largest ‖[P_a, Q_b]‖_max over all branch pairs.
double max_commutator_norm(const Observable &a, const Observable &b);

}  // namespace tsvf
