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
 * @file two_state.h
 * Pre- and post-selected ensembles: ABL conditional probabilities for an intermediate
 * measurement, elements of reality (certain intermediate outcomes), and checks of the
 * "and rule" and the product rule for pairs of elements of reality.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsvf/measurement.h"

namespace tsvf {

/// Tolerance below which 1 - P counts as certainty when detecting elements of reality.
inline constexpr double kCertaintyTolerance = 1e-9;

/// The pair (⟨post|, |pre⟩). Orthogonal pairs are allowed; each query checks its own denominator.
class TwoStateVector {
   public:
    TwoStateVector(Ket pre, Ket post, double eps = default_epsilon());

    const Ket &pre() const {
        return pre_;
    }
    const Ket &post() const {
        return post_;
    }
    const SubsystemLayout &layout() const {
        return pre_.layout();
    }
    /// ⟨post|pre⟩.
    Complex transition_amplitude() const {
        return inner_product(post_, pre_);
    }

   private:
    Ket pre_;
    Ket post_;
};

struct AblEntry {
    std::string label;
    double eigenvalue = 0;
    double probability = 0;
    /// ⟨post|P_a|pre⟩.
    Complex amplitude;
};

struct AblDistribution {
    std::vector<AblEntry> entries;

    /// 0 for labels the observable does not carry.
    double probability(std::string_view label) const;
    Complex amplitude(std::string_view label) const;
    double total() const;
};

/// P(a) = |⟨φ|P_a|ψ⟩|² / Σ_b |⟨φ|P_b|ψ⟩|². Throws UnreachablePostSelectionError when the
/// denominator is <= eps.
AblDistribution abl_distribution(const TwoStateVector &tsv, const Observable &obs, double eps = default_epsilon());

struct Certainty {
    std::string label;
    double eigenvalue = 0;

    bool operator==(const Certainty &) const = default;
};

/// The outcome with ABL probability >= 1 - tolerance, if there is one.
std::optional<Certainty> element_of_reality(const TwoStateVector &tsv, const Observable &obs,
                                            double tolerance = kCertaintyTolerance,
                                            double eps = default_epsilon());

struct RuleCheckReport {
    std::optional<Certainty> eor_a;
    std::optional<Certainty> eor_b;
    /// ABL distribution of the fine-grained joint observable (labels "a,b").
    AblDistribution joint_distribution;
    /// ABL probability of the pair of individual certainties, when both exist.
    std::optional<double> joint_pair_probability;
    bool and_rule_holds = true;

    /// Filled by product_rule_check.
    std::optional<AblDistribution> product_distribution;
    /// Joint ABL probabilities summed by eigenvalue product (measuring A and B, then multiplying).
    /// Amplitudes are summed too, so they equal product_distribution's; only the probabilities differ.
    std::optional<AblDistribution> joint_product_marginal;
    std::optional<Certainty> product_eor;
    std::optional<double> expected_product;
    std::optional<bool> product_rule_holds;
};

/// Individual certainties of A and B, the joint ABL distribution, and whether the pair of
/// certainties is itself certain. A and B must commute (e.g. act on different subsystems).
RuleCheckReport and_rule_check(const TwoStateVector &tsv, const Observable &a, const Observable &b,
                               double tolerance = kCertaintyTolerance, double eps = default_epsilon());

/// and_rule_check plus the ABL distribution of the product observable A·B and whether a·b is
/// its element of reality.
RuleCheckReport product_rule_check(const TwoStateVector &tsv, const Observable &a, const Observable &b,
                                   double tolerance = kCertaintyTolerance, double eps = default_epsilon());

}  // namespace tsvf
