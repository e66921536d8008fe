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
 * @file frames.h
 * Frames of reference modelled as time orderings of spacelike-separated measurement
 * events. Running the same events in different orders yields different collapse histories;
 * this module runs each ordering and reports where the histories agree and where they don't.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsvf/measurement.h"

namespace tsvf {

struct MeasurementEvent {
    std::string id;
    Observable observable;
    /// Post-selected outcome; when absent every branch is followed.
    std::optional<std::string> forced_outcome;
    /// Subsystem the event acts on, when it acts on a single one.
    std::optional<std::size_t> target;
};

struct Ordering {
    std::vector<std::string> sequence;

    std::string str() const;
    bool operator==(const Ordering &) const = default;
};

/// One history: the events of an ordering with one outcome each.
struct OrderingRun {
    Ordering ordering;
    std::vector<std::string> outcomes;
    /// Initial state followed by the state after each event.
    std::vector<Ket> trajectory;
    std::vector<double> step_probabilities;
    double joint_probability = 1;

    /// "id=outcome" pairs in event-declaration order; equal across orderings for the same history.
    std::string outcome_key;
};

/// Throws ValidationError unless `ordering` is a permutation of the event ids.
void validate_ordering(std::span<const MeasurementEvent> events, const Ordering &ordering);

/// Runs an ordering whose events all carry a forced outcome.
/// An ImpossibleOutcomeError names the failing event and ordering.
OrderingRun run_ordering(const Ket &initial, std::span<const MeasurementEvent> events, const Ordering &ordering,
                         double eps = default_epsilon());

/// Every history of an ordering with nonzero probability. Forced events contribute one branch.
std::vector<OrderingRun> enumerate_histories(const Ket &initial, std::span<const MeasurementEvent> events,
                                             const Ordering &ordering, double eps = default_epsilon());

struct CutOverlap {
    std::size_t first = 0;  // ordering indices
    std::size_t second = 0;
    std::string outcome_key;
    /// Number of completed events.
    std::size_t depth = 0;
    std::vector<std::string> prefix_first;
    std::vector<std::string> prefix_second;
    /// True when both prefixes contain the same events.
    bool matched_prefix = false;
    double overlap = 0;
};

struct OrderingComparison {
    std::vector<Ordering> orderings;
    /// Histories per ordering.
    std::vector<std::vector<OrderingRun>> histories;
    /// Total probability of the forced outcomes per ordering.
    std::vector<double> joint_probabilities;
    /// Smallest |⟨final_i|final_j⟩|² over ordering pairs and shared histories.
    double final_overlap = 1;
    std::vector<CutOverlap> intermediate_overlaps;
    /// Largest |P_i - P_j| over orderings and histories (missing histories count as 0).
    double max_probability_gap = 0;
    std::vector<std::string> warnings;
    bool ordering_invariant = true;
};

OrderingComparison compare_orderings(const Ket &initial, std::span<const MeasurementEvent> events,
                                     std::span<const Ordering> orderings, double eps = default_epsilon());

/// Warnings for event pairs that do not commute or that declare the same target subsystem.
std::vector<std::string> commutation_warnings(std::span<const MeasurementEvent> events,
                                              double eps = default_epsilon());

}  // namespace tsvf
