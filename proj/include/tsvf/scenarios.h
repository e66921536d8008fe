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
 * @file scenarios.h
 * Built-in pre/post-selection experiments and the JSON scenario file format.
 *
 * File layout (complex numbers are [re, im], amplitudes in lexicographic basis order):
 *
 *   {
 *     "name": "hardy",
 *     "dims": [2, 2],
 *     "basis_labels": [["up", "down"], ["up", "down"]],      // optional
 *     "initial": [[0.577, 0], ...],
 *     "normalize": false,                                    // optional, opt-in rescaling
 *     "post": [[0.5, 0], ...],                               // optional
 *     "events": [
 *       {"id": "1", "target": 0, "observable": "sigma_x", "forced_outcome": "-1"},
 *       {"id": "A", "observable": {"branches": [
 *           {"label": "found", "eigenvalue": 1, "projector": [[[1,0],[0,0],[0,0]], ...]}, ...]}}
 *     ],
 *     "analyses": [
 *       {"kind": "compare_orderings", "orderings": [["1", "2"], ["2", "1"]]},
 *       {"kind": "abl", "observable": "z1"},
 *       {"kind": "eor", "observable": "z1", "tolerance": 1e-9},
 *       {"kind": "check_rules", "a": "z1", "b": "z2"},
 *       {"kind": "weak_value", "operator": "z1z2"},
 *       {"kind": "weak_mc", "operator": "z1z2", "g": 0.05, "delta": 1,
 *        "post_samples": 100000, "seed": 42, "grid": 16384, "shards": 1}
 *     ]
 *   }
 *
 * Observable keywords for events: sigma_x, sigma_y, sigma_z (qubit `target`) and basis
 * (computational basis of `target`). Observables named inside analyses are strings: an event
 * id, a Pauli string over 1-based qubit indices ("z1", "x2", "z1z2"), or "basis<k>".
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tsvf/frames.h"
#include "tsvf/two_state.h"
#include "tsvf/weak.h"

namespace tsvf {

struct CompareOrderingsRequest {
    std::vector<Ordering> orderings;
};
struct AblRequest {
    std::string observable;
};
struct EorRequest {
    std::string observable;
    double tolerance = kCertaintyTolerance;
};
struct CheckRulesRequest {
    std::string a;
    std::string b;
};
struct WeakValueRequest {
    std::string op;
};
struct WeakMcRequest {
    std::string op;
    WeakMeasurementConfig config;
};

using AnalysisRequest =
    std::variant<CompareOrderingsRequest, AblRequest, EorRequest, CheckRulesRequest, WeakValueRequest, WeakMcRequest>;

/// "compare_orderings", "abl", "eor", "check_rules", "weak_value" or "weak_mc".
std::string analysis_kind(const AnalysisRequest &request);

struct Scenario {
    std::string name;
    SubsystemLayout layout;
    /// Empty, or one label list per subsystem.
    std::vector<std::vector<std::string>> basis_labels;
    Ket initial;
    /// Explicit post-selected state; otherwise derived from the forced events.
    std::optional<Ket> post;
    std::vector<MeasurementEvent> events;
    std::vector<AnalysisRequest> analyses;
};

struct ScenarioIssue {
    /// JSON pointer into the scenario document.
    std::string path;
    std::string message;
    bool warning = false;
};

struct ScenarioReport {
    std::vector<ScenarioIssue> issues;

    bool ok() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
    std::string summary() const;
};

/// Particle in three boxes, boxes A and C opened, particle found in C.
Scenario builtin_three_box();
/// Two spin-1/2 particles, both x spins post-selected "down".
Scenario builtin_hardy_spins();
std::vector<std::string> builtin_names();
/// nullopt for unknown names.
std::optional<Scenario> builtin_scenario(std::string_view name);

ScenarioReport validate_scenario(const Scenario &scenario, double eps = default_epsilon());

/// Parses and validates; throws ValidationError whose issues carry document paths.
Scenario load_scenario(const nlohmann::json &document, double eps = default_epsilon());
Scenario load_scenario_text(std::string_view text, double eps = default_epsilon());
Scenario load_scenario_file(const std::string &path, double eps = default_epsilon());

nlohmann::json serialize_scenario(const Scenario &scenario);

/// Same names, labels, events and analyses; numeric content equal within eps.
bool equivalent(const Scenario &a, const Scenario &b, double eps = default_epsilon(), std::string *why = nullptr);

/// Event id, Pauli string ("z1", "x1x2") or "basis<k>" (k 1-based).
Observable resolve_observable(const Scenario &scenario, std::string_view spec);

/// The scenario's post-selected state: `post` if given, else the forced events run in listed order,
/// phased so that its first nonzero amplitude is real and positive.
Ket post_selected_state(const Scenario &scenario, double eps = default_epsilon());
TwoStateVector two_state(const Scenario &scenario, double eps = default_epsilon());

}  // namespace tsvf
