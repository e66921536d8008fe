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

// JSON records for analysis results, and the text rendering of a report.

#pragma once

#include <string>

#include "json.hpp"
#include "tsvf/scenarios.h"

namespace tsvf {

inline constexpr const char *kToolName = "tsvf";
inline constexpr const char *kToolVersion = "0.1.0";

nlohmann::json complex_to_json(Complex c);
nlohmann::json ket_to_json(const Ket &ket);
/// "0.707107|B> - 0.707107|C>" using the scenario's basis labels.
std::string describe_ket(const Ket &ket, const std::vector<std::vector<std::string>> &basis_labels);

nlohmann::json ordering_run_to_json(const OrderingRun &run, const Scenario &scenario);
nlohmann::json comparison_to_json(const OrderingComparison &cmp, const Scenario &scenario);
nlohmann::json abl_to_json(const AblDistribution &dist);
nlohmann::json certainty_to_json(const std::optional<Certainty> &c);
nlohmann::json rules_to_json(const RuleCheckReport &report);
nlohmann::json weak_run_to_json(const WeakRunReport &report);

/// Runs one analysis request against the scenario and returns its result record.
nlohmann::json run_analysis(const Scenario &scenario, const AnalysisRequest &request,
                            double eps = default_epsilon());

/// Full report document: every analysis listed in the scenario.
nlohmann::json scenario_report(const Scenario &scenario, double eps = default_epsilon());

/// Report envelope shared by every CLI command.
nlohmann::json report_envelope(const std::string &command, const Scenario &scenario, nlohmann::json config,
                               nlohmann::json results);

/// Human-readable rendering of a report; numbers rounded to 6 significant digits.
std::string render_text(const nlohmann::json &report);

}  // namespace tsvf
