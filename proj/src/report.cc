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

#include "tsvf/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tsvf/errors.h"

namespace tsvf {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format6(double v) {
    if (v == 0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string basis_name(std::size_t index, const SubsystemLayout &layout,
                       const std::vector<std::vector<std::string>> &labels) {
    std::vector<std::size_t> digits = layout.digits_of(index);
    std::string out;
    for (std::size_t k = 0; k < digits.size(); k++) {
        if (k) {
            out += ",";
        }
        out += labels.empty() ? std::to_string(digits[k]) : labels[k][digits[k]];
    }
    return out;
}

}  // namespace

json complex_to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

json ket_to_json(const Ket &ket) {
    json out = json::array();
    for (const Complex &a : ket.amplitudes()) {
        out.push_back(complex_to_json(a));
    }
    return out;
}

std::string describe_ket(const Ket &ket, const std::vector<std::vector<std::string>> &basis_labels) {
    std::string out;
    for (std::size_t i = 0; i < ket.dimension(); i++) {
        Complex a = ket[i];
        if (std::abs(a) < 1e-12) {
            continue;
        }
        std::string coeff;
        bool negative = false;
        if (std::abs(a.imag()) < 1e-12) {
            negative = a.real() < 0;
            coeff = format6(std::abs(a.real()));
        } else {
            coeff = "(" + format6(a.real()) + (a.imag() < 0 ? "-" : "+") + format6(std::abs(a.imag())) + "i)";
        }
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += coeff + "|" + basis_name(i, ket.layout(), basis_labels) + ">";
    }
    return out.empty() ? "0" : out;
}

json ordering_run_to_json(const OrderingRun &run, const Scenario &scenario) {
    json steps = json::array();
    for (std::size_t i = 0; i < run.trajectory.size(); i++) {
        json step;
        if (i == 0) {
            step["after"] = nullptr;
            step["outcome"] = nullptr;
            step["probability"] = 1.0;
        } else {
            step["after"] = run.ordering.sequence[i - 1];
            step["outcome"] = run.outcomes[i - 1];
            step["probability"] = run.step_probabilities[i - 1];
        }
        step["state"] = describe_ket(run.trajectory[i], scenario.basis_labels);
        step["amplitudes"] = ket_to_json(run.trajectory[i]);
        steps.push_back(step);
    }
    return {{"ordering", run.ordering.sequence},
            {"outcomes", run.outcome_key},
            {"trajectory", steps},
            {"joint_probability", run.joint_probability}};
}

json comparison_to_json(const OrderingComparison &cmp, const Scenario &scenario) {
    json runs = json::array();
    for (std::size_t i = 0; i < cmp.orderings.size(); i++) {
        json histories = json::array();
        for (const OrderingRun &r : cmp.histories[i]) {
            histories.push_back(ordering_run_to_json(r, scenario));
        }
        runs.push_back({{"ordering", cmp.orderings[i].sequence},
                        {"joint_probability", cmp.joint_probabilities[i]},
                        {"histories", histories}});
    }
    json cuts = json::array();
    for (const CutOverlap &c : cmp.intermediate_overlaps) {
        cuts.push_back({{"orderings", json::array({c.first, c.second})},
                        {"outcomes", c.outcome_key},
                        {"depth", c.depth},
                        {"prefix_first", c.prefix_first},
                        {"prefix_second", c.prefix_second},
                        {"matched_prefix", c.matched_prefix},
                        {"overlap", c.overlap}});
    }
    return {{"runs", runs},
            {"joint_probabilities", cmp.joint_probabilities},
            {"final_overlap", cmp.final_overlap},
            {"intermediate_overlaps", cuts},
            {"max_probability_gap", cmp.max_probability_gap},
            {"warnings", cmp.warnings},
            {"ordering_invariant", cmp.ordering_invariant}};
}

json abl_to_json(const AblDistribution &dist) {
    json out = json::array();
    for (const AblEntry &e : dist.entries) {
        out.push_back({{"label", e.label},
                       {"eigenvalue", e.eigenvalue},
                       {"probability", e.probability},
                       {"amplitude", complex_to_json(e.amplitude)}});
    }
    return out;
}

json certainty_to_json(const std::optional<Certainty> &c) {
    if (!c) {
        return nullptr;
    }
    return {{"label", c->label}, {"eigenvalue", c->eigenvalue}};
}

json rules_to_json(const RuleCheckReport &r) {
    json out = {{"eor_a", certainty_to_json(r.eor_a)},
                {"eor_b", certainty_to_json(r.eor_b)},
                {"joint_distribution", abl_to_json(r.joint_distribution)},
                {"joint_pair_probability", r.joint_pair_probability ? json(*r.joint_pair_probability) : json()},
                {"and_rule_holds", r.and_rule_holds}};
    if (r.product_distribution) {
        out["product_distribution"] = abl_to_json(*r.product_distribution);
    }
    if (r.joint_product_marginal) {
        out["joint_product_marginal"] = abl_to_json(*r.joint_product_marginal);
    }
    if (r.product_rule_holds) {
        out["product_eor"] = certainty_to_json(r.product_eor);
        out["expected_product"] = r.expected_product ? json(*r.expected_product) : json();
        out["product_rule_holds"] = *r.product_rule_holds;
    }
    return out;
}

json weak_run_to_json(const WeakRunReport &r) {
    return {{"estimate", r.estimate},
            {"exact_mean_over_g", r.exact_mean_over_g},
            {"target_weak_value", r.target_weak_value ? complex_to_json(*r.target_weak_value) : json()},
            {"standard_error", r.standard_error},
            {"sample_std_over_g", r.sample_std_over_g},
            {"post_selection_rate", r.post_selection_rate},
            {"disturbance_fidelity", r.disturbance_fidelity},
            {"shards", r.config.shards},
            {"shard_seeds", r.shard_seeds},
            {"shard_sizes", r.shard_sizes}};
}

json run_analysis(const Scenario &scenario, const AnalysisRequest &request, double eps) {
    json out;
    out["kind"] = analysis_kind(request);
    std::visit(overloaded{
                   [&](const CompareOrderingsRequest &r) {
                       out["comparison"] = comparison_to_json(
                           compare_orderings(scenario.initial, scenario.events, r.orderings, eps), scenario);
                   },
                   [&](const AblRequest &r) {
                       out["observable"] = r.observable;
                       out["distribution"] =
                           abl_to_json(abl_distribution(two_state(scenario, eps), resolve_observable(scenario, r.observable), eps));
                   },
                   [&](const EorRequest &r) {
                       out["observable"] = r.observable;
                       out["tolerance"] = r.tolerance;
                       TwoStateVector tsv = two_state(scenario, eps);
                       Observable obs = resolve_observable(scenario, r.observable);
                       out["distribution"] = abl_to_json(abl_distribution(tsv, obs, eps));
                       out["element_of_reality"] = certainty_to_json(element_of_reality(tsv, obs, r.tolerance, eps));
                   },
                   [&](const CheckRulesRequest &r) {
                       out["a"] = r.a;
                       out["b"] = r.b;
                       out["report"] = rules_to_json(product_rule_check(two_state(scenario, eps),
                                                                        resolve_observable(scenario, r.a),
                                                                        resolve_observable(scenario, r.b),
                                                                        kCertaintyTolerance, eps));
                   },
                   [&](const WeakValueRequest &r) {
                       out["operator"] = r.op;
                       out["weak_value"] =
                           complex_to_json(weak_value(two_state(scenario, eps), resolve_observable(scenario, r.op), eps));
                   },
                   [&](const WeakMcRequest &r) {
                       out["operator"] = r.op;
                       out["config"] = {{"g", r.config.g},
                                        {"delta", r.config.delta},
                                        {"post_samples", r.config.post_samples},
                                        {"seed", r.config.seed},
                                        {"grid", r.config.grid_points},
                                        {"shards", r.config.shards}};
                       out["report"] = weak_run_to_json(
                           sample_pointer(two_state(scenario, eps), resolve_observable(scenario, r.op), r.config, eps));
                   },
               },
               request);
    return out;
}

json report_envelope(const std::string &command, const Scenario &scenario, json config, json results) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", command},
            {"scenario", scenario.name},
            {"config", std::move(config)},
            {"results", std::move(results)}};
}

json scenario_report(const Scenario &scenario, double eps) {
    json results = json::array();
    for (const AnalysisRequest &r : scenario.analyses) {
        results.push_back(run_analysis(scenario, r, eps));
    }
    return report_envelope("run", scenario, {{"epsilon", eps}}, std::move(results));
}

namespace {

bool is_scalar_array(const json &node) {
    for (const json &x : node) {
        if (x.is_structured()) {
            return false;
        }
    }
    return true;
}

std::string scalar_text(const json &node) {
    if (node.is_null()) {
        return "none";
    }
    if (node.is_boolean()) {
        return node.get<bool>() ? "true" : "false";
    }
    if (node.is_number_float()) {
        return format6(node.get<double>());
    }
    if (node.is_number()) {
        return node.dump();
    }
    if (node.is_string()) {
        return node.get<std::string>();
    }
    std::string out = "[";
    for (std::size_t i = 0; i < node.size(); i++) {
        out += (i ? ", " : "") + scalar_text(node[i]);
    }
    return out + "]";
}

void render(const json &node, int indent, std::ostringstream &out) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            const json &v = it.value();
            bool inline_value = !v.is_structured() || (v.is_array() && is_scalar_array(v)) ||
                                (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number());
            if (v.is_array() && !v.empty() && v.size() <= 64) {
                bool complex_list = true;
                for (const json &x : v) {
                    complex_list = complex_list && x.is_array() && x.size() == 2 && x[0].is_number();
                }
                if (complex_list) {
                    inline_value = true;
                }
            }
            if (inline_value) {
                out << pad << it.key() << ": " << scalar_text(v) << "\n";
            } else {
                out << pad << it.key() << ":\n";
                render(v, indent + 1, out);
            }
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); i++) {
            out << pad << "- [" << i << "]\n";
            render(node[i], indent + 1, out);
        }
    } else {
        out << pad << scalar_text(node) << "\n";
    }
}

}  // namespace

std::string render_text(const json &report) {
    std::ostringstream out;
    render(report, 0, out);
    return out.str();
}

}  // namespace tsvf
