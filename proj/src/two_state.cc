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

#include "tsvf/two_state.h"

#include <cmath>
#include <map>
#include <sstream>

#include "tsvf/errors.h"

namespace tsvf {

TwoStateVector::TwoStateVector(Ket pre, Ket post, double eps) : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.layout() != post_.layout()) {
        throw DimensionError("pre- and post-selected states live on different layouts");
    }
    pre_.require_normalized("pre-selected state", eps);
    post_.require_normalized("post-selected state", eps);
}

double AblDistribution::probability(std::string_view label) const {
    for (const AblEntry &e : entries) {
        if (e.label == label) {
            return e.probability;
        }
    }
    return 0;
}

Complex AblDistribution::amplitude(std::string_view label) const {
    for (const AblEntry &e : entries) {
        if (e.label == label) {
            return e.amplitude;
        }
    }
    return 0;
}

double AblDistribution::total() const {
    double t = 0;
    for (const AblEntry &e : entries) {
        t += e.probability;
    }
    return t;
}

AblDistribution abl_distribution(const TwoStateVector &tsv, const Observable &obs, double eps) {
    require_valid(obs, "observable", eps);
    if (obs.layout() != tsv.layout()) {
        throw DimensionError("observable layout does not match the two-state vector");
    }
    AblDistribution dist;
    double denominator = 0;
    for (const Branch &b : obs.branches()) {
        Complex amp = matrix_element(tsv.post(), b.projector, tsv.pre());
        denominator += std::norm(amp);
        dist.entries.push_back({b.label, b.eigenvalue, 0, amp});
    }
    if (denominator <= eps) {
        std::ostringstream msg;
        msg << "post-selection unreachable through this measurement (sum of |<post|P|pre>|^2 = " << denominator
            << ")";
        throw UnreachablePostSelectionError(msg.str());
    }
    for (AblEntry &e : dist.entries) {
        e.probability = std::norm(e.amplitude) / denominator;
    }
    return dist;
}

namespace {

std::optional<Certainty> certain_entry(const AblDistribution &dist, double tolerance) {
    for (const AblEntry &e : dist.entries) {
        if (e.probability >= 1 - tolerance) {
            return Certainty{e.label, e.eigenvalue};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Certainty> element_of_reality(const TwoStateVector &tsv, const Observable &obs, double tolerance,
                                            double eps) {
    return certain_entry(abl_distribution(tsv, obs, eps), tolerance);
}

RuleCheckReport and_rule_check(const TwoStateVector &tsv, const Observable &a, const Observable &b, double tolerance,
                               double eps) {
    RuleCheckReport report;
    report.eor_a = element_of_reality(tsv, a, tolerance, eps);
    report.eor_b = element_of_reality(tsv, b, tolerance, eps);
    report.joint_distribution = abl_distribution(tsv, joint_observable(a, b, eps), eps);
    if (report.eor_a && report.eor_b) {
        double p = report.joint_distribution.probability(report.eor_a->label + "," + report.eor_b->label);
        report.joint_pair_probability = p;
        report.and_rule_holds = p >= 1 - tolerance;
    }
    return report;
}

RuleCheckReport product_rule_check(const TwoStateVector &tsv, const Observable &a, const Observable &b,
                                   double tolerance, double eps) {
    RuleCheckReport report = and_rule_check(tsv, a, b, tolerance, eps);
    report.product_distribution = abl_distribution(tsv, product_observable(a, b, eps), eps);
    report.product_eor = certain_entry(*report.product_distribution, tolerance);

    std::map<double, AblEntry> grouped;
    for (const AblEntry &e : report.joint_distribution.entries) {
        double key = std::round(e.eigenvalue * 1e12) / 1e12;
        AblEntry &g = grouped[key];
        g.label = eigenvalue_label(key);
        g.eigenvalue = key;
        g.probability += e.probability;
        g.amplitude += e.amplitude;
    }
    AblDistribution marginal;
    for (auto it = grouped.rbegin(); it != grouped.rend(); ++it) {
        marginal.entries.push_back(it->second);
    }
    report.joint_product_marginal = std::move(marginal);

    bool holds = true;
    if (report.eor_a && report.eor_b) {
        double expected = std::round(report.eor_a->eigenvalue * report.eor_b->eigenvalue * 1e12) / 1e12;
        report.expected_product = expected;
        holds = report.product_eor && std::abs(report.product_eor->eigenvalue - expected) <= 1e-12;
    }
    report.product_rule_holds = holds;
    return report;
}

}  // namespace tsvf
