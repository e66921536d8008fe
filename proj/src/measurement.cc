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

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tsvf/errors.h"

namespace tsvf {

Observable::Observable(SubsystemLayout layout, std::vector<Branch> branches)
    : layout_(std::move(layout)), branches_(std::move(branches)) {
}

const Branch *Observable::find(std::string_view label) const {
    for (const Branch &b : branches_) {
        if (b.label == label) {
            return &b;
        }
    }
    return nullptr;
}

const Branch &Observable::branch(std::string_view label) const {
    if (const Branch *b = find(label)) {
        return *b;
    }
    std::string known;
    for (const Branch &b : branches_) {
        known += (known.empty() ? "" : ", ") + b.label;
    }
    throw ValidationError("unknown outcome '" + std::string(label) + "' (known: " + known + ")");
}

Operator Observable::as_operator() const {
    Operator total = Operator::zero(layout_);
    for (const Branch &b : branches_) {
        total = total + b.projector * Complex(b.eigenvalue);
    }
    return total;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); i++) {
        const Violation &v = violations[i];
        out << (i ? "; " : "") << v.kind << ": " << v.detail;
        if (v.norm != 0) {
            out << " (norm " << v.norm << ")";
        }
    }
    return out.str();
}

ValidationReport validate_observable(const Observable &obs, double eps) {
    ValidationReport report;
    const auto &branches = obs.branches();
    if (branches.empty()) {
        report.violations.push_back({"completeness", "observable has no branches", 1});
        return report;
    }
    std::set<std::string> labels;
    bool layouts_ok = true;
    for (const Branch &b : branches) {
        if (!labels.insert(b.label).second) {
            report.violations.push_back({"label", "duplicate label '" + b.label + "'", 0});
        }
        if (b.label.empty()) {
            report.violations.push_back({"label", "empty label", 0});
        }
        if (!std::isfinite(b.eigenvalue)) {
            report.violations.push_back({"label", "branch '" + b.label + "' has a non-finite eigenvalue", 0});
        }
        if (b.projector.layout() != obs.layout()) {
            report.violations.push_back({"layout",
                                         "branch '" + b.label + "' projector lives on " + b.projector.layout().str() +
                                             ", observable on " + obs.layout().str(),
                                         0});
            layouts_ok = false;
        }
    }
    if (!layouts_ok) {
        return report;
    }
    for (const Branch &b : branches) {
        double idem = (b.projector * b.projector - b.projector).max_abs();
        double herm = (b.projector - b.projector.adjoint()).max_abs();
        if (idem > eps) {
            report.violations.push_back({"projector", "branch '" + b.label + "' is not idempotent", idem});
        }
        if (herm > eps) {
            report.violations.push_back({"projector", "branch '" + b.label + "' is not Hermitian", herm});
        }
    }
    for (std::size_t i = 0; i < branches.size(); i++) {
        for (std::size_t j = i + 1; j < branches.size(); j++) {
            double n = (branches[i].projector * branches[j].projector).max_abs();
            if (n > eps) {
                report.violations.push_back(
                    {"orthogonality", "branches '" + branches[i].label + "' and '" + branches[j].label + "' overlap",
                     n});
            }
        }
    }
    Operator sum = Operator::zero(obs.layout());
    for (const Branch &b : branches) {
        sum = sum + b.projector;
    }
    double completeness = (sum - Operator::identity(obs.layout())).max_abs();
    if (completeness > eps) {
        report.violations.push_back({"completeness", "projectors do not sum to the identity", completeness});
    }
    return report;
}

void require_valid(const Observable &obs, const std::string &what, double eps) {
    ValidationReport report = validate_observable(obs, eps);
    if (!report.ok()) {
        std::vector<std::string> issues;
        for (const Violation &v : report.violations) {
            issues.push_back(v.kind + ": " + v.detail);
        }
        throw ValidationError(what + " is not a valid observable: " + report.summary(), std::move(issues));
    }
}

double OutcomeDistribution::probability(std::string_view label) const {
    for (const auto &[l, p] : entries) {
        if (l == label) {
            return p;
        }
    }
    throw ValidationError("unknown outcome '" + std::string(label) + "'");
}

double OutcomeDistribution::total() const {
    double t = 0;
    for (const auto &e : entries) {
        t += e.second;
    }
    return t;
}

OutcomeDistribution born_distribution(const Ket &state, const Observable &obs, double eps) {
    state.require_normalized("state", eps);
    require_valid(obs, "observable", eps);
    if (state.layout() != obs.layout()) {
        throw DimensionError("state layout " + state.layout().str() + " does not match observable layout " +
                             obs.layout().str());
    }
    OutcomeDistribution dist;
    for (const Branch &b : obs.branches()) {
        dist.entries.emplace_back(b.label, apply(b.projector, state).norm_squared());
    }
    return dist;
}

namespace {

Ket collapse_unchecked(const Ket &state, const Branch &branch, double eps, double *probability) {
    Ket projected = apply(branch.projector, state);
    double p = projected.norm_squared();
    if (probability) {
        *probability = p;
    }
    if (p <= eps) {
        std::ostringstream msg;
        msg << "outcome '" << branch.label << "' has probability " << p << " <= " << eps;
        throw ImpossibleOutcomeError(msg.str(), 0);
    }
    return projected * Complex(1 / std::sqrt(p));
}

}  // namespace

Ket collapse(const Ket &state, const Observable &obs, std::string_view outcome, double eps) {
    state.require_normalized("state", eps);
    require_valid(obs, "observable", eps);
    if (state.layout() != obs.layout()) {
        throw DimensionError("state layout does not match observable layout");
    }
    return collapse_unchecked(state, obs.branch(outcome), eps, nullptr);
}

SequenceResult measure_sequence(const Ket &state, std::span<const MeasurementStep> steps, double eps) {
    state.require_normalized("initial state", eps);
    SequenceResult result;
    result.trajectory.push_back(state);
    for (std::size_t i = 0; i < steps.size(); i++) {
        const MeasurementStep &step = steps[i];
        require_valid(step.observable, "step " + std::to_string(i) + " observable", eps);
        if (step.observable.layout() != state.layout()) {
            throw DimensionError("step " + std::to_string(i) + " observable layout does not match the state");
        }
        double p = 0;
        try {
            result.trajectory.push_back(
                collapse_unchecked(result.trajectory.back(), step.observable.branch(step.outcome), eps, &p));
        } catch (const ImpossibleOutcomeError &e) {
            throw ImpossibleOutcomeError("step " + std::to_string(i) + ": " + e.what(), i);
        }
        result.step_probabilities.push_back(p);
        result.joint_probability *= p;
    }
    return result;
}

std::string eigenvalue_label(double value) {
    if (value == 0) {
        return "0";
    }
    char buf[64];
    if (std::abs(value) < 1e15 && value == std::round(value)) {
        std::snprintf(buf, sizeof buf, "%+lld", static_cast<long long>(value));
    } else {
        std::snprintf(buf, sizeof buf, "%+.12g", value);
    }
    return buf;
}

Observable pauli_observable(char axis, std::size_t target, const SubsystemLayout &layout) {
    std::pair<char, std::size_t> factor{axis, target};
    return pauli_product_observable(std::span(&factor, 1), layout);
}

Observable pauli_product_observable(std::span<const std::pair<char, std::size_t>> factors,
                                    const SubsystemLayout &layout) {
    if (factors.empty()) {
        throw ValidationError("Pauli product needs at least one factor");
    }
    std::set<std::size_t> seen;
    Operator product = Operator::identity(layout);
    for (const auto &[axis, target] : factors) {
        if (!seen.insert(target).second) {
            throw ValidationError("Pauli product repeats qubit " + std::to_string(target));
        }
        if (target >= layout.num_subsystems() || layout.dim(target) != 2) {
            throw DimensionError("Pauli factor needs a qubit at subsystem " + std::to_string(target) + " of " +
                                 layout.str());
        }
        Operator single = axis == 'x'   ? Operator::pauli_x()
                          : axis == 'y' ? Operator::pauli_y()
                          : axis == 'z' ? Operator::pauli_z()
                                        : throw ValidationError(std::string("unknown Pauli axis '") + axis + "'");
        product = product * lift_to_subsystem(single, target, layout);
    }
    Operator id = Operator::identity(layout);
    Operator plus = ((id + product) * Complex(0.5)).as_projector();
    Operator minus = ((id - product) * Complex(0.5)).as_projector();
    return Observable(layout, {{"+1", 1.0, plus}, {"-1", -1.0, minus}});
}

Observable basis_observable(std::size_t target, const SubsystemLayout &layout, std::span<const std::string> labels) {
    std::size_t d = layout.dim(target);
    if (!labels.empty() && labels.size() != d) {
        throw ValidationError("basis label count does not match subsystem dimension");
    }
    SubsystemLayout single({d});
    std::vector<Branch> branches;
    for (std::size_t i = 0; i < d; i++) {
        Operator p = lift_to_subsystem(projector_onto(Ket::basis(single, i)), target, layout);
        branches.push_back({labels.empty() ? std::to_string(i) : labels[i], static_cast<double>(i), std::move(p)});
    }
    return Observable(layout, std::move(branches));
}

Observable indicator_observable(const Operator &projector, std::string found_label, std::string missing_label) {
    Operator p = projector.as_projector();
    Operator complement = (Operator::identity(p.layout()) - p).as_projector();
    return Observable(p.layout(), {{std::move(found_label), 1.0, p}, {std::move(missing_label), 0.0, complement}});
}

double max_commutator_norm(const Observable &a, const Observable &b) {
    double worst = 0;
    for (const Branch &x : a.branches()) {
        for (const Branch &y : b.branches()) {
            worst = std::max(worst, commutator(x.projector, y.projector).max_abs());
        }
    }
    return worst;
}

Observable joint_observable(const Observable &a, const Observable &b, double eps) {
    require_valid(a, "first observable", eps);
    require_valid(b, "second observable", eps);
    if (a.layout() != b.layout()) {
        throw DimensionError("joint observable operands live on different layouts");
    }
    double c = max_commutator_norm(a, b);
    if (c > eps) {
        std::ostringstream msg;
        msg << "observables do not commute (|[P,Q]|_max = " << c << ")";
        throw ValidationError(msg.str());
    }
    std::vector<Branch> branches;
    for (const Branch &x : a.branches()) {
        for (const Branch &y : b.branches()) {
            Operator p = x.projector * y.projector;
            if (p.max_abs() <= eps) {
                continue;
            }
            branches.push_back({x.label + "," + y.label, x.eigenvalue * y.eigenvalue, p.as_projector(eps)});
        }
    }
    return Observable(a.layout(), std::move(branches));
}

Observable product_observable(const Observable &a, const Observable &b, double eps) {
    Observable joint = joint_observable(a, b, eps);
    std::map<double, Operator> groups;
    for (const Branch &branch : joint.branches()) {
        double key = std::round(branch.eigenvalue * 1e12) / 1e12;
        auto it = groups.find(key);
        if (it == groups.end()) {
            groups.emplace(key, branch.projector);
        } else {
            it->second = it->second + branch.projector;
        }
    }
    std::vector<Branch> branches;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        branches.push_back({eigenvalue_label(it->first), it->first, it->second.as_projector(eps)});
    }
    return Observable(a.layout(), std::move(branches));
}

}  // namespace tsvf
