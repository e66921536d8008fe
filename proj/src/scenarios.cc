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

#include "tsvf/scenarios.h"

#include <cmath>
#include <fstream>
#include <regex>
#include <set>
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

/// Thrown while parsing; carries the JSON pointer of the offending node.
struct ParseFailure {
    std::string path;
    std::string message;
};

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw ParseFailure{path.empty() ? "/" : path, message};
}

const json &require_field(const json &obj, const std::string &path, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string as_string(const json &node, const std::string &path) {
    if (!node.is_string()) {
        fail(path, "expected a string");
    }
    return node.get<std::string>();
}

double as_number(const json &node, const std::string &path) {
    if (!node.is_number()) {
        fail(path, "expected a number");
    }
    double v = node.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

std::uint64_t as_unsigned(const json &node, const std::string &path) {
    if (!node.is_number_integer() || (!node.is_number_unsigned() && node.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return node.get<std::uint64_t>();
}

Complex as_complex(const json &node, const std::string &path) {
    if (!node.is_array() || node.size() != 2) {
        fail(path, "expected a complex number [re, im]");
    }
    return {as_number(node[0], path + "/0"), as_number(node[1], path + "/1")};
}

std::vector<Complex> as_complex_list(const json &node, const std::string &path, std::size_t expected) {
    if (!node.is_array()) {
        fail(path, "expected a list of [re, im] pairs");
    }
    if (node.size() != expected) {
        fail(path, "expected " + std::to_string(expected) + " amplitudes, got " + std::to_string(node.size()));
    }
    std::vector<Complex> out;
    for (std::size_t i = 0; i < node.size(); i++) {
        out.push_back(as_complex(node[i], path + "/" + std::to_string(i)));
    }
    return out;
}

json complex_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

json ket_json(const Ket &k) {
    json out = json::array();
    for (const Complex &a : k.amplitudes()) {
        out.push_back(complex_json(a));
    }
    return out;
}

Ket parse_state(const json &node, const std::string &path, const SubsystemLayout &layout, bool normalize,
                double eps) {
    Ket ket(layout, as_complex_list(node, path, layout.dimension()));
    if (ket.is_normalized(eps)) {
        return ket;
    }
    if (!normalize) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "state is not normalized (norm " << ket.norm() << "); set \"normalize\": true to rescale";
        fail(path, msg.str());
    }
    if (!(ket.norm() > 0)) {
        fail(path, "cannot normalize a zero state");
    }
    return ket.normalized();
}

Observable parse_observable(const json &node, const std::string &path, const SubsystemLayout &layout,
                            std::optional<std::size_t> target, const std::vector<std::vector<std::string>> &labels) {
    if (node.is_string()) {
        std::string keyword = node.get<std::string>();
        if (!target) {
            fail(path, "keyword observable '" + keyword + "' needs a 'target'");
        }
        if (*target >= layout.num_subsystems()) {
            fail(path, "target " + std::to_string(*target) + " out of range for dims " + layout.str());
        }
        if (keyword == "sigma_x" || keyword == "sigma_y" || keyword == "sigma_z") {
            if (layout.dim(*target) != 2) {
                fail(path, keyword + " needs a qubit target");
            }
            return pauli_observable(keyword.back(), *target, layout);
        }
        if (keyword == "basis") {
            std::vector<std::string> names = labels.empty() ? std::vector<std::string>{} : labels[*target];
            return basis_observable(*target, layout, names);
        }
        fail(path, "unknown observable keyword '" + keyword + "' (sigma_x, sigma_y, sigma_z, basis)");
    }
    if (!node.is_object()) {
        fail(path, "expected an observable keyword or {\"branches\": [...]}");
    }
    const json &branches = require_field(node, path, "branches");
    if (!branches.is_array() || branches.empty()) {
        fail(path + "/branches", "expected a non-empty list of branches");
    }
    std::size_t n = layout.dimension();
    std::vector<Branch> out;
    for (std::size_t i = 0; i < branches.size(); i++) {
        std::string bp = path + "/branches/" + std::to_string(i);
        const json &b = branches[i];
        if (!b.is_object()) {
            fail(bp, "expected a branch object");
        }
        std::string label = as_string(require_field(b, bp, "label"), bp + "/label");
        double eigenvalue = as_number(require_field(b, bp, "eigenvalue"), bp + "/eigenvalue");
        const json &m = require_field(b, bp, "projector");
        std::string mp = bp + "/projector";
        if (!m.is_array() || m.size() != n) {
            fail(mp, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix of [re, im]");
        }
        std::vector<Complex> entries;
        for (std::size_t r = 0; r < n; r++) {
            std::vector<Complex> row = as_complex_list(m[r], mp + "/" + std::to_string(r), n);
            entries.insert(entries.end(), row.begin(), row.end());
        }
        out.push_back({std::move(label), eigenvalue, Operator(layout, std::move(entries))});
    }
    return Observable(layout, std::move(out));
}

std::string as_observable_spec(const json &node, const std::string &path) {
    return as_string(node, path);
}

AnalysisRequest parse_analysis(const json &node, const std::string &path) {
    if (!node.is_object()) {
        fail(path, "expected an analysis object");
    }
    std::string kind = as_string(require_field(node, path, "kind"), path + "/kind");
    if (kind == "compare_orderings") {
        const json &list = require_field(node, path, "orderings");
        if (!list.is_array()) {
            fail(path + "/orderings", "expected a list of orderings");
        }
        CompareOrderingsRequest req;
        for (std::size_t i = 0; i < list.size(); i++) {
            std::string op = path + "/orderings/" + std::to_string(i);
            if (!list[i].is_array()) {
                fail(op, "expected a list of event ids");
            }
            Ordering o;
            for (std::size_t j = 0; j < list[i].size(); j++) {
                o.sequence.push_back(as_string(list[i][j], op + "/" + std::to_string(j)));
            }
            req.orderings.push_back(std::move(o));
        }
        return req;
    }
    if (kind == "abl") {
        return AblRequest{as_observable_spec(require_field(node, path, "observable"), path + "/observable")};
    }
    if (kind == "eor") {
        EorRequest req{as_observable_spec(require_field(node, path, "observable"), path + "/observable")};
        if (node.contains("tolerance")) {
            req.tolerance = as_number(node["tolerance"], path + "/tolerance");
        }
        return req;
    }
    if (kind == "check_rules") {
        return CheckRulesRequest{as_observable_spec(require_field(node, path, "a"), path + "/a"),
                                 as_observable_spec(require_field(node, path, "b"), path + "/b")};
    }
    if (kind == "weak_value") {
        return WeakValueRequest{as_observable_spec(require_field(node, path, "operator"), path + "/operator")};
    }
    if (kind == "weak_mc") {
        WeakMcRequest req{as_observable_spec(require_field(node, path, "operator"), path + "/operator"), {}};
        req.config.g = as_number(require_field(node, path, "g"), path + "/g");
        req.config.delta = as_number(require_field(node, path, "delta"), path + "/delta");
        req.config.post_samples = as_unsigned(require_field(node, path, "post_samples"), path + "/post_samples");
        req.config.seed = as_unsigned(require_field(node, path, "seed"), path + "/seed");
        if (node.contains("grid")) {
            req.config.grid_points = as_unsigned(node["grid"], path + "/grid");
        }
        if (node.contains("shards")) {
            req.config.shards = as_unsigned(node["shards"], path + "/shards");
        }
        return req;
    }
    fail(path + "/kind", "unknown analysis kind '" + kind + "'");
}

json analysis_json(const AnalysisRequest &request) {
    json out;
    out["kind"] = analysis_kind(request);
    std::visit(overloaded{
                   [&](const CompareOrderingsRequest &r) {
                       json list = json::array();
                       for (const Ordering &o : r.orderings) {
                           list.push_back(o.sequence);
                       }
                       out["orderings"] = list;
                   },
                   [&](const AblRequest &r) { out["observable"] = r.observable; },
                   [&](const EorRequest &r) {
                       out["observable"] = r.observable;
                       out["tolerance"] = r.tolerance;
                   },
                   [&](const CheckRulesRequest &r) {
                       out["a"] = r.a;
                       out["b"] = r.b;
                   },
                   [&](const WeakValueRequest &r) { out["operator"] = r.op; },
                   [&](const WeakMcRequest &r) {
                       out["operator"] = r.op;
                       out["g"] = r.config.g;
                       out["delta"] = r.config.delta;
                       out["post_samples"] = r.config.post_samples;
                       out["seed"] = r.config.seed;
                       out["grid"] = r.config.grid_points;
                       out["shards"] = r.config.shards;
                   },
               },
               request);
    return out;
}

bool operators_close(const Operator &a, const Operator &b, double eps) {
    return a.layout() == b.layout() && (a - b).max_abs() <= eps;
}

std::optional<std::string> pauli_keyword(const MeasurementEvent &e) {
    if (!e.target || *e.target >= e.observable.layout().num_subsystems() ||
        e.observable.layout().dim(*e.target) != 2) {
        return std::nullopt;
    }
    for (char axis : {'x', 'y', 'z'}) {
        Observable k = pauli_observable(axis, *e.target, e.observable.layout());
        const auto &ours = e.observable.branches();
        const auto &theirs = k.branches();
        if (ours.size() != theirs.size()) {
            continue;
        }
        bool same = true;
        for (std::size_t i = 0; i < ours.size() && same; i++) {
            same = ours[i].label == theirs[i].label && ours[i].eigenvalue == theirs[i].eigenvalue &&
                   operators_close(ours[i].projector, theirs[i].projector, 1e-15);
        }
        if (same) {
            return std::string("sigma_") + axis;
        }
    }
    return std::nullopt;
}

}  // namespace

std::string analysis_kind(const AnalysisRequest &request) {
    return std::visit(overloaded{
                          [](const CompareOrderingsRequest &) { return std::string("compare_orderings"); },
                          [](const AblRequest &) { return std::string("abl"); },
                          [](const EorRequest &) { return std::string("eor"); },
                          [](const CheckRulesRequest &) { return std::string("check_rules"); },
                          [](const WeakValueRequest &) { return std::string("weak_value"); },
                          [](const WeakMcRequest &) { return std::string("weak_mc"); },
                      },
                      request);
}

bool ScenarioReport::ok() const {
    return error_count() == 0;
}

std::size_t ScenarioReport::error_count() const {
    std::size_t n = 0;
    for (const ScenarioIssue &i : issues) {
        n += i.warning ? 0 : 1;
    }
    return n;
}

std::size_t ScenarioReport::warning_count() const {
    return issues.size() - error_count();
}

std::string ScenarioReport::summary() const {
    std::string out;
    for (const ScenarioIssue &i : issues) {
        out += (out.empty() ? "" : "\n") + std::string(i.warning ? "warning " : "error ") + i.path + ": " + i.message;
    }
    return out;
}

Scenario builtin_three_box() {
    SubsystemLayout layout({3});
    Ket initial(layout, {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)});
    Observable open_a = indicator_observable(projector_onto(Ket::basis(layout, 0)));
    Observable open_c = indicator_observable(projector_onto(Ket::basis(layout, 2)));
    Scenario s{
        "three-box",
        layout,
        {{"A", "B", "C"}},
        initial,
        std::nullopt,
        {
            {"A", open_a, "not", std::nullopt},
            {"C", open_c, "found", std::nullopt},
        },
        {CompareOrderingsRequest{{Ordering{{"A", "C"}}, Ordering{{"C", "A"}}}}},
    };
    return s;
}

Scenario builtin_hardy_spins() {
    SubsystemLayout layout({2, 2});
    double r = 1 / std::sqrt(3.0);
    Ket initial(layout, {r, r, r, 0});
    WeakMeasurementConfig mc;
    mc.g = 0.05;
    mc.delta = 1;
    mc.post_samples = 100000;
    mc.seed = 42;
    Scenario s{
        "hardy",
        layout,
        {{"up", "down"}, {"up", "down"}},
        initial,
        std::nullopt,
        {
            {"1", pauli_observable('x', 0, layout), "-1", 0},
            {"2", pauli_observable('x', 1, layout), "-1", 1},
        },
        {
            CompareOrderingsRequest{{Ordering{{"1", "2"}}, Ordering{{"2", "1"}}}},
            AblRequest{"z1"},
            AblRequest{"z2"},
            AblRequest{"z1z2"},
            EorRequest{"z1"},
            EorRequest{"z2"},
            EorRequest{"z1z2"},
            EorRequest{"x1"},
            EorRequest{"x2"},
            CheckRulesRequest{"z1", "z2"},
            CheckRulesRequest{"x1", "x2"},
            WeakValueRequest{"z1"},
            WeakValueRequest{"z2"},
            WeakValueRequest{"z1z2"},
            WeakMcRequest{"z1z2", mc},
        },
    };
    return s;
}

std::vector<std::string> builtin_names() {
    return {"three-box", "hardy"};
}

std::optional<Scenario> builtin_scenario(std::string_view name) {
    if (name == "three-box") {
        return builtin_three_box();
    }
    if (name == "hardy") {
        return builtin_hardy_spins();
    }
    return std::nullopt;
}

Observable resolve_observable(const Scenario &scenario, std::string_view spec) {
    for (const MeasurementEvent &e : scenario.events) {
        if (e.id == spec) {
            return e.observable;
        }
    }
    std::string s(spec);
    static const std::regex basis_re("basis([0-9]+)");
    static const std::regex pauli_re("([xyz][0-9]+)+");
    std::smatch m;
    if (std::regex_match(s, m, basis_re)) {
        std::size_t k = std::stoul(m[1].str());
        if (k == 0 || k > scenario.layout.num_subsystems()) {
            throw ValidationError("observable '" + s + "': subsystem index out of range (1-based)");
        }
        std::vector<std::string> labels = scenario.basis_labels.empty() ? std::vector<std::string>{}
                                                                         : scenario.basis_labels[k - 1];
        return basis_observable(k - 1, scenario.layout, labels);
    }
    if (std::regex_match(s, pauli_re)) {
        std::vector<std::pair<char, std::size_t>> factors;
        static const std::regex factor_re("([xyz])([0-9]+)");
        for (auto it = std::sregex_iterator(s.begin(), s.end(), factor_re); it != std::sregex_iterator(); ++it) {
            std::size_t k = std::stoul((*it)[2].str());
            if (k == 0 || k > scenario.layout.num_subsystems()) {
                throw ValidationError("observable '" + s + "': qubit index out of range (1-based)");
            }
            factors.emplace_back((*it)[1].str()[0], k - 1);
        }
        try {
            return pauli_product_observable(factors, scenario.layout);
        } catch (const DimensionError &e) {
            throw ValidationError("observable '" + s + "': " + e.what());
        }
    }
    throw ValidationError("unknown observable '" + s + "' (expected an event id, a Pauli string like z1 or z1z2, or basis<k>)");
}

Ket post_selected_state(const Scenario &scenario, double eps) {
    if (scenario.post) {
        return *scenario.post;
    }
    Ordering listed;
    for (const MeasurementEvent &e : scenario.events) {
        listed.sequence.push_back(e.id);
    }
    if (scenario.events.empty()) {
        throw ValidationError("scenario '" + scenario.name + "' has neither a post state nor post-selection events");
    }
    Ket final = run_ordering(scenario.initial, scenario.events, listed, eps).trajectory.back();
    for (std::size_t i = 0; i < final.dimension(); i++) {
        if (std::abs(final[i]) > eps) {
            return final * (std::abs(final[i]) / final[i]);
        }
    }
    return final;
}

TwoStateVector two_state(const Scenario &scenario, double eps) {
    return TwoStateVector(scenario.initial, post_selected_state(scenario, eps), eps);
}

ScenarioReport validate_scenario(const Scenario &scenario, double eps) {
    ScenarioReport report;
    auto error = [&](std::string path, std::string message) {
        report.issues.push_back({std::move(path), std::move(message), false});
    };
    if (scenario.name.empty()) {
        error("/name", "name must not be empty");
    }
    if (!scenario.basis_labels.empty()) {
        if (scenario.basis_labels.size() != scenario.layout.num_subsystems()) {
            error("/basis_labels", "expected one label list per subsystem");
        } else {
            for (std::size_t k = 0; k < scenario.basis_labels.size(); k++) {
                if (scenario.basis_labels[k].size() != scenario.layout.dim(k)) {
                    error("/basis_labels/" + std::to_string(k), "label count does not match the subsystem dimension");
                }
            }
        }
    }
    if (scenario.initial.layout() != scenario.layout) {
        error("/initial", "initial state layout does not match dims");
    } else if (!scenario.initial.is_normalized(eps)) {
        std::ostringstream msg;
        msg << "initial state is not normalized (norm " << scenario.initial.norm() << ")";
        error("/initial", msg.str());
    }
    if (scenario.post) {
        if (scenario.post->layout() != scenario.layout) {
            error("/post", "post-selected state layout does not match dims");
        } else if (!scenario.post->is_normalized(eps)) {
            std::ostringstream msg;
            msg << "post-selected state is not normalized (norm " << scenario.post->norm() << ")";
            error("/post", msg.str());
        }
    }

    std::set<std::string> ids;
    bool events_ok = true;
    for (std::size_t i = 0; i < scenario.events.size(); i++) {
        const MeasurementEvent &e = scenario.events[i];
        std::string path = "/events/" + std::to_string(i);
        if (e.id.empty()) {
            error(path + "/id", "event id must not be empty");
        } else if (!ids.insert(e.id).second) {
            error(path + "/id", "duplicate event id '" + e.id + "'");
            events_ok = false;
        }
        if (e.target && *e.target >= scenario.layout.num_subsystems()) {
            error(path + "/target", "target out of range");
        }
        if (e.observable.layout() != scenario.layout) {
            error(path + "/observable", "event '" + e.id + "' observable layout does not match dims");
            events_ok = false;
            continue;
        }
        ValidationReport v = validate_observable(e.observable, eps);
        if (!v.ok()) {
            error(path + "/observable", "event '" + e.id + "' observable is invalid: " + v.summary());
            events_ok = false;
            continue;
        }
        if (e.forced_outcome && !e.observable.find(*e.forced_outcome)) {
            error(path + "/forced_outcome", "event '" + e.id + "' has no outcome '" + *e.forced_outcome + "'");
            events_ok = false;
        }
    }
    if (events_ok) {
        for (const std::string &w : commutation_warnings(scenario.events, eps)) {
            if (w.find("do not commute") != std::string::npos) {
                report.issues.push_back({"/events", w, true});
            }
        }
    }

    for (std::size_t i = 0; i < scenario.analyses.size(); i++) {
        std::string path = "/analyses/" + std::to_string(i);
        auto check_spec = [&](const std::string &spec, const std::string &field) {
            try {
                Observable o = resolve_observable(scenario, spec);
                ValidationReport v = validate_observable(o, eps);
                if (!v.ok()) {
                    error(path + field, "observable '" + spec + "' is invalid: " + v.summary());
                }
            } catch (const Error &ex) {
                error(path + field, ex.what());
            }
        };
        std::visit(overloaded{
                       [&](const CompareOrderingsRequest &r) {
                           if (r.orderings.size() < 2) {
                               error(path + "/orderings", "need at least two orderings");
                           }
                           for (std::size_t j = 0; j < r.orderings.size(); j++) {
                               try {
                                   validate_ordering(scenario.events, r.orderings[j]);
                               } catch (const Error &ex) {
                                   error(path + "/orderings/" + std::to_string(j), ex.what());
                               }
                           }
                       },
                       [&](const AblRequest &r) { check_spec(r.observable, "/observable"); },
                       [&](const EorRequest &r) {
                           check_spec(r.observable, "/observable");
                           if (!(r.tolerance > 0 && r.tolerance < 1)) {
                               error(path + "/tolerance", "tolerance must lie in (0, 1)");
                           }
                       },
                       [&](const CheckRulesRequest &r) {
                           check_spec(r.a, "/a");
                           check_spec(r.b, "/b");
                       },
                       [&](const WeakValueRequest &r) { check_spec(r.op, "/operator"); },
                       [&](const WeakMcRequest &r) {
                           check_spec(r.op, "/operator");
                           try {
                               r.config.validate();
                           } catch (const Error &ex) {
                               error(path, ex.what());
                           }
                       },
                   },
                   scenario.analyses[i]);
    }
    return report;
}

Scenario load_scenario(const json &doc, double eps) {
    try {
        if (!doc.is_object()) {
            fail("", "scenario document must be a JSON object");
        }
        std::string name = as_string(require_field(doc, "", "name"), "/name");
        const json &dims_node = require_field(doc, "", "dims");
        if (!dims_node.is_array() || dims_node.empty()) {
            fail("/dims", "expected a non-empty list of subsystem dimensions");
        }
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < dims_node.size(); i++) {
            dims.push_back(as_unsigned(dims_node[i], "/dims/" + std::to_string(i)));
        }
        SubsystemLayout layout;
        try {
            layout = SubsystemLayout(dims);
        } catch (const Error &e) {
            fail("/dims", e.what());
        }

        std::vector<std::vector<std::string>> labels;
        if (doc.contains("basis_labels")) {
            const json &bl = doc["basis_labels"];
            if (!bl.is_array()) {
                fail("/basis_labels", "expected one list of labels per subsystem");
            }
            for (std::size_t k = 0; k < bl.size(); k++) {
                std::string p = "/basis_labels/" + std::to_string(k);
                if (!bl[k].is_array()) {
                    fail(p, "expected a list of labels");
                }
                std::vector<std::string> row;
                for (std::size_t j = 0; j < bl[k].size(); j++) {
                    row.push_back(as_string(bl[k][j], p + "/" + std::to_string(j)));
                }
                labels.push_back(std::move(row));
            }
            if (labels.size() != layout.num_subsystems()) {
                fail("/basis_labels", "expected one list of labels per subsystem");
            }
            for (std::size_t k = 0; k < labels.size(); k++) {
                if (labels[k].size() != layout.dim(k)) {
                    fail("/basis_labels/" + std::to_string(k), "label count does not match the subsystem dimension");
                }
            }
        }

        bool normalize = false;
        if (doc.contains("normalize")) {
            if (!doc["normalize"].is_boolean()) {
                fail("/normalize", "expected true or false");
            }
            normalize = doc["normalize"].get<bool>();
        }
        Ket initial = parse_state(require_field(doc, "", "initial"), "/initial", layout, normalize, eps);
        std::optional<Ket> post;
        if (doc.contains("post")) {
            post = parse_state(doc["post"], "/post", layout, normalize, eps);
        }

        std::vector<MeasurementEvent> events;
        if (doc.contains("events")) {
            const json &list = doc["events"];
            if (!list.is_array()) {
                fail("/events", "expected a list of events");
            }
            for (std::size_t i = 0; i < list.size(); i++) {
                std::string p = "/events/" + std::to_string(i);
                const json &e = list[i];
                if (!e.is_object()) {
                    fail(p, "expected an event object");
                }
                std::string id = as_string(require_field(e, p, "id"), p + "/id");
                std::optional<std::size_t> target;
                if (e.contains("target")) {
                    target = as_unsigned(e["target"], p + "/target");
                    if (*target >= layout.num_subsystems()) {
                        fail(p + "/target", "target out of range for dims " + layout.str());
                    }
                }
                Observable obs =
                    parse_observable(require_field(e, p, "observable"), p + "/observable", layout, target, labels);
                std::optional<std::string> forced;
                if (e.contains("forced_outcome") && !e["forced_outcome"].is_null()) {
                    forced = as_string(e["forced_outcome"], p + "/forced_outcome");
                }
                events.push_back({std::move(id), std::move(obs), std::move(forced), target});
            }
        }

        std::vector<AnalysisRequest> analyses;
        if (doc.contains("analyses")) {
            const json &list = doc["analyses"];
            if (!list.is_array()) {
                fail("/analyses", "expected a list of analyses");
            }
            for (std::size_t i = 0; i < list.size(); i++) {
                analyses.push_back(parse_analysis(list[i], "/analyses/" + std::to_string(i)));
            }
        }

        Scenario scenario{std::move(name), layout, std::move(labels), std::move(initial),
                          std::move(post), std::move(events), std::move(analyses)};
        ScenarioReport report = validate_scenario(scenario, eps);
        if (!report.ok()) {
            std::vector<std::string> issues;
            for (const ScenarioIssue &i : report.issues) {
                if (!i.warning) {
                    issues.push_back(i.path + ": " + i.message);
                }
            }
            throw ValidationError("invalid scenario '" + scenario.name + "':\n" + report.summary(), issues);
        }
        return scenario;
    } catch (const ParseFailure &f) {
        throw ValidationError("invalid scenario document at " + f.path + ": " + f.message, {f.path + ": " + f.message});
    }
}

Scenario load_scenario_text(std::string_view text, double eps) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return load_scenario(doc, eps);
}

Scenario load_scenario_file(const std::string &path, double eps) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open scenario file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_scenario_text(buffer.str(), eps);
}

json serialize_scenario(const Scenario &scenario) {
    json doc;
    doc["name"] = scenario.name;
    doc["dims"] = scenario.layout.dims();
    if (!scenario.basis_labels.empty()) {
        doc["basis_labels"] = scenario.basis_labels;
    }
    doc["initial"] = ket_json(scenario.initial);
    if (scenario.post) {
        doc["post"] = ket_json(*scenario.post);
    }
    json events = json::array();
    for (const MeasurementEvent &e : scenario.events) {
        json ej;
        ej["id"] = e.id;
        if (e.target) {
            ej["target"] = *e.target;
        }
        if (auto keyword = pauli_keyword(e)) {
            ej["observable"] = *keyword;
        } else {
            json branches = json::array();
            for (const Branch &b : e.observable.branches()) {
                json matrix = json::array();
                std::size_t n = b.projector.dimension();
                for (std::size_t r = 0; r < n; r++) {
                    json row = json::array();
                    for (std::size_t c = 0; c < n; c++) {
                        row.push_back(complex_json(b.projector(r, c)));
                    }
                    matrix.push_back(row);
                }
                branches.push_back({{"label", b.label}, {"eigenvalue", b.eigenvalue}, {"projector", matrix}});
            }
            ej["observable"] = {{"branches", branches}};
        }
        if (e.forced_outcome) {
            ej["forced_outcome"] = *e.forced_outcome;
        }
        events.push_back(ej);
    }
    doc["events"] = events;
    json analyses = json::array();
    for (const AnalysisRequest &r : scenario.analyses) {
        analyses.push_back(analysis_json(r));
    }
    doc["analyses"] = analyses;
    return doc;
}

bool equivalent(const Scenario &a, const Scenario &b, double eps, std::string *why) {
    auto differ = [&](const std::string &reason) {
        if (why) {
            *why = reason;
        }
        return false;
    };
    // Global phase is not physical: compare rays.
    auto kets_close = [&](const Ket &x, const Ket &y) { return x.layout() == y.layout() && same_ray(x, y, eps); };
    if (a.name != b.name) {
        return differ("names differ");
    }
    if (a.layout != b.layout) {
        return differ("dims differ");
    }
    if (a.basis_labels != b.basis_labels) {
        return differ("basis labels differ");
    }
    if (!kets_close(a.initial, b.initial)) {
        return differ("initial states differ");
    }
    if (a.post.has_value() != b.post.has_value() || (a.post && !kets_close(*a.post, *b.post))) {
        return differ("post-selected states differ");
    }
    if (a.events.size() != b.events.size()) {
        return differ("event counts differ");
    }
    for (std::size_t i = 0; i < a.events.size(); i++) {
        const MeasurementEvent &x = a.events[i];
        const MeasurementEvent &y = b.events[i];
        if (x.id != y.id || x.target != y.target || x.forced_outcome != y.forced_outcome) {
            return differ("event " + std::to_string(i) + " header differs");
        }
        const auto &bx = x.observable.branches();
        const auto &by = y.observable.branches();
        if (bx.size() != by.size()) {
            return differ("event '" + x.id + "' branch counts differ");
        }
        for (std::size_t k = 0; k < bx.size(); k++) {
            if (bx[k].label != by[k].label || std::abs(bx[k].eigenvalue - by[k].eigenvalue) > eps ||
                !operators_close(bx[k].projector, by[k].projector, eps)) {
                return differ("event '" + x.id + "' branch '" + bx[k].label + "' differs");
            }
        }
    }
    if (a.analyses.size() != b.analyses.size()) {
        return differ("analysis counts differ");
    }
    for (std::size_t i = 0; i < a.analyses.size(); i++) {
        if (analysis_json(a.analyses[i]) != analysis_json(b.analyses[i])) {
            return differ("analysis " + std::to_string(i) + " differs");
        }
    }
    return true;
}

}  // namespace tsvf
