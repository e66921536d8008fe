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

#include "tsvf/cli.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "CLI11.hpp"
#include "tsvf/errors.h"
#include "tsvf/report.h"

namespace tsvf::cli {

using nlohmann::json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    std::string format = "json";
    std::string scenario = "hardy";
    std::string ordering;
    std::string observable;
    std::string a;
    std::string b;
    std::string op;
    double tolerance = kCertaintyTolerance;
    bool exact = false;
    double g = 0.05;
    double delta = 1;
    std::size_t post_samples = 0;
    std::uint64_t seed = 0;
    std::size_t grid = 16384;
    std::size_t shards = 1;
};

Scenario resolve_scenario(const std::string &name_or_path, double eps) {
    if (auto builtin = builtin_scenario(name_or_path)) {
        return *builtin;
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(name_or_path, ec)) {
        return load_scenario_file(name_or_path, eps);
    }
    std::string known;
    for (const std::string &n : builtin_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw UsageError("unknown scenario '" + name_or_path + "' (built-ins: " + known + "; or a path to a JSON file)");
}

std::vector<std::string> split_ids(const std::string &text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            out.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

json list_report() {
    json items = json::array();
    for (const std::string &name : builtin_names()) {
        Scenario s = *builtin_scenario(name);
        json events = json::array();
        for (const MeasurementEvent &e : s.events) {
            events.push_back(e.id);
        }
        items.push_back({{"name", name},
                         {"dims", s.layout.dims()},
                         {"events", events},
                         {"analyses", s.analyses.size()}});
    }
    return {{"tool", kToolName}, {"version", kToolVersion}, {"command", "list"}, {"scenarios", items}};
}

json execute(const std::string &command, const Options &opt, double eps) {
    if (command == "list") {
        return list_report();
    }
    Scenario scenario = resolve_scenario(opt.scenario, eps);
    json config = {{"epsilon", eps}, {"scenario", opt.scenario}};

    if (command == "run") {
        if (opt.ordering.empty()) {
            json report = scenario_report(scenario, eps);
            report["config"]["scenario"] = opt.scenario;
            return report;
        }
        Ordering ordering{split_ids(opt.ordering)};
        config["ordering"] = ordering.sequence;
        json result = ordering_run_to_json(run_ordering(scenario.initial, scenario.events, ordering, eps), scenario);
        result["kind"] = "ordering";
        return report_envelope(command, scenario, config, json::array({result}));
    }
    if (command == "abl") {
        config["observable"] = opt.observable;
        return report_envelope(command, scenario, config,
                               json::array({run_analysis(scenario, AblRequest{opt.observable}, eps)}));
    }
    if (command == "eor") {
        config["tolerance"] = opt.tolerance;
        json results = json::array();
        if (!opt.observable.empty()) {
            config["observable"] = opt.observable;
            results.push_back(run_analysis(scenario, EorRequest{opt.observable, opt.tolerance}, eps));
        } else {
            for (const AnalysisRequest &r : scenario.analyses) {
                if (const auto *e = std::get_if<EorRequest>(&r)) {
                    results.push_back(run_analysis(scenario, EorRequest{e->observable, opt.tolerance}, eps));
                }
            }
            if (results.empty()) {
                throw UsageError("scenario '" + scenario.name + "' lists no eor analyses; pass --observable");
            }
        }
        return report_envelope(command, scenario, config, results);
    }
    if (command == "check-rules") {
        config["a"] = opt.a;
        config["b"] = opt.b;
        return report_envelope(command, scenario, config,
                               json::array({run_analysis(scenario, CheckRulesRequest{opt.a, opt.b}, eps)}));
    }
    if (command == "weak") {
        config["operator"] = opt.op;
        json result = run_analysis(scenario, WeakValueRequest{opt.op}, eps);
        if (opt.exact) {
            WeakMeasurementConfig wc;
            wc.g = opt.g;
            wc.delta = opt.delta;
            wc.grid_points = opt.grid;
            wc.validate();
            config["g"] = opt.g;
            config["delta"] = opt.delta;
            config["grid"] = opt.grid;
            TwoStateVector tsv = two_state(scenario, eps);
            Observable obs = resolve_observable(scenario, opt.op);
            PointerMoments m = pointer_moments(tsv, obs, opt.g, opt.delta, eps);
            PointerDensity d = pointer_density(tsv, obs, wc, eps);
            result["pointer"] = {{"exact_mean_over_g", m.mean / opt.g},
                                 {"exact_std", std::sqrt(m.variance)},
                                 {"grid_mean_over_g", d.mean() / opt.g},
                                 {"grid_integral", d.integral()},
                                 {"post_selection_probability", m.post_selection_probability},
                                 {"disturbance_fidelity", disturbance_fidelity(tsv.pre(), obs, opt.g, opt.delta, eps)}};
        }
        return report_envelope(command, scenario, config, json::array({result}));
    }
    if (command == "weak-mc") {
        WeakMcRequest req{opt.op, {}};
        req.config.g = opt.g;
        req.config.delta = opt.delta;
        req.config.post_samples = opt.post_samples;
        req.config.seed = opt.seed;
        req.config.grid_points = opt.grid;
        req.config.shards = opt.shards;
        req.config.validate();
        config["operator"] = opt.op;
        config["g"] = opt.g;
        config["delta"] = opt.delta;
        config["post_samples"] = opt.post_samples;
        config["seed"] = opt.seed;
        config["grid"] = opt.grid;
        config["shards"] = opt.shards;
        return report_envelope(command, scenario, config, json::array({run_analysis(scenario, req, eps)}));
    }
    throw UsageError("unknown command '" + command + "'");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    double eps = 1e-12;
    if (const char *env = std::getenv("TSVF_EPS")) {
        char *end = nullptr;
        errno = 0;
        double v = std::strtod(env, &end);
        if (errno != 0 || end == env || *end != '\0' || !std::isfinite(v) || v <= 0) {
            err << "error: TSVF_EPS must be a positive number, got '" << env << "'\n";
            return kUsageError;
        }
        eps = v;
    }
    set_default_epsilon(eps);

    Options opt;
    CLI::App app{"Pre- and post-selected quantum ensemble simulator", "tsvf"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--scenario", opt.scenario, "Built-in scenario name or path to a JSON scenario file");

    app.add_subcommand("list", "List built-in scenarios");
    auto *run_cmd = app.add_subcommand("run", "Run a scenario's analyses, or one ordering of its events");
    run_cmd->add_option("--ordering", opt.ordering, "Comma-separated event ids, e.g. A,C");
    auto *abl_cmd = app.add_subcommand("abl", "ABL distribution of an intermediate measurement");
    abl_cmd->add_option("--observable", opt.observable, "Event id, Pauli string (z1, z1z2) or basis<k>")->required();
    auto *eor_cmd = app.add_subcommand("eor", "Elements of reality");
    eor_cmd->add_option("--observable", opt.observable, "Observable (default: the scenario's eor analyses)");
    eor_cmd->add_option("--tolerance", opt.tolerance, "Certainty tolerance");
    auto *rules_cmd = app.add_subcommand("check-rules", "And-rule and product-rule checks");
    rules_cmd->add_option("--a", opt.a, "First observable")->required();
    rules_cmd->add_option("--b", opt.b, "Second observable")->required();
    auto *weak_cmd = app.add_subcommand("weak", "Exact weak value");
    weak_cmd->add_option("--operator", opt.op, "Observable")->required();
    weak_cmd->add_flag("--exact", opt.exact, "Also report exact pointer-model statistics");
    weak_cmd->add_option("--g", opt.g, "Coupling strength");
    weak_cmd->add_option("--delta", opt.delta, "Pointer width");
    weak_cmd->add_option("--grid", opt.grid, "Grid points");
    auto *mc_cmd = app.add_subcommand("weak-mc", "Monte Carlo weak measurement on the post-selected ensemble");
    mc_cmd->add_option("--operator", opt.op, "Observable")->required();
    mc_cmd->add_option("--g", opt.g, "Coupling strength")->required();
    mc_cmd->add_option("--delta", opt.delta, "Pointer width")->required();
    mc_cmd->add_option("--post-samples", opt.post_samples, "Number of post-selected readings")->required();
    mc_cmd->add_option("--seed", opt.seed, "Random seed")->required();
    mc_cmd->add_option("--grid", opt.grid, "Grid points");
    mc_cmd->add_option("--shards", opt.shards, "Sampling shards");

    std::vector<std::string> argv_storage{"tsvf"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const std::string &a : argv_storage) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        json report = execute(command, opt, eps);
        if (opt.format == "text") {
            out << render_text(report);
        } else {
            out << report.dump(2) << "\n";
        }
        return kOk;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ValidationError &e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const NormalizationError &e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const DimensionError &e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const SizeError &e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const ImpossibleOutcomeError &e) {
        err << "unreachable post-selection: " << e.what() << "\n";
        return kUnreachablePostSelection;
    } catch (const UnreachablePostSelectionError &e) {
        err << "unreachable post-selection: " << e.what() << "\n";
        return kUnreachablePostSelection;
    } catch (const UndefinedWeakValueError &e) {
        err << "unreachable post-selection: " << e.what() << "\n";
        return kUnreachablePostSelection;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace tsvf::cli
