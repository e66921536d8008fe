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

#include "tsvf/frames.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tsvf/errors.h"

namespace tsvf {

std::string Ordering::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < sequence.size(); i++) {
        out += (i ? "," : "") + sequence[i];
    }
    return out + "]";
}

namespace {

std::vector<std::size_t> resolve_ordering(std::span<const MeasurementEvent> events, const Ordering &ordering) {
    validate_ordering(events, ordering);
    std::vector<std::size_t> order;
    for (const std::string &id : ordering.sequence) {
        for (std::size_t k = 0; k < events.size(); k++) {
            if (events[k].id == id) {
                order.push_back(k);
                break;
            }
        }
    }
    return order;
}

std::string make_outcome_key(std::span<const MeasurementEvent> events, const std::vector<std::size_t> &order,
                             const std::vector<std::string> &outcomes) {
    std::vector<std::string> by_event(events.size());
    for (std::size_t i = 0; i < order.size(); i++) {
        by_event[order[i]] = outcomes[i];
    }
    std::string key;
    for (std::size_t k = 0; k < events.size(); k++) {
        key += (k ? ";" : "") + events[k].id + "=" + by_event[k];
    }
    return key;
}

struct Walker {
    std::span<const MeasurementEvent> events;
    const Ordering &ordering;
    const std::vector<std::size_t> &order;
    double eps;
    bool throw_on_impossible;
    std::vector<OrderingRun> out;

    void walk(OrderingRun &run) {
        std::size_t depth = run.outcomes.size();
        if (depth == order.size()) {
            run.outcome_key = make_outcome_key(events, order, run.outcomes);
            out.push_back(run);
            return;
        }
        const MeasurementEvent &event = events[order[depth]];
        std::vector<const Branch *> branches;
        if (event.forced_outcome) {
            branches.push_back(&event.observable.branch(*event.forced_outcome));
        } else {
            for (const Branch &b : event.observable.branches()) {
                branches.push_back(&b);
            }
        }
        for (const Branch *b : branches) {
            Ket projected = apply(b->projector, run.trajectory.back());
            double p = projected.norm_squared();
            if (p <= eps) {
                if (event.forced_outcome && throw_on_impossible) {
                    std::ostringstream msg;
                    msg << "event '" << event.id << "' cannot yield forced outcome '" << b->label
                        << "' in ordering " << ordering.str() << " (probability " << p << ")";
                    throw ImpossibleOutcomeError(msg.str(), depth);
                }
                continue;
            }
            run.outcomes.push_back(b->label);
            run.trajectory.push_back(projected * Complex(1 / std::sqrt(p)));
            run.step_probabilities.push_back(p);
            double saved = run.joint_probability;
            run.joint_probability *= p;
            walk(run);
            run.joint_probability = saved;
            run.step_probabilities.pop_back();
            run.trajectory.pop_back();
            run.outcomes.pop_back();
        }
    }
};

std::vector<OrderingRun> walk_histories(const Ket &initial, std::span<const MeasurementEvent> events,
                                        const Ordering &ordering, double eps, bool throw_on_impossible) {
    initial.require_normalized("initial state", eps);
    std::vector<std::size_t> order = resolve_ordering(events, ordering);
    for (const MeasurementEvent &e : events) {
        require_valid(e.observable, "event '" + e.id + "' observable", eps);
        if (e.observable.layout() != initial.layout()) {
            throw DimensionError("event '" + e.id + "' observable layout does not match the initial state");
        }
        if (e.forced_outcome) {
            e.observable.branch(*e.forced_outcome);
        }
    }
    Walker walker{events, ordering, order, eps, throw_on_impossible, {}};
    OrderingRun run;
    run.ordering = ordering;
    run.trajectory.push_back(initial);
    walker.walk(run);
    return std::move(walker.out);
}

}  // namespace

void validate_ordering(std::span<const MeasurementEvent> events, const Ordering &ordering) {
    std::set<std::string> ids;
    for (const MeasurementEvent &e : events) {
        if (!ids.insert(e.id).second) {
            throw ValidationError("duplicate event id '" + e.id + "'");
        }
    }
    std::set<std::string> used;
    for (const std::string &id : ordering.sequence) {
        if (!ids.count(id)) {
            throw ValidationError("ordering " + ordering.str() + " names unknown event '" + id + "'");
        }
        if (!used.insert(id).second) {
            throw ValidationError("ordering " + ordering.str() + " repeats event '" + id + "'");
        }
    }
    if (used.size() != ids.size()) {
        throw ValidationError("ordering " + ordering.str() + " does not cover every event");
    }
}

OrderingRun run_ordering(const Ket &initial, std::span<const MeasurementEvent> events, const Ordering &ordering,
                         double eps) {
    for (const MeasurementEvent &e : events) {
        if (!e.forced_outcome) {
            throw ValidationError("event '" + e.id + "' has no forced outcome; use enumerate_histories");
        }
    }
    std::vector<OrderingRun> runs = walk_histories(initial, events, ordering, eps, true);
    return std::move(runs.front());
}

std::vector<OrderingRun> enumerate_histories(const Ket &initial, std::span<const MeasurementEvent> events,
                                             const Ordering &ordering, double eps) {
    std::vector<OrderingRun> runs = walk_histories(initial, events, ordering, eps, false);
    if (runs.empty()) {
        throw ImpossibleOutcomeError("no history of ordering " + ordering.str() + " reaches the forced outcomes",
                                     0);
    }
    return runs;
}

std::vector<std::string> commutation_warnings(std::span<const MeasurementEvent> events, double eps) {
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < events.size(); i++) {
        for (std::size_t j = i + 1; j < events.size(); j++) {
            const MeasurementEvent &a = events[i];
            const MeasurementEvent &b = events[j];
            if (a.target && b.target && *a.target == *b.target) {
                warnings.push_back("events '" + a.id + "' and '" + b.id + "' share subsystem " +
                                   std::to_string(*a.target));
            }
            double c = max_commutator_norm(a.observable, b.observable);
            if (c > eps) {
                std::ostringstream msg;
                msg << "events '" << a.id << "' and '" << b.id << "' do not commute (|[P,Q]|_max = " << c << ")";
                warnings.push_back(msg.str());
            }
        }
    }
    return warnings;
}

OrderingComparison compare_orderings(const Ket &initial, std::span<const MeasurementEvent> events,
                                     std::span<const Ordering> orderings, double eps) {
    if (orderings.size() < 2) {
        throw ValidationError("compare_orderings needs at least two orderings");
    }
    OrderingComparison cmp;
    cmp.orderings.assign(orderings.begin(), orderings.end());
    cmp.warnings = commutation_warnings(events, eps);
    for (const Ordering &o : orderings) {
        cmp.histories.push_back(enumerate_histories(initial, events, o, eps));
        double total = 0;
        for (const OrderingRun &r : cmp.histories.back()) {
            total += r.joint_probability;
        }
        cmp.joint_probabilities.push_back(total);
    }

    for (std::size_t i = 0; i < orderings.size(); i++) {
        for (std::size_t j = i + 1; j < orderings.size(); j++) {
            std::map<std::string, const OrderingRun *> left;
            std::map<std::string, const OrderingRun *> right;
            for (const OrderingRun &r : cmp.histories[i]) {
                left[r.outcome_key] = &r;
            }
            for (const OrderingRun &r : cmp.histories[j]) {
                right[r.outcome_key] = &r;
            }
            std::set<std::string> keys;
            for (const auto &kv : left) {
                keys.insert(kv.first);
            }
            for (const auto &kv : right) {
                keys.insert(kv.first);
            }
            for (const std::string &key : keys) {
                auto li = left.find(key);
                auto ri = right.find(key);
                double pl = li == left.end() ? 0 : li->second->joint_probability;
                double pr = ri == right.end() ? 0 : ri->second->joint_probability;
                cmp.max_probability_gap = std::max(cmp.max_probability_gap, std::abs(pl - pr));
                if (li == left.end() || ri == right.end()) {
                    continue;
                }
                const OrderingRun &a = *li->second;
                const OrderingRun &b = *ri->second;
                cmp.final_overlap = std::min(cmp.final_overlap, overlap(a.trajectory.back(), b.trajectory.back()));
                for (std::size_t depth = 1; depth + 1 < a.trajectory.size(); depth++) {
                    CutOverlap cut;
                    cut.first = i;
                    cut.second = j;
                    cut.outcome_key = key;
                    cut.depth = depth;
                    cut.prefix_first.assign(a.ordering.sequence.begin(), a.ordering.sequence.begin() + depth);
                    cut.prefix_second.assign(b.ordering.sequence.begin(), b.ordering.sequence.begin() + depth);
                    std::vector<std::string> sa = cut.prefix_first;
                    std::vector<std::string> sb = cut.prefix_second;
                    std::sort(sa.begin(), sa.end());
                    std::sort(sb.begin(), sb.end());
                    cut.matched_prefix = sa == sb;
                    cut.overlap = overlap(a.trajectory[depth], b.trajectory[depth]);
                    cmp.intermediate_overlaps.push_back(std::move(cut));
                }
            }
        }
    }
    cmp.ordering_invariant = cmp.max_probability_gap <= eps && cmp.final_overlap >= 1 - eps;
    return cmp;
}

}  // namespace tsvf
