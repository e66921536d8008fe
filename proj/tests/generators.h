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

// Random states and observables for the property suites.

#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tsvf/frames.h"
#include "tsvf/measurement.h"

namespace tsvf::gen {

inline constexpr int kPropertyCases = 1000;

inline std::mt19937_64 &test_rng() {
    static std::mt19937_64 rng(20260115);
    return rng;
}

inline Complex random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0, 1);
    return {n(rng), n(rng)};
}

inline Ket random_ket(const SubsystemLayout &layout, std::mt19937_64 &rng) {
    std::vector<Complex> amps(layout.dimension());
    for (Complex &a : amps) {
        a = random_complex(rng);
    }
    return Ket(layout, std::move(amps)).normalized();
}

inline SubsystemLayout random_layout(std::mt19937_64 &rng, std::size_t max_subsystems = 3) {
    std::uniform_int_distribution<std::size_t> count(1, max_subsystems);
    std::uniform_int_distribution<std::size_t> d(2, 3);
    std::vector<std::size_t> dims(count(rng));
    for (std::size_t &x : dims) {
        x = d(rng);
    }
    return SubsystemLayout(dims);
}

// Random orthonormal basis by Gram-Schmidt on Gaussian vectors.
inline std::vector<Ket> random_basis(const SubsystemLayout &layout, std::mt19937_64 &rng) {
    std::vector<Ket> out;
    while (out.size() < layout.dimension()) {
        Ket v = random_ket(layout, rng);
        for (const Ket &b : out) {
            v = v - b * inner_product(b, v);
        }
        if (v.norm() > 1e-6) {
            out.push_back(v.normalized());
        }
    }
    return out;
}

// Complete observable: a random orthonormal basis split into 1..dim groups, each group a
// (possibly degenerate) branch with a small integer eigenvalue.
inline Observable random_observable(const SubsystemLayout &layout, std::mt19937_64 &rng) {
    std::vector<Ket> basis = random_basis(layout, rng);
    std::size_t n = basis.size();
    std::uniform_int_distribution<std::size_t> groups_dist(1, n);
    std::size_t groups = groups_dist(rng);
    std::vector<std::size_t> owner(n);
    for (std::size_t i = 0; i < n; i++) {
        owner[i] = i < groups ? i : std::uniform_int_distribution<std::size_t>(0, groups - 1)(rng);
    }
    std::vector<int> eigenvalues(groups);
    std::iota(eigenvalues.begin(), eigenvalues.end(), -static_cast<int>(groups / 2));
    std::shuffle(eigenvalues.begin(), eigenvalues.end(), rng);
    std::vector<Branch> branches;
    for (std::size_t g = 0; g < groups; g++) {
        Operator p = Operator::zero(layout);
        for (std::size_t i = 0; i < n; i++) {
            if (owner[i] == g) {
                p = p + projector_onto(basis[i]);
            }
        }
        branches.push_back({"b" + std::to_string(g), static_cast<double>(eigenvalues[g]), p.as_projector(1e-9)});
    }
    return Observable(layout, std::move(branches));
}

// Random observable acting on one subsystem only, lifted to the full layout.
inline Observable random_local_observable(const SubsystemLayout &layout, std::size_t target, std::mt19937_64 &rng) {
    Observable local = random_observable(SubsystemLayout({layout.dim(target)}), rng);
    std::vector<Branch> branches;
    for (const Branch &b : local.branches()) {
        branches.push_back({b.label, b.eigenvalue, lift_to_subsystem(b.projector, target, layout)});
    }
    return Observable(layout, std::move(branches));
}

}  // namespace tsvf::gen
