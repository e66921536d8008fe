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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsvf {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different spaces, or an index is out of range.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A layout or operator exceeds the desk-scale size caps.
class SizeError : public Error {
   public:
    using Error::Error;
};

/// A ket that must be normalized is not.
class NormalizationError : public Error {
   public:
    NormalizationError(const std::string &what, double norm) : Error(what), norm_(norm) {
    }
    double norm() const {
        return norm_;
    }

   private:
    double norm_;
};

/// Structural validation failed (observables, scenarios, configs).
class ValidationError : public Error {
   public:
    explicit ValidationError(const std::string &what, std::vector<std::string> issues = {})
        : Error(what), issues_(std::move(issues)) {
    }
    const std::vector<std::string> &issues() const {
        return issues_;
    }

   private:
    std::vector<std::string> issues_;
};

/// A forced (post-selected) outcome has probability <= epsilon.
class ImpossibleOutcomeError : public Error {
   public:
    ImpossibleOutcomeError(const std::string &what, std::size_t step) : Error(what), step_(step) {
    }
    std::size_t step() const {
        return step_;
    }

   private:
    std::size_t step_;
};

/// The post-selection cannot be reached through the requested intermediate measurement.
class UnreachablePostSelectionError : public Error {
   public:
    using Error::Error;
};

/// Weak value requested for orthogonal pre- and post-selected states.
class UndefinedWeakValueError : public Error {
   public:
    using Error::Error;
};

}  // namespace tsvf
