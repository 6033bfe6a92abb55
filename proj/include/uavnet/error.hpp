// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uavnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace uavnet {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A model formula was evaluated outside its stated validity window.
class applicability_error : public std::out_of_range {
public:
    applicability_error(std::string quantity, double value, double bound, const std::string& what)
        : std::out_of_range(what), quantity_(std::move(quantity)), value_(value), bound_(bound) {}

    const std::string& quantity() const noexcept { return quantity_; }
    double value() const noexcept { return value_; }
    /// The violated limit.
    double bound() const noexcept { return bound_; }

private:
    std::string quantity_;
    double value_;
    double bound_;
};

/// The model catalog has no entry for the requested combination.
class model_gap_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid scenario configuration; carries the offending key path (e.g. `aue.network.bs_density`).
class config_error : public std::runtime_error {
public:
    config_error(std::string key_path, const std::string& what)
        : std::runtime_error(key_path.empty() ? what : key_path + ": " + what), key_path_(std::move(key_path)) {}

    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw domain_error(what);
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw domain_error(what);
}

} // namespace detail
} // namespace uavnet
