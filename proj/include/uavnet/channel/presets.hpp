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

// Measured log-distance parameter sets. Most rows report ranges, so turning a
// preset into a model always needs an explicit RangePick.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "uavnet/channel/link_loss.hpp"
#include "uavnet/error.hpp"

namespace uavnet::channel {

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
};

enum class RangePick { Min, Max, Mid };

inline double pick(const ParamRange& r, RangePick p) noexcept {
    switch (p) {
    case RangePick::Min: return r.lo;
    case RangePick::Max: return r.hi;
    case RangePick::Mid: return 0.5 * (r.lo + r.hi);
    }
    return r.lo;
}

struct LogDistancePreset {
    std::string_view name;
    std::string_view scenario;
    std::optional<double> frequency_ghz;
    ParamRange eta;
    std::optional<ParamRange> lambda0_db;
    std::optional<ParamRange> sigma_db;
};

inline constexpr std::array<LogDistancePreset, 17> log_distance_presets{{
    {"mixed_a", "suburban/urban/open field", std::nullopt, {2.54, 3.037}, ParamRange{21.9, 34.9}, ParamRange{2.79, 5.3}},
    {"mixed_b", "suburban/urban/open field", std::nullopt, {2.2, 2.6}, std::nullopt, std::nullopt},
    {"mixed_c", "suburban/urban/open field", std::nullopt, {2.01, 2.01}, std::nullopt, std::nullopt},
    {"mixed_d", "suburban/urban/open field", std::nullopt, {4.1, 4.1}, std::nullopt, ParamRange{5.24, 5.24}},
    {"mixed_e", "suburban/urban/open field", std::nullopt, {2.0, 2.25}, std::nullopt, std::nullopt},
    {"mixed_968mhz_a", "suburban/urban/open field", 0.968, {1.6, 1.6}, ParamRange{102.3, 102.3}, std::nullopt},
    {"mixed_5060mhz_a", "suburban/urban/open field", 5.06, {1.9, 1.9}, ParamRange{113.9, 113.9}, std::nullopt},
    {"mixed_968mhz_b", "suburban/urban/open field", 0.968, {1.7, 1.7}, ParamRange{98.2, 99.4}, ParamRange{2.6, 3.1}},
    {"mixed_5060mhz_b", "suburban/urban/open field", 5.06, {1.5, 2.0}, ParamRange{110.4, 116.7}, ParamRange{2.9, 3.2}},
    {"over_sea", "over sea", std::nullopt, {1.4, 2.46}, ParamRange{19.0, 129.0}, std::nullopt},
    {"mountains", "mountains", std::nullopt, {1.0, 1.8}, ParamRange{96.1, 123.9}, ParamRange{2.2, 3.9}},
    {"urban_los_28ghz", "urban LOS", 28.0, {2.1, 2.1}, std::nullopt, ParamRange{3.6, 3.6}},
    {"urban_nlos_28ghz", "urban NLOS", 28.0, {3.4, 3.4}, std::nullopt, ParamRange{9.7, 9.7}},
    {"urban_los_38ghz", "urban LOS", 38.0, {1.9, 2.0}, std::nullopt, ParamRange{1.8, 4.4}},
    {"urban_nlos_38ghz", "urban NLOS", 38.0, {2.2, 2.8}, std::nullopt, ParamRange{4.1, 10.8}},
    {"urban_los_73ghz", "urban LOS", 73.0, {2.0, 2.0}, std::nullopt, ParamRange{4.2, 5.2}},
    {"urban_nlos_73ghz", "urban NLOS", 73.0, {3.3, 3.5}, std::nullopt, ParamRange{7.6, 7.9}},
}};

inline const LogDistancePreset& log_distance_preset(std::string_view name) {
    for (const auto& p : log_distance_presets)
        if (p.name == name) return p;
    throw domain_error("unknown log-distance preset '" + std::string(name) + "'");
}

/// Concrete model from a preset. A missing reference loss falls back to free
/// space at d0; a missing sigma means no shadowing.
inline LogDistance make_log_distance(const LogDistancePreset& p, RangePick choice, double d0_m = 1.0) {
    LogDistance s;
    s.d0_m = d0_m;
    s.eta = pick(p.eta, choice);
    if (p.lambda0_db) s.lambda0_db = pick(*p.lambda0_db, choice);
    s.sigma_db = p.sigma_db ? pick(*p.sigma_db, choice) : 0.0;
    return s;
}

} // namespace uavnet::channel
