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

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "uavnet/error.hpp"

namespace uavnet::channel {

enum class EnvironmentKind { Suburban, Urban, DenseUrban, Highrise, Rural, Open };

inline constexpr std::array<std::pair<EnvironmentKind, std::string_view>, 6> environment_kind_names{{
    {EnvironmentKind::Suburban, "suburban"},
    {EnvironmentKind::Urban, "urban"},
    {EnvironmentKind::DenseUrban, "dense_urban"},
    {EnvironmentKind::Highrise, "highrise"},
    {EnvironmentKind::Rural, "rural"},
    {EnvironmentKind::Open, "open"},
}};

inline std::string_view to_string(EnvironmentKind k) {
    for (const auto& [kind, name] : environment_kind_names)
        if (kind == k) return name;
    return "unknown";
}

inline std::optional<EnvironmentKind> environment_kind_from_string(std::string_view s) {
    for (const auto& [kind, name] : environment_kind_names)
        if (name == s) return kind;
    return std::nullopt;
}

/// Built-environment statistics.
///
/// `varsigma` is the fraction of land covered by buildings, `xi` the mean
/// number of buildings per km^2 and `omega` the Rayleigh scale of building
/// heights (m). Street width and mean building height feed the ground-level
/// NLOS formula.
struct Environment {
    EnvironmentKind kind = EnvironmentKind::Urban;
    double varsigma = 0.3;
    double xi = 500.0;             // 1/km^2
    double omega = 15.0;           // m
    double mean_building_height = 18.8; // m
    double street_width = 20.0;    // m

    void validate() const {
        uavnet::detail::require(varsigma >= 0.0 && varsigma <= 1.0, "environment: varsigma must lie in [0, 1]");
        uavnet::detail::require(xi > 0.0, "environment: xi must be > 0");
        uavnet::detail::require(omega > 0.0, "environment: omega must be > 0");
        uavnet::detail::require(mean_building_height > 0.0, "environment: mean building height must be > 0");
        uavnet::detail::require(street_width > 0.0, "environment: street width must be > 0");
    }
};

/// Configuration defaults. The (varsigma, xi, omega) triples for the four
/// built-up kinds are the customary ITU-R P.1410 values; rural/open and the
/// building height / street width values are plain defaults.
inline Environment environment_preset(EnvironmentKind kind) {
    switch (kind) {
    case EnvironmentKind::Suburban: return {kind, 0.1, 750.0, 8.0, 10.0, 20.0};
    case EnvironmentKind::Urban: return {kind, 0.3, 500.0, 15.0, 18.8, 20.0};
    case EnvironmentKind::DenseUrban: return {kind, 0.5, 300.0, 20.0, 25.0, 20.0};
    case EnvironmentKind::Highrise: return {kind, 0.5, 300.0, 50.0, 60.0, 30.0};
    case EnvironmentKind::Rural: return {kind, 0.05, 100.0, 5.0, 5.0, 20.0};
    case EnvironmentKind::Open: return {kind, 0.01, 10.0, 3.0, 5.0, 50.0};
    }
    return {};
}

/// Altitude band selecting the applicable model family.
enum class PropagationSlice { GroundLevel, ObstructedA2G, HighAltitudeA2G, AirToAir };

inline std::string_view to_string(PropagationSlice s) {
    switch (s) {
    case PropagationSlice::GroundLevel: return "ground";
    case PropagationSlice::ObstructedA2G: return "obstructed";
    case PropagationSlice::HighAltitudeA2G: return "high_altitude";
    case PropagationSlice::AirToAir: return "air_to_air";
    }
    return "unknown";
}

inline constexpr double max_slice_altitude_m = 300.0;

struct SliceBounds {
    double ground_top;     ///< lowest altitude of the obstructed slice
    double obstructed_top; ///< lowest altitude of the high-altitude slice
};

/// Suburban-like environments use 10 m / 40 m, urban-like ones 22.5 m / 100 m.
inline SliceBounds slice_bounds(EnvironmentKind kind) noexcept {
    switch (kind) {
    case EnvironmentKind::Urban:
    case EnvironmentKind::DenseUrban:
    case EnvironmentKind::Highrise: return {22.5, 100.0};
    default: return {10.0, 40.0};
    }
}

/// Slice containing an aerial node at `h_uav`. A boundary altitude belongs to the higher slice.
inline PropagationSlice slice_of(double h_uav, const Environment& env) {
    if (!(h_uav >= 0.0)) throw applicability_error("h_uav", h_uav, 0.0, "slice_of: altitude below ground");
    if (h_uav > max_slice_altitude_m)
        throw applicability_error("h_uav", h_uav, max_slice_altitude_m, "slice_of: altitude above the 300 m envelope");
    const auto b = slice_bounds(env.kind);
    if (h_uav < b.ground_top) return PropagationSlice::GroundLevel;
    if (h_uav < b.obstructed_top) return PropagationSlice::ObstructedA2G;
    return PropagationSlice::HighAltitudeA2G;
}

} // namespace uavnet::channel
