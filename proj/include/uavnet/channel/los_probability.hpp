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

#include <algorithm>
#include <cmath>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/error.hpp"

namespace uavnet::channel {

/// Number of building rows crossed minus one, m = floor(d_h sqrt(varsigma xi) - 1).
/// d_h enters in km because xi is a per-km^2 density.
inline int building_row_index(double d_h_m, const Environment& env) {
    return static_cast<int>(std::floor(d_h_m * 1e-3 * std::sqrt(env.varsigma * env.xi) - 1.0));
}

/// Building-statistics LOS probability between nodes at heights h_a and h_b
/// (either order; the ray runs from the higher to the lower end).
inline double p_los_building(double d_h, double h_a, double h_b, const Environment& env) {
    env.validate();
    uavnet::detail::require(h_a >= 0.0 && h_b >= 0.0, "p_los_building: heights must be >= 0");
    const double hi = std::max(h_a, h_b), lo = std::min(h_a, h_b);
    const int m = building_row_index(d_h, env);
    double p = 1.0;
    const double two_omega2 = 2.0 * env.omega * env.omega;
    for (int n = 0; n <= m; ++n) {
        const double h = hi - (n + 0.5) * (hi - lo) / (m + 1);
        p *= 1.0 - std::exp(-h * h / two_omega2);
        if (p == 0.0) break;
    }
    return p;
}

/// LOS probability from building statistics: the ray clears each of the m + 1
/// Rayleigh-distributed buildings it crosses.
inline double p_los_building(const LinkGeometry& g, const Environment& env) {
    if (!(g.h_uav > g.h_g)) throw domain_error("p_los_building: aerial node must be above the ground node");
    return p_los_building(g.d_h, g.h_uav, g.h_g, env);
}

/// Obstructed-slice break distance d1 = max(1350.8 log10 h - 1602, 18), m.
inline double obstructed_d1_m(double h_uav) { return std::max(1350.8 * std::log10(h_uav) - 1602.0, 18.0); }

/// Obstructed-slice decay length p1 = max(15021 log10 h - 16053, 1000), m.
inline double obstructed_p1_m(double h_uav) { return std::max(15021.0 * std::log10(h_uav) - 16053.0, 1000.0); }

/// Slice-dependent rural-macro LOS probability.
inline double p_los_3gpp(double d_h, double h_uav, PropagationSlice slice) {
    uavnet::detail::require(std::isfinite(d_h) && d_h >= 0.0, "p_los_3gpp: d_h must be >= 0");
    switch (slice) {
    case PropagationSlice::GroundLevel:
        return d_h <= 10.0 ? 1.0 : std::exp(-(d_h - 10.0) / 1000.0);
    case PropagationSlice::ObstructedA2G: {
        uavnet::detail::require(h_uav > 0.0, "p_los_3gpp: h_uav must be > 0");
        const double d1 = obstructed_d1_m(h_uav);
        if (d_h <= d1) return 1.0;
        const double p1 = obstructed_p1_m(h_uav);
        return d1 / d_h + std::exp(-d_h / p1) * (1.0 - d1 / d_h);
    }
    case PropagationSlice::HighAltitudeA2G:
        return 1.0;
    case PropagationSlice::AirToAir:
        break;
    }
    throw domain_error("p_los_3gpp: no LOS-probability model for air-to-air links");
}

} // namespace uavnet::channel
