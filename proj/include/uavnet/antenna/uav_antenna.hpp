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
#include <variant>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/error.hpp"
#include "uavnet/units.hpp"

namespace uavnet {

struct OmniAntenna {
    double gain_dbi = 0.0;
};

/// Ideal cone: gain 29000 / phi_b^2 (phi_b in degrees) within half-angle
/// phi_b / 2 of the axis, zero elsewhere. phi_t tilts the axis away from nadir
/// toward compass bearing `azimuth`.
struct ConeAntenna {
    double phi_b_deg = 60.0; ///< opening angle, deg
    double phi_t = 0.0;      ///< tilt from nadir, rad
    double azimuth = 0.0;    ///< bearing of the tilt, rad

    void validate() const {
        detail::require(phi_b_deg > 0.0 && phi_b_deg <= 180.0, "cone antenna: opening angle must lie in (0, 180] deg");
        detail::require(std::isfinite(phi_t) && std::isfinite(azimuth), "cone antenna: angles must be finite");
    }

    double main_lobe_gain() const { return 29000.0 / (phi_b_deg * phi_b_deg); }

    Direction axis() const {
        const double s = std::sin(phi_t);
        return {s * std::sin(azimuth), s * std::cos(azimuth), -std::cos(phi_t)};
    }

    /// Below 30 deg the 29000 / phi^2 rule overstates directivity.
    bool gain_is_approximate() const noexcept { return phi_b_deg < 30.0; }
};

using UavAntenna = std::variant<OmniAntenna, ConeAntenna>;

inline double uav_gain_linear(const UavAntenna& ant, const Direction& toward) {
    if (const auto* o = std::get_if<OmniAntenna>(&ant)) return db_to_linear(o->gain_dbi);
    const auto& c = std::get<ConeAntenna>(ant);
    c.validate();
    const double cos_half = std::cos(0.5 * deg_to_rad(c.phi_b_deg));
    return c.axis().dot(toward) >= cos_half ? c.main_lobe_gain() : 0.0;
}

} // namespace uavnet
