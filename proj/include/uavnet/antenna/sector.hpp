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

// Base-station sector pattern in the ITU-R F.1336 style: separable parabolic
// azimuth and elevation cuts, summed in dB and clipped at the sidelobe floor.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/error.hpp"
#include "uavnet/units.hpp"

namespace uavnet {

struct SectorAntenna {
    double azimuth = 0.0;          ///< boresight compass bearing, rad
    double electrical_tilt = 0.0;  ///< rad, downward positive
    double mechanical_tilt = 0.0;  ///< rad, downward positive
    double max_gain_dbi = 17.0;    ///< G_M in dBi
    double beamwidth_3db = deg_to_rad(65.0); ///< horizontal 3 dB beamwidth, rad
    double sidelobe_floor_db = -3.0;          ///< G_m in dBi
    /// Vertical 3 dB beamwidth, rad. Derived from the gain when unset.
    std::optional<double> vertical_beamwidth_3db;
    bool horizontally_omni = false;

    void validate() const {
        detail::require(std::isfinite(max_gain_dbi), "sector antenna: max gain must be finite");
        detail::require(sidelobe_floor_db <= max_gain_dbi, "sector antenna: sidelobe floor above max gain");
        detail::require(beamwidth_3db > 0.0 && beamwidth_3db <= 2.0 * pi, "sector antenna: beamwidth must lie in (0, 2 pi]");
        if (vertical_beamwidth_3db)
            detail::require(*vertical_beamwidth_3db > 0.0 && *vertical_beamwidth_3db <= pi,
                            "sector antenna: vertical beamwidth must lie in (0, pi]");
    }

    double main_gain_linear() const { return db_to_linear(max_gain_dbi); }
    double side_gain_linear() const { return db_to_linear(sidelobe_floor_db); }
    double total_tilt() const noexcept { return electrical_tilt + mechanical_tilt; }

    /// Vertical beamwidth, rad. When unset, F.1336 gives
    /// 31000 10^(-G/10) / phi_3 deg for sectors and 107.6 10^(-G/10) deg for omni.
    double vertical_beamwidth() const {
        if (vertical_beamwidth_3db) return *vertical_beamwidth_3db;
        const double scale = std::pow(10.0, -0.1 * max_gain_dbi);
        const double deg = horizontally_omni ? 107.6 * scale : 31000.0 * scale / rad_to_deg(beamwidth_3db);
        return deg_to_rad(std::min(deg, 180.0));
    }
};

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) noexcept {
    a = std::remainder(a, 2.0 * pi);
    return a <= -pi ? a + 2.0 * pi : a;
}

/// Gain (dBi) of `ant` toward the unit direction `toward`.
inline double bs_gain_db(const SectorAntenna& ant, const Direction& toward) {
    const double floor_att = ant.max_gain_dbi - ant.sidelobe_floor_db;
    double att_h = 0.0;
    if (!ant.horizontally_omni) {
        const double off = wrap_angle(toward.bearing() - ant.azimuth);
        att_h = std::min(12.0 * std::pow(off / ant.beamwidth_3db, 2.0), floor_att);
    }
    const double off_v = toward.elevation() + ant.total_tilt();
    const double att_v = std::min(12.0 * std::pow(off_v / ant.vertical_beamwidth(), 2.0), floor_att);
    return ant.max_gain_dbi - std::min(att_h + att_v, floor_att);
}

inline double bs_gain_db(const SectorAntenna& ant, const Position3D& site, const Position3D& target) {
    return bs_gain_db(ant, direction(site, target));
}

} // namespace uavnet
