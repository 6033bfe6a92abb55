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

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/error.hpp"

namespace uavnet::channel {

/// Standard deviation (dB) of log-normal shadowing per slice and LOS state.
/// `d2_m` is the ground-slice breakpoint; it only matters for ground LOS.
inline double shadowing_sigma_db(PropagationSlice slice, bool los, double d_h, double h_uav, double d2_m) {
    switch (slice) {
    case PropagationSlice::GroundLevel:
        detail::require_range("d_h", d_h, 10.0, 10000.0, "ground shadowing");
        if (!los) return 8.0;
        return d_h <= d2_m ? 4.0 : 6.0;
    case PropagationSlice::ObstructedA2G:
        return los ? 4.2 * std::exp(-0.00046 * h_uav) : 6.0;
    case PropagationSlice::HighAltitudeA2G:
        if (los) return 4.2 * std::exp(-0.00046 * h_uav);
        throw model_gap_error("shadowing_sigma_db: no NLOS shadowing entry for the high-altitude slice");
    case PropagationSlice::AirToAir:
        break;
    }
    throw model_gap_error("shadowing_sigma_db: no shadowing entry for air-to-air links");
}

inline double shadowing_sigma_db(PropagationSlice slice, bool los, const LinkGeometry& g, double f_c_ghz) {
    return shadowing_sigma_db(slice, los, g.d_h, g.h_uav, ground_breakpoint_m(g.h_uav, g.h_g, f_c_ghz));
}

} // namespace uavnet::channel
