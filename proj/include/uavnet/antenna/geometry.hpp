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

#include "uavnet/error.hpp"
#include "uavnet/units.hpp"

namespace uavnet {

/// Point in a local east/north/up frame. `h` is height above ground (m, >= 0).
struct Position3D {
    double x = 0.0; ///< east, m
    double y = 0.0; ///< north, m
    double h = 0.0; ///< up, m

    friend bool operator==(const Position3D&, const Position3D&) = default;
};

inline double horizontal_distance(const Position3D& a, const Position3D& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Unit vector in the same east/north/up frame.
struct Direction {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    /// Elevation above the local horizontal, rad in [-pi/2, pi/2].
    double elevation() const noexcept { return std::asin(std::clamp(z, -1.0, 1.0)); }
    /// Compass bearing, clockwise from north, rad in [0, 2 pi).
    double bearing() const noexcept {
        const double b = std::atan2(x, y);
        return b < 0.0 ? b + 2.0 * pi : b;
    }
    double dot(const Direction& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
};

/// Direction from `from` toward `to`.
inline Direction direction(const Position3D& from, const Position3D& to) {
    const double dx = to.x - from.x, dy = to.y - from.y, dz = to.h - from.h;
    const double n = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (n == 0.0) throw domain_error("direction: coincident points");
    return {dx / n, dy / n, dz / n};
}

/// Direction with the given compass bearing and elevation (rad).
inline Direction direction_from_angles(double bearing, double elevation) noexcept {
    const double c = std::cos(elevation);
    return {c * std::sin(bearing), c * std::cos(bearing), std::sin(elevation)};
}

/// Derived air-to-ground link geometry between a user/aerial node and a ground station.
struct LinkGeometry {
    double d_h = 0.0;   ///< horizontal distance, m
    double d_3d = 0.0;  ///< slant distance, m
    double h_uav = 0.0; ///< aerial node altitude, m
    double h_g = 0.0;   ///< ground node height, m
    double theta = 0.0; ///< elevation angle seen from the ground node, rad in [0, pi/2]
};

/// Geometry for an explicit user/aerial height, ground-station height and horizontal
/// distance. The user may sit below the ground station (a terrestrial UE under a
/// mast); theta is then the elevation seen from the lower end.
inline LinkGeometry make_link_geometry(double d_h, double h_uav, double h_g) {
    detail::require(std::isfinite(d_h) && d_h >= 0.0, "link geometry: d_h must be >= 0");
    detail::require(std::isfinite(h_uav) && std::isfinite(h_g) && h_uav >= 0.0 && h_g >= 0.0,
                    "link geometry: heights must be finite and >= 0");
    const double dz = std::abs(h_uav - h_g);
    LinkGeometry g;
    g.d_h = d_h;
    g.h_uav = h_uav;
    g.h_g = h_g;
    g.d_3d = std::hypot(d_h, dz);
    if (g.d_3d == 0.0) throw domain_error("link geometry: coincident endpoints");
    g.theta = d_h == 0.0 ? pi / 2.0 : std::atan(dz / d_h);
    return g;
}

inline LinkGeometry link_geometry(const Position3D& a, const Position3D& b) {
    if (a.h < 0.0 || b.h < 0.0) throw domain_error("link geometry: heights must be >= 0");
    if (a == b) throw domain_error("link geometry: coincident points");
    const auto& high = a.h >= b.h ? a : b;
    const auto& low = a.h >= b.h ? b : a;
    return make_link_geometry(horizontal_distance(a, b), high.h, low.h);
}

} // namespace uavnet
