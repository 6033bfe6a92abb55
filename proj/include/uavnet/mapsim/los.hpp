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

// Line-of-sight tests against a height map.
//
// The default test treats every cell as a flat-topped prism and walks the cells
// crossed by the segment's ground track. Over each crossed cell the segment is
// linear in height, so its lowest point is at the entry or exit of that cell and
// the test is exact for the raster. The sampled variant checks points at most
// half a cell apart against a bilinear surface.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/error.hpp"
#include "uavnet/mapsim/heightmap.hpp"

namespace uavnet::mapsim {

enum class LosMethod { ExactCells, SampledBilinear };

namespace detail {

inline void require_inside(const HeightMap& map, const Position3D& p) {
    if (!map.contains(p.x, p.y)) throw domain_error("los_check: endpoint outside the map extent");
    if (!std::isfinite(p.h)) throw domain_error("los_check: endpoint height must be finite");
}

/// Surface interpolated bilinearly between cell centres, clamped at the border.
inline double bilinear_surface(const HeightMap& map, double x, double y) {
    const double u = std::clamp((x - map.xllcorner) / map.cellsize - 0.5, 0.0, map.ncols - 1.0);
    const double v = std::clamp((map.ytop() - y) / map.cellsize - 0.5, 0.0, map.nrows - 1.0);
    const int c0 = std::min(static_cast<int>(u), map.ncols - 1), r0 = std::min(static_cast<int>(v), map.nrows - 1);
    const int c1 = std::min(c0 + 1, map.ncols - 1), r1 = std::min(r0 + 1, map.nrows - 1);
    const double fu = u - c0, fv = v - r0;
    const double top = (1.0 - fu) * map.surface(r0, c0) + fu * map.surface(r0, c1);
    const double bottom = (1.0 - fu) * map.surface(r1, c0) + fu * map.surface(r1, c1);
    return (1.0 - fv) * top + fv * bottom;
}

inline bool los_exact(const Position3D& a, const Position3D& b, const HeightMap& map) {
    // Grid coordinates: u along columns, v along rows (southward).
    const double u0 = (a.x - map.xllcorner) / map.cellsize, v0 = (map.ytop() - a.y) / map.cellsize;
    const double u1 = (b.x - map.xllcorner) / map.cellsize, v1 = (map.ytop() - b.y) / map.cellsize;
    const double du = u1 - u0, dv = v1 - v0;
    auto cell = [](double w, int n) { return std::clamp(static_cast<int>(std::floor(w)), 0, n - 1); };
    int c = cell(u0, map.ncols), r = cell(v0, map.nrows);
    const int c_end = cell(u1, map.ncols), r_end = cell(v1, map.nrows);
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int step_c = du > 0.0 ? 1 : -1, step_r = dv > 0.0 ? 1 : -1;
    const double delta_u = du != 0.0 ? 1.0 / std::abs(du) : inf;
    const double delta_v = dv != 0.0 ? 1.0 / std::abs(dv) : inf;
    double next_u = du > 0.0 ? (c + 1 - u0) * delta_u : du < 0.0 ? (u0 - c) * delta_u : inf;
    double next_v = dv > 0.0 ? (r + 1 - v0) * delta_v : dv < 0.0 ? (v0 - r) * delta_v : inf;
    auto z = [&](double t) { return a.h + t * (b.h - a.h); };
    double t = 0.0;
    while (true) {
        const double t_out = std::min({next_u, next_v, 1.0});
        if (std::min(z(t), z(t_out)) < map.surface(r, c)) return false;
        if ((r == r_end && c == c_end) || t_out >= 1.0) return true;
        if (next_u <= next_v) {
            c += step_c;
            t = next_u;
            next_u += delta_u;
        } else {
            r += step_r;
            t = next_v;
            next_v += delta_v;
        }
        if (c < 0 || c >= map.ncols || r < 0 || r >= map.nrows) return true;
    }
}

inline bool los_sampled(const Position3D& a, const Position3D& b, const HeightMap& map) {
    const double len = horizontal_distance(a, b);
    const auto n = static_cast<long>(std::ceil(len / (0.5 * map.cellsize)));
    for (long k = 0; k <= std::max(n, 1L); ++k) {
        const double t = n == 0 ? k : static_cast<double>(k) / n;
        if (t > 1.0) break;
        const double x = a.x + t * (b.x - a.x), y = a.y + t * (b.y - a.y), h = a.h + t * (b.h - a.h);
        if (h < bilinear_surface(map, x, y)) return false;
    }
    return true;
}

} // namespace detail

/// True when the segment a-b stays at or above the surface. Symmetric in a, b.
inline bool los_check(const Position3D& a, const Position3D& b, const HeightMap& map,
                      LosMethod method = LosMethod::ExactCells) {
    detail::require_inside(map, a);
    detail::require_inside(map, b);
    // Walk from the lexicographically smaller endpoint so that a-b and b-a take
    // the same floating-point path.
    const bool swap = std::tie(b.x, b.y, b.h) < std::tie(a.x, a.y, a.h);
    const auto& p = swap ? b : a;
    const auto& q = swap ? a : b;
    return method == LosMethod::ExactCells ? detail::los_exact(p, q, map) : detail::los_sampled(p, q, map);
}

} // namespace uavnet::mapsim
