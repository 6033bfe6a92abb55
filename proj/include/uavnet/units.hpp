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
#include <numbers>

namespace uavnet {

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / pi; }

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }

inline double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) noexcept { return 10.0 * std::log10(w) + 30.0; }

/// Thermal noise power N0 * B * F.
inline double noise_power_w(double density_dbm_per_hz, double bandwidth_hz, double noise_figure_db) noexcept {
    return dbm_to_watt(density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

/// Carrier frequency, with the wavelength derived from it.
struct Carrier {
    double frequency_hz = 2.0e9;

    double wavelength_m() const noexcept { return speed_of_light / frequency_hz; }
    double frequency_ghz() const noexcept { return frequency_hz * 1e-9; }
};

} // namespace uavnet
