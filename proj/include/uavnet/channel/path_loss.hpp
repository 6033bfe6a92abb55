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

// Deterministic path-loss formulas, all returning attenuation in dB.
//
// Logarithms in the 3GPP-style formulas are base 10 and f_c is in GHz, except
// in the ground-slice breakpoint d2 = 2 pi h_uav h_g f_c / c, where f_c is in
// Hz so that d2 comes out in metres.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/error.hpp"
#include "uavnet/units.hpp"

namespace uavnet::channel {

/// 10 eta log10(4 pi d / lambda). eta = 2 is Friis.
inline double free_space_pl_db(const LinkGeometry& g, const Carrier& carrier, double eta = 2.0) {
    uavnet::detail::require(eta > 0.0, "free_space_pl_db: eta must be > 0");
    if (!(g.d_3d > 0.0)) throw domain_error("free_space_pl_db: distance must be > 0");
    return 10.0 * eta * std::log10(4.0 * pi * g.d_3d / carrier.wavelength_m());
}

/// Lambda0 + 10 eta log10(d / d0).
inline double log_distance_pl_db(const LinkGeometry& g, double lambda0_db, double d0_m, double eta) {
    uavnet::detail::require(d0_m > 0.0, "log_distance_pl_db: d0 must be > 0");
    uavnet::detail::require(eta > 0.0, "log_distance_pl_db: eta must be > 0");
    if (g.d_3d < d0_m)
        throw domain_error("log_distance_pl_db: distance " + std::to_string(g.d_3d) + " m is below d0");
    return lambda0_db + 10.0 * eta * std::log10(g.d_3d / d0_m);
}

/// Log-distance law with the free-space loss at d0 as reference.
inline double log_distance_pl_db(const LinkGeometry& g, const Carrier& carrier, double d0_m, double eta) {
    uavnet::detail::require(d0_m > 0.0, "log_distance_pl_db: d0 must be > 0");
    const double lambda0 = 20.0 * std::log10(4.0 * pi * d0_m / carrier.wavelength_m());
    return log_distance_pl_db(g, lambda0, d0_m, eta);
}

enum class AveragingDomain {
    Db,     ///< P_LOS * PL_LOS + (1 - P_LOS) * PL_NLOS on dB values
    Linear, ///< the same convex combination applied to linear path gains
};

/// Mean of the LOS and NLOS losses weighted by the LOS probability.
inline double averaged_pl_db(double pl_los_db, double pl_nlos_db, double plos,
                             AveragingDomain domain = AveragingDomain::Db) {
    uavnet::detail::require(plos >= 0.0 && plos <= 1.0, "averaged_pl_db: plos must lie in [0, 1]");
    if (domain == AveragingDomain::Db) return plos * pl_los_db + (1.0 - plos) * pl_nlos_db;
    const double gain = plos * db_to_linear(-pl_los_db) + (1.0 - plos) * db_to_linear(-pl_nlos_db);
    return -linear_to_db(gain);
}

namespace detail {

inline void require_range(const char* quantity, double value, double lo, double hi, const char* model) {
    if (value < lo)
        throw applicability_error(quantity, value, lo,
                                  std::string(model) + ": " + quantity + " = " + std::to_string(value) +
                                      " below lower bound " + std::to_string(lo));
    if (value > hi)
        throw applicability_error(quantity, value, hi,
                                  std::string(model) + ": " + quantity + " = " + std::to_string(value) +
                                      " above upper bound " + std::to_string(hi));
}

/// 20 log10(40 pi f_c / 3) with f_c in GHz.
inline double frequency_term_db(double f_c_ghz) { return 20.0 * std::log10(40.0 * pi * f_c_ghz / 3.0); }

/// Lambda_1 of the ground slice evaluated at slant distance d (m).
inline double ground_los_pl1_db(double d, double f_c_ghz, double h_building) {
    const double hb172 = std::pow(h_building, 1.72);
    return 20.0 * std::log10(40.0 * pi * d * f_c_ghz / 3.0) + std::min(0.03 * hb172, 10.0) * std::log10(d) -
           std::min(0.044 * hb172, 14.77) + 0.002 * std::log10(h_building) * d;
}

} // namespace detail

/// Ground-slice LOS/NLOS breakpoint distance, m.
inline double ground_breakpoint_m(double h_uav, double h_g, double f_c_ghz) {
    return 2.0 * pi * h_uav * h_g * (f_c_ghz * 1e9) / speed_of_light;
}

/// Ground-slice LOS loss: Lambda_1 up to the breakpoint d2, then
/// Lambda_2 = Lambda_1(d2) + 40 log10(d / d2). Valid for 10 m <= d_h <= 10 km.
inline double ground_los_pl_db(const LinkGeometry& g, double f_c_ghz, const Environment& env) {
    detail::require_range("d_h", g.d_h, 10.0, 10000.0, "ground LOS path loss");
    const double d2 = ground_breakpoint_m(g.h_uav, g.h_g, f_c_ghz);
    const double hb = env.mean_building_height;
    if (g.d_3d <= d2) return detail::ground_los_pl1_db(g.d_3d, f_c_ghz, hb);
    return detail::ground_los_pl1_db(d2, f_c_ghz, hb) + 40.0 * std::log10(g.d_3d / d2);
}

/// Ground-slice NLOS loss max(Lambda_LOS, Lambda'_NLOS). Valid for 10 m <= d_h <= 5 km.
inline double ground_nlos_pl_db(const LinkGeometry& g, double f_c_ghz, const Environment& env) {
    detail::require_range("d_h", g.d_h, 10.0, 5000.0, "ground NLOS path loss");
    const double w = env.street_width;
    const double hb = env.mean_building_height;
    const double hg = g.h_g;
    const double hu = g.h_uav;
    const double user_term = 3.2 * std::pow(std::log10(11.75 * hu), 2.0) - 4.97;
    const double nlos = 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(hb) -
                        (24.37 - 3.7 * (hb / hg) * (hb / hg)) * std::log10(hg) +
                        (43.42 - 3.1 * std::log10(hg)) * (std::log10(g.d_3d) - 3.0) + 20.0 * std::log10(f_c_ghz) -
                        user_term;
    return std::max(ground_los_pl_db(g, f_c_ghz, env), nlos);
}

/// Aerial LOS loss max(23.9 - 1.8 log10 h, 20) log10 d + 20 log10(40 pi f_c / 3), used in the
/// obstructed and high-altitude slices.
inline double aerial_los_pl_db(const LinkGeometry& g, double f_c_ghz) {
    return std::max(23.9 - 1.8 * std::log10(g.h_uav), 20.0) * std::log10(g.d_3d) + detail::frequency_term_db(f_c_ghz);
}

/// Aerial NLOS loss, never below the aerial LOS loss.
inline double aerial_nlos_pl_db(const LinkGeometry& g, double f_c_ghz) {
    const double los = aerial_los_pl_db(g, f_c_ghz);
    const double nlos =
        -12.0 + (35.0 - 5.3 * std::log10(g.h_uav)) * std::log10(g.d_3d) + detail::frequency_term_db(f_c_ghz);
    return std::max(los, nlos);
}

/// Rural-macro A2G path loss for the given slice and LOS state.
inline double pl_3gpp_rural_db(const LinkGeometry& g, double f_c_ghz, const Environment& env, bool los,
                               PropagationSlice slice) {
    uavnet::detail::require(f_c_ghz > 0.0, "pl_3gpp_rural_db: carrier frequency must be > 0");
    if (!(g.d_3d > 0.0)) throw domain_error("pl_3gpp_rural_db: distance must be > 0");
    switch (slice) {
    case PropagationSlice::GroundLevel:
        return los ? ground_los_pl_db(g, f_c_ghz, env) : ground_nlos_pl_db(g, f_c_ghz, env);
    case PropagationSlice::ObstructedA2G:
    case PropagationSlice::HighAltitudeA2G:
        return los ? aerial_los_pl_db(g, f_c_ghz) : aerial_nlos_pl_db(g, f_c_ghz);
    case PropagationSlice::AirToAir:
        break;
    }
    throw model_gap_error("pl_3gpp_rural_db: air-to-air links use the free-space model");
}

} // namespace uavnet::channel
