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

// Downlink network seen by an aerial user: BS sites from a homogeneous Poisson
// point process, one SINR snapshot per trial.
//
// Each site-to-user link draws its LOS state independently from the building
// model, then a log-distance loss for that state. Every transmitter draws its own
// small-scale fading. The user is served by the transmitter with the largest mean
// received power (fading excluded) and all other transmitters interfere.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/antenna/sector.hpp"
#include "uavnet/antenna/uav_antenna.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/channel/link_loss.hpp"
#include "uavnet/channel/los_probability.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/error.hpp"
#include "uavnet/numerics/random.hpp"
#include "uavnet/units.hpp"

namespace uavnet::aue {

/// How a cone antenna is pointed in each snapshot.
enum class ConeSteering {
    Fixed,            ///< phi_t and azimuth as configured
    AzimuthToServing, ///< configured phi_t, azimuth toward the strongest omni-received BS
    AxisToServing,    ///< axis straight at the strongest omni-received BS
};

/// Vertically directional, horizontally omnidirectional macro antenna with 8 deg
/// electrical downtilt. Vertical beamwidth follows from the 10 dBi gain.
inline SectorAntenna default_bs_antenna() {
    SectorAntenna a;
    a.max_gain_dbi = 10.0;
    a.sidelobe_floor_db = -10.0;
    a.electrical_tilt = deg_to_rad(8.0);
    a.horizontally_omni = true;
    return a;
}

struct AueNetworkConfig {
    double bs_density_lambda = 5.0;   ///< BS per km^2
    double bs_height_h_g = 3.0;       ///< m
    double p_tx = 40.0;               ///< W per transmitter
    double bw = 20e6;                 ///< Hz
    double noise_n0 = dbm_to_watt(-174.0); ///< W/Hz
    double noise_figure_db = 9.0;
    std::optional<double> noise_power_override_w;
    /// When set, T = 2^(R/BW) - 1 and threshold_T is ignored.
    std::optional<double> target_rate_r_tx; ///< bit/s
    double threshold_T = 1.0;               ///< linear SINR
    Carrier carrier{2.0e9};
    /// Log-distance laws; an unset lambda0 means free space at d0.
    channel::LogDistance path_los{std::nullopt, 1.0, 2.09, 0.0};
    channel::LogDistance path_nlos{std::nullopt, 1.0, 3.75, 0.0};
    /// Unset means no small-scale fading on links in that state.
    std::optional<numerics::FadingModel> fading_los = numerics::Nakagami{3};
    std::optional<numerics::FadingModel> fading_nlos = numerics::Nakagami{1};
    UavAntenna uav = OmniAntenna{};
    ConeSteering steering = ConeSteering::Fixed;
    SectorAntenna sector = default_bs_antenna();
    int sectors_per_site = 1; ///< sector k points at bearing 2 pi k / n
    channel::Environment env = channel::environment_preset(channel::EnvironmentKind::Urban);
    double aue_ratio_rho = 0.5; ///< share of aerial users
    double ground_ue_height = 1.5; ///< m
    double region_radius = 3000.0; ///< m, disc centred below the user

    /// Linear SINR threshold.
    double threshold() const {
        if (target_rate_r_tx) return std::exp2(*target_rate_r_tx / bw) - 1.0;
        return threshold_T;
    }

    /// N0 B F unless overridden, W.
    double noise_power() const {
        if (noise_power_override_w) return *noise_power_override_w;
        return noise_n0 * bw * db_to_linear(noise_figure_db);
    }

    void validate() const {
        uavnet::detail::require(bs_density_lambda > 0.0 && std::isfinite(bs_density_lambda), "aue config: density must be > 0");
        uavnet::detail::require(bs_height_h_g >= 0.0, "aue config: BS height must be >= 0");
        uavnet::detail::require(p_tx > 0.0, "aue config: transmit power must be > 0");
        uavnet::detail::require(bw > 0.0, "aue config: bandwidth must be > 0");
        uavnet::detail::require(noise_power() >= 0.0, "aue config: noise power must be >= 0");
        if (target_rate_r_tx) uavnet::detail::require(*target_rate_r_tx > 0.0, "aue config: target rate must be > 0");
        else uavnet::detail::require(threshold_T > 0.0, "aue config: threshold must be > 0");
        for (const auto* p : {&path_los, &path_nlos}) {
            uavnet::detail::require(p->eta > 0.0 && p->d0_m > 0.0, "aue config: path-loss eta and d0 must be > 0");
            uavnet::detail::require(p->sigma_db >= 0.0, "aue config: shadowing sigma must be >= 0");
        }
        if (fading_los) numerics::validate(*fading_los);
        if (fading_nlos) numerics::validate(*fading_nlos);
        if (const auto* c = std::get_if<ConeAntenna>(&uav)) c->validate();
        sector.validate();
        uavnet::detail::require(sectors_per_site >= 1, "aue config: sectors per site must be >= 1");
        env.validate();
        uavnet::detail::require(aue_ratio_rho >= 0.0 && aue_ratio_rho <= 1.0, "aue config: rho must lie in [0, 1]");
        uavnet::detail::require(ground_ue_height >= 0.0, "aue config: ground UE height must be >= 0");
        uavnet::detail::require(region_radius > 0.0, "aue config: region radius must be > 0");
    }
};

/// Mean nearest-neighbour distance of the BS process, 0.5 / sqrt(lambda) km, in m.
inline double mean_nn_distance_m(double lambda_per_km2) { return 500.0 / std::sqrt(lambda_per_km2); }

/// Region radius needed to keep edge effects negligible: five nearest-neighbour distances.
inline double min_region_radius_m(double lambda_per_km2) { return 5.0 * mean_nn_distance_m(lambda_per_km2); }

inline void check_edge_effects(const AueNetworkConfig& cfg) {
    if (cfg.region_radius < min_region_radius_m(cfg.bs_density_lambda))
        throw domain_error("aue config: region radius below 5 mean nearest-neighbour distances");
}

struct NetworkSnapshot {
    std::vector<Position3D> bs_positions;
    std::vector<std::vector<SectorAntenna>> sectors; ///< per site
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    bool empty() const noexcept { return bs_positions.empty(); }
};

inline std::vector<SectorAntenna> site_sectors(const AueNetworkConfig& cfg) {
    std::vector<SectorAntenna> s;
    for (int k = 0; k < cfg.sectors_per_site; ++k) {
        SectorAntenna a = cfg.sector;
        a.azimuth = cfg.sector.azimuth + 2.0 * pi * k / cfg.sectors_per_site;
        s.push_back(a);
    }
    return s;
}

/// Poisson(lambda pi r^2) sites placed uniformly in the disc of radius
/// region_radius centred on the origin.
inline NetworkSnapshot deploy_hppp(const AueNetworkConfig& cfg, numerics::RngStream& rng) {
    uavnet::detail::require(cfg.region_radius > 0.0, "deploy_hppp: region radius must be > 0");
    uavnet::detail::require(cfg.bs_density_lambda >= 0.0, "deploy_hppp: density must be >= 0");
    NetworkSnapshot snap;
    snap.seed = rng.master_seed();
    snap.trial = rng.stream_index();
    const double mean = cfg.bs_density_lambda * pi * cfg.region_radius * cfg.region_radius * 1e-6;
    const auto n = std::poisson_distribution<long>(mean)(rng);
    const auto sectors = site_sectors(cfg);
    snap.bs_positions.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double r = cfg.region_radius * std::sqrt(rng.uniform());
        const double a = 2.0 * pi * rng.uniform();
        snap.bs_positions.push_back({r * std::cos(a), r * std::sin(a), cfg.bs_height_h_g});
        snap.sectors.push_back(sectors);
    }
    return snap;
}

struct SinrResult {
    double sinr = 0.0; ///< linear
    std::optional<std::size_t> serving_bs;
    std::size_t serving_sector = 0;
    bool serving_los = false;
};

namespace detail {

inline double log_distance_loss_db(const channel::LogDistance& law, double d_3d, const Carrier& carrier) {
    const double d = std::max(d_3d, law.d0_m); // the law is flat inside d0
    const double lambda0 =
        law.lambda0_db ? *law.lambda0_db : 20.0 * std::log10(4.0 * pi * law.d0_m / carrier.wavelength_m());
    return lambda0 + 10.0 * law.eta * std::log10(d / law.d0_m);
}

struct Transmitter {
    std::size_t site;
    std::size_t sector;
    bool los;
    double mean_no_ue_w; ///< received power before the user antenna gain
    Direction toward_bs; ///< from the user
};

inline UavAntenna steer(const UavAntenna& ant, ConeSteering mode, const Direction& toward_bs) {
    const auto* c = std::get_if<ConeAntenna>(&ant);
    if (!c || mode == ConeSteering::Fixed) return ant;
    ConeAntenna s = *c;
    s.azimuth = toward_bs.bearing();
    if (mode == ConeSteering::AxisToServing) s.phi_t = pi / 2.0 + toward_bs.elevation();
    return s;
}

} // namespace detail

/// SINR of a user at `uav_pos` in one snapshot. Draws, in order: per site the LOS
/// state and shadowing, then per transmitter the fading power.
inline SinrResult snapshot_sinr(const Position3D& uav_pos, const NetworkSnapshot& snap, const AueNetworkConfig& cfg,
                                numerics::RngStream& rng) {
    if (snap.empty()) return {};
    std::vector<detail::Transmitter> tx;
    tx.reserve(snap.bs_positions.size() * static_cast<std::size_t>(cfg.sectors_per_site));
    for (std::size_t i = 0; i < snap.bs_positions.size(); ++i) {
        const auto& site = snap.bs_positions[i];
        const double d_h = horizontal_distance(site, uav_pos);
        const double d_3d = std::hypot(d_h, uav_pos.h - site.h);
        const bool los = rng.bernoulli(channel::p_los_building(d_h, uav_pos.h, site.h, cfg.env));
        const auto& law = los ? cfg.path_los : cfg.path_nlos;
        const double loss_db = detail::log_distance_loss_db(law, d_3d, cfg.carrier) -
                               numerics::sample_shadowing_db(law.sigma_db, rng);
        const Direction to_user = direction(site, uav_pos);
        const Direction to_bs{-to_user.x, -to_user.y, -to_user.z};
        for (std::size_t k = 0; k < snap.sectors[i].size(); ++k) {
            const double g_bs = bs_gain_db(snap.sectors[i][k], to_user);
            tx.push_back({i, k, los, cfg.p_tx * db_to_linear(g_bs - loss_db), to_bs});
        }
    }

    UavAntenna ant = cfg.uav;
    if (std::holds_alternative<ConeAntenna>(ant) && cfg.steering != ConeSteering::Fixed) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < tx.size(); ++j)
            if (tx[j].mean_no_ue_w > tx[best].mean_no_ue_w) best = j;
        ant = detail::steer(cfg.uav, cfg.steering, tx[best].toward_bs);
    }

    std::vector<double> rx(tx.size());
    std::optional<std::size_t> serving;
    double best_mean = 0.0;
    for (std::size_t j = 0; j < tx.size(); ++j) {
        const double mean = tx[j].mean_no_ue_w * uav_gain_linear(ant, tx[j].toward_bs);
        const auto& fading = tx[j].los ? cfg.fading_los : cfg.fading_nlos;
        const double fade = fading ? numerics::sample_fading(*fading, rng) : 1.0;
        rx[j] = mean * fade;
        if (mean > best_mean) best_mean = mean, serving = j;
    }
    if (!serving) return {};

    double interference = 0.0;
    for (std::size_t j = 0; j < rx.size(); ++j)
        if (j != *serving) interference += rx[j];
    const auto& s = tx[*serving];
    return {rx[*serving] / (interference + cfg.noise_power()), s.site, s.sector, s.los};
}

} // namespace uavnet::aue
