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

// Monte-Carlo performance metrics for the aerial-user network.
//
// Trial i of a run uses RngStream(seed, i): substream 1 deploys the sites and
// substream 2 draws the channel. The same seed therefore reuses the same
// deployments across altitudes and antenna settings, and results do not depend
// on the thread count.

#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "uavnet/aue/network.hpp"
#include "uavnet/error.hpp"
#include "uavnet/numerics/quadrature.hpp"
#include "uavnet/numerics/random.hpp"
#include "uavnet/parallel.hpp"

namespace uavnet::aue {

struct McOptions {
    int n_trials = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Sample mean with a normal-approximation 95% half-width.
struct Estimate {
    double value = 0.0;
    double ci95 = 0.0;
};

inline Estimate mean_estimate(std::span<const double> xs) {
    uavnet::detail::require(xs.size() >= 2, "mean_estimate: need at least two samples");
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return {mean, 1.96 * sd / std::sqrt(static_cast<double>(xs.size()))};
}

/// Per-trial SINR of a user hovering at `uav_h` above the region centre.
inline std::vector<double> simulate_sinr(double uav_h, const AueNetworkConfig& cfg, const McOptions& mc) {
    cfg.validate();
    check_edge_effects(cfg);
    uavnet::detail::require(uav_h >= 0.0, "simulate_sinr: altitude must be >= 0");
    uavnet::detail::require(mc.n_trials >= 1, "simulate_sinr: need at least one trial");
    std::vector<double> sinr(static_cast<std::size_t>(mc.n_trials));
    parallel_for(sinr.size(), mc.threads, [&](std::size_t i) {
        const numerics::RngStream trial(mc.seed, i);
        auto deploy_rng = trial.substream(1);
        auto channel_rng = trial.substream(2);
        const auto snap = deploy_hppp(cfg, deploy_rng);
        sinr[i] = snapshot_sinr({0.0, 0.0, uav_h}, snap, cfg, channel_rng).sinr;
    });
    return sinr;
}

/// Same as simulate_sinr over a fixed deployment, so only the channel is random.
inline std::vector<double> simulate_sinr(double uav_h, const NetworkSnapshot& snap, const AueNetworkConfig& cfg,
                                         const McOptions& mc) {
    cfg.validate();
    std::vector<double> sinr(static_cast<std::size_t>(mc.n_trials));
    parallel_for(sinr.size(), mc.threads, [&](std::size_t i) {
        auto channel_rng = numerics::RngStream(mc.seed, i).substream(2);
        sinr[i] = snapshot_sinr({0.0, 0.0, uav_h}, snap, cfg, channel_rng).sinr;
    });
    return sinr;
}

/// Fraction of trials with SINR > t.
inline Estimate coverage_from_samples(std::span<const double> sinr, double t) {
    std::vector<double> hit(sinr.size());
    for (std::size_t i = 0; i < sinr.size(); ++i) hit[i] = sinr[i] > t ? 1.0 : 0.0;
    return mean_estimate(hit);
}

inline Estimate coverage_probability_mc(double uav_h, const AueNetworkConfig& cfg, const McOptions& mc) {
    uavnet::detail::require(mc.n_trials >= 100, "coverage_probability_mc: need at least 100 trials");
    return coverage_from_samples(simulate_sinr(uav_h, cfg, mc), cfg.threshold());
}

/// Per-trial (1/ln 2) sum_n w_n 1[SINR > t_n] / (1 + t_n), averaged. Equal to
/// the node sum over coverage curves estimated from the same trials.
inline Estimate capacity_from_samples(std::span<const double> sinr, std::span<const numerics::ChebyshevNode> nodes) {
    std::vector<double> c(sinr.size());
    for (std::size_t i = 0; i < sinr.size(); ++i)
        c[i] = numerics::capacity_from_coverage([&](double t) { return sinr[i] > t ? 1.0 : 0.0; }, nodes);
    return mean_estimate(c);
}

/// Ergodic rate in bit/s/Hz from K Gauss-Chebyshev nodes.
inline Estimate capacity(double uav_h, const AueNetworkConfig& cfg, int k_nodes, const McOptions& mc) {
    uavnet::detail::require(k_nodes >= 50, "capacity: need at least 50 nodes");
    uavnet::detail::require(mc.n_trials >= 100, "capacity: need at least 100 trials");
    const auto nodes = numerics::chebyshev_capacity_nodes(k_nodes);
    return capacity_from_samples(simulate_sinr(uav_h, cfg, mc), nodes);
}

/// (1/ln 2) integral_0^t_max P(t) / (1 + t) dt, integrated in u = ln(1 + t) so a
/// flat coverage curve gives log2(1 + t_max) exactly.
inline double capacity_bounded(const std::function<double(double)>& coverage, double t_max) {
    uavnet::detail::require(t_max > 0.0 && std::isfinite(t_max), "capacity_bounded: t_max must be finite and > 0");
    const double u_max = std::log1p(t_max);
    const double integral = boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double u) { return coverage(std::expm1(u)); }, 0.0, u_max);
    return integral / std::log(2.0);
}

/// Per-trial log2(1 + min(SINR, t_max)), averaged: the bounded rate without quadrature error.
inline Estimate capacity_bounded_from_samples(std::span<const double> sinr, double t_max) {
    uavnet::detail::require(t_max > 0.0, "capacity_bounded: t_max must be > 0");
    std::vector<double> c(sinr.size());
    for (std::size_t i = 0; i < sinr.size(); ++i) c[i] = std::log2(1.0 + std::min(sinr[i], t_max));
    return mean_estimate(c);
}

inline Estimate mean_sinr_from_samples(std::span<const double> sinr) { return mean_estimate(sinr); }

/// lambda [(1 - rho) R(ground UE) + rho R(aerial UE)], bit/s/Hz/km^2. The two
/// rates share deployments; the interval treats them as independent.
inline Estimate ase(const AueNetworkConfig& cfg, double uav_h, int k_nodes, const McOptions& mc) {
    cfg.validate();
    const double rho = cfg.aue_ratio_rho;
    AueNetworkConfig ground = cfg;
    ground.uav = OmniAntenna{};
    const Estimate rg = rho < 1.0 ? capacity(cfg.ground_ue_height, ground, k_nodes, mc) : Estimate{};
    const Estimate ra = rho > 0.0 ? capacity(uav_h, cfg, k_nodes, mc) : Estimate{};
    const double lam = cfg.bs_density_lambda;
    return {lam * ((1.0 - rho) * rg.value + rho * ra.value),
            lam * std::hypot((1.0 - rho) * rg.ci95, rho * ra.ci95)};
}

enum class SweepAxis { Altitude, Density, PhiB, PhiT };
enum class SweepMetric { Capacity, Coverage, MeanSinr, Ase };

inline std::string_view to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::Altitude: return "altitude";
    case SweepAxis::Density: return "density";
    case SweepAxis::PhiB: return "phi_b";
    case SweepAxis::PhiT: return "phi_t";
    }
    return "unknown";
}

inline std::string_view to_string(SweepMetric m) {
    switch (m) {
    case SweepMetric::Capacity: return "capacity";
    case SweepMetric::Coverage: return "coverage";
    case SweepMetric::MeanSinr: return "mean_sinr";
    case SweepMetric::Ase: return "ase";
    }
    return "unknown";
}

struct SweepSpec {
    SweepAxis axis = SweepAxis::Altitude;
    SweepMetric metric = SweepMetric::Capacity;
    std::vector<double> grid; ///< m, BS/km^2, deg or deg depending on the axis
    double uav_h = 150.0;     ///< altitude for the non-altitude axes, m
    int k_nodes = 60;
    McOptions mc;
};

struct SweepRow {
    double x;
    double value;
    double ci95;
};

/// Metric at a single operating point.
inline Estimate evaluate(const AueNetworkConfig& cfg, double uav_h, SweepMetric metric, int k_nodes, const McOptions& mc) {
    switch (metric) {
    case SweepMetric::Capacity: return capacity(uav_h, cfg, k_nodes, mc);
    case SweepMetric::Coverage: return coverage_probability_mc(uav_h, cfg, mc);
    case SweepMetric::MeanSinr: return mean_sinr_from_samples(simulate_sinr(uav_h, cfg, mc));
    case SweepMetric::Ase: return ase(cfg, uav_h, k_nodes, mc);
    }
    throw domain_error("evaluate: unknown metric");
}

/// One row per grid point, all with the same seed. The density axis widens the
/// region where needed to keep five nearest-neighbour distances. The beamwidth and
/// tilt axes require a cone antenna.
inline std::vector<SweepRow> sweep(const AueNetworkConfig& cfg, const SweepSpec& spec) {
    if (spec.grid.empty()) throw domain_error("sweep: empty grid");
    if ((spec.axis == SweepAxis::PhiB || spec.axis == SweepAxis::PhiT) && !std::holds_alternative<ConeAntenna>(cfg.uav))
        throw domain_error("sweep: beamwidth and tilt axes need a cone antenna");
    std::vector<SweepRow> rows;
    for (double x : spec.grid) {
        AueNetworkConfig c = cfg;
        double h = spec.uav_h;
        switch (spec.axis) {
        case SweepAxis::Altitude: h = x; break;
        case SweepAxis::Density:
            c.bs_density_lambda = x;
            c.region_radius = std::max(cfg.region_radius, min_region_radius_m(x));
            break;
        case SweepAxis::PhiB: std::get<ConeAntenna>(c.uav).phi_b_deg = x; break;
        case SweepAxis::PhiT: std::get<ConeAntenna>(c.uav).phi_t = deg_to_rad(x); break;
        }
        const auto e = evaluate(c, h, spec.metric, spec.k_nodes, spec.mc);
        rows.push_back({x, e.value, e.ci95});
    }
    return rows;
}

} // namespace uavnet::aue
