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

// Aerial base station design: Rician outage at a ground user, the transmit
// power needed to hold a boundary outage, and the gains over a terrestrial
// station at the disc centre.
//
// K, eta and G are functions of the elevation angle theta seen from the user.
// A terrestrial station is the theta = 0 case (h = 0).

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "uavnet/error.hpp"
#include "uavnet/numerics/marcum.hpp"
#include "uavnet/units.hpp"

namespace uavnet::abs_net {

/// Profile value at one elevation angle. `k_db = -inf` encodes K = 0.
struct ProfileKnot {
    double theta = 0.0; ///< rad
    double k_db = 0.0;
    double eta = 2.0;
};

/// Elevation-dependent Rician K and path-loss exponent, piecewise linear
/// between knots (K interpolated in dB) and clamped beyond the end knots.
struct AbsProfile {
    std::vector<ProfileKnot> knots{{0.0, 0.0, 3.5}, {pi / 2.0, 15.0, 2.0}};
    double antenna_gain = 1.0; ///< G, linear
    double noise_w = 1e-13;    ///< N0, total noise power in W
    double threshold = 1.0;    ///< T, linear SNR

    void validate() const {
        if (knots.empty()) throw domain_error("abs profile: at least one knot required");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const auto& k = knots[i];
            uavnet::detail::require(k.theta >= 0.0 && k.theta <= pi / 2.0 + 1e-12,
                                    "abs profile: knot angles must lie in [0, pi/2]");
            uavnet::detail::require(std::isfinite(k.eta) && k.eta > 0.0, "abs profile: eta must be > 0");
            uavnet::detail::require(!std::isnan(k.k_db) && k.k_db < std::numeric_limits<double>::infinity(),
                                    "abs profile: K must be finite or -inf dB");
            if (i) {
                const auto& p = knots[i - 1];
                uavnet::detail::require(k.theta > p.theta, "abs profile: knot angles must increase");
                uavnet::detail::require(k.eta <= p.eta, "abs profile: eta must be nonincreasing in theta");
                uavnet::detail::require(k.k_db >= p.k_db, "abs profile: K must be nondecreasing in theta");
            }
        }
        uavnet::detail::require(eta(pi / 2.0) >= 2.0, "abs profile: eta at 90 deg must be >= 2");
        uavnet::detail::require(antenna_gain > 0.0, "abs profile: antenna gain must be > 0");
        uavnet::detail::require(noise_w > 0.0, "abs profile: noise power must be > 0");
        uavnet::detail::require(threshold > 0.0, "abs profile: threshold must be > 0");
    }

    double eta(double theta) const { return interpolate(theta, &ProfileKnot::eta); }

    double k_linear(double theta) const {
        const double db = interpolate(theta, &ProfileKnot::k_db);
        return std::isinf(db) ? 0.0 : db_to_linear(db);
    }

    /// eta 3.5 to 2 and K 0 dB to 15 dB, linear over 0 to 90 deg.
    static AbsProfile urban() { return {}; }

    /// Same K and eta at every angle.
    static AbsProfile flat(double k_db, double eta) {
        AbsProfile p;
        p.knots = {{0.0, k_db, eta}};
        return p;
    }

private:
    double interpolate(double theta, double ProfileKnot::*field) const {
        if (theta <= knots.front().theta) return knots.front().*field;
        if (theta >= knots.back().theta) return knots.back().*field;
        const auto hi = std::upper_bound(knots.begin(), knots.end(), theta,
                                         [](double t, const ProfileKnot& k) { return t < k.theta; });
        const auto lo = hi - 1;
        const double a = (*lo).*field, b = (*hi).*field;
        if (a == b) return a;
        const double w = (theta - lo->theta) / (hi->theta - lo->theta);
        return a + w * (b - a);
    }
};

struct AbsDesign {
    double h_abs = 100.0; ///< m
    double r_c = 500.0;   ///< coverage radius, m
    double epsilon = 0.1; ///< outage allowed at the boundary

    double theta_c() const { return std::atan2(h_abs, r_c); }

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw domain_error("abs design: epsilon must lie in (0, 1)");
        uavnet::detail::require(std::isfinite(h_abs) && h_abs >= 0.0, "abs design: altitude must be >= 0");
        uavnet::detail::require(std::isfinite(r_c) && r_c > 0.0, "abs design: coverage radius must be > 0");
    }
};

/// Outage 1 - Q1(sqrt(2K), sqrt(2T(1+K) d^eta N0 / (G P))) at ground distance r.
inline double outage(double r, double h_abs, double p_tx, const AbsProfile& prof) {
    uavnet::detail::require(std::isfinite(r) && r >= 0.0, "outage: r must be >= 0");
    uavnet::detail::require(std::isfinite(h_abs) && h_abs >= 0.0, "outage: altitude must be >= 0");
    uavnet::detail::require(p_tx > 0.0, "outage: transmit power must be > 0");
    const double theta = std::atan2(h_abs, r);
    const double k = prof.k_linear(theta);
    const double d = std::hypot(h_abs, r);
    const double b2 = 2.0 * prof.threshold * (1.0 + k) * std::pow(d, prof.eta(theta)) * prof.noise_w /
                      (prof.antenna_gain * p_tx);
    if (std::isinf(b2)) return 1.0;
    return numerics::marcum_q_complement(std::sqrt(2.0 * k), std::sqrt(b2));
}

/// x(theta) = (2K + 2) / Q^-1(sqrt(2K), 1 - epsilon)^2.
inline double power_factor(double theta, double epsilon, const AbsProfile& prof) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw domain_error("power_factor: epsilon must lie in (0, 1)");
    const double k = prof.k_linear(theta);
    const double b = numerics::inv_marcum_q(std::sqrt(2.0 * k), 1.0 - epsilon);
    return (2.0 * k + 2.0) / (b * b);
}

/// Minimum transmit power (W) holding the outage at the disc boundary to epsilon.
/// h_abs = 0 gives the terrestrial station.
inline double required_power(const AbsDesign& design, const AbsProfile& prof) {
    design.validate();
    const double theta = design.theta_c();
    const double d = design.r_c / std::cos(theta);
    return prof.noise_w * prof.threshold / prof.antenna_gain * power_factor(theta, design.epsilon, prof) *
           std::pow(d, prof.eta(theta));
}

inline double required_power_terrestrial(double r_c, double epsilon, const AbsProfile& prof) {
    return required_power({0.0, r_c, epsilon}, prof);
}

/// P_terrestrial / P_aerial from the closed expression
/// x0 / x_theta r^(eta(0) - eta(theta)) cos(theta_c)^eta(theta).
inline double power_gain(const AbsDesign& design, const AbsProfile& prof) {
    design.validate();
    const double theta = design.theta_c();
    const double eta_t = prof.eta(theta);
    return power_factor(0.0, design.epsilon, prof) / power_factor(theta, design.epsilon, prof) *
           std::pow(design.r_c, prof.eta(0.0) - eta_t) * std::pow(std::cos(theta), eta_t);
}

/// Outage averaged over a uniformly populated disc of radius r_c
/// (user density 2 r / r_c^2, integrated in u = r^2 / r_c^2).
inline double mean_outage(double h_abs, double p_tx, double r_c, const AbsProfile& prof) {
    uavnet::detail::require(r_c > 0.0, "mean_outage: coverage radius must be > 0");
    auto f = [&](double u) { return outage(r_c * std::sqrt(std::clamp(u, 0.0, 1.0)), h_abs, p_tx, prof); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 12, 1e-12);
    return std::clamp(v, 0.0, 1.0);
}

/// N W log2(1 + T) (1 - mean outage), bit/s.
inline double sum_rate(double h_abs, double p_tx, double r_c, double n_bar, double w_hz, const AbsProfile& prof) {
    uavnet::detail::require(n_bar >= 0.0, "sum_rate: n_bar must be >= 0");
    uavnet::detail::require(w_hz >= 0.0, "sum_rate: bandwidth must be >= 0");
    if (n_bar == 0.0 || w_hz == 0.0) return 0.0;
    return n_bar * w_hz * std::log2(1.0 + prof.threshold) * (1.0 - mean_outage(h_abs, p_tx, r_c, prof));
}

/// (1 - mean outage of the ABS) / (1 - mean outage of the terrestrial station),
/// each transmitting its required power.
inline double sum_rate_gain(const AbsDesign& design, const AbsProfile& prof) {
    const double p_abs = required_power(design, prof);
    const double p_tbs = required_power_terrestrial(design.r_c, design.epsilon, prof);
    const double aerial = 1.0 - mean_outage(design.h_abs, p_abs, design.r_c, prof);
    const double ground = 1.0 - mean_outage(0.0, p_tbs, design.r_c, prof);
    return aerial / ground;
}

struct CoverageRadius {
    double radius = 0.0; ///< m
    bool zero = false;   ///< outage exceeds epsilon even right below the ABS
    bool capped = false; ///< the search bound was reached
};

/// Largest r with outage(r) <= epsilon, by bracketing and bisection to `tol_m`.
inline CoverageRadius coverage_radius(double h_abs, double p_tx, double epsilon, const AbsProfile& prof,
                                      double r_max = 1e6, double tol_m = 1e-3) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw domain_error("coverage_radius: epsilon must lie in (0, 1)");
    auto ok = [&](double r) { return outage(r, h_abs, p_tx, prof) <= epsilon; };
    if (!ok(0.0)) return {0.0, true, false};
    if (ok(r_max)) return {r_max, false, true};
    double lo = 0.0, hi = std::max(1.0, h_abs);
    while (hi < r_max && ok(hi)) {
        lo = hi;
        hi = std::min(2.0 * hi, r_max);
    }
    while (hi - lo > tol_m) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return {lo, false, false};
}

enum class AbsMetric { PowerGain, SumRateGain, CoverageRadius };

inline std::string_view to_string(AbsMetric m) {
    switch (m) {
    case AbsMetric::PowerGain: return "power_gain";
    case AbsMetric::SumRateGain: return "sum_rate_gain";
    case AbsMetric::CoverageRadius: return "coverage_radius";
    }
    return "unknown";
}

struct AltitudeOptimum {
    double h = 0.0;
    double value = 0.0;
};

/// Grid argmax; ties go to the lowest altitude.
inline AltitudeOptimum optimize_altitude(std::span<const double> grid, const std::function<double(double)>& metric) {
    if (grid.empty()) throw domain_error("optimize_altitude: empty grid");
    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end());
    AltitudeOptimum best{sorted.front(), metric(sorted.front())};
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double v = metric(sorted[i]);
        if (v > best.value) best = {sorted[i], v};
    }
    return best;
}

/// Power and sum-rate gains use (r_c, epsilon); the coverage radius uses (p_tx, epsilon).
struct AbsQuery {
    double r_c = 500.0;
    double epsilon = 0.1;
    double p_tx = 1.0;
};

inline double evaluate_metric(AbsMetric metric, double h, const AbsQuery& q, const AbsProfile& prof) {
    switch (metric) {
    case AbsMetric::PowerGain: return power_gain({h, q.r_c, q.epsilon}, prof);
    case AbsMetric::SumRateGain: return sum_rate_gain({h, q.r_c, q.epsilon}, prof);
    case AbsMetric::CoverageRadius: return coverage_radius(h, q.p_tx, q.epsilon, prof).radius;
    }
    return 0.0;
}

inline AltitudeOptimum optimize_altitude(AbsMetric metric, const AbsProfile& prof, std::span<const double> grid,
                                         const AbsQuery& q) {
    return optimize_altitude(grid, [&](double h) { return evaluate_metric(metric, h, q, prof); });
}

} // namespace uavnet::abs_net
