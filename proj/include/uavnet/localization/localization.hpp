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

// RSS-based localization of ground users from aerial anchor points.
//
// A UAV measures the received signal strength at each anchor point and inverts
// the path-loss law of the drawn LOS/NLOS state to a slant distance. Horizontal
// ranges r = sqrt(d^2 - h^2) then feed a least-squares multilateration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/channel/link_loss.hpp"
#include "uavnet/error.hpp"
#include "uavnet/numerics/random.hpp"
#include "uavnet/parallel.hpp"
#include "uavnet/units.hpp"

namespace uavnet::localization {

struct AnchorPlan {
    int m_points = 3;
    double radius_r = 120.0;      ///< m
    double h_abs = 200.0;         ///< m
    Position3D center{};          ///< circle centre; its height is ignored
    double hover_time_t_h = 5.0;  ///< s per anchor

    /// Chord between adjacent anchors, 2 R sin(pi / M).
    double inter_distance() const { return 2.0 * radius_r * std::sin(pi / m_points); }

    void validate() const {
        if (m_points < 3) throw domain_error("anchor plan: multilateration needs at least 3 anchor points");
        uavnet::detail::require(radius_r > 0.0 && std::isfinite(radius_r), "anchor plan: radius must be > 0");
        uavnet::detail::require(h_abs > 0.0 && std::isfinite(h_abs), "anchor plan: altitude must be > 0");
        uavnet::detail::require(hover_time_t_h >= 0.0, "anchor plan: hover time must be >= 0");
    }
};

/// M anchors equally spaced on the circle, the first on the +x (east) axis.
inline std::vector<Position3D> place_anchors(const AnchorPlan& plan) {
    plan.validate();
    std::vector<Position3D> a;
    for (int i = 0; i < plan.m_points; ++i) {
        const double phi = 2.0 * pi * i / plan.m_points;
        a.push_back({plan.center.x + plan.radius_r * std::cos(phi), plan.center.y + plan.radius_r * std::sin(phi),
                     plan.h_abs});
    }
    return a;
}

/// Functional form of the elevation-dependent LOS probability.
enum class PlosForm {
    Sigmoid,        ///< 1 / (1 + a_o exp(-b_o theta)), theta in rad
    ShiftedSigmoid, ///< 1 / (1 + a_o exp(-b_o (theta - a_o))), theta in deg
};

/// Elevation-dependent channel: LOS probability and shadowing spread both grow
/// or shrink with the elevation angle theta seen from the user.
struct ElevationChannel {
    double a_los = 10.0, b_los = 2.0;   ///< sigma_LOS = a exp(-b theta), dB, theta in rad
    double a_nlos = 30.0, b_nlos = 1.7; ///< sigma_NLOS likewise
    double a_o = 47.0, b_o = 20.0;
    PlosForm plos_form = PlosForm::Sigmoid;
    Carrier carrier{2.0e9};
    channel::LogDistance path_los{std::nullopt, 1.0, 2.0, 0.0};
    channel::LogDistance path_nlos{std::nullopt, 1.0, 3.0, 0.0};

    void validate() const {
        uavnet::detail::require(a_los >= 0.0 && a_nlos >= 0.0, "elevation channel: shadowing scale must be >= 0");
        uavnet::detail::require(b_los >= 0.0 && b_nlos >= 0.0, "elevation channel: shadowing decay must be >= 0");
        uavnet::detail::require(a_o >= 0.0 && b_o >= 0.0, "elevation channel: LOS constants must be >= 0");
        uavnet::detail::require(path_los.eta > 0.0 && path_nlos.eta > 0.0, "elevation channel: eta must be > 0");
    }

    double p_los(double theta) const {
        const double x = plos_form == PlosForm::Sigmoid ? -b_o * theta : -b_o * (rad_to_deg(theta) - a_o);
        return 1.0 / (1.0 + a_o * std::exp(std::min(x, 700.0)));
    }

    double sigma_db(bool los, double theta) const {
        return los ? a_los * std::exp(-b_los * theta) : a_nlos * std::exp(-b_nlos * theta);
    }

    const channel::LogDistance& law(bool los) const { return los ? path_los : path_nlos; }

    double reference_db(bool los) const {
        const auto& l = law(los);
        return l.lambda0_db ? *l.lambda0_db : 20.0 * std::log10(4.0 * pi * l.d0_m / carrier.wavelength_m());
    }

    double path_loss_db(bool los, double d) const {
        const auto& l = law(los);
        return reference_db(los) + 10.0 * l.eta * std::log10(d / l.d0_m);
    }

    /// Distance at which the state's law predicts `loss_db`.
    double invert_path_loss(bool los, double loss_db) const {
        const auto& l = law(los);
        return l.d0_m * std::pow(10.0, (loss_db - reference_db(los)) / (10.0 * l.eta));
    }
};

enum class LinkState { Random, ForceLos, ForceNlos };

struct RssSample {
    double d_hat; ///< m
    bool los;
};

/// Measured path loss PL_j(d) + N(0, sigma_j(theta)^2) inverted with the same
/// law, so d_hat = d 10^(X / (10 eta_j)).
inline RssSample sample_rss_distance(double true_d, double theta, const ElevationChannel& ch, numerics::RngStream& rng,
                                     LinkState state = LinkState::Random) {
    uavnet::detail::require(true_d > 0.0 && std::isfinite(true_d), "sample_rss_distance: distance must be > 0");
    bool los = state == LinkState::ForceLos;
    if (state == LinkState::Random) los = rng.bernoulli(ch.p_los(theta));
    const double measured = ch.path_loss_db(los, true_d) + numerics::sample_shadowing_db(ch.sigma_db(los, theta), rng);
    return {ch.invert_path_loss(los, measured), los};
}

/// Horizontal range from a slant distance; distances shorter than the height
/// difference clamp to 0.
inline double horizontal_range(double d_hat, double dh) {
    return d_hat > dh ? std::sqrt(d_hat * d_hat - dh * dh) : 0.0;
}

struct MultilaterationResult {
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0; ///< sum of squared range misfits, m^2
    bool ill_conditioned = false;
    int iterations = 0;
};

/// sum_i (|(x, y) - a_i| - r_i)^2.
inline double multilateration_residual(std::span<const Position3D> anchors, std::span<const double> r_hat, double x,
                                       double y) {
    double s = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const double e = std::hypot(x - anchors[i].x, y - anchors[i].y) - r_hat[i];
        s += e * e;
    }
    return s;
}

namespace detail {

inline constexpr int seed_grid_n = 21;
inline constexpr double step_tolerance_m = 1e-4;

/// Levenberg-Marquardt on the range misfits. Steps are only taken when they
/// lower the residual, so the result never exceeds the starting residual.
inline MultilaterationResult refine(std::span<const Position3D> anchors, std::span<const double> r_hat, double x0,
                                    double y0) {
    MultilaterationResult r{x0, y0, multilateration_residual(anchors, r_hat, x0, y0), false, 0};
    double mu = 1e-3;
    for (int it = 0; it < 200; ++it) {
        r.iterations = it + 1;
        double jtj[3] = {0.0, 0.0, 0.0}; // xx, xy, yy
        double jtr[2] = {0.0, 0.0};
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            const double dx = r.x - anchors[i].x, dy = r.y - anchors[i].y;
            const double n = std::hypot(dx, dy);
            if (n < 1e-9) continue; // gradient undefined on top of an anchor
            const double gx = dx / n, gy = dy / n, e = n - r_hat[i];
            jtj[0] += gx * gx, jtj[1] += gx * gy, jtj[2] += gy * gy;
            jtr[0] += gx * e, jtr[1] += gy * e;
        }
        bool moved = false;
        for (int tries = 0; tries < 30 && !moved; ++tries) {
            const double a = jtj[0] + mu * (1.0 + jtj[0]), b = jtj[1], c = jtj[2] + mu * (1.0 + jtj[2]);
            const double det = a * c - b * b;
            if (!(det > 0.0)) {
                mu *= 10.0;
                continue;
            }
            const double sx = -(c * jtr[0] - b * jtr[1]) / det;
            const double sy = -(a * jtr[1] - b * jtr[0]) / det;
            const double f = multilateration_residual(anchors, r_hat, r.x + sx, r.y + sy);
            if (f <= r.residual) {
                r.x += sx, r.y += sy;
                const bool small = std::hypot(sx, sy) < step_tolerance_m;
                r.residual = f;
                mu = std::max(mu * 0.3, 1e-12);
                moved = true;
                if (small) return r;
            } else {
                mu *= 10.0;
            }
        }
        if (!moved) return r;
    }
    return r;
}

/// Anchor spread: smallest over largest eigenvalue of the planar scatter matrix.
inline double anchor_spread_ratio(std::span<const Position3D> anchors) {
    double mx = 0.0, my = 0.0;
    for (const auto& a : anchors) mx += a.x, my += a.y;
    mx /= anchors.size(), my /= anchors.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& a : anchors) {
        sxx += (a.x - mx) * (a.x - mx), sxy += (a.x - mx) * (a.y - my), syy += (a.y - my) * (a.y - my);
    }
    const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    if (tr <= 0.0) return 0.0;
    const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    return (tr / 2.0 - disc) / (tr / 2.0 + disc);
}

} // namespace detail

/// Least-squares position from horizontal ranges. A 21 x 21 seed grid around the
/// anchor centroid (wide enough for every range circle) picks the best starts;
/// the returned residual is never above any seed-grid residual. Collinear
/// anchors yield a mirror-ambiguous solution and are flagged.
inline MultilaterationResult multilaterate_ranges(std::span<const Position3D> anchors, std::span<const double> r_hat) {
    if (anchors.size() < 3) throw domain_error("multilaterate: need at least 3 anchors");
    if (anchors.size() != r_hat.size()) throw domain_error("multilaterate: one range per anchor required");
    double cx = 0.0, cy = 0.0;
    for (const auto& a : anchors) cx += a.x, cy += a.y;
    cx /= anchors.size(), cy /= anchors.size();
    double reach = 0.0;
    for (const auto& a : anchors) reach = std::max(reach, std::hypot(a.x - cx, a.y - cy));
    reach += *std::max_element(r_hat.begin(), r_hat.end());
    reach = std::max(reach, 1.0);

    constexpr int n = detail::seed_grid_n;
    struct Seed {
        double f, x, y;
    };
    std::vector<Seed> seeds;
    seeds.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = cx - reach + 2.0 * reach * i / (n - 1);
            const double y = cy - reach + 2.0 * reach * j / (n - 1);
            seeds.push_back({multilateration_residual(anchors, r_hat, x, y), x, y});
        }
    std::partial_sort(seeds.begin(), seeds.begin() + 5, seeds.end(), [](const Seed& a, const Seed& b) {
        return a.f < b.f || (a.f == b.f && (a.x < b.x || (a.x == b.x && a.y < b.y)));
    });
    MultilaterationResult best;
    best.residual = INFINITY;
    for (int k = 0; k < 5; ++k) {
        const auto r = detail::refine(anchors, r_hat, seeds[k].x, seeds[k].y);
        if (r.residual < best.residual) best = r;
    }
    best.ill_conditioned = detail::anchor_spread_ratio(anchors) < 1e-6;
    return best;
}

/// Multilateration from slant-distance estimates to a user on the ground (h = 0).
inline MultilaterationResult multilaterate(std::span<const Position3D> anchors, std::span<const double> d_hat) {
    if (anchors.size() != d_hat.size()) throw domain_error("multilaterate: one distance per anchor required");
    std::vector<double> r(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) r[i] = horizontal_range(d_hat[i], anchors[i].h);
    return multilaterate_ranges(anchors, r);
}

struct LocalizationError {
    double range_err; ///< |r_hat - r|, m
    double pos_err;   ///< planar distance between estimate and truth, m
};

inline LocalizationError localization_error(const Position3D& est, const Position3D& true_pos,
                                            std::span<const double> r_hat, std::span<const double> r_true) {
    if (r_hat.size() != r_true.size()) throw domain_error("localization_error: range vectors differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < r_hat.size(); ++i) s += (r_hat[i] - r_true[i]) * (r_hat[i] - r_true[i]);
    return {std::sqrt(s), horizontal_distance(est, true_pos)};
}

struct LocalizationScenario {
    int n_users = 100;
    double user_area_radius = 200.0; ///< m
    double frequency_hz = 2.0e9;
    std::uint64_t seed = 1;

    void validate() const {
        uavnet::detail::require(n_users >= 1, "localization scenario: need at least one user");
        uavnet::detail::require(user_area_radius > 0.0, "localization scenario: area radius must be > 0");
        uavnet::detail::require(frequency_hz > 0.0, "localization scenario: frequency must be > 0");
    }
};

struct UserOutcome {
    Position3D user;
    Position3D estimate;
    LocalizationError error;
    int los_links = 0;
    bool ill_conditioned = false;
};

struct CampaignStats {
    std::vector<UserOutcome> users;
    double mean_pos_err = 0.0;
    double ci95_pos_err = 0.0;
    double median_pos_err = 0.0;
    double p90_pos_err = 0.0;
    double mean_range_err = 0.0;
    std::vector<double> cdf_pos_err; ///< sorted position errors

    /// Empirical P[pos_err <= e].
    double cdf(double e) const {
        const auto it = std::upper_bound(cdf_pos_err.begin(), cdf_pos_err.end(), e);
        return static_cast<double>(it - cdf_pos_err.begin()) / static_cast<double>(cdf_pos_err.size());
    }
};

namespace detail {

/// Linear-interpolated quantile of sorted values.
inline double quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * (sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

} // namespace detail

/// Users uniform in the disc around the plan centre, one RSS draw per anchor.
/// User i uses RngStream(seed, i): substream 1 places it, substream 2 draws the channel.
inline CampaignStats run_campaign(const LocalizationScenario& sc, const AnchorPlan& plan, ElevationChannel ch,
                                  LinkState state = LinkState::Random, unsigned threads = 1) {
    sc.validate();
    ch.validate();
    ch.carrier.frequency_hz = sc.frequency_hz;
    const auto anchors = place_anchors(plan);
    CampaignStats st;
    st.users.resize(static_cast<std::size_t>(sc.n_users));
    parallel_for(st.users.size(), threads, [&](std::size_t i) {
        const numerics::RngStream base(sc.seed, i);
        auto place = base.substream(1);
        auto chan = base.substream(2);
        const double r = sc.user_area_radius * std::sqrt(place.uniform());
        const double a = 2.0 * pi * place.uniform();
        const Position3D u{plan.center.x + r * std::cos(a), plan.center.y + r * std::sin(a), 0.0};
        std::vector<double> d_hat, r_true, r_hat;
        UserOutcome out;
        out.user = u;
        for (const auto& an : anchors) {
            const double rh = horizontal_distance(an, u);
            const double d = std::hypot(rh, an.h);
            const auto s = sample_rss_distance(d, std::atan2(an.h, rh), ch, chan, state);
            d_hat.push_back(s.d_hat);
            r_true.push_back(rh);
            r_hat.push_back(horizontal_range(s.d_hat, an.h));
            out.los_links += s.los;
        }
        const auto est = multilaterate(anchors, d_hat);
        out.estimate = {est.x, est.y, 0.0};
        out.ill_conditioned = est.ill_conditioned;
        out.error = localization_error(out.estimate, u, r_hat, r_true);
        st.users[i] = out;
    });

    std::vector<double> pos;
    double range_sum = 0.0;
    for (const auto& o : st.users) pos.push_back(o.error.pos_err), range_sum += o.error.range_err;
    double sum = 0.0;
    for (double e : pos) sum += e;
    const double n = static_cast<double>(pos.size());
    st.mean_pos_err = sum / n;
    double ss = 0.0;
    for (double e : pos) ss += (e - st.mean_pos_err) * (e - st.mean_pos_err);
    st.ci95_pos_err = pos.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) : 0.0;
    st.mean_range_err = range_sum / n;
    std::sort(pos.begin(), pos.end());
    st.median_pos_err = detail::quantile(pos, 0.5);
    st.p90_pos_err = detail::quantile(pos, 0.9);
    st.cdf_pos_err = std::move(pos);
    return st;
}

} // namespace uavnet::localization
