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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "uavnet/aue/metrics.hpp"
#include "uavnet/aue/network.hpp"

using namespace uavnet;
using namespace uavnet::aue;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Obstruction-free environment: m = -1 rows, so every link is LOS.
channel::Environment open_sky() {
    auto e = channel::environment_preset(channel::EnvironmentKind::Open);
    e.varsigma = 0.0;
    return e;
}

AueNetworkConfig deterministic_cfg() {
    AueNetworkConfig c;
    c.env = open_sky();
    c.fading_los.reset();
    c.fading_nlos.reset();
    return c;
}

NetworkSnapshot sites(std::vector<Position3D> p, const AueNetworkConfig& cfg) {
    NetworkSnapshot s;
    s.bs_positions = std::move(p);
    s.sectors.assign(s.bs_positions.size(), site_sectors(cfg));
    return s;
}

std::vector<double> altitudes() { return {30, 60, 90, 120, 150, 180, 210, 240, 270, 300}; }

} // namespace

TEST_CASE("config derived quantities", "[aue][config]") {
    AueNetworkConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK_THAT(watt_to_dbm(c.noise_power()), WithinAbs(-174.0 + 10.0 * std::log10(20e6) + 9.0, 1e-9));
    c.noise_power_override_w = 1e-12;
    CHECK(c.noise_power() == 1e-12);
    c.target_rate_r_tx = 20e6;
    CHECK_THAT(c.threshold(), WithinAbs(1.0, 1e-15));
    c.target_rate_r_tx = 60e6;
    CHECK_THAT(c.threshold(), WithinAbs(7.0, 1e-12));
    c.aue_ratio_rho = 1.5;
    CHECK_THROWS_AS(c.validate(), domain_error);
    c = {};
    c.bs_density_lambda = 0.0;
    CHECK_THROWS_AS(c.validate(), domain_error);
    c = {};
    c.region_radius = 1000.0;
    CHECK_THROWS_AS(check_edge_effects(c), domain_error);
    CHECK_THAT(min_region_radius_m(5.0), WithinRel(2500.0 / std::sqrt(5.0), 1e-12));
}

TEST_CASE("deploy_hppp count and placement", "[aue][deploy]") {
    AueNetworkConfig c;
    std::vector<double> counts, r2, ang;
    for (int i = 0; i < 10000; ++i) {
        numerics::RngStream rng(17, i);
        const auto s = deploy_hppp(c, rng);
        counts.push_back(static_cast<double>(s.bs_positions.size()));
        CHECK(s.sectors.size() == s.bs_positions.size());
        for (const auto& p : s.bs_positions) {
            r2.push_back((p.x * p.x + p.y * p.y) / (c.region_radius * c.region_radius));
            ang.push_back(std::atan2(p.y, p.x));
            CHECK(p.h == c.bs_height_h_g);
        }
    }
    const auto m = oracle::moments(counts);
    CHECK_THAT(m.mean, WithinAbs(5.0 * pi * 9.0, 1.5));
    CHECK_THAT(m.variance, WithinRel(5.0 * pi * 9.0, 0.05));
    CHECK(*std::max_element(r2.begin(), r2.end()) <= 1.0);
    CHECK_THAT(oracle::moments(r2).mean, WithinAbs(0.5, 0.005));
    CHECK_THAT(oracle::moments(ang).mean, WithinAbs(0.0, 0.01));

    c.bs_density_lambda = 1e-9;
    int empty = 0;
    for (int i = 0; i < 1000; ++i) {
        numerics::RngStream rng(3, i);
        empty += deploy_hppp(c, rng).empty();
    }
    CHECK(empty == 1000);

    AueNetworkConfig d;
    numerics::RngStream a(99, 4), b(99, 4);
    CHECK(deploy_hppp(d, a).bs_positions == deploy_hppp(d, b).bs_positions);
}

TEST_CASE("snapshot_sinr degenerate layouts", "[aue][sinr]") {
    auto c = deterministic_cfg();
    numerics::RngStream rng(1, 0);

    const auto one = sites({{300.0, 400.0, c.bs_height_h_g}}, c);
    const Position3D u{0.0, 0.0, 100.0};
    const auto r = snapshot_sinr(u, one, c, rng);
    const double d = std::hypot(500.0, 100.0 - c.bs_height_h_g);
    const double pl = 20.0 * std::log10(4.0 * pi / c.carrier.wavelength_m()) + 20.9 * std::log10(d);
    const double g = bs_gain_db(c.sector, direction(one.bs_positions[0], u));
    CHECK(r.serving_bs == 0u);
    CHECK(r.serving_los);
    CHECK_THAT(r.sinr, WithinRel(c.p_tx * db_to_linear(g - pl) / c.noise_power(), 1e-12));

    c.noise_power_override_w = 0.0;
    const auto two = sites({{500.0, 0.0, c.bs_height_h_g}, {-500.0, 0.0, c.bs_height_h_g}}, c);
    CHECK_THAT(snapshot_sinr(u, two, c, rng).sinr, WithinAbs(1.0, 1e-12));

    const auto none = snapshot_sinr(u, NetworkSnapshot{}, c, rng);
    CHECK(none.sinr == 0.0);
    CHECK_FALSE(none.serving_bs.has_value());
}

TEST_CASE("serving choice is invariant to uniform power scaling", "[aue][sinr][property]") {
    AueNetworkConfig base;
    base.noise_power_override_w = 0.0;
    for (int i = 0; i < 200; ++i) {
        numerics::RngStream dep(8, i);
        const auto snap = deploy_hppp(base, dep);
        auto c1 = base, c2 = base;
        c2.p_tx = base.p_tx * 1e3;
        auto c3 = base;
        c3.p_tx = base.p_tx * 1e-4;
        numerics::RngStream r1(9, i), r2(9, i), r3(9, i);
        const Position3D u{0.0, 0.0, 120.0};
        const auto a = snapshot_sinr(u, snap, c1, r1);
        const auto b = snapshot_sinr(u, snap, c2, r2);
        const auto c = snapshot_sinr(u, snap, c3, r3);
        CHECK(a.serving_bs == b.serving_bs);
        CHECK(a.serving_bs == c.serving_bs);
        CHECK_THAT(b.sinr, WithinRel(a.sinr, 1e-9));
        CHECK_THAT(c.sinr, WithinRel(a.sinr, 1e-9));
    }
}

TEST_CASE("cone antenna excludes sites outside the lobe", "[aue][sinr]") {
    auto c = deterministic_cfg();
    c.noise_power_override_w = 0.0;
    c.uav = ConeAntenna{60.0, 0.0, 0.0};
    // Nadir cone at 100 m sees d_h <= 100 tan 30 deg.
    const auto s = sites({{40.0, 0.0, 0.0}, {400.0, 0.0, 0.0}}, c);
    c.bs_height_h_g = 0.0;
    numerics::RngStream rng(2, 0);
    const auto r = snapshot_sinr({0.0, 0.0, 100.0}, s, c, rng);
    CHECK(r.serving_bs == 0u);
    CHECK(std::isinf(r.sinr));
    // Steering the axis at the strongest site picks the nearer one too.
    c.steering = ConeSteering::AxisToServing;
    c.uav = ConeAntenna{10.0, 0.0, 0.0};
    const auto far = sites({{0.0, 3000.0, 0.0}}, c);
    const auto rf = snapshot_sinr({0.0, 0.0, 100.0}, far, c, rng);
    CHECK(rf.serving_bs == 0u);
    CHECK(rf.sinr > 0.0);
    c.steering = ConeSteering::Fixed;
    CHECK_FALSE(snapshot_sinr({0.0, 0.0, 100.0}, far, c, rng).serving_bs.has_value());
}

TEST_CASE("single-site Nakagami coverage matches the closed tail", "[aue][coverage]") {
    for (int m : {1, 2, 3}) {
        auto c = deterministic_cfg();
        c.fading_los = numerics::Nakagami{m};
        const auto snap = sites({{300.0, 0.0, c.bs_height_h_g}}, c);
        const double h = 100.0;
        numerics::RngStream rng(0, 0);
        c.fading_los.reset();
        const double snr = snapshot_sinr({0.0, 0.0, h}, snap, c, rng).sinr;
        c.fading_los = numerics::Nakagami{m};
        const auto sinr = simulate_sinr(h, snap, c, {10000, 5, 1});
        for (double y : {0.2, 0.5, 1.0, 1.5, 2.0}) {
            const auto e = coverage_from_samples(sinr, y * snr);
            CHECK_THAT(e.value, WithinAbs(numerics::nakagami_power_ccdf(m, y), 3.0 * e.ci95));
        }
    }
}

TEST_CASE("coverage probability properties", "[aue][coverage][property]") {
    AueNetworkConfig c;
    c.threshold_T = 1e-12;
    CHECK(coverage_probability_mc(100.0, c, {500, 1, 1}).value == 1.0);
    CHECK_THROWS_AS(coverage_probability_mc(100.0, c, {50, 1, 1}), domain_error);

    const auto sinr = simulate_sinr(100.0, c, {2000, 2, 1});
    double prev = 1.0;
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const auto e = coverage_from_samples(sinr, t);
        CHECK(e.value >= 0.0);
        CHECK(e.value <= prev);
        prev = e.value;
    }
    // Independent runs per threshold.
    Estimate last{1.0, 0.0};
    std::uint64_t seed = 40;
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        c.threshold_T = t;
        const auto e = coverage_probability_mc(100.0, c, {1000, seed++, 1});
        CHECK(e.value <= last.value + 3.0 * std::hypot(e.ci95, last.ci95));
        last = e;
    }
}

TEST_CASE("capacity quadrature", "[aue][capacity]") {
    const auto nodes = numerics::chebyshev_capacity_nodes(60);
    CHECK_THAT(numerics::capacity_from_coverage([](double t) { return 1.0 / (1.0 + t); }, nodes),
               WithinAbs(1.0 / std::log(2.0), 1e-2));
    // A flat curve has no finite integral: the node sum keeps growing with K.
    const auto flat = [](double) { return 1.0; };
    double prev = 0.0;
    for (int k : {50, 100, 200, 400}) {
        const auto n = numerics::chebyshev_capacity_nodes(k);
        const double v = numerics::capacity_from_coverage(flat, n);
        CHECK(v > prev);
        prev = v;
    }
    for (double tmax : {1.0, 10.0, 1e3, 1e6})
        CHECK_THAT(capacity_bounded(flat, tmax), WithinRel(std::log2(1.0 + tmax), 1e-12));
    CHECK_THAT(capacity_bounded([](double t) { return 1.0 / (1.0 + t); }, 1e4),
               WithinRel((1.0 - 1.0 / (1.0 + 1e4)) / std::log(2.0), 1e-9));

    std::vector<double> sinr{0.0, 1.0, 1e9};
    const auto b = capacity_bounded_from_samples(sinr, 1e3);
    CHECK_THAT(b.value, WithinRel((0.0 + 1.0 + std::log2(1001.0)) / 3.0, 1e-12));

    AueNetworkConfig c;
    CHECK_THROWS_AS(capacity(100.0, c, 40, {200, 1, 1}), domain_error);
}

TEST_CASE("per-trial capacity equals the node sum of coverage curves", "[aue][capacity]") {
    AueNetworkConfig c;
    const auto sinr = simulate_sinr(90.0, c, {400, 12, 1});
    const auto nodes = numerics::chebyshev_capacity_nodes(60);
    double via_curve = 0.0;
    for (const auto& n : nodes) via_curve += n.weight * coverage_from_samples(sinr, n.t).value / (1.0 + n.t);
    via_curve /= std::log(2.0);
    CHECK_THAT(capacity_from_samples(sinr, nodes).value, WithinRel(via_curve, 1e-12));
    CHECK_THAT(capacity(90.0, c, 60, {400, 12, 1}).value, WithinRel(via_curve, 1e-12));
}

TEST_CASE("results are reproducible across thread counts", "[aue][determinism]") {
    AueNetworkConfig c;
    c.uav = ConeAntenna{90.0, 0.3, 0.0};
    c.steering = ConeSteering::AzimuthToServing;
    const auto a = simulate_sinr(150.0, c, {300, 77, 1});
    const auto b = simulate_sinr(150.0, c, {300, 77, 4});
    const auto d = simulate_sinr(150.0, c, {300, 77, 1});
    CHECK(a == b);
    CHECK(a == d);
    CHECK(a != simulate_sinr(150.0, c, {300, 78, 1}));
}

TEST_CASE("area spectral efficiency", "[aue][ase]") {
    AueNetworkConfig c;
    const McOptions mc{300, 6, 1};
    const double rg = capacity(c.ground_ue_height, c, 60, mc).value;
    const double ra = capacity(120.0, c, 60, mc).value;
    c.aue_ratio_rho = 0.0;
    CHECK_THAT(ase(c, 120.0, 60, mc).value, WithinRel(5.0 * rg, 1e-12));
    c.aue_ratio_rho = 1.0;
    CHECK_THAT(ase(c, 120.0, 60, mc).value, WithinRel(5.0 * ra, 1e-12));
    c.aue_ratio_rho = 0.5;
    CHECK_THAT(ase(c, 120.0, 60, mc).value, WithinRel(5.0 * 0.5 * (rg + ra), 1e-12));
}

TEST_CASE("sweep plumbing", "[aue][sweep]") {
    AueNetworkConfig c;
    SweepSpec s;
    s.grid = {90.0};
    s.mc = {200, 3, 1};
    const auto rows = sweep(c, s);
    REQUIRE(rows.size() == 1);
    const auto direct = capacity(90.0, c, 60, s.mc);
    CHECK(rows[0].x == 90.0);
    CHECK(rows[0].value == direct.value);
    CHECK(rows[0].ci95 == direct.ci95);
    s.grid.clear();
    CHECK_THROWS_AS(sweep(c, s), domain_error);
    s.grid = {30.0};
    s.axis = SweepAxis::PhiB;
    CHECK_THROWS_AS(sweep(c, s), domain_error);
    s.axis = SweepAxis::Density;
    s.grid = {0.5};
    s.metric = SweepMetric::Coverage;
    CHECK_NOTHROW(sweep(c, s));
}

TEST_CASE("mean SINR falls with altitude", "[aue][trend]") {
    AueNetworkConfig c;
    const McOptions mc{10000, 21, 1};
    const auto lo = mean_sinr_from_samples(simulate_sinr(30.0, c, mc));
    const auto hi = mean_sinr_from_samples(simulate_sinr(150.0, c, mc));
    CHECK(hi.value + hi.ci95 < lo.value - lo.ci95);
}

TEST_CASE("capacity has an interior altitude optimum", "[aue][trend]") {
    AueNetworkConfig c;
    SweepSpec s;
    s.grid = altitudes();
    s.mc = {2000, 31, 1};
    const auto rows = sweep(c, s);
    const auto best = std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.value < b.value; });
    REQUIRE(best != rows.begin());
    REQUIRE(best != rows.end() - 1);
    for (const auto* end : {&rows.front(), &rows.back()})
        CHECK(best->value - end->value > 3.0 * std::max(best->ci95, end->ci95));
}

TEST_CASE("directional UAV antenna against omni", "[aue][trend]") {
    AueNetworkConfig omni;
    const McOptions mc{2000, 44, 1};
    const auto c_omni = coverage_probability_mc(150.0, omni, mc);
    auto aimed = omni;
    aimed.uav = ConeAntenna{60.0, 0.0, 0.0};
    aimed.steering = ConeSteering::AxisToServing;
    const auto c_aimed = coverage_probability_mc(150.0, aimed, mc);
    CHECK(c_aimed.value >= c_omni.value - 3.0 * std::max(c_aimed.ci95, c_omni.ci95));

    auto cone = omni;
    cone.uav = ConeAntenna{60.0, 0.0, 0.0};
    SweepSpec s;
    s.axis = SweepAxis::PhiB;
    s.grid = {30.0, 60.0, 90.0, 120.0, 150.0};
    s.mc = mc;
    const auto rows = sweep(cone, s);
    const auto cap_omni = capacity(150.0, omni, 60, mc);
    const auto best = std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.value < b.value; });
    CHECK(best->value - cap_omni.value > 3.0 * std::max(best->ci95, cap_omni.ci95));
}

TEST_CASE("capacity vanishes for ultra-dense networks", "[aue][trend]") {
    AueNetworkConfig c;
    SweepSpec s;
    s.axis = SweepAxis::Density;
    s.uav_h = 150.0;
    s.grid = {1.0, 5.0, 20.0, 50.0, 100.0};
    s.mc = {500, 52, 1};
    const auto rows = sweep(c, s);
    CHECK(rows[2].value > rows[3].value);
    CHECK(rows[3].value > rows[4].value);
    CHECK(rows[4].value < 0.2 * rows[0].value);
}
