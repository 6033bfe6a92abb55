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

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/channel/link_loss.hpp"
#include "uavnet/channel/los_probability.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/channel/presets.hpp"
#include "uavnet/channel/shadowing.hpp"

using namespace uavnet;
using namespace uavnet::channel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Environment urban = environment_preset(EnvironmentKind::Urban);
const Environment suburban = environment_preset(EnvironmentKind::Suburban);

LinkGeometry at_slant(double d_3d, double h_uav, double h_g) {
    const double dz = h_uav - h_g;
    return make_link_geometry(std::sqrt(d_3d * d_3d - dz * dz), h_uav, h_g);
}

} // namespace

TEST_CASE("slice_of assigns altitude bands", "[channel][slice]") {
    CHECK(slice_of(9.0, suburban) == PropagationSlice::GroundLevel);
    CHECK(slice_of(22.5, urban) == PropagationSlice::ObstructedA2G);
    CHECK(slice_of(150.0, urban) == PropagationSlice::HighAltitudeA2G);
    CHECK(slice_of(10.0, suburban) == PropagationSlice::ObstructedA2G);
    CHECK(slice_of(40.0, suburban) == PropagationSlice::HighAltitudeA2G);
    CHECK(slice_of(99.999, urban) == PropagationSlice::ObstructedA2G);
    CHECK(slice_of(100.0, urban) == PropagationSlice::HighAltitudeA2G);
    CHECK(slice_of(300.0, urban) == PropagationSlice::HighAltitudeA2G);
    CHECK_THROWS_AS(slice_of(300.5, urban), applicability_error);
    CHECK_THROWS_AS(slice_of(-1.0, urban), applicability_error);
    try {
        slice_of(301.0, urban);
    } catch (const applicability_error& e) {
        CHECK(e.bound() == 300.0);
    }
}

TEST_CASE("environment names round-trip", "[channel]") {
    for (const auto& [kind, name] : environment_kind_names) {
        CHECK(to_string(kind) == name);
        CHECK(environment_kind_from_string(name) == kind);
        CHECK_NOTHROW(environment_preset(kind).validate());
    }
    CHECK_FALSE(environment_kind_from_string("moon").has_value());
    Environment bad = urban;
    bad.varsigma = 1.2;
    CHECK_THROWS_AS(bad.validate(), domain_error);
}

TEST_CASE("free-space path loss", "[channel][pl]") {
    const Carrier c18{1.8e9};
    const double lambda = c18.wavelength_m();
    CHECK_THAT(lambda, WithinRel(speed_of_light / 1.8e9, 1e-15));
    const auto unit = make_link_geometry(lambda / (4 * pi), 0.0, 0.0);
    CHECK_THAT(free_space_pl_db(unit, c18), WithinAbs(0.0, 1e-12));
    CHECK_THAT(free_space_pl_db(make_link_geometry(1000.0, 0.0, 0.0), c18), WithinAbs(97.5532333239495, 1e-9));
    CHECK_THAT(free_space_pl_db(make_link_geometry(10 * lambda / (4 * pi), 0.0, 0.0), c18, 4.0), WithinAbs(40.0, 1e-9));
    LinkGeometry zero;
    CHECK_THROWS_AS(free_space_pl_db(zero, c18), domain_error);
}

TEST_CASE("log-distance path loss", "[channel][pl]") {
    const auto g10 = make_link_geometry(10.0, 0.0, 0.0);
    CHECK_THAT(log_distance_pl_db(make_link_geometry(1.0, 0.0, 0.0), 77.0, 1.0, 3.0), WithinAbs(77.0, 1e-12));
    CHECK_THAT(log_distance_pl_db(g10, 102.3, 1.0, 1.6), WithinAbs(118.3, 1e-9));
    CHECK_THAT(log_distance_pl_db(make_link_geometry(100.0, 0.0, 0.0), 21.9, 1.0, 2.54), WithinAbs(72.7, 1e-9));
    CHECK_THROWS_AS(log_distance_pl_db(make_link_geometry(0.5, 0.0, 0.0), 21.9, 1.0, 2.54), domain_error);
    CHECK_THROWS_AS(log_distance_pl_db(g10, 21.9, 0.0, 2.54), domain_error);
}

TEST_CASE("log-distance with free-space reference equals free space at eta 2", "[channel][pl][property]") {
    const Carrier carrier{2.4e9};
    for (double d0 : {0.5, 1.0, 10.0})
        for (double d = d0; d < 2e4; d *= 1.37) {
            const auto g = make_link_geometry(d, 0.0, 0.0);
            CHECK_THAT(log_distance_pl_db(g, carrier, d0, 2.0), WithinAbs(free_space_pl_db(g, carrier), 1e-9));
        }
}

TEST_CASE("building-statistics LOS probability", "[channel][plos]") {
    // sqrt(0.3 * 500) = 12.25 rows per km, so m < 0 below ~81.6 m.
    CHECK(p_los_building(make_link_geometry(50.0, 100.0, 1.5), urban) == 1.0);
    CHECK(building_row_index(81.0, urban) == -1);
    CHECK(building_row_index(82.0, urban) == 0);
    CHECK_THAT(p_los_building(make_link_geometry(500.0, 1e5, 1.5), urban), WithinAbs(1.0, 1e-12));
    // Direct product evaluation, m = 5.
    CHECK_THAT(p_los_building(make_link_geometry(500.0, 100.0, 1.5), urban), WithinAbs(0.14479432052538616, 1e-12));
    CHECK_THROWS_AS(p_los_building(make_link_geometry(500.0, 1.5, 1.5), urban), domain_error);
    CHECK_THROWS_AS(p_los_building(make_link_geometry(500.0, 1.5, 25.0), urban), domain_error);
}

TEST_CASE("LOS probabilities are monotone probabilities", "[channel][plos][property]") {
    for (const auto& env : {suburban, urban, environment_preset(EnvironmentKind::Highrise)})
        for (double h : {5.0, 20.0, 60.0, 150.0, 300.0}) {
            double prev = 1.0;
            for (double d = 0.0; d <= 5000.0; d += 25.0) {
                const double p = p_los_building(make_link_geometry(d, h, 1.5), env);
                CHECK(p >= 0.0);
                CHECK(p <= prev);
                prev = p;
            }
        }
    for (double d : {100.0, 500.0, 1500.0, 4000.0}) {
        double prev = 0.0;
        for (double h = 2.0; h <= 300.0; h += 2.0) {
            const double p = p_los_building(make_link_geometry(d, h, 1.5), urban);
            CHECK(p >= prev);
            CHECK(p <= 1.0);
            prev = p;
        }
    }
    for (auto slice : {PropagationSlice::GroundLevel, PropagationSlice::ObstructedA2G, PropagationSlice::HighAltitudeA2G})
        for (double h : {12.0, 25.0, 40.0}) {
            double prev = 1.0;
            for (double d = 0.0; d <= 20000.0; d += 10.0) {
                const double p = p_los_3gpp(d, h, slice);
                CHECK(p >= 0.0);
                CHECK(p <= prev + 1e-15);
                prev = p;
            }
        }
}

TEST_CASE("3GPP LOS probability examples", "[channel][plos]") {
    CHECK(p_los_3gpp(10.0, 1.5, PropagationSlice::GroundLevel) == 1.0);
    CHECK_THAT(p_los_3gpp(1010.0, 1.5, PropagationSlice::GroundLevel), WithinAbs(std::exp(-1.0), 1e-15));
    CHECK_THAT(obstructed_d1_m(40.0), WithinAbs(562.0626362858115, 1e-9));
    CHECK_THAT(obstructed_p1_m(40.0), WithinAbs(8011.543129737325, 1e-9));
    CHECK(obstructed_d1_m(12.0) == 18.0);
    CHECK(obstructed_p1_m(12.0) == 1000.0);
    CHECK(p_los_3gpp(500.0, 40.0, PropagationSlice::ObstructedA2G) == 1.0);
    const double d1 = obstructed_d1_m(40.0), p1 = obstructed_p1_m(40.0);
    CHECK_THAT(p_los_3gpp(2000.0, 40.0, PropagationSlice::ObstructedA2G),
               WithinAbs(d1 / 2000.0 + std::exp(-2000.0 / p1) * (1.0 - d1 / 2000.0), 1e-15));
    CHECK(p_los_3gpp(1e4, 200.0, PropagationSlice::HighAltitudeA2G) == 1.0);
    CHECK_THROWS_AS(p_los_3gpp(100.0, 50.0, PropagationSlice::AirToAir), domain_error);
}

TEST_CASE("3GPP rural path loss values", "[channel][pl]") {
    const auto g = at_slant(1000.0, 40.0, 1.5);
    CHECK_THAT(pl_3gpp_rural_db(g, 2.0, urban, true, PropagationSlice::ObstructedA2G),
               WithinAbs(101.5112481461573, 1e-9));
    // Ground slice: UE at 1.5 m under a 25 m mast, suburban buildings (10 m), W = 20 m.
    const auto near = make_link_geometry(1000.0, 1.5, 25.0);
    const auto far = make_link_geometry(3000.0, 1.5, 25.0);
    CHECK_THAT(pl_3gpp_rural_db(near, 2.0, suburban, true, PropagationSlice::GroundLevel), WithinAbs(102.87962507144836, 1e-9));
    CHECK_THAT(pl_3gpp_rural_db(far, 2.0, suburban, true, PropagationSlice::GroundLevel), WithinAbs(119.48647724041494, 1e-9));
    CHECK_THAT(pl_3gpp_rural_db(near, 2.0, suburban, false, PropagationSlice::GroundLevel), WithinAbs(132.0886743933902, 1e-9));
    CHECK_THAT(pl_3gpp_rural_db(far, 2.0, suburban, false, PropagationSlice::GroundLevel), WithinAbs(150.73345476927284, 1e-9));
    CHECK_THROWS_AS(pl_3gpp_rural_db(g, 2.0, urban, true, PropagationSlice::AirToAir), model_gap_error);
}

TEST_CASE("3GPP applicability windows", "[channel][pl]") {
    const auto close = make_link_geometry(5.0, 1.5, 25.0);
    CHECK_THROWS_AS(pl_3gpp_rural_db(close, 2.0, suburban, true, PropagationSlice::GroundLevel), applicability_error);
    CHECK_NOTHROW(pl_3gpp_rural_db(make_link_geometry(8000.0, 1.5, 25.0), 2.0, suburban, true, PropagationSlice::GroundLevel));
    try {
        pl_3gpp_rural_db(make_link_geometry(8000.0, 1.5, 25.0), 2.0, suburban, false, PropagationSlice::GroundLevel);
        FAIL("expected applicability_error");
    } catch (const applicability_error& e) {
        CHECK(e.bound() == 5000.0);
        CHECK(e.quantity() == "d_h");
        CHECK(e.value() == 8000.0);
    }
    try {
        pl_3gpp_rural_db(make_link_geometry(10001.0, 1.5, 25.0), 2.0, suburban, true, PropagationSlice::GroundLevel);
        FAIL("expected applicability_error");
    } catch (const applicability_error& e) {
        CHECK(e.bound() == 10000.0);
    }
}

TEST_CASE("3GPP path loss structure", "[channel][pl][property]") {
    for (double h : {12.0, 40.0, 100.0, 300.0})
        for (double d = 20.0; d < 20000.0; d *= 1.23) {
            const auto g = make_link_geometry(d, h, 25.0 < h ? 25.0 : 1.5);
            CHECK(aerial_nlos_pl_db(g, 2.0) >= aerial_los_pl_db(g, 2.0));
        }
    // Ground LOS is continuous at the breakpoint.
    for (double hu : {1.5, 5.0, 9.0})
        for (double f : {0.7, 2.0, 3.5}) {
            const double d2 = ground_breakpoint_m(hu, 25.0, f);
            if (d2 > 9000.0) continue;
            const double below = ground_los_pl_db(at_slant(d2, hu, 25.0), f, suburban);
            const double above = ground_los_pl_db(at_slant(d2 * (1 + 1e-12), hu, 25.0), f, suburban);
            CHECK_THAT(above, WithinAbs(below, 1e-8));
            CHECK_THAT(channel::detail::ground_los_pl1_db(d2, f, suburban.mean_building_height), WithinAbs(below, 1e-12));
        }
    // Nondecreasing in distance inside each window.
    for (auto los : {true, false}) {
        double prev = -1e9;
        for (double d = 10.0; d <= 5000.0; d += 7.0) {
            const double pl = pl_3gpp_rural_db(make_link_geometry(d, 1.5, 25.0), 2.0, suburban, los,
                                               PropagationSlice::GroundLevel);
            CHECK(pl >= prev - 1e-12);
            prev = pl;
        }
        for (double h : {15.0, 60.0, 250.0}) {
            prev = -1e9;
            for (double d = 0.0; d <= 20000.0; d += 37.0) {
                const auto slice = h < 40.0 ? PropagationSlice::ObstructedA2G : PropagationSlice::HighAltitudeA2G;
                const double pl = pl_3gpp_rural_db(make_link_geometry(d, h, 1.5), 2.0, suburban, los, slice);
                CHECK(pl >= prev - 1e-12);
                prev = pl;
            }
        }
    }
}

TEST_CASE("shadowing table", "[channel][shadowing]") {
    CHECK(shadowing_sigma_db(PropagationSlice::GroundLevel, false, 500.0, 1.5, 1500.0) == 8.0);
    CHECK(shadowing_sigma_db(PropagationSlice::GroundLevel, true, 500.0, 1.5, 1500.0) == 4.0);
    CHECK(shadowing_sigma_db(PropagationSlice::GroundLevel, true, 1500.0, 1.5, 1500.0) == 4.0);
    CHECK(shadowing_sigma_db(PropagationSlice::GroundLevel, true, 2000.0, 1.5, 1500.0) == 6.0);
    CHECK_THAT(shadowing_sigma_db(PropagationSlice::ObstructedA2G, true, 500.0, 100.0, 0.0),
               WithinAbs(4.011176241201002, 1e-12));
    CHECK_THAT(shadowing_sigma_db(PropagationSlice::HighAltitudeA2G, true, 500.0, 100.0, 0.0),
               WithinAbs(4.011176241201002, 1e-12));
    CHECK(shadowing_sigma_db(PropagationSlice::ObstructedA2G, false, 500.0, 30.0, 0.0) == 6.0);
    CHECK_THROWS_AS(shadowing_sigma_db(PropagationSlice::HighAltitudeA2G, false, 500.0, 100.0, 0.0), model_gap_error);
    CHECK_THROWS_AS(shadowing_sigma_db(PropagationSlice::AirToAir, true, 500.0, 100.0, 0.0), model_gap_error);
    CHECK_THROWS_AS(shadowing_sigma_db(PropagationSlice::GroundLevel, true, 5.0, 1.5, 1500.0), applicability_error);
}

TEST_CASE("LOS/NLOS averaging", "[channel][pl]") {
    CHECK(averaged_pl_db(100.0, 120.0, 1.0) == 100.0);
    CHECK(averaged_pl_db(100.0, 120.0, 0.0) == 120.0);
    CHECK(averaged_pl_db(100.0, 120.0, 0.5) == 110.0);
    CHECK_THAT(averaged_pl_db(100.0, 120.0, 0.5, AveragingDomain::Linear),
               WithinAbs(-10.0 * std::log10(0.5e-10 + 0.5e-12), 1e-12));
    CHECK_THROWS_AS(averaged_pl_db(100.0, 120.0, 1.5), domain_error);
}

TEST_CASE("log-distance presets need an explicit pick", "[channel][presets]") {
    const auto& p = log_distance_preset("mixed_a");
    const auto lo = make_log_distance(p, RangePick::Min);
    const auto hi = make_log_distance(p, RangePick::Max);
    const auto mid = make_log_distance(p, RangePick::Mid);
    CHECK(lo.eta == 2.54);
    CHECK(hi.eta == 3.037);
    CHECK(*lo.lambda0_db == 21.9);
    CHECK(hi.sigma_db == 5.3);
    CHECK_THAT(mid.eta, WithinAbs(0.5 * (2.54 + 3.037), 1e-15));
    const auto g100 = make_link_geometry(100.0, 0.0, 0.0);
    CHECK_THAT(log_distance_pl_db(g100, *lo.lambda0_db, lo.d0_m, lo.eta), WithinAbs(72.7, 1e-9));
    const auto b = make_log_distance(log_distance_preset("mixed_968mhz_a"), RangePick::Mid);
    CHECK_THAT(log_distance_pl_db(make_link_geometry(10.0, 0.0, 0.0), *b.lambda0_db, 1.0, b.eta), WithinAbs(118.3, 1e-9));
    CHECK_FALSE(make_log_distance(log_distance_preset("mixed_b"), RangePick::Min).lambda0_db.has_value());
    CHECK_THROWS_AS(log_distance_preset("nope"), domain_error);
}

TEST_CASE("link-loss sampler", "[channel][link]") {
    ChannelModel m;
    m.carrier = Carrier{2e9};
    m.env = suburban;
    m.path_loss = ThreeGppRural{2.0};
    const auto g = make_link_geometry(800.0, 1.5, 25.0);

    SECTION("deterministic without shadowing and fading") {
        m.shadowing = ShadowingNone{};
        m.path_loss = LogDistance{std::nullopt, 1.0, 2.0, 0.0};
        numerics::RngStream rng(1, 0);
        for (int i = 0; i < 10; ++i) {
            const auto s = sample_link_loss_db(g, m, rng);
            CHECK(s.los);
            CHECK(s.loss_db == free_space_pl_db(g, m.carrier));
        }
    }

    SECTION("additive loss term") {
        m.shadowing = ShadowingNone{};
        m.path_loss = FreeSpace{};
        m.additional_loss_db = 1.4;
        numerics::RngStream rng(1, 0);
        CHECK_THAT(sample_link_loss_db(g, m, rng).loss_db, WithinAbs(free_space_pl_db(g, m.carrier) + 1.4, 1e-12));
    }

    SECTION("zero-mean shadowing and unit-mean fading") {
        m.path_loss = LosNlosAveraged{ThreeGppRural{2.0}, ThreeGppRural{2.0}, ConstantPlos{1.0}};
        const double pl = path_loss_db(g, m, true);
        numerics::RngStream rng(7, 3);
        std::vector<double> excess;
        for (int i = 0; i < 100000; ++i) excess.push_back(sample_link_loss_db(g, m, rng).loss_db - pl);
        CHECK_THAT(oracle::moments(excess).mean, WithinAbs(0.0, 0.05));
        CHECK_THAT(std::sqrt(oracle::moments(excess).variance), WithinAbs(4.0, 0.05));

        m.shadowing = ShadowingNone{};
        for (const numerics::FadingModel f : {numerics::FadingModel{numerics::Rayleigh{}},
                                              numerics::FadingModel{numerics::Nakagami{3}},
                                              numerics::FadingModel{numerics::Rician{db_to_linear(15.0)}}}) {
            std::vector<double> gain;
            for (int i = 0; i < 100000; ++i)
                gain.push_back(db_to_linear(-(sample_link_loss_db(g, m, f, rng).loss_db - pl)));
            CHECK_THAT(oracle::moments(gain).mean, WithinAbs(1.0, 0.01));
        }
    }

    SECTION("LOS flag frequency follows the LOS probability") {
        const double p = p_los_3gpp(g.d_h, g.h_uav, PropagationSlice::GroundLevel);
        CHECK_THAT(los_probability(g, m), WithinAbs(p, 1e-15));
        numerics::RngStream rng(11, 0);
        int los = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) los += sample_link_loss_db(g, m, rng).los;
        CHECK_THAT(static_cast<double>(los) / n, WithinAbs(p, 0.005));
    }

    SECTION("mean path loss mixes the branches") {
        const double p = p_los_3gpp(g.d_h, g.h_uav, PropagationSlice::GroundLevel);
        CHECK_THAT(mean_path_loss_db(g, m), WithinAbs(p * path_loss_db(g, m, true) + (1 - p) * path_loss_db(g, m, false), 1e-9));
        m.path_loss = LosNlosAveraged{LogDistance{std::nullopt, 1.0, 2.09, 0.0}, LogDistance{std::nullopt, 1.0, 3.75, 0.0},
                                      BuildingPlos{}};
        // Building model needs the aerial node on top, so put the user above the mast.
        const auto up = make_link_geometry(800.0, 120.0, 25.0);
        const double pb = p_los_building(up, suburban);
        CHECK_THAT(mean_path_loss_db(up, m),
                   WithinAbs(averaged_pl_db(path_loss_db(up, m, true), path_loss_db(up, m, false), pb), 1e-12));
    }

    SECTION("slice table requires a defined combination") {
        m.slice = PropagationSlice::AirToAir;
        numerics::RngStream rng(1, 0);
        CHECK_THROWS_AS(sample_link_loss_db(g, m, rng), domain_error);
    }
}
