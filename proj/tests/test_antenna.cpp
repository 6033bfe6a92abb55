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

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/antenna/sector.hpp"
#include "uavnet/antenna/uav_antenna.hpp"

using namespace uavnet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("link geometry", "[antenna][geometry]") {
    const auto v = link_geometry({0, 0, 100}, {0, 0, 1.5});
    CHECK(v.d_h == 0.0);
    CHECK(v.d_3d == 98.5);
    CHECK(v.theta == pi / 2);
    const auto flat = link_geometry({30, 40, 1.5}, {0, 0, 1.5});
    CHECK(flat.d_h == 50.0);
    CHECK(flat.d_3d == 50.0);
    CHECK(flat.theta == 0.0);
    const auto s = link_geometry({300, 400, 301.5}, {0, 0, 1.5});
    CHECK_THAT(s.d_3d, WithinAbs(583.0951894845301, 1e-9));
    CHECK_THAT(s.theta, WithinAbs(std::atan(300.0 / 500.0), 1e-15));
    CHECK(s.h_uav == 301.5);
    CHECK(s.h_g == 1.5);
    CHECK_THROWS_AS(link_geometry({1, 2, 3}, {1, 2, 3}), domain_error);
    CHECK_THROWS_AS(link_geometry({1, 2, -3}, {1, 2, 3}), domain_error);
}

TEST_CASE("link geometry invariants and symmetry", "[antenna][geometry][property]") {
    for (double x = -500; x <= 500; x += 97)
        for (double y = -300; y <= 300; y += 71)
            for (double h : {0.0, 1.5, 25.0, 120.0}) {
                const Position3D a{x, y, h}, b{13.0, -7.0, 30.0};
                const auto g = link_geometry(a, b);
                const auto r = link_geometry(b, a);
                CHECK(g.d_h == r.d_h);
                CHECK(g.d_3d == r.d_3d);
                CHECK(g.theta == r.theta);
                const double dz = g.h_uav - g.h_g;
                CHECK(dz >= 0.0);
                CHECK_THAT(g.d_3d * g.d_3d, WithinRel(g.d_h * g.d_h + dz * dz, 1e-12));
                CHECK(g.theta >= 0.0);
                CHECK(g.theta <= pi / 2);
            }
}

TEST_CASE("directions", "[antenna][geometry]") {
    const auto east = direction({0, 0, 0}, {10, 0, 0});
    CHECK_THAT(east.bearing(), WithinAbs(pi / 2, 1e-15));
    CHECK_THAT(direction({0, 0, 0}, {0, -1, 0}).bearing(), WithinAbs(pi, 1e-15));
    CHECK_THAT(direction({0, 0, 0}, {-1, 0, 0}).bearing(), WithinAbs(1.5 * pi, 1e-15));
    CHECK_THAT(direction({0, 0, 0}, {1, 0, 1}).elevation(), WithinAbs(pi / 4, 1e-15));
    const auto d = direction_from_angles(0.3, -0.2);
    CHECK_THAT(d.bearing(), WithinAbs(0.3, 1e-15));
    CHECK_THAT(d.elevation(), WithinAbs(-0.2, 1e-15));
    CHECK_THAT(d.dot(d), WithinAbs(1.0, 1e-15));
}

TEST_CASE("sector antenna pattern", "[antenna][sector]") {
    SectorAntenna ant;
    ant.azimuth = 0.4;
    ant.max_gain_dbi = 17.0;
    ant.sidelobe_floor_db = -3.0;
    ant.beamwidth_3db = deg_to_rad(65.0);
    ant.vertical_beamwidth_3db = deg_to_rad(10.0);
    ant.electrical_tilt = deg_to_rad(8.0);
    CHECK_NOTHROW(ant.validate());
    const auto boresight = direction_from_angles(0.4, -deg_to_rad(8.0));
    CHECK_THAT(bs_gain_db(ant, boresight), WithinAbs(17.0, 1e-12));
    const auto half = direction_from_angles(0.4 + deg_to_rad(32.5), -deg_to_rad(8.0));
    CHECK_THAT(bs_gain_db(ant, half), WithinAbs(14.0, 0.1));
    const auto half_v = direction_from_angles(0.4, -deg_to_rad(3.0));
    CHECK_THAT(bs_gain_db(ant, half_v), WithinAbs(14.0, 0.1));
    // 90 deg off: 12 (90/65)^2 = 23 dB exceeds the 20 dB floor depth.
    CHECK_THAT(bs_gain_db(ant, direction_from_angles(0.4 + pi / 2, -deg_to_rad(8.0))), WithinAbs(-3.0, 1e-12));
    CHECK_THAT(bs_gain_db(ant, direction_from_angles(0.4, pi / 3)), WithinAbs(-3.0, 1e-12));
    CHECK_THAT(ant.main_gain_linear(), WithinRel(50.118723362727, 1e-12));
    CHECK(ant.main_gain_linear() >= ant.side_gain_linear());
    CHECK(ant.side_gain_linear() > 0.0);
    ant.sidelobe_floor_db = 20.0;
    CHECK_THROWS_AS(ant.validate(), domain_error);
}

TEST_CASE("sector pattern stays between floor and peak", "[antenna][sector][property]") {
    for (bool omni : {false, true}) {
        SectorAntenna ant;
        ant.horizontally_omni = omni;
        ant.mechanical_tilt = deg_to_rad(2.0);
        ant.electrical_tilt = deg_to_rad(6.0);
        for (double b = 0.0; b < 2 * pi; b += 0.05)
            for (double e = -pi / 2; e <= pi / 2; e += 0.05) {
                const double g = bs_gain_db(ant, direction_from_angles(b, e));
                CHECK(g <= ant.max_gain_dbi + 1e-12);
                CHECK(g >= ant.sidelobe_floor_db - 1e-12);
                if (omni) CHECK_THAT(g, WithinAbs(bs_gain_db(ant, direction_from_angles(0.0, e)), 1e-12));
            }
    }
}

TEST_CASE("derived vertical beamwidth", "[antenna][sector]") {
    SectorAntenna ant;
    ant.max_gain_dbi = 17.0;
    ant.beamwidth_3db = deg_to_rad(65.0);
    CHECK_THAT(rad_to_deg(ant.vertical_beamwidth()), WithinRel(31000.0 * std::pow(10.0, -1.7) / 65.0, 1e-12));
    ant.horizontally_omni = true;
    ant.max_gain_dbi = 10.0;
    CHECK_THAT(rad_to_deg(ant.vertical_beamwidth()), WithinRel(10.76, 1e-12));
}

TEST_CASE("UAV antennas", "[antenna][uav]") {
    const UavAntenna cone = ConeAntenna{60.0, 0.0, 0.0};
    const Direction down{0, 0, -1};
    CHECK_THAT(uav_gain_linear(cone, down), WithinAbs(29000.0 / 3600.0, 1e-12));
    CHECK_THAT(10 * std::log10(uav_gain_linear(cone, down)), WithinAbs(9.06, 0.005));
    const double eps = 1e-6;
    CHECK(uav_gain_linear(cone, direction_from_angles(0.0, -pi / 2 + pi / 6 + eps)) == 0.0);
    CHECK(uav_gain_linear(cone, direction_from_angles(0.0, -pi / 2 + pi / 6 - eps)) > 0.0);
    const UavAntenna tilted = ConeAntenna{40.0, pi / 4, pi / 2};
    CHECK(uav_gain_linear(tilted, direction_from_angles(pi / 2, -pi / 4)) > 0.0);
    CHECK(uav_gain_linear(tilted, down) == 0.0);
    const UavAntenna omni = OmniAntenna{2.15};
    CHECK_THAT(uav_gain_linear(omni, down), WithinAbs(1.6405897731995394, 1e-12));
    CHECK_THAT(uav_gain_linear(omni, Direction{1, 0, 0}), WithinAbs(1.6405897731995394, 1e-12));
    CHECK_THROWS_AS(uav_gain_linear(UavAntenna{ConeAntenna{0.0, 0.0, 0.0}}, down), domain_error);
    CHECK_THROWS_AS(uav_gain_linear(UavAntenna{ConeAntenna{181.0, 0.0, 0.0}}, down), domain_error);
    CHECK(ConeAntenna{20.0, 0.0, 0.0}.gain_is_approximate());
    CHECK_FALSE(ConeAntenna{30.0, 0.0, 0.0}.gain_is_approximate());
}

TEST_CASE("cone gain integrates to at most 4 pi", "[antenna][uav][property]") {
    // Midpoint rule on a (polar angle, azimuth) grid around a tilted axis.
    for (double phi_b = 30.0; phi_b <= 180.0; phi_b += 10.0) {
        const UavAntenna cone = ConeAntenna{phi_b, 0.3, 1.1};
        const int nt = 1800, np = 360;
        double integral = 0.0;
        for (int i = 0; i < nt; ++i) {
            const double t = (i + 0.5) * pi / nt;
            double ring = 0.0;
            for (int j = 0; j < np; ++j) {
                const double p = (j + 0.5) * 2 * pi / np;
                ring += uav_gain_linear(cone, Direction{std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)});
            }
            integral += ring * std::sin(t) * (pi / nt) * (2 * pi / np);
        }
        const double half = 0.5 * deg_to_rad(phi_b);
        const double exact = 29000.0 / (phi_b * phi_b) * 2 * pi * (1 - std::cos(half));
        CHECK_THAT(integral, WithinRel(exact, 2e-2));
        CHECK(integral <= 4 * pi);
    }
}
