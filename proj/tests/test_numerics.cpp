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
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "uavnet/numerics/marcum.hpp"
#include "uavnet/numerics/quadrature.hpp"
#include "uavnet/numerics/random.hpp"

using namespace uavnet;
using namespace uavnet::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("marcum_q closed-form identities", "[numerics][marcum]") {
    CHECK(marcum_q(2.5, 0.0) == 1.0);
    for (double b : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) CHECK_THAT(marcum_q(0.0, b), WithinAbs(std::exp(-b * b / 2), 1e-15));
    CHECK_THAT(marcum_q(0.0, 1.0), WithinAbs(0.60653065971263342, 1e-12));
}

TEST_CASE("marcum_q against frozen high-precision quadrature values", "[numerics][marcum]") {
    // Rice tail integral evaluated with 30-digit quadrature.
    struct Row { double a, b, q; };
    const Row rows[] = {
        {1, 1, 0.732879803796820218}, {2, 3, 0.214362088162649457}, {5, 4, 0.867049795077925598},
        {10, 12, 0.0253294742979414178}, {20, 19, 0.847473586937428875}, {30, 31, 0.162655581127460615},
        {0.5, 2.5, 0.0616810633033310692}, {3, 0.5, 0.998300232705539374},
    };
    for (const auto& r : rows) {
        INFO("a=" << r.a << " b=" << r.b);
        CHECK_THAT(marcum_q(r.a, r.b), WithinAbs(r.q, 1e-11));
        CHECK_THAT(marcum_q_complement(r.a, r.b), WithinAbs(1.0 - r.q, 1e-11));
    }
}

TEST_CASE("marcum_q agrees with Rice-density quadrature across the desk range", "[numerics][marcum]") {
    RngStream rng(7, 0);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double a = 30.0 * rng.uniform();
        const double b = 30.0 * rng.uniform();
        worst = std::max(worst, std::abs(marcum_q(a, b) - oracle::marcum_q_quadrature(a, b)));
    }
    // Points straddling the series / mixture switch at a*b = 30.
    for (double a : {4.0, 5.0, 5.4, 5.5, 6.0}) {
        for (double b : {5.4, 5.5, 5.6, 6.0}) worst = std::max(worst, std::abs(marcum_q(a, b) - oracle::marcum_q_quadrature(a, b)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("marcum_q is monotone in both arguments", "[numerics][marcum][property]") {
    const int n = 50;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const double a = 0.3 * i, b = 0.3 * j, b2 = 0.3 * (j + 1);
            CHECK(marcum_q(a, b2) <= marcum_q(a, b) + 1e-15);
            CHECK(marcum_q(b, a) <= marcum_q(b2, a) + 1e-15);
        }
    }
}

TEST_CASE("marcum_q rejects invalid input", "[numerics][marcum]") {
    CHECK_THROWS_AS(marcum_q(std::numeric_limits<double>::quiet_NaN(), 1.0), uavnet::domain_error);
    CHECK_THROWS_AS(marcum_q(1.0, std::numeric_limits<double>::infinity()), uavnet::domain_error);
    CHECK_THROWS_AS(marcum_q(-1.0, 1.0), uavnet::domain_error);
}

TEST_CASE("inv_marcum_q examples and errors", "[numerics][marcum]") {
    CHECK(inv_marcum_q(1.7, 1.0) == 0.0);
    CHECK_THAT(inv_marcum_q(0.0, 0.9), WithinAbs(std::sqrt(-2.0 * std::log(0.9)), 1e-12));
    CHECK_THAT(inv_marcum_q(0.0, 0.9), WithinAbs(0.4590, 1e-4));
    CHECK_THAT(inv_marcum_q(1.0, 0.733), WithinAbs(1.0, 1e-3));
    CHECK_THROWS_AS(inv_marcum_q(1.0, 0.0), uavnet::domain_error);
    CHECK_THROWS_AS(inv_marcum_q(1.0, 1.5), uavnet::domain_error);
    CHECK_THROWS_AS(inv_marcum_q(1.0, -0.1), uavnet::domain_error);
}

TEST_CASE("inv_marcum_q inverts marcum_q", "[numerics][marcum][property]") {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            const double a = 0.5 * i, b = 0.5 * j;
            const double p = marcum_q(a, b);
            if (p <= 0.0) continue;
            const double back = inv_marcum_q(a, p);
            INFO("a=" << a << " b=" << b << " p=" << p);
            CHECK(std::abs(marcum_q(a, back) - p) <= 1e-8);
            if (p < 1.0 - 1e-9 && p > 1e-12) CHECK_THAT(back, WithinAbs(b, 1e-6));
        }
    }
}

TEST_CASE("chebyshev_capacity_nodes", "[numerics][quadrature]") {
    const auto one = chebyshev_capacity_nodes(1);
    REQUIRE(one.size() == 1);
    CHECK_THAT(one[0].t, WithinAbs(1.0, 1e-15));
    CHECK_THAT(one[0].weight, WithinAbs(pi * pi / 2.0, 1e-12));

    CHECK_THROWS_AS(chebyshev_capacity_nodes(0), uavnet::domain_error);
    CHECK(chebyshev_capacity_nodes(37).size() == 37);

    // f(t) = 1/(1+t)^2 so the integrand f/(1+t) has integral 1/2.
    const double reference = oracle::half_line_integral([](double t) { return 1.0 / std::pow(1.0 + t, 3); });
    CHECK_THAT(reference, WithinAbs(0.5, 1e-12));
    const auto nodes = chebyshev_capacity_nodes(200);
    double sum = 0.0;
    for (const auto& n : nodes) sum += n.weight / std::pow(1.0 + n.t, 3);
    CHECK_THAT(sum, WithinAbs(reference, 1e-3));

    // Injected coverage 1/(1+t): rate = (1/ln 2) * integral dt/(1+t)^2 = 1/ln 2.
    const double rate = capacity_from_coverage([](double t) { return 1.0 / (1.0 + t); }, nodes);
    CHECK_THAT(rate, WithinAbs(1.0 / std::log(2.0), 1e-2));
}

namespace {

std::vector<double> draw(const FadingModel& model, std::uint64_t seed, int n) {
    RngStream rng(seed, 0);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = sample_fading(model, rng);
    return out;
}

double empirical_cdf(const std::vector<double>& xs, double w) {
    std::size_t below = 0;
    for (double x : xs) below += x < w;
    return static_cast<double>(below) / static_cast<double>(xs.size());
}

} // namespace

TEST_CASE("sample_fading moments", "[numerics][fading]") {
    const int n = 1'000'000;
    SECTION("Nakagami m=1 is exponential power") {
        const auto xs = draw(Nakagami{1}, 11, n);
        CHECK_THAT(empirical_cdf(xs, 1.0), WithinAbs(1.0 - std::exp(-1.0), 0.002));
    }
    SECTION("Rician K = 15 dB has unit mean power") {
        const auto xs = draw(Rician{std::pow(10.0, 1.5)}, 12, n);
        CHECK_THAT(oracle::moments(xs).mean, WithinAbs(1.0, 0.005));
    }
    SECTION("Nakagami m=3 variance is 1/m") {
        const auto xs = draw(Nakagami{3}, 13, n);
        const auto m = oracle::moments(xs);
        CHECK_THAT(m.mean, WithinAbs(1.0, 0.005));
        CHECK_THAT(m.variance, WithinAbs(1.0 / 3.0, 0.01));
    }
    SECTION("Rician K=0 and Nakagami m=1 both reduce to Rayleigh") {
        const auto rice = draw(Rician{0.0}, 14, n);
        const auto naka = draw(Nakagami{1}, 15, n);
        const auto rayl = draw(Rayleigh{}, 16, n);
        for (double w : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const double exact = 1.0 - std::exp(-w);
            CHECK_THAT(empirical_cdf(rice, w), WithinAbs(exact, 0.002));
            CHECK_THAT(empirical_cdf(naka, w), WithinAbs(exact, 0.002));
            CHECK_THAT(empirical_cdf(rayl, w), WithinAbs(exact, 0.002));
        }
    }
    SECTION("Nakagami tail matches the closed Gamma(m, 1/m) form") {
        const auto xs = draw(Nakagami{4}, 17, n);
        for (double w : {0.25, 0.75, 1.5}) CHECK_THAT(1.0 - empirical_cdf(xs, w), WithinAbs(nakagami_power_ccdf(4, w), 0.002));
    }
}

TEST_CASE("fading model validation", "[numerics][fading]") {
    CHECK_THROWS_AS(validate(Rician{-1.0}), uavnet::domain_error);
    CHECK_THROWS_AS(validate(Nakagami{0}), uavnet::domain_error);
    CHECK_NOTHROW(validate(Rayleigh{}));
}

TEST_CASE("sample_shadowing_db", "[numerics][shadowing]") {
    RngStream rng(21, 3);
    for (int i = 0; i < 100; ++i) CHECK(sample_shadowing_db(0.0, rng) == 0.0);
    CHECK_THROWS_AS(sample_shadowing_db(-1.0, rng), uavnet::domain_error);

    const int n = 1'000'000;
    std::vector<double> s4(n), s8(n);
    for (auto& x : s4) x = sample_shadowing_db(4.0, rng);
    for (auto& x : s8) x = sample_shadowing_db(8.0, rng);
    CHECK_THAT(std::sqrt(oracle::moments(s4).variance), WithinAbs(4.0, 0.02));
    CHECK(std::abs(oracle::moments(s8).mean) <= 0.03);
}

TEST_CASE("RngStream reproducibility and independence", "[numerics][rng][property]") {
    RngStream a(42, 5), b(42, 5);
    for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());

    // Creation order does not matter.
    std::vector<std::uint64_t> forward, backward;
    for (std::uint64_t k = 0; k < 8; ++k) forward.push_back(RngStream(9, k)());
    for (std::uint64_t k = 8; k-- > 0;) backward.insert(backward.begin(), RngStream(9, k)());
    CHECK(forward == backward);

    const int n = 100'000;
    RngStream s1(42, 1), s2(42, 2);
    auto sub = RngStream(42, 1).substream(1);
    std::vector<double> x1(n), x2(n), x3(n);
    for (int i = 0; i < n; ++i) {
        x1[i] = s1.uniform();
        x2[i] = s2.uniform();
        x3[i] = sub.uniform();
    }
    CHECK(std::abs(oracle::correlation(x1, x2)) < 0.01);
    CHECK(std::abs(oracle::correlation(x1, x3)) < 0.01);
    CHECK(RngStream(42, 1)() != RngStream(43, 1)());
}
