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
#include <cstdint>
#include <random>
#include <variant>

#include "uavnet/error.hpp"

namespace uavnet::numerics {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Reproducible random stream keyed by (master_seed, stream_index).
///
/// Two streams built from the same key produce the same sequence no matter
/// which thread constructs them or in what order, which is what makes trial-level
/// parallelism bit-exact. Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index),
          engine_(detail::splitmix64(detail::splitmix64(master_seed) ^ detail::splitmix64(~stream_index))) {}

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    /// Independent child stream; the parent is left untouched.
    RngStream substream(std::uint64_t salt) const {
        return RngStream(detail::splitmix64(master_seed_ ^ detail::splitmix64(salt + 0x632BE59BD9B4E019ull)),
                         stream_index_);
    }

    static constexpr result_type min() noexcept { return std::mt19937_64::min(); }
    static constexpr result_type max() noexcept { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(*this); }
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

struct Rayleigh {};
struct Rician {
    double k_linear = 0.0; ///< LOS-to-diffuse power ratio, >= 0
};
struct Nakagami {
    int m = 1; ///< positive integer shape
};

/// Small-scale fading law. All variants produce unit-mean power samples.
using FadingModel = std::variant<Rayleigh, Rician, Nakagami>;

inline void validate(const FadingModel& model) {
    if (const auto* r = std::get_if<Rician>(&model))
        uavnet::detail::require(std::isfinite(r->k_linear) && r->k_linear >= 0.0, "Rician K must be finite and >= 0");
    if (const auto* n = std::get_if<Nakagami>(&model))
        uavnet::detail::require(n->m >= 1, "Nakagami m must be a positive integer");
}

/// Power gain |h|^2 of one fading realization (linear, unit mean).
inline double sample_fading(const FadingModel& model, RngStream& rng) {
    struct Visitor {
        RngStream& rng;
        double operator()(const Rayleigh&) const { return std::exponential_distribution<double>(1.0)(rng); }
        double operator()(const Rician& r) const {
            const double k = r.k_linear;
            const double los = std::sqrt(k / (k + 1.0));
            const double diffuse = std::sqrt(1.0 / (2.0 * (k + 1.0)));
            const double re = los + diffuse * rng.normal();
            const double im = diffuse * rng.normal();
            return re * re + im * im;
        }
        double operator()(const Nakagami& n) const {
            return std::gamma_distribution<double>(n.m, 1.0 / n.m)(rng);
        }
    };
    return std::visit(Visitor{rng}, model);
}

/// Zero-mean normal shadowing term in dB.
inline double sample_shadowing_db(double sigma_db, RngStream& rng) {
    uavnet::detail::require(std::isfinite(sigma_db) && sigma_db >= 0.0, "shadowing sigma must be >= 0");
    if (sigma_db == 0.0) return 0.0;
    return sigma_db * rng.normal();
}

/// P[X > w] for unit-mean Nakagami-m power with integer m.
inline double nakagami_power_ccdf(int m, double w) {
    uavnet::detail::require(m >= 1, "Nakagami m must be a positive integer");
    if (w <= 0.0) return 1.0;
    const double x = m * w;
    double term = std::exp(-x);
    double sum = term;
    for (int k = 1; k < m; ++k) {
        term *= x / k;
        sum += term;
    }
    return sum;
}

} // namespace uavnet::numerics
