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

// First-order Marcum Q-function and its inverse in the second argument.
//
//   Q1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx
//
// For a*b < 30 the classical modified-Bessel series is summed with
// exponentially scaled Bessel values (ratios from backward recurrence,
// normalized by sum_k I_k(z) = e^z). Beyond that the Poisson mixture of
// central chi-square tails is accumulated recursively in log space, with a
// Chernoff cut-off when |a - b| is large enough that the result underflows.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "uavnet/error.hpp"

namespace uavnet::numerics {

struct MarcumValue {
    double q;  ///< Q1(a, b)
    double qc; ///< 1 - Q1(a, b), computed directly where that is the small side
};

namespace detail {

/// e^{-z} I_k(z) for k = 0..n.
inline std::vector<double> scaled_bessel_i(double z, int n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    if (z == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const int start = std::max(n, static_cast<int>(std::ceil(z + 12.0 * std::sqrt(z + 1.0) + 40.0)));
    // ratio[k] = I_k / I_{k-1}
    std::vector<double> ratio(static_cast<std::size_t>(start) + 2, 0.0);
    for (int k = start; k >= 1; --k) ratio[k] = z / (2.0 * k + z * ratio[k + 1]);
    double prod = 1.0;
    double norm = 1.0;
    std::vector<double> prods(static_cast<std::size_t>(start) + 1, 0.0);
    prods[0] = 1.0;
    for (int k = 1; k <= start; ++k) {
        prod *= ratio[k];
        prods[k] = prod;
        norm += 2.0 * prod;
    }
    for (int k = 0; k <= n; ++k) out[k] = prods[k] / norm;
    return out;
}

inline MarcumValue marcum_bessel_series(double a, double b) {
    const double z = a * b;
    const double envelope = std::exp(-0.5 * (a - b) * (a - b));
    const int n = static_cast<int>(std::ceil(z + 12.0 * std::sqrt(z + 1.0) + 40.0));
    const auto ik = scaled_bessel_i(z, n);
    if (b >= a) {
        const double ratio = a / b;
        double sum = 0.0, power = 1.0;
        for (int k = 0; k <= n; ++k) {
            const double term = power * ik[k];
            sum += term;
            if (term < 1e-18 * sum && k > z) break;
            power *= ratio;
        }
        const double q = std::min(1.0, envelope * sum);
        return {q, 1.0 - q};
    }
    const double ratio = b / a;
    double sum = 0.0, power = ratio;
    for (int k = 1; k <= n; ++k) {
        const double term = power * ik[k];
        sum += term;
        if (term < 1e-18 * sum && k > z) break;
        power *= ratio;
    }
    const double qc = std::min(1.0, envelope * sum);
    return {1.0 - qc, qc};
}

/// Q1(a,b) = sum_j Pois(j; a^2/2) * P[Pois(b^2/2) <= j].
inline MarcumValue marcum_poisson_mixture(double a, double b) {
    const double mu = 0.5 * a * a;
    const double x = 0.5 * b * b;
    const double log_mu = std::log(mu);
    const double log_x = x > 0.0 ? std::log(x) : -INFINITY;
    const int jmax = static_cast<int>(std::ceil(mu + 13.0 * std::sqrt(mu) + 40.0));
    if (b >= a) {
        double log_w = -mu; // log Pois(j; mu)
        double log_t = -x;  // log Pois(j; x)
        double cdf = 0.0;   // P[Pois(x) <= j]
        double q = 0.0;
        for (int j = 0; j <= jmax; ++j) {
            if (j > 0) {
                const double log_j = std::log(static_cast<double>(j));
                log_w += log_mu - log_j;
                log_t += log_x - log_j;
            }
            cdf = std::min(1.0, cdf + std::exp(log_t));
            q += std::exp(log_w) * cdf;
        }
        q = std::clamp(q, 0.0, 1.0);
        return {q, 1.0 - q};
    }
    // a > b: accumulate the small side 1 - Q = sum_j Pois(j; mu) P[Pois(x) > j].
    std::vector<double> tail(static_cast<std::size_t>(jmax) + 2, 0.0);
    {
        double log_t = -x;
        std::vector<double> pmf(static_cast<std::size_t>(jmax) + 1);
        for (int i = 0; i <= jmax; ++i) {
            if (i > 0) log_t += log_x - std::log(static_cast<double>(i));
            pmf[i] = std::exp(log_t);
        }
        // x < mu keeps the mass beyond jmax negligible.
        for (int j = jmax - 1; j >= 0; --j) tail[j] = tail[j + 1] + pmf[j + 1];
    }
    double log_w = -mu;
    double qc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        if (j > 0) log_w += log_mu - std::log(static_cast<double>(j));
        qc += std::exp(log_w) * tail[j];
    }
    qc = std::clamp(qc, 0.0, 1.0);
    return {1.0 - qc, qc};
}

} // namespace detail

/// Q1(a, b) together with its complement.
inline MarcumValue marcum_q_pair(double a, double b) {
    uavnet::detail::require(std::isfinite(a) && std::isfinite(b), "marcum_q: non-finite argument");
    uavnet::detail::require(a >= 0.0 && b >= 0.0, "marcum_q: arguments must be >= 0");
    if (b == 0.0) return {1.0, 0.0};
    if (a == 0.0) {
        const double q = std::exp(-0.5 * b * b);
        return {q, -std::expm1(-0.5 * b * b)};
    }
    const double gap = 0.5 * (a - b) * (a - b);
    if (gap > 745.0) return b > a ? MarcumValue{0.0, 1.0} : MarcumValue{1.0, 0.0};
    if (a * b < 30.0) return detail::marcum_bessel_series(a, b);
    return detail::marcum_poisson_mixture(a, b);
}

inline double marcum_q(double a, double b) { return marcum_q_pair(a, b).q; }

/// 1 - Q1(a, b), e.g. a Rician outage probability.
inline double marcum_q_complement(double a, double b) { return marcum_q_pair(a, b).qc; }

/// Solves Q1(a, b) = p for b by bracketing and bisection (Q1 is decreasing in b).
inline double inv_marcum_q(double a, double p) {
    uavnet::detail::require(std::isfinite(a) && a >= 0.0, "inv_marcum_q: a must be finite and >= 0");
    if (!(p > 0.0 && p <= 1.0)) throw domain_error("inv_marcum_q: p must lie in (0, 1]");
    if (p == 1.0) return 0.0;
    if (a == 0.0) return std::sqrt(-2.0 * std::log(p));

    // Residual measured on whichever side is small, for accuracy near p = 1.
    const bool use_complement = p > 0.5;
    const double target = use_complement ? 1.0 - p : p;
    auto above = [&](double b) { // true while Q1(a, b) > p
        const auto v = marcum_q_pair(a, b);
        return use_complement ? v.qc < target : v.q > target;
    };

    double lo = 0.0;
    double hi = a + 1.0;
    while (above(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw domain_error("inv_marcum_q: failed to bracket root");
    }
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (above(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace uavnet::numerics
