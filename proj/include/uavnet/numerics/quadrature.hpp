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
#include <span>
#include <vector>

#include "uavnet/error.hpp"
#include "uavnet/units.hpp"

namespace uavnet::numerics {

struct ChebyshevNode {
    double t;      ///< abscissa on (0, inf)
    double weight; ///< multiplies g(t_n) when approximating integral_0^inf g(t) dt
};

/// Gauss-Chebyshev rule for half-line integrals of the form
/// integral_0^inf f(t) / (1 + t) dt ~= sum_n w_n f(t_n) / (1 + t_n),
/// obtained from the substitution t = tan(pi/4 x + pi/4), x in [-1, 1].
inline std::vector<ChebyshevNode> chebyshev_capacity_nodes(int k) {
    if (k < 1) throw domain_error("chebyshev_capacity_nodes: K must be >= 1");
    std::vector<ChebyshevNode> nodes;
    nodes.reserve(static_cast<std::size_t>(k));
    for (int n = 1; n <= k; ++n) {
        const double angle = (2.0 * n - 1.0) * pi / (2.0 * k);
        const double u = pi / 4.0 * std::cos(angle) + pi / 4.0;
        const double c = std::cos(u);
        nodes.push_back({std::tan(u), pi * pi * std::sin(angle) / (4.0 * k * c * c)});
    }
    return nodes;
}

/// (1/ln 2) * sum_n w_n P(t_n) / (1 + t_n): ergodic rate from a coverage curve.
template <typename CoverageFn>
double capacity_from_coverage(CoverageFn&& coverage, std::span<const ChebyshevNode> nodes) {
    double sum = 0.0;
    for (const auto& node : nodes) sum += node.weight * coverage(node.t) / (1.0 + node.t);
    return sum / std::log(2.0);
}

} // namespace uavnet::numerics
