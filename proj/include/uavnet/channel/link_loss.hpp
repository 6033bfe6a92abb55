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

// Composed channel: total loss = path loss + shadowing + small-scale fading,
// all in dB, with the LOS state drawn first.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/channel/los_probability.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/channel/shadowing.hpp"
#include "uavnet/error.hpp"
#include "uavnet/numerics/random.hpp"
#include "uavnet/units.hpp"

namespace uavnet::channel {

struct FreeSpace {
    double eta = 2.0;
};

/// Log-distance law. Without `lambda0_db` the reference is the free-space loss at d0.
struct LogDistance {
    std::optional<double> lambda0_db;
    double d0_m = 1.0;
    double eta = 2.0;
    double sigma_db = 0.0;
};

struct ThreeGppRural {
    double f_c_ghz = 2.0;
};

using BasicPathLoss = std::variant<FreeSpace, LogDistance, ThreeGppRural>;

struct BuildingPlos {};
struct ThreeGppPlos {};
struct ConstantPlos {
    double p = 1.0;
};
using PlosModel = std::variant<BuildingPlos, ThreeGppPlos, ConstantPlos>;

/// Separate LOS and NLOS laws mixed by a LOS-probability model.
struct LosNlosAveraged {
    BasicPathLoss los;
    BasicPathLoss nlos;
    PlosModel plos;
    AveragingDomain domain = AveragingDomain::Db;
};

using PathLossSpec = std::variant<FreeSpace, LogDistance, ThreeGppRural, LosNlosAveraged>;

/// Shadowing derived from the path-loss choice: LogDistance sigma, the slice table for
/// ThreeGppRural, none for FreeSpace.
struct ShadowingFromSpec {};
struct ShadowingFixed {
    double los_db = 0.0;
    double nlos_db = 0.0;
};
struct ShadowingNone {};
using ShadowingSpec = std::variant<ShadowingFromSpec, ShadowingFixed, ShadowingNone>;

struct ChannelModel {
    Carrier carrier;
    Environment env;
    PathLossSpec path_loss = FreeSpace{};
    ShadowingSpec shadowing = ShadowingFromSpec{};
    std::optional<numerics::FadingModel> fading_los;
    std::optional<numerics::FadingModel> fading_nlos;
    double additional_loss_db = 0.0; ///< fixed extra attenuation, e.g. absorption or rain
    std::optional<PropagationSlice> slice; ///< overrides the altitude-derived slice
};

struct LinkLossSample {
    double loss_db = 0.0;
    bool los = true;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline PropagationSlice slice_for(const LinkGeometry& g, const ChannelModel& m) {
    return m.slice ? *m.slice : slice_of(g.h_uav, m.env);
}

inline double basic_pl_db(const BasicPathLoss& spec, const LinkGeometry& g, const ChannelModel& m, bool los) {
    return std::visit(overloaded{
                          [&](const FreeSpace& s) { return free_space_pl_db(g, m.carrier, s.eta); },
                          [&](const LogDistance& s) {
                              return s.lambda0_db ? log_distance_pl_db(g, *s.lambda0_db, s.d0_m, s.eta)
                                                  : log_distance_pl_db(g, m.carrier, s.d0_m, s.eta);
                          },
                          [&](const ThreeGppRural& s) {
                              return pl_3gpp_rural_db(g, s.f_c_ghz, m.env, los, slice_for(g, m));
                          },
                      },
                      spec);
}

inline double basic_sigma_db(const BasicPathLoss& spec, const LinkGeometry& g, const ChannelModel& m, bool los) {
    return std::visit(overloaded{
                          [](const FreeSpace&) { return 0.0; },
                          [](const LogDistance& s) { return s.sigma_db; },
                          [&](const ThreeGppRural& s) { return shadowing_sigma_db(slice_for(g, m), los, g, s.f_c_ghz); },
                      },
                      spec);
}

inline double plos_of(const PlosModel& model, const LinkGeometry& g, const ChannelModel& m) {
    return std::visit(overloaded{
                          [&](const BuildingPlos&) { return p_los_building(g, m.env); },
                          [&](const ThreeGppPlos&) { return p_los_3gpp(g.d_h, g.h_uav, slice_for(g, m)); },
                          [](const ConstantPlos& c) {
                              uavnet::detail::require(c.p >= 0.0 && c.p <= 1.0, "constant LOS probability must lie in [0, 1]");
                              return c.p;
                          },
                      },
                      model);
}

} // namespace detail

/// Probability that the link is LOS under `m`.
inline double los_probability(const LinkGeometry& g, const ChannelModel& m) {
    return std::visit(detail::overloaded{
                          [](const FreeSpace&) { return 1.0; },
                          [](const LogDistance&) { return 1.0; },
                          [&](const ThreeGppRural&) { return p_los_3gpp(g.d_h, g.h_uav, detail::slice_for(g, m)); },
                          [&](const LosNlosAveraged& a) { return detail::plos_of(a.plos, g, m); },
                      },
                      m.path_loss);
}

/// Path loss conditioned on the LOS state (dB), including the additional loss term.
inline double path_loss_db(const LinkGeometry& g, const ChannelModel& m, bool los) {
    const double pl = std::visit(detail::overloaded{
                                     [&](const LosNlosAveraged& a) {
                                         return detail::basic_pl_db(los ? a.los : a.nlos, g, m, los);
                                     },
                                     [&](const auto& s) { return detail::basic_pl_db(BasicPathLoss{s}, g, m, los); },
                                 },
                                 m.path_loss);
    return pl + m.additional_loss_db;
}

/// LOS-probability weighted path loss (dB).
inline double mean_path_loss_db(const LinkGeometry& g, const ChannelModel& m) {
    const double p = los_probability(g, m);
    if (p >= 1.0) return path_loss_db(g, m, true);
    if (p <= 0.0) return path_loss_db(g, m, false);
    AveragingDomain domain = AveragingDomain::Db;
    if (const auto* a = std::get_if<LosNlosAveraged>(&m.path_loss)) domain = a->domain;
    return averaged_pl_db(path_loss_db(g, m, true), path_loss_db(g, m, false), p, domain);
}

/// Shadowing standard deviation (dB) for the given LOS state.
inline double shadowing_sigma_db(const LinkGeometry& g, const ChannelModel& m, bool los) {
    return std::visit(detail::overloaded{
                          [](const ShadowingNone&) { return 0.0; },
                          [&](const ShadowingFixed& f) { return los ? f.los_db : f.nlos_db; },
                          [&](const ShadowingFromSpec&) {
                              return std::visit(detail::overloaded{
                                                    [&](const LosNlosAveraged& a) {
                                                        return detail::basic_sigma_db(los ? a.los : a.nlos, g, m, los);
                                                    },
                                                    [&](const auto& s) {
                                                        return detail::basic_sigma_db(BasicPathLoss{s}, g, m, los);
                                                    },
                                                },
                                                m.path_loss);
                          },
                      },
                      m.shadowing);
}

/// One realization of the total link loss. Draw order: LOS state, shadowing, fading.
inline LinkLossSample sample_link_loss_db(const LinkGeometry& g, const ChannelModel& m, numerics::RngStream& rng) {
    const double p = los_probability(g, m);
    const bool los = p >= 1.0 ? true : (p <= 0.0 ? false : rng.bernoulli(p));
    double loss = path_loss_db(g, m, los);
    loss += numerics::sample_shadowing_db(shadowing_sigma_db(g, m, los), rng);
    const auto& fading = los ? m.fading_los : m.fading_nlos;
    if (fading) loss -= linear_to_db(numerics::sample_fading(*fading, rng));
    return {loss, los};
}

/// Same as above with one fading model for both LOS states.
inline LinkLossSample sample_link_loss_db(const LinkGeometry& g, ChannelModel m, const numerics::FadingModel& fading,
                                          numerics::RngStream& rng) {
    m.fading_los = fading;
    m.fading_nlos = fading;
    return sample_link_loss_db(g, m, rng);
}

} // namespace uavnet::channel
