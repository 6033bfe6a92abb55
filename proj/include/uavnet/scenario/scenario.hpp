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

// Scenario files: one JSON object per run naming a command and the blocks it
// needs. Blocks hold values in file units (degrees, dB, dBm) and convert to the
// module configuration types on demand. Every block is described once by a
// `describe(ar, block)` field list shared by the reader and the writer, so
// parse -> serialize -> parse is a fixpoint. Unknown keys are rejected with
// their dotted key path.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "uavnet/abs/abs.hpp"
#include "uavnet/aue/metrics.hpp"
#include "uavnet/aue/network.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/error.hpp"
#include "uavnet/localization/localization.hpp"
#include "uavnet/mapsim/heightmap.hpp"
#include "uavnet/mapsim/simulator.hpp"

namespace uavnet::scenario {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Archives

class Reader;
class Writer;

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};
template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

namespace detail {

inline std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

template <class T>
void read_value(const json& j, const std::string& path, T& v);

template <class T>
json write_value(const T& v);

} // namespace detail

class Reader {
public:
    static constexpr bool reading = true;

    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw config_error(path_, "expected an object");
    }

    template <class T>
    void operator()(const char* key, T& v) {
        used_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return;
        detail::read_value(*it, detail::join(path_, key), v);
    }

    void finish() const {
        for (const auto& item : j_.items())
            if (!used_.count(item.key())) throw config_error(detail::join(path_, item.key()), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string, std::less<>> used_;
};

class Writer {
public:
    static constexpr bool reading = false;
    json out = json::object();

    template <class T>
    void operator()(const char* key, T& v) {
        if constexpr (is_optional<T>::value) {
            if (!v) return;
            out[key] = detail::write_value(*v);
        } else {
            out[key] = detail::write_value(v);
        }
    }
};

namespace detail {

template <class T>
void read_value(const json& j, const std::string& path, T& v) {
    if constexpr (std::is_same_v<T, bool>) {
        if (!j.is_boolean()) throw config_error(path, "expected true or false");
        v = j.get<bool>();
    } else if constexpr (std::is_same_v<T, double>) {
        if (!j.is_number()) throw config_error(path, "expected a number");
        v = j.get<double>();
    } else if constexpr (std::is_same_v<T, int>) {
        if (!j.is_number_integer() || j.get<std::int64_t>() < INT32_MIN || j.get<std::int64_t>() > INT32_MAX)
            throw config_error(path, "expected an integer");
        v = j.get<int>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!j.is_number_unsigned()) throw config_error(path, "expected a non-negative integer");
        v = j.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!j.is_string()) throw config_error(path, "expected a string");
        v = j.get<std::string>();
    } else if constexpr (is_optional<T>::value) {
        if (j.is_null()) {
            v.reset();
        } else {
            typename T::value_type inner{};
            if (v) inner = *v;
            read_value(j, path, inner);
            v = std::move(inner);
        }
    } else if constexpr (is_vector<T>::value) {
        if (!j.is_array()) throw config_error(path, "expected an array");
        T out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            typename T::value_type e{};
            read_value(j[i], path + "[" + std::to_string(i) + "]", e);
            out.push_back(std::move(e));
        }
        v = std::move(out);
    } else {
        Reader r(j, path);
        describe(r, v);
        r.finish();
    }
}

template <class T>
json write_value(const T& v) {
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, double> || std::is_same_v<T, int> ||
                  std::is_same_v<T, std::uint64_t> || std::is_same_v<T, std::string>) {
        return json(v);
    } else if constexpr (is_optional<T>::value) {
        return v ? write_value(*v) : json(nullptr);
    } else if constexpr (is_vector<T>::value) {
        json a = json::array();
        for (const auto& e : v) a.push_back(write_value(e));
        return a;
    } else {
        Writer w;
        describe(w, const_cast<T&>(v));
        return w.out;
    }
}

template <class E, std::size_t N>
E parse_enum(const std::string& s, const std::pair<E, std::string_view> (&table)[N], const std::string& path) {
    std::string options;
    for (const auto& [e, name] : table) {
        if (name == s) return e;
        options += (options.empty() ? "" : ", ") + std::string(name);
    }
    throw config_error(path, "unknown value '" + s + "' (expected one of: " + options + ")");
}

/// Runs `fn`, rethrowing module errors as config errors located at `path`.
template <class F>
auto located(const std::string& path, F&& fn) {
    try {
        return fn();
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(path, e.what());
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Shared blocks

/// Preset by kind; any set field overrides the preset value.
struct EnvironmentBlock {
    std::string kind = "urban";
    std::optional<double> varsigma, xi, omega, mean_building_height_m, street_width_m;
};

template <class Ar>
void describe(Ar& ar, EnvironmentBlock& b) {
    ar("kind", b.kind);
    ar("varsigma", b.varsigma);
    ar("xi", b.xi);
    ar("omega", b.omega);
    ar("mean_building_height_m", b.mean_building_height_m);
    ar("street_width_m", b.street_width_m);
}

inline channel::Environment to_environment(const EnvironmentBlock& b, const std::string& path) {
    const auto kind = channel::environment_kind_from_string(b.kind);
    if (!kind) throw config_error(detail::join(path, "kind"), "unknown environment kind '" + b.kind + "'");
    auto env = channel::environment_preset(*kind);
    if (b.varsigma) env.varsigma = *b.varsigma;
    if (b.xi) env.xi = *b.xi;
    if (b.omega) env.omega = *b.omega;
    if (b.mean_building_height_m) env.mean_building_height = *b.mean_building_height_m;
    if (b.street_width_m) env.street_width = *b.street_width_m;
    detail::located(path, [&] { env.validate(); return 0; });
    return env;
}

// ---------------------------------------------------------------------------
// channel-table

struct ChannelTableBlock {
    EnvironmentBlock environment;
    double carrier_hz = 2.0e9;
    double bs_height_m = 25.0;
    std::vector<double> heights_m{1.5, 10.0, 22.5, 50.0, 100.0, 200.0, 300.0};
    std::vector<double> distances_m{10.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0, 4000.0};
};

template <class Ar>
void describe(Ar& ar, ChannelTableBlock& b) {
    ar("environment", b.environment);
    ar("carrier_hz", b.carrier_hz);
    ar("bs_height_m", b.bs_height_m);
    ar("heights_m", b.heights_m);
    ar("distances_m", b.distances_m);
}

inline void validate(const ChannelTableBlock& b, const std::string& path) {
    to_environment(b.environment, detail::join(path, "environment"));
    if (!(b.carrier_hz > 0.0)) throw config_error(detail::join(path, "carrier_hz"), "must be > 0");
    if (!(b.bs_height_m >= 0.0)) throw config_error(detail::join(path, "bs_height_m"), "must be >= 0");
    if (b.heights_m.empty()) throw config_error(detail::join(path, "heights_m"), "must be nonempty");
    if (b.distances_m.empty()) throw config_error(detail::join(path, "distances_m"), "must be nonempty");
    for (double h : b.heights_m)
        if (!(h >= 0.0)) throw config_error(detail::join(path, "heights_m"), "heights must be >= 0");
    for (double d : b.distances_m)
        if (!(d >= 0.0)) throw config_error(detail::join(path, "distances_m"), "distances must be >= 0");
}

// ---------------------------------------------------------------------------
// aue network

struct LogDistanceBlock {
    std::optional<double> lambda0_db;
    double d0_m = 1.0;
    double eta = 2.0;
    double sigma_db = 0.0;
};

template <class Ar>
void describe(Ar& ar, LogDistanceBlock& b) {
    ar("lambda0_db", b.lambda0_db);
    ar("d0_m", b.d0_m);
    ar("eta", b.eta);
    ar("sigma_db", b.sigma_db);
}

struct FadingBlock {
    std::string model = "nakagami"; ///< none, rayleigh, rician, nakagami
    int m = 1;
    double k_db = 0.0;
};

template <class Ar>
void describe(Ar& ar, FadingBlock& b) {
    ar("model", b.model);
    ar("m", b.m);
    ar("k_db", b.k_db);
}

inline std::optional<numerics::FadingModel> to_fading(const FadingBlock& b, const std::string& path) {
    enum class F { None, Rayleigh, Rician, Nakagami };
    static constexpr std::pair<F, std::string_view> table[] = {
        {F::None, "none"}, {F::Rayleigh, "rayleigh"}, {F::Rician, "rician"}, {F::Nakagami, "nakagami"}};
    std::optional<numerics::FadingModel> out;
    switch (detail::parse_enum(b.model, table, detail::join(path, "model"))) {
    case F::None: break;
    case F::Rayleigh: out = numerics::Rayleigh{}; break;
    case F::Rician: out = numerics::Rician{db_to_linear(b.k_db)}; break;
    case F::Nakagami: out = numerics::Nakagami{b.m}; break;
    }
    if (out) detail::located(path, [&] { numerics::validate(*out); return 0; });
    return out;
}

struct UavAntennaBlock {
    std::string type = "omni"; ///< omni or cone
    double gain_dbi = 0.0;     ///< omni only
    double phi_b_deg = 60.0;   ///< cone opening angle
    double phi_t_deg = 0.0;    ///< cone tilt from nadir
    double azimuth_deg = 0.0;  ///< bearing of the tilt
};

template <class Ar>
void describe(Ar& ar, UavAntennaBlock& b) {
    ar("type", b.type);
    ar("gain_dbi", b.gain_dbi);
    ar("phi_b_deg", b.phi_b_deg);
    ar("phi_t_deg", b.phi_t_deg);
    ar("azimuth_deg", b.azimuth_deg);
}

struct SectorBlock {
    double max_gain_dbi = 10.0;
    double sidelobe_floor_db = -10.0;
    double beamwidth_deg = 65.0;
    std::optional<double> vertical_beamwidth_deg;
    double electrical_tilt_deg = 8.0;
    double mechanical_tilt_deg = 0.0;
    bool horizontally_omni = true;
};

template <class Ar>
void describe(Ar& ar, SectorBlock& b) {
    ar("max_gain_dbi", b.max_gain_dbi);
    ar("sidelobe_floor_db", b.sidelobe_floor_db);
    ar("beamwidth_deg", b.beamwidth_deg);
    ar("vertical_beamwidth_deg", b.vertical_beamwidth_deg);
    ar("electrical_tilt_deg", b.electrical_tilt_deg);
    ar("mechanical_tilt_deg", b.mechanical_tilt_deg);
    ar("horizontally_omni", b.horizontally_omni);
}

inline SectorAntenna to_sector(const SectorBlock& b, const std::string& path) {
    SectorAntenna a;
    a.max_gain_dbi = b.max_gain_dbi;
    a.sidelobe_floor_db = b.sidelobe_floor_db;
    a.beamwidth_3db = deg_to_rad(b.beamwidth_deg);
    if (b.vertical_beamwidth_deg) a.vertical_beamwidth_3db = deg_to_rad(*b.vertical_beamwidth_deg);
    a.electrical_tilt = deg_to_rad(b.electrical_tilt_deg);
    a.mechanical_tilt = deg_to_rad(b.mechanical_tilt_deg);
    a.horizontally_omni = b.horizontally_omni;
    detail::located(path, [&] { a.validate(); return 0; });
    return a;
}

struct AueBlock {
    double bs_density_per_km2 = 5.0;
    double bs_height_m = 3.0;
    double p_tx_w = 40.0;
    double bandwidth_hz = 20.0e6;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    std::optional<double> noise_power_dbm; ///< overrides density, bandwidth and figure
    std::optional<double> target_rate_bps; ///< overrides threshold_db
    double threshold_db = 0.0;
    double carrier_hz = 2.0e9;
    LogDistanceBlock path_los{std::nullopt, 1.0, 2.09, 0.0};
    LogDistanceBlock path_nlos{std::nullopt, 1.0, 3.75, 0.0};
    FadingBlock fading_los{"nakagami", 3, 0.0};
    FadingBlock fading_nlos{"nakagami", 1, 0.0};
    UavAntennaBlock uav_antenna;
    std::string steering = "fixed"; ///< fixed, azimuth_to_serving, axis_to_serving
    SectorBlock bs_antenna;
    int sectors_per_site = 1;
    EnvironmentBlock environment;
    double aue_ratio = 0.5;
    double ground_ue_height_m = 1.5;
    double region_radius_m = 3000.0;
    int trials = 2000;
};

template <class Ar>
void describe(Ar& ar, AueBlock& b) {
    ar("bs_density_per_km2", b.bs_density_per_km2);
    ar("bs_height_m", b.bs_height_m);
    ar("p_tx_w", b.p_tx_w);
    ar("bandwidth_hz", b.bandwidth_hz);
    ar("noise_density_dbm_hz", b.noise_density_dbm_hz);
    ar("noise_figure_db", b.noise_figure_db);
    ar("noise_power_dbm", b.noise_power_dbm);
    ar("target_rate_bps", b.target_rate_bps);
    ar("threshold_db", b.threshold_db);
    ar("carrier_hz", b.carrier_hz);
    ar("path_los", b.path_los);
    ar("path_nlos", b.path_nlos);
    ar("fading_los", b.fading_los);
    ar("fading_nlos", b.fading_nlos);
    ar("uav_antenna", b.uav_antenna);
    ar("steering", b.steering);
    ar("bs_antenna", b.bs_antenna);
    ar("sectors_per_site", b.sectors_per_site);
    ar("environment", b.environment);
    ar("aue_ratio", b.aue_ratio);
    ar("ground_ue_height_m", b.ground_ue_height_m);
    ar("region_radius_m", b.region_radius_m);
    ar("trials", b.trials);
}

inline aue::AueNetworkConfig to_aue_config(const AueBlock& b, const std::string& path) {
    using detail::join;
    aue::AueNetworkConfig c;
    c.bs_density_lambda = b.bs_density_per_km2;
    c.bs_height_h_g = b.bs_height_m;
    c.p_tx = b.p_tx_w;
    c.bw = b.bandwidth_hz;
    c.noise_n0 = dbm_to_watt(b.noise_density_dbm_hz);
    c.noise_figure_db = b.noise_figure_db;
    if (b.noise_power_dbm) c.noise_power_override_w = dbm_to_watt(*b.noise_power_dbm);
    c.target_rate_r_tx = b.target_rate_bps;
    c.threshold_T = db_to_linear(b.threshold_db);
    if (!(b.carrier_hz > 0.0)) throw config_error(join(path, "carrier_hz"), "must be > 0");
    c.carrier = Carrier{b.carrier_hz};
    c.path_los = {b.path_los.lambda0_db, b.path_los.d0_m, b.path_los.eta, b.path_los.sigma_db};
    c.path_nlos = {b.path_nlos.lambda0_db, b.path_nlos.d0_m, b.path_nlos.eta, b.path_nlos.sigma_db};
    c.fading_los = to_fading(b.fading_los, join(path, "fading_los"));
    c.fading_nlos = to_fading(b.fading_nlos, join(path, "fading_nlos"));
    if (b.uav_antenna.type == "omni") {
        c.uav = OmniAntenna{b.uav_antenna.gain_dbi};
    } else if (b.uav_antenna.type == "cone") {
        c.uav = ConeAntenna{b.uav_antenna.phi_b_deg, deg_to_rad(b.uav_antenna.phi_t_deg),
                            deg_to_rad(b.uav_antenna.azimuth_deg)};
    } else {
        throw config_error(join(path, "uav_antenna.type"), "unknown antenna type '" + b.uav_antenna.type + "'");
    }
    static constexpr std::pair<aue::ConeSteering, std::string_view> steering[] = {
        {aue::ConeSteering::Fixed, "fixed"},
        {aue::ConeSteering::AzimuthToServing, "azimuth_to_serving"},
        {aue::ConeSteering::AxisToServing, "axis_to_serving"}};
    c.steering = detail::parse_enum(b.steering, steering, join(path, "steering"));
    c.sector = to_sector(b.bs_antenna, join(path, "bs_antenna"));
    c.sectors_per_site = b.sectors_per_site;
    c.env = to_environment(b.environment, join(path, "environment"));
    c.aue_ratio_rho = b.aue_ratio;
    c.ground_ue_height = b.ground_ue_height_m;
    c.region_radius = b.region_radius_m;
    if (b.trials < 100) throw config_error(join(path, "trials"), "at least 100 trials required");
    detail::located(path, [&] { c.validate(); return 0; });
    return c;
}

struct AueCoverageBlock {
    std::vector<double> heights_m{30.0, 60.0, 90.0, 120.0, 150.0, 200.0, 250.0, 300.0};
    std::vector<double> thresholds_db{-6.0, 0.0, 6.0};
};

template <class Ar>
void describe(Ar& ar, AueCoverageBlock& b) {
    ar("heights_m", b.heights_m);
    ar("thresholds_db", b.thresholds_db);
}

inline void validate(const AueCoverageBlock& b, const std::string& path) {
    if (b.heights_m.empty()) throw config_error(detail::join(path, "heights_m"), "must be nonempty");
    if (b.thresholds_db.empty()) throw config_error(detail::join(path, "thresholds_db"), "must be nonempty");
    for (double h : b.heights_m)
        if (!(h >= 0.0)) throw config_error(detail::join(path, "heights_m"), "heights must be >= 0");
}

struct AueSweepBlock {
    std::string axis = "altitude";  ///< altitude, density, phi_b, phi_t
    std::string metric = "capacity"; ///< capacity, coverage, mean_sinr, ase
    std::vector<double> grid{30.0, 60.0, 90.0, 120.0, 150.0, 200.0, 250.0, 300.0};
    double uav_height_m = 150.0;
    int k_nodes = 60;
};

template <class Ar>
void describe(Ar& ar, AueSweepBlock& b) {
    ar("axis", b.axis);
    ar("metric", b.metric);
    ar("grid", b.grid);
    ar("uav_height_m", b.uav_height_m);
    ar("k_nodes", b.k_nodes);
}

inline constexpr std::pair<aue::SweepAxis, std::string_view> sweep_axes[] = {
    {aue::SweepAxis::Altitude, "altitude"},
    {aue::SweepAxis::Density, "density"},
    {aue::SweepAxis::PhiB, "phi_b"},
    {aue::SweepAxis::PhiT, "phi_t"}};
inline constexpr std::pair<aue::SweepMetric, std::string_view> sweep_metrics[] = {
    {aue::SweepMetric::Capacity, "capacity"},
    {aue::SweepMetric::Coverage, "coverage"},
    {aue::SweepMetric::MeanSinr, "mean_sinr"},
    {aue::SweepMetric::Ase, "ase"}};

inline aue::SweepSpec to_sweep_spec(const AueSweepBlock& b, const std::string& path) {
    aue::SweepSpec s;
    s.axis = detail::parse_enum(b.axis, sweep_axes, detail::join(path, "axis"));
    s.metric = detail::parse_enum(b.metric, sweep_metrics, detail::join(path, "metric"));
    if (b.grid.empty()) throw config_error(detail::join(path, "grid"), "must be nonempty");
    s.grid = b.grid;
    s.uav_h = b.uav_height_m;
    if (b.k_nodes < 50) throw config_error(detail::join(path, "k_nodes"), "at least 50 nodes required");
    s.k_nodes = b.k_nodes;
    return s;
}

// ---------------------------------------------------------------------------
// abs-design

struct KnotBlock {
    double theta_deg = 0.0;
    double k_db = 0.0;
    double eta = 2.0;
};

template <class Ar>
void describe(Ar& ar, KnotBlock& b) {
    ar("theta_deg", b.theta_deg);
    ar("k_db", b.k_db);
    ar("eta", b.eta);
}

struct AbsBlock {
    std::vector<KnotBlock> profile{{0.0, 0.0, 3.5}, {90.0, 15.0, 2.0}};
    double antenna_gain_dbi = 0.0;
    double noise_dbm = -100.0;
    double threshold_db = 0.0;
    double epsilon = 0.1;
    std::vector<double> coverage_radii_m{250.0, 500.0, 1000.0};
    std::vector<double> heights_m{50.0, 100.0, 200.0, 300.0, 500.0, 750.0, 1000.0, 1500.0, 2000.0};
};

template <class Ar>
void describe(Ar& ar, AbsBlock& b) {
    ar("profile", b.profile);
    ar("antenna_gain_dbi", b.antenna_gain_dbi);
    ar("noise_dbm", b.noise_dbm);
    ar("threshold_db", b.threshold_db);
    ar("epsilon", b.epsilon);
    ar("coverage_radii_m", b.coverage_radii_m);
    ar("heights_m", b.heights_m);
}

inline abs_net::AbsProfile to_abs_profile(const AbsBlock& b, const std::string& path) {
    abs_net::AbsProfile p;
    p.knots.clear();
    for (const auto& k : b.profile) p.knots.push_back({deg_to_rad(k.theta_deg), k.k_db, k.eta});
    p.antenna_gain = db_to_linear(b.antenna_gain_dbi);
    p.noise_w = dbm_to_watt(b.noise_dbm);
    p.threshold = db_to_linear(b.threshold_db);
    detail::located(path, [&] { p.validate(); return 0; });
    if (!(b.epsilon > 0.0 && b.epsilon < 1.0)) throw config_error(detail::join(path, "epsilon"), "must lie in (0, 1)");
    if (b.coverage_radii_m.empty()) throw config_error(detail::join(path, "coverage_radii_m"), "must be nonempty");
    if (b.heights_m.empty()) throw config_error(detail::join(path, "heights_m"), "must be nonempty");
    for (double r : b.coverage_radii_m)
        if (!(r > 0.0)) throw config_error(detail::join(path, "coverage_radii_m"), "radii must be > 0");
    for (double h : b.heights_m)
        if (!(h > 0.0)) throw config_error(detail::join(path, "heights_m"), "heights must be > 0");
    return p;
}

// ---------------------------------------------------------------------------
// localize

struct ElevationChannelBlock {
    double a_los = 10.0, b_los = 2.0;
    double a_nlos = 30.0, b_nlos = 1.7;
    double a_o = 47.0, b_o = 20.0;
    std::string plos_form = "sigmoid"; ///< sigmoid (theta in rad) or shifted_sigmoid (theta in deg)
    double eta_los = 2.0;
    double eta_nlos = 3.0;
};

template <class Ar>
void describe(Ar& ar, ElevationChannelBlock& b) {
    ar("a_los", b.a_los);
    ar("b_los", b.b_los);
    ar("a_nlos", b.a_nlos);
    ar("b_nlos", b.b_nlos);
    ar("a_o", b.a_o);
    ar("b_o", b.b_o);
    ar("plos_form", b.plos_form);
    ar("eta_los", b.eta_los);
    ar("eta_nlos", b.eta_nlos);
}

struct LocalizeBlock {
    std::vector<double> heights_m{200.0};
    std::vector<double> radii_m{120.0};
    std::vector<int> m_points{3};
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    double hover_time_s = 5.0;
    int n_users = 100;
    double user_area_radius_m = 200.0;
    double frequency_hz = 2.0e9;
    std::string link_state = "random"; ///< random, los, nlos
    ElevationChannelBlock channel;
};

template <class Ar>
void describe(Ar& ar, LocalizeBlock& b) {
    ar("heights_m", b.heights_m);
    ar("radii_m", b.radii_m);
    ar("m_points", b.m_points);
    ar("center_x_m", b.center_x_m);
    ar("center_y_m", b.center_y_m);
    ar("hover_time_s", b.hover_time_s);
    ar("n_users", b.n_users);
    ar("user_area_radius_m", b.user_area_radius_m);
    ar("frequency_hz", b.frequency_hz);
    ar("link_state", b.link_state);
    ar("channel", b.channel);
}

inline constexpr std::pair<localization::LinkState, std::string_view> link_states[] = {
    {localization::LinkState::Random, "random"},
    {localization::LinkState::ForceLos, "los"},
    {localization::LinkState::ForceNlos, "nlos"}};

inline localization::ElevationChannel to_elevation_channel(const ElevationChannelBlock& b, const std::string& path) {
    static constexpr std::pair<localization::PlosForm, std::string_view> forms[] = {
        {localization::PlosForm::Sigmoid, "sigmoid"}, {localization::PlosForm::ShiftedSigmoid, "shifted_sigmoid"}};
    localization::ElevationChannel c;
    c.a_los = b.a_los, c.b_los = b.b_los, c.a_nlos = b.a_nlos, c.b_nlos = b.b_nlos, c.a_o = b.a_o, c.b_o = b.b_o;
    c.plos_form = detail::parse_enum(b.plos_form, forms, detail::join(path, "plos_form"));
    c.path_los.eta = b.eta_los;
    c.path_nlos.eta = b.eta_nlos;
    detail::located(path, [&] { c.validate(); return 0; });
    return c;
}

inline void validate(const LocalizeBlock& b, const std::string& path) {
    using detail::join;
    to_elevation_channel(b.channel, join(path, "channel"));
    detail::parse_enum(b.link_state, link_states, join(path, "link_state"));
    if (b.heights_m.empty() || b.radii_m.empty() || b.m_points.empty())
        throw config_error(path, "heights_m, radii_m and m_points must be nonempty");
    for (double h : b.heights_m)
        for (double r : b.radii_m)
            for (int m : b.m_points)
                detail::located(path, [&] {
                    localization::AnchorPlan{m, r, h, {b.center_x_m, b.center_y_m, 0.0}, b.hover_time_s}.validate();
                    return 0;
                });
    detail::located(path, [&] {
        localization::LocalizationScenario{b.n_users, b.user_area_radius_m, b.frequency_hz, 1}.validate();
        return 0;
    });
}

// ---------------------------------------------------------------------------
// mapsim

struct CityBlock {
    double width_m = 1200.0;
    double height_m = 1200.0;
    double cellsize_m = 4.0;
    double varsigma = 0.5;
    double xi = 300.0;
    double omega = 20.0;
    std::uint64_t seed = 3;
};

template <class Ar>
void describe(Ar& ar, CityBlock& b) {
    ar("width_m", b.width_m);
    ar("height_m", b.height_m);
    ar("cellsize_m", b.cellsize_m);
    ar("varsigma", b.varsigma);
    ar("xi", b.xi);
    ar("omega", b.omega);
    ar("seed", b.seed);
}

inline mapsim::CityConfig to_city(const CityBlock& b, const std::string& path) {
    mapsim::CityConfig c{b.width_m, b.height_m, b.cellsize_m, b.varsigma, b.xi, b.omega, b.seed};
    detail::located(path, [&] { c.validate(); return 0; });
    return c;
}

/// A height-map file when `file` is set, otherwise the synthetic city.
struct MapSourceBlock {
    std::optional<std::string> file;
    CityBlock synthetic;
};

template <class Ar>
void describe(Ar& ar, MapSourceBlock& b) {
    ar("file", b.file);
    ar("synthetic", b.synthetic);
}

struct SiteDefaultsBlock {
    double p_tx_dbm = 43.0;
    double azimuth0_deg = 0.0;
    double tilt_deg = 8.0;
    double max_gain_dbi = 17.0;
    double beamwidth_deg = 65.0;
};

template <class Ar>
void describe(Ar& ar, SiteDefaultsBlock& b) {
    ar("p_tx_dbm", b.p_tx_dbm);
    ar("azimuth0_deg", b.azimuth0_deg);
    ar("tilt_deg", b.tilt_deg);
    ar("max_gain_dbi", b.max_gain_dbi);
    ar("beamwidth_deg", b.beamwidth_deg);
}

/// A site CSV when `file` is set, otherwise rooftop sites on a square lattice.
struct SitesBlock {
    std::optional<std::string> file;
    double spacing_m = 300.0;
    double search_m = 40.0;
    int sectors = 3;
    SiteDefaultsBlock defaults;
};

template <class Ar>
void describe(Ar& ar, SitesBlock& b) {
    ar("file", b.file);
    ar("spacing_m", b.spacing_m);
    ar("search_m", b.search_m);
    ar("sectors", b.sectors);
    ar("defaults", b.defaults);
}

struct MapsimBlock {
    MapSourceBlock map;
    SitesBlock sites;
    std::string path_loss = "slice"; ///< slice or log_distance
    EnvironmentBlock environment{"dense_urban"};
    double eta_los = 2.0;
    double eta_nlos = 3.5;
    double carrier_hz = 1.8e9;
    double ue_gain_dbi = 2.15;
    double bandwidth_hz = 20.0e6;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    std::optional<double> noise_dbm;
    std::string los_method = "exact"; ///< exact or sampled
    bool shadowing = false;
    int step_cells = 2;
    std::vector<double> heights_m{1.5, 10.0, 20.0, 30.0, 40.0, 60.0, 80.0, 100.0, 150.0, 200.0, 300.0};
    double threshold_db = -6.0;
    bool write_rasters = true;
};

template <class Ar>
void describe(Ar& ar, MapsimBlock& b) {
    ar("map", b.map);
    ar("sites", b.sites);
    ar("path_loss", b.path_loss);
    ar("environment", b.environment);
    ar("eta_los", b.eta_los);
    ar("eta_nlos", b.eta_nlos);
    ar("carrier_hz", b.carrier_hz);
    ar("ue_gain_dbi", b.ue_gain_dbi);
    ar("bandwidth_hz", b.bandwidth_hz);
    ar("noise_density_dbm_hz", b.noise_density_dbm_hz);
    ar("noise_figure_db", b.noise_figure_db);
    ar("noise_dbm", b.noise_dbm);
    ar("los_method", b.los_method);
    ar("shadowing", b.shadowing);
    ar("step_cells", b.step_cells);
    ar("heights_m", b.heights_m);
    ar("threshold_db", b.threshold_db);
    ar("write_rasters", b.write_rasters);
}

inline mapsim::MapSimConfig to_mapsim_config(const MapsimBlock& b, std::uint64_t seed, unsigned threads,
                                             const std::string& path) {
    using detail::join;
    mapsim::MapSimConfig c;
    if (b.path_loss == "slice") c.path_loss = mapsim::SlicePathLoss{to_environment(b.environment, join(path, "environment"))};
    else if (b.path_loss == "log_distance") c.path_loss = mapsim::LogDistancePathLoss{b.eta_los, b.eta_nlos};
    else throw config_error(join(path, "path_loss"), "unknown path-loss model '" + b.path_loss + "'");
    if (!(b.carrier_hz > 0.0)) throw config_error(join(path, "carrier_hz"), "must be > 0");
    c.carrier = Carrier{b.carrier_hz};
    c.ue_gain_dbi = b.ue_gain_dbi;
    c.bandwidth_hz = b.bandwidth_hz;
    c.noise_density_dbm_hz = b.noise_density_dbm_hz;
    c.noise_figure_db = b.noise_figure_db;
    c.noise_dbm_override = b.noise_dbm;
    static constexpr std::pair<mapsim::LosMethod, std::string_view> methods[] = {
        {mapsim::LosMethod::ExactCells, "exact"}, {mapsim::LosMethod::SampledBilinear, "sampled"}};
    c.los_method = detail::parse_enum(b.los_method, methods, join(path, "los_method"));
    c.shadowing = b.shadowing;
    c.shadowing_seed = seed;
    c.step_cells = b.step_cells;
    c.threads = threads;
    detail::located(path, [&] { c.validate(); return 0; });
    if (b.heights_m.empty()) throw config_error(join(path, "heights_m"), "must be nonempty");
    for (double h : b.heights_m)
        if (!(h >= 0.0)) throw config_error(join(path, "heights_m"), "heights must be >= 0");
    if (!b.map.file) to_city(b.map.synthetic, join(path, "map.synthetic"));
    if (b.sites.sectors < 1) throw config_error(join(path, "sites.sectors"), "must be >= 1");
    if (!(b.sites.spacing_m > 0.0)) throw config_error(join(path, "sites.spacing_m"), "must be > 0");
    return c;
}

// ---------------------------------------------------------------------------
// Scenario

enum class Command { ChannelTable, AueCoverage, AueSweep, AbsDesign, Localize, Mapsim };

inline constexpr std::pair<Command, std::string_view> commands[] = {
    {Command::ChannelTable, "channel-table"}, {Command::AueCoverage, "aue-coverage"},
    {Command::AueSweep, "aue-sweep"},         {Command::AbsDesign, "abs-design"},
    {Command::Localize, "localize"},          {Command::Mapsim, "mapsim"}};

inline std::string_view to_string(Command c) {
    for (const auto& [cmd, name] : commands)
        if (cmd == c) return name;
    return "unknown";
}

struct Scenario {
    std::string command = "channel-table";
    std::uint64_t seed = 1;
    std::string output = "out"; ///< directory, relative to the working directory
    std::optional<ChannelTableBlock> channel_table;
    std::optional<AueBlock> aue;
    std::optional<AueCoverageBlock> aue_coverage;
    std::optional<AueSweepBlock> aue_sweep;
    std::optional<AbsBlock> abs;
    std::optional<LocalizeBlock> localize;
    std::optional<MapsimBlock> mapsim;
    /// Directory that relative file references resolve against; not serialized.
    std::filesystem::path base_dir;

    Command parsed_command() const { return detail::parse_enum(command, commands, "command"); }

    std::filesystem::path resolve(const std::string& file) const {
        const std::filesystem::path p(file);
        return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    }
};

template <class Ar>
void describe(Ar& ar, Scenario& s) {
    ar("command", s.command);
    ar("seed", s.seed);
    ar("output", s.output);
    ar("channel_table", s.channel_table);
    ar("aue", s.aue);
    ar("aue_coverage", s.aue_coverage);
    ar("aue_sweep", s.aue_sweep);
    ar("abs", s.abs);
    ar("localize", s.localize);
    ar("mapsim", s.mapsim);
}

/// Checks that the command's blocks are present and convert cleanly.
inline void validate(const Scenario& s) {
    auto need = [](const auto& block, const char* name) {
        if (!block) throw config_error(name, "missing block (an empty object selects the defaults)");
    };
    switch (s.parsed_command()) {
    case Command::ChannelTable:
        need(s.channel_table, "channel_table");
        validate(*s.channel_table, "channel_table");
        break;
    case Command::AueCoverage:
        need(s.aue, "aue");
        need(s.aue_coverage, "aue_coverage");
        to_aue_config(*s.aue, "aue");
        validate(*s.aue_coverage, "aue_coverage");
        break;
    case Command::AueSweep: {
        need(s.aue, "aue");
        need(s.aue_sweep, "aue_sweep");
        const auto cfg = to_aue_config(*s.aue, "aue");
        const auto spec = to_sweep_spec(*s.aue_sweep, "aue_sweep");
        if ((spec.axis == aue::SweepAxis::PhiB || spec.axis == aue::SweepAxis::PhiT) &&
            !std::holds_alternative<ConeAntenna>(cfg.uav))
            throw config_error("aue_sweep.axis", "beamwidth and tilt sweeps need aue.uav_antenna.type = cone");
        break;
    }
    case Command::AbsDesign:
        need(s.abs, "abs");
        to_abs_profile(*s.abs, "abs");
        break;
    case Command::Localize:
        need(s.localize, "localize");
        validate(*s.localize, "localize");
        break;
    case Command::Mapsim:
        need(s.mapsim, "mapsim");
        to_mapsim_config(*s.mapsim, s.seed, 1, "mapsim");
        break;
    }
}

/// Parses and validates scenario text. JSON syntax errors carry the line number.
inline Scenario parse_scenario(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw parse_error(std::string("scenario: ") + e.what(), line);
    }
    Scenario s;
    uavnet::scenario::detail::read_value(j, "", s);
    validate(s);
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario '" + path.string() + "'", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    auto s = parse_scenario(ss.str());
    s.base_dir = path.parent_path();
    return s;
}

/// Canonical JSON text: every field written, blocks in a fixed order.
inline std::string serialize_scenario(const Scenario& s) { return detail::write_value(s).dump(2) + "\n"; }

} // namespace uavnet::scenario
