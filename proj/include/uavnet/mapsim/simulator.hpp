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

// Map-driven sector simulator. LOS comes from the height map, the loss for the
// resulting LOS state from a path-loss law, and each sector's received power is
// P_tx + G_tx + G_rx - loss. The serving sector maximises SINR.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "uavnet/antenna/geometry.hpp"
#include "uavnet/antenna/sector.hpp"
#include "uavnet/channel/environment.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/channel/shadowing.hpp"
#include "uavnet/error.hpp"
#include "uavnet/mapsim/heightmap.hpp"
#include "uavnet/mapsim/los.hpp"
#include "uavnet/numerics/random.hpp"
#include "uavnet/parallel.hpp"
#include "uavnet/units.hpp"

namespace uavnet::mapsim {

inline constexpr double mast_above_roof_m = 5.0;

/// One row of a site list.
struct SiteRecord {
    double x = 0.0;
    double y = 0.0;
    double roof_h = 0.0;
    double p_tx_dbm = 43.0;
    double azimuth0_deg = 0.0; ///< bearing of the first sector, clockwise from north
    double tilt_deg = 8.0;     ///< electrical downtilt
    double max_gain_dbi = 17.0;
    double beamwidth_deg = 65.0;

    friend bool operator==(const SiteRecord&, const SiteRecord&) = default;
};

struct SectorSite {
    Position3D mast;
    double p_tx_dbm = 43.0;
    std::vector<SectorAntenna> sectors;
};

/// Mast 5 m above the roof carrying `n_sectors` sectors evenly spaced in azimuth.
inline SectorSite make_site(const SiteRecord& rec, int n_sectors = 3) {
    uavnet::detail::require(n_sectors >= 1, "site: at least one sector required");
    uavnet::detail::require(rec.roof_h >= 0.0 && std::isfinite(rec.roof_h), "site: roof height must be >= 0");
    uavnet::detail::require(std::isfinite(rec.p_tx_dbm), "site: transmit power must be finite");
    SectorSite s;
    s.mast = {rec.x, rec.y, rec.roof_h + mast_above_roof_m};
    s.p_tx_dbm = rec.p_tx_dbm;
    for (int k = 0; k < n_sectors; ++k) {
        SectorAntenna a;
        a.azimuth = std::fmod(deg_to_rad(rec.azimuth0_deg + 360.0 * k / n_sectors), 2.0 * pi);
        a.electrical_tilt = deg_to_rad(rec.tilt_deg);
        a.max_gain_dbi = rec.max_gain_dbi;
        a.beamwidth_3db = deg_to_rad(rec.beamwidth_deg);
        a.validate();
        s.sectors.push_back(a);
    }
    return s;
}

inline constexpr const char* site_csv_columns[] = {"x",           "y",        "roof_h",       "p_tx_dbm",
                                                    "azimuth0_deg", "tilt_deg", "max_gain_dbi", "beamwidth_deg"};

/// Site list with a header row naming the eight columns in any order.
inline std::vector<SiteRecord> read_sites_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r"), e = cell.find_last_not_of(" \t\r");
            out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
        }
        return out;
    };
    std::string line;
    std::size_t line_no = 0;
    std::vector<int> slot;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    if (line_no == 0 || line.find_first_not_of(" \t\r") == std::string::npos) throw parse_error("site list: empty file", 0);
    const auto head = split(line);
    for (const char* col : site_csv_columns) {
        const auto it = std::find(head.begin(), head.end(), col);
        if (it == head.end()) throw parse_error(std::string("site list: missing column '") + col + "'", line_no);
        slot.push_back(static_cast<int>(it - head.begin()));
    }
    for (const auto& h : head)
        if (std::find_if(std::begin(site_csv_columns), std::end(site_csv_columns), [&](const char* c) { return h == c; }) ==
            std::end(site_csv_columns))
            throw parse_error("site list: unknown column '" + h + "'", line_no);
    std::vector<SiteRecord> sites;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split(line);
        if (cells.size() != head.size())
            throw parse_error("site list: expected " + std::to_string(head.size()) + " fields, found " +
                                  std::to_string(cells.size()),
                              line_no);
        double v[8];
        for (int k = 0; k < 8; ++k) v[k] = detail::parse_number(cells[slot[k]], line_no);
        sites.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    return sites;
}

inline std::vector<SiteRecord> load_sites_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open site list '" + path + "'", 0);
    return read_sites_csv(in);
}

inline void write_sites_csv(std::ostream& out, const std::vector<SiteRecord>& sites) {
    for (int k = 0; k < 8; ++k) out << (k ? "," : "") << site_csv_columns[k];
    out << '\n';
    for (const auto& s : sites) {
        const double v[8] = {s.x, s.y, s.roof_h, s.p_tx_dbm, s.azimuth0_deg, s.tilt_deg, s.max_gain_dbi, s.beamwidth_deg};
        for (int k = 0; k < 8; ++k) out << (k ? "," : "") << detail::format_shortest(v[k]);
        out << '\n';
    }
}

/// 3GPP-style slice laws from the channel module, with the slice chosen by the
/// receiver height. Horizontal distances are clamped into the [10 m, 5 km] window
/// where both ground-slice laws apply.
struct SlicePathLoss {
    channel::Environment env = channel::environment_preset(channel::EnvironmentKind::Urban);
};

/// Log-distance laws referenced to free space at d0 = 1 m, one exponent per LOS state.
struct LogDistancePathLoss {
    double eta_los = 2.0;
    double eta_nlos = 3.5;
};

using MapPathLoss = std::variant<SlicePathLoss, LogDistancePathLoss>;

struct MapSimConfig {
    MapPathLoss path_loss = SlicePathLoss{};
    Carrier carrier{2.0e9};
    double ue_gain_dbi = 2.15;
    double bandwidth_hz = 20.0e6;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    std::optional<double> noise_dbm_override;
    LosMethod los_method = LosMethod::ExactCells;
    bool shadowing = false;
    std::uint64_t shadowing_seed = 1;
    int step_cells = 1;    ///< evaluate every step-th cell in each direction
    unsigned threads = 1;

    double noise_dbm() const {
        if (noise_dbm_override) return *noise_dbm_override;
        return noise_density_dbm_hz + linear_to_db(bandwidth_hz) + noise_figure_db;
    }

    void validate() const {
        uavnet::detail::require(carrier.frequency_hz > 0.0, "mapsim: carrier frequency must be > 0");
        uavnet::detail::require(bandwidth_hz > 0.0, "mapsim: bandwidth must be > 0");
        uavnet::detail::require(step_cells >= 1, "mapsim: step_cells must be >= 1");
        uavnet::detail::require(std::isfinite(ue_gain_dbi), "mapsim: UE gain must be finite");
        if (const auto* ld = std::get_if<LogDistancePathLoss>(&path_loss))
            uavnet::detail::require(ld->eta_los > 0.0 && ld->eta_nlos > 0.0, "mapsim: path-loss exponents must be > 0");
        else
            std::get<SlicePathLoss>(path_loss).env.validate();
    }
};

/// Loss (dB) between a mast and a receiver for a given LOS state, without shadowing.
inline double map_link_loss_db(const Position3D& mast, const Position3D& rx, bool los, const MapSimConfig& cfg) {
    const double d_h = horizontal_distance(mast, rx);
    if (const auto* ld = std::get_if<LogDistancePathLoss>(&cfg.path_loss)) {
        const double d = std::max(std::hypot(d_h, mast.h - rx.h), 1.0);
        const double ref = 20.0 * std::log10(4.0 * pi / cfg.carrier.wavelength_m());
        return ref + 10.0 * (los ? ld->eta_los : ld->eta_nlos) * std::log10(d);
    }
    const auto& env = std::get<SlicePathLoss>(cfg.path_loss).env;
    const auto g = make_link_geometry(std::clamp(d_h, 10.0, 5000.0), rx.h, mast.h);
    const double f_ghz = cfg.carrier.frequency_hz * 1e-9;
    return channel::pl_3gpp_rural_db(g, f_ghz, env, los, channel::slice_of(rx.h, env));
}

namespace detail {

/// Shadowing for one site/cell pair. The high-altitude slice has no NLOS entry,
/// so it reuses the obstructed-slice NLOS value.
inline double shadowing_db(std::size_t site, std::size_t cell, const Position3D& mast, const Position3D& rx, bool los,
                           const MapSimConfig& cfg) {
    if (!cfg.shadowing) return 0.0;
    double sigma = 0.0;
    if (std::holds_alternative<LogDistancePathLoss>(cfg.path_loss)) {
        sigma = los ? 4.0 : 8.0;
    } else {
        const auto& env = std::get<SlicePathLoss>(cfg.path_loss).env;
        const auto slice = channel::slice_of(rx.h, env);
        const auto g = make_link_geometry(std::clamp(horizontal_distance(mast, rx), 10.0, 5000.0), rx.h, mast.h);
        sigma = slice == channel::PropagationSlice::HighAltitudeA2G && !los
                    ? 6.0
                    : channel::shadowing_sigma_db(slice, los, g, cfg.carrier.frequency_hz * 1e-9);
    }
    numerics::RngStream rng(cfg.shadowing_seed, cell);
    return sigma * rng.substream(site + 1).normal();
}

} // namespace detail

/// Received power (dBm) from sector `sector` of `site` at `rx`.
inline double received_power_dbm(const SectorSite& site, std::size_t sector, const Position3D& rx, const HeightMap& map,
                                 const MapSimConfig& cfg = {}) {
    uavnet::detail::require(sector < site.sectors.size(), "received_power_dbm: sector index out of range");
    const bool los = los_check(site.mast, rx, map, cfg.los_method);
    const auto [r, c] = map.cell_of(rx.x, rx.y);
    const double loss = map_link_loss_db(site.mast, rx, los, cfg) +
                        detail::shadowing_db(0, static_cast<std::size_t>(r) * map.ncols + c, site.mast, rx, los, cfg);
    return site.p_tx_dbm + bs_gain_db(site.sectors[sector], site.mast, rx) + cfg.ue_gain_dbi - loss;
}

/// Per-cell result raster. Row 0 is the northern edge, as in the height map.
struct SinrGrid {
    HeightMap geometry;             ///< extent and cell size of the evaluated raster; heights unused
    double height_m = 0.0;
    std::vector<double> sinr_db;    ///< +inf where there is neither noise nor interference
    std::vector<int> serving;       ///< global sector index (sites in order, sectors within a site)
    std::vector<std::uint8_t> los_sites; ///< number of sites in LOS, saturating at 255

    std::size_t size() const noexcept { return sinr_db.size(); }

    /// SINR raster in the height-map format; non-finite values become no-data.
    HeightMap sinr_raster() const {
        HeightMap m = geometry;
        m.heights.resize(sinr_db.size());
        for (std::size_t i = 0; i < sinr_db.size(); ++i) m.heights[i] = std::isfinite(sinr_db[i]) ? sinr_db[i] : m.nodata;
        return m;
    }

    HeightMap serving_raster() const {
        HeightMap m = geometry;
        m.heights.assign(serving.begin(), serving.end());
        return m;
    }
};

/// SINR at height `h_m` above the map datum over the (optionally decimated) grid.
inline SinrGrid sinr_grid(const std::vector<SectorSite>& sites, const HeightMap& map, double h_m,
                          const MapSimConfig& cfg = {}) {
    map.validate();
    cfg.validate();
    uavnet::detail::require(std::isfinite(h_m) && h_m >= 0.0, "sinr_grid: height must be finite and >= 0");
    std::size_t n_tx = 0;
    for (const auto& s : sites) {
        if (!map.contains(s.mast.x, s.mast.y)) throw domain_error("sinr_grid: site outside the map extent");
        n_tx += s.sectors.size();
    }
    uavnet::detail::require(n_tx >= 1, "sinr_grid: at least one sector required");
    const int step = cfg.step_cells;
    SinrGrid out;
    out.height_m = h_m;
    out.geometry.ncols = std::max(1, map.ncols / step);
    out.geometry.nrows = std::max(1, map.nrows / step);
    out.geometry.cellsize = map.cellsize * step;
    out.geometry.xllcorner = map.xllcorner;
    out.geometry.yllcorner = map.ytop() - out.geometry.nrows * out.geometry.cellsize;
    out.geometry.nodata = map.nodata;
    const std::size_t n = static_cast<std::size_t>(out.geometry.ncols) * out.geometry.nrows;
    out.sinr_db.assign(n, 0.0);
    out.serving.assign(n, -1);
    out.los_sites.assign(n, 0);
    const double noise_mw = std::pow(10.0, cfg.noise_dbm() / 10.0);

    parallel_for(static_cast<std::size_t>(out.geometry.nrows), cfg.threads, [&](std::size_t gr) {
        std::vector<double> p_mw(n_tx);
        for (int gc = 0; gc < out.geometry.ncols; ++gc) {
            const int r = static_cast<int>(gr) * step + step / 2, c = gc * step + step / 2;
            const Position3D rx{map.cell_center_x(c), map.cell_center_y(r), h_m};
            const std::size_t cell = static_cast<std::size_t>(r) * map.ncols + c;
            std::size_t k = 0;
            int los_count = 0;
            for (std::size_t s = 0; s < sites.size(); ++s) {
                const auto& site = sites[s];
                const bool los = los_check(site.mast, rx, map, cfg.los_method);
                los_count += los;
                const double loss =
                    map_link_loss_db(site.mast, rx, los, cfg) + detail::shadowing_db(s, cell, site.mast, rx, los, cfg);
                const bool coincident = site.mast == rx;
                const auto dir = coincident ? Direction{0.0, 0.0, -1.0} : direction(site.mast, rx);
                for (const auto& sector : site.sectors)
                    p_mw[k++] = std::pow(10.0, (site.p_tx_dbm + bs_gain_db(sector, dir) + cfg.ue_gain_dbi - loss) / 10.0);
            }
            std::size_t best = 0;
            for (std::size_t i = 1; i < n_tx; ++i)
                if (p_mw[i] > p_mw[best]) best = i;
            double others = noise_mw;
            for (std::size_t i = 0; i < n_tx; ++i)
                if (i != best) others += p_mw[i];
            const std::size_t idx = gr * out.geometry.ncols + gc;
            out.sinr_db[idx] = others > 0.0 ? linear_to_db(p_mw[best] / others) : std::numeric_limits<double>::infinity();
            out.serving[idx] = static_cast<int>(best);
            out.los_sites[idx] = static_cast<std::uint8_t>(std::min(los_count, 255));
        }
    });
    return out;
}

inline double coverage_fraction(const SinrGrid& g, double threshold_db) {
    std::size_t hit = 0;
    for (double s : g.sinr_db) hit += s >= threshold_db;
    return static_cast<double>(hit) / g.size();
}

inline double los_fraction(const SinrGrid& g) {
    std::size_t hit = 0;
    for (auto n : g.los_sites) hit += n > 0;
    return static_cast<double>(hit) / g.size();
}

struct AltitudePoint {
    double h_m;
    double coverage;  ///< fraction of cells with SINR >= threshold
    double p_los_any; ///< fraction of cells in LOS with at least one site
    double mean_sinr_db;
};

inline constexpr double command_and_control_threshold_db = -6.0;

inline std::vector<AltitudePoint> coverage_vs_altitude(const std::vector<SectorSite>& sites, const HeightMap& map,
                                                       const std::vector<double>& heights, const MapSimConfig& cfg = {},
                                                       double threshold_db = command_and_control_threshold_db) {
    uavnet::detail::require(!heights.empty(), "coverage_vs_altitude: heights must be nonempty");
    std::vector<AltitudePoint> curve;
    for (double h : heights) {
        const auto g = sinr_grid(sites, map, h, cfg);
        double sum = 0.0;
        std::size_t finite = 0;
        for (double s : g.sinr_db)
            if (std::isfinite(s)) sum += s, ++finite;
        curve.push_back({h, coverage_fraction(g, threshold_db), los_fraction(g),
                         finite ? sum / finite : std::numeric_limits<double>::quiet_NaN()});
    }
    return curve;
}

/// Rooftop sites on a square lattice of pitch `spacing_m`: each lattice point
/// snaps to the tallest cell within `search_m`. `azimuth_step_deg` rotates the
/// first sector from site to site.
inline std::vector<SiteRecord> rooftop_sites(const HeightMap& map, double spacing_m, double search_m,
                                             SiteRecord defaults = {}, double azimuth_step_deg = 0.0) {
    map.validate();
    uavnet::detail::require(spacing_m > 0.0 && search_m >= 0.0, "rooftop_sites: spacing must be > 0");
    std::vector<SiteRecord> out;
    const int reach = static_cast<int>(std::ceil(search_m / map.cellsize));
    for (double y = map.ytop() - 0.5 * spacing_m; y > map.yllcorner; y -= spacing_m)
        for (double x = map.xllcorner + 0.5 * spacing_m; x < map.xllcorner + map.width(); x += spacing_m) {
            const auto [r0, c0] = map.cell_of(x, y);
            int br = r0, bc = c0;
            for (int r = std::max(0, r0 - reach); r <= std::min(map.nrows - 1, r0 + reach); ++r)
                for (int c = std::max(0, c0 - reach); c <= std::min(map.ncols - 1, c0 + reach); ++c)
                    if (map.surface(r, c) > map.surface(br, bc)) br = r, bc = c;
            SiteRecord s = defaults;
            s.x = map.cell_center_x(bc);
            s.y = map.cell_center_y(br);
            s.roof_h = map.surface(br, bc);
            s.azimuth0_deg = defaults.azimuth0_deg + azimuth_step_deg * static_cast<double>(out.size());
            out.push_back(s);
        }
    return out;
}

} // namespace uavnet::mapsim
