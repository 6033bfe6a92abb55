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

// Surface rasters: ESRI ASCII grid I/O, a synthetic Manhattan-grid city and
// building-height statistics.
//
// Row 0 is the northern edge, as in the ASCII grid format. Cell (r, c) covers
// x in [xll + c cs, xll + (c + 1) cs) and y in [ytop - (r + 1) cs, ytop - r cs).

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uavnet/error.hpp"
#include "uavnet/numerics/random.hpp"

namespace uavnet::mapsim {

struct HeightMap {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 1.0;
    double nodata = -9999.0;
    std::vector<double> heights; ///< row-major, nrows * ncols

    static HeightMap flat(int ncols, int nrows, double cellsize, double h = 0.0) {
        HeightMap m;
        m.ncols = ncols, m.nrows = nrows, m.cellsize = cellsize;
        m.heights.assign(static_cast<std::size_t>(ncols) * nrows, h);
        m.validate();
        return m;
    }

    void validate() const {
        uavnet::detail::require(ncols > 0 && nrows > 0, "height map: grid must be non-empty");
        uavnet::detail::require(cellsize > 0.0 && std::isfinite(cellsize), "height map: cell size must be > 0");
        uavnet::detail::require(heights.size() == static_cast<std::size_t>(ncols) * nrows,
                                "height map: height count does not match the grid");
        for (double h : heights)
            if (h != nodata) uavnet::detail::require(std::isfinite(h), "height map: heights must be finite");
    }

    double width() const noexcept { return ncols * cellsize; }
    double height() const noexcept { return nrows * cellsize; }
    double ytop() const noexcept { return yllcorner + height(); }

    bool is_nodata(int r, int c) const { return at(r, c) == nodata; }
    double at(int r, int c) const { return heights[static_cast<std::size_t>(r) * ncols + c]; }
    double& at(int r, int c) { return heights[static_cast<std::size_t>(r) * ncols + c]; }

    /// Surface height with no-data read as bare ground (0 m).
    double surface(int r, int c) const {
        const double h = at(r, c);
        return h == nodata ? 0.0 : h;
    }

    bool contains(double x, double y) const noexcept {
        return x >= xllcorner && x <= xllcorner + width() && y >= yllcorner && y <= ytop();
    }

    double cell_center_x(int c) const noexcept { return xllcorner + (c + 0.5) * cellsize; }
    double cell_center_y(int r) const noexcept { return ytop() - (r + 0.5) * cellsize; }

    /// Cell containing (x, y); points on the far edges belong to the last cell.
    std::pair<int, int> cell_of(double x, double y) const {
        if (!contains(x, y)) throw domain_error("height map: point outside the map extent");
        const int c = std::min(static_cast<int>(std::floor((x - xllcorner) / cellsize)), ncols - 1);
        const int r = std::min(static_cast<int>(std::floor((ytop() - y) / cellsize)), nrows - 1);
        return {r, c};
    }

    double surface_at(double x, double y) const {
        const auto [r, c] = cell_of(x, y);
        return surface(r, c);
    }

    friend bool operator==(const HeightMap&, const HeightMap&) = default;
};

namespace detail {

inline std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

inline double parse_number(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw parse_error("bad number '" + tok + "'", line);
    return v;
}

inline std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Reads an ESRI ASCII grid. Header keys are case-insensitive; xllcenter and
/// yllcenter are accepted in place of the corner keys.
inline HeightMap read_heightmap(std::istream& in) {
    HeightMap m;
    std::map<std::string, double> header;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> pending; // first data line, already read
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (!std::isalpha(static_cast<unsigned char>(key[0]))) {
            std::string tok;
            pending.push_back(key);
            while (ss >> tok) pending.push_back(tok);
            break;
        }
        std::string value, extra;
        if (!(ss >> value) || (ss >> extra)) throw parse_error("header line must be '<key> <value>'", line_no);
        const auto k = detail::lower(key);
        static const char* known[] = {"ncols", "nrows", "xllcorner", "yllcorner", "xllcenter", "yllcenter",
                                      "cellsize", "nodata_value"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* s) { return k == s; }) == std::end(known))
            throw parse_error("unknown header key '" + key + "'", line_no);
        if (header.count(k)) throw parse_error("duplicate header key '" + key + "'", line_no);
        header[k] = detail::parse_number(value, line_no);
    }
    for (const char* req : {"ncols", "nrows", "cellsize"})
        if (!header.count(req)) throw parse_error(std::string("missing header key '") + req + "'", 0);
    const double nc = header["ncols"], nr = header["nrows"];
    if (nc < 1 || nr < 1 || nc != std::floor(nc) || nr != std::floor(nr))
        throw parse_error("ncols and nrows must be positive integers", 0);
    m.ncols = static_cast<int>(nc);
    m.nrows = static_cast<int>(nr);
    m.cellsize = header["cellsize"];
    if (!(m.cellsize > 0.0)) throw parse_error("cellsize must be > 0", 0);
    const bool corner_x = header.count("xllcorner"), corner_y = header.count("yllcorner");
    m.xllcorner = corner_x ? header["xllcorner"] : header.count("xllcenter") ? header["xllcenter"] - 0.5 * m.cellsize : 0.0;
    m.yllcorner = corner_y ? header["yllcorner"] : header.count("yllcenter") ? header["yllcenter"] - 0.5 * m.cellsize : 0.0;
    if (header.count("nodata_value")) m.nodata = header["nodata_value"];

    m.heights.reserve(static_cast<std::size_t>(m.ncols) * m.nrows);
    int row = 0;
    auto take_row = [&](const std::vector<std::string>& toks, std::size_t at_line) {
        if (row >= m.nrows) throw parse_error("more than nrows = " + std::to_string(m.nrows) + " data rows", at_line);
        if (toks.size() != static_cast<std::size_t>(m.ncols))
            throw parse_error("row " + std::to_string(row + 1) + " has " + std::to_string(toks.size()) +
                                  " values, expected ncols = " + std::to_string(m.ncols),
                              at_line);
        for (const auto& t : toks) {
            const double v = detail::parse_number(t, at_line);
            if (v != m.nodata && !std::isfinite(v)) throw parse_error("non-finite height", at_line);
            m.heights.push_back(v);
        }
        ++row;
    };
    if (!pending.empty()) take_row(pending, line_no);
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (toks.empty()) continue;
        take_row(toks, line_no);
    }
    if (row != m.nrows)
        throw parse_error("expected " + std::to_string(m.nrows) + " data rows, found " + std::to_string(row), line_no);
    return m;
}

inline HeightMap load_heightmap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open height map '" + path + "'", 0);
    return read_heightmap(in);
}

/// Writes shortest round-trip decimal values, so save/load is bit-exact.
inline void write_heightmap(std::ostream& out, const HeightMap& m) {
    m.validate();
    out << "ncols " << m.ncols << "\nnrows " << m.nrows << "\nxllcorner " << detail::format_shortest(m.xllcorner)
        << "\nyllcorner " << detail::format_shortest(m.yllcorner) << "\ncellsize "
        << detail::format_shortest(m.cellsize) << "\nNODATA_value " << detail::format_shortest(m.nodata) << '\n';
    for (int r = 0; r < m.nrows; ++r) {
        for (int c = 0; c < m.ncols; ++c) {
            if (c) out << ' ';
            out << detail::format_shortest(m.at(r, c));
        }
        out << '\n';
    }
}

inline void save_heightmap(const std::string& path, const HeightMap& m) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write height map '" + path + "'", 0);
    write_heightmap(out, m);
}

/// Manhattan-grid city: square buildings of area varsigma / xi on a square
/// lattice of pitch 1 / sqrt(xi), each with a Rayleigh(omega) height.
struct CityConfig {
    double width_m = 1000.0;
    double height_m = 1000.0;
    double cellsize = 2.0;
    double varsigma = 0.5;
    double xi = 300.0;    ///< buildings per km^2
    double omega = 20.0;  ///< Rayleigh scale, m
    std::uint64_t seed = 1;

    void validate() const {
        uavnet::detail::require(width_m > 0.0 && height_m > 0.0, "city: extent must be > 0");
        uavnet::detail::require(cellsize > 0.0, "city: cell size must be > 0");
        uavnet::detail::require(varsigma > 0.0 && varsigma < 1.0, "city: varsigma must lie in (0, 1)");
        uavnet::detail::require(xi > 0.0 && omega > 0.0, "city: xi and omega must be > 0");
    }

    double pitch_m() const { return 1000.0 / std::sqrt(xi); }
    double footprint_m() const { return 1000.0 * std::sqrt(varsigma / xi); }
};

struct Building {
    int row0, col0, rows, cols;
    double height;
};

struct City {
    HeightMap map;
    std::vector<Building> buildings;
};

inline City generate_city(const CityConfig& cfg) {
    cfg.validate();
    City city;
    auto& m = city.map;
    m = HeightMap::flat(static_cast<int>(std::round(cfg.width_m / cfg.cellsize)),
                        static_cast<int>(std::round(cfg.height_m / cfg.cellsize)), cfg.cellsize);
    const int pitch = std::max(2, static_cast<int>(std::round(cfg.pitch_m() / cfg.cellsize)));
    const int side = std::clamp(static_cast<int>(std::round(cfg.footprint_m() / cfg.cellsize)), 1, pitch - 1);
    const int offset = (pitch - side) / 2; // half a street on either side
    numerics::RngStream rng(cfg.seed, 0);
    for (int r0 = offset; r0 + side <= m.nrows; r0 += pitch)
        for (int c0 = offset; c0 + side <= m.ncols; c0 += pitch) {
            const double h = cfg.omega * std::sqrt(-2.0 * std::log1p(-rng.uniform()));
            city.buildings.push_back({r0, c0, side, side, h});
            for (int r = r0; r < r0 + side; ++r)
                for (int c = c0; c < c0 + side; ++c) m.at(r, c) = h;
        }
    return city;
}

struct BuildingStats {
    std::size_t count = 0;              ///< building cells
    double bin_width = 1.0;             ///< m
    std::vector<std::size_t> histogram; ///< bin k counts heights in [k w, (k + 1) w)
    std::optional<double> rayleigh_scale;
    std::optional<double> mean;
};

/// Cells at or above `min_building_height` count as buildings. The Rayleigh scale
/// is the maximum-likelihood sqrt(sum h^2 / (2 n)).
inline BuildingStats building_stats(const HeightMap& map, double min_building_height, double bin_width = 1.0) {
    map.validate();
    uavnet::detail::require(bin_width > 0.0, "building_stats: bin width must be > 0");
    BuildingStats s;
    s.bin_width = bin_width;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < map.nrows; ++r)
        for (int c = 0; c < map.ncols; ++c) {
            if (map.is_nodata(r, c)) continue;
            const double h = map.at(r, c);
            if (h < min_building_height) continue;
            ++s.count;
            sum += h, sum2 += h * h;
            const auto bin = static_cast<std::size_t>(std::max(0.0, std::floor(h / bin_width)));
            if (bin >= s.histogram.size()) s.histogram.resize(bin + 1, 0);
            ++s.histogram[bin];
        }
    if (s.count == 0) return s;
    s.mean = sum / s.count;
    s.rayleigh_scale = std::sqrt(sum2 / (2.0 * s.count));
    return s;
}

} // namespace uavnet::mapsim
