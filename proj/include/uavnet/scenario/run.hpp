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

// Scenario execution: dispatches a validated scenario to its module and writes
// CSV tables (9 significant digits, header row first) plus, for mapsim, ASCII
// grid rasters.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "uavnet/abs/abs.hpp"
#include "uavnet/aue/metrics.hpp"
#include "uavnet/channel/los_probability.hpp"
#include "uavnet/channel/path_loss.hpp"
#include "uavnet/channel/shadowing.hpp"
#include "uavnet/localization/localization.hpp"
#include "uavnet/mapsim/simulator.hpp"
#include "uavnet/scenario/scenario.hpp"

namespace uavnet::scenario {

struct RunOptions {
    std::filesystem::path out_dir = "out";
    unsigned threads = 1;
};

struct RunResult {
    std::vector<std::filesystem::path> files;
};

/// Minimal CSV builder. Numbers use %.9g; non-finite values print as nan/inf/-inf.
class Csv {
public:
    explicit Csv(std::initializer_list<std::string_view> header) {
        for (auto h : header) cell(h);
        end_row();
    }
    explicit Csv(const std::vector<std::string>& header) {
        for (const auto& h : header) cell(h);
        end_row();
    }

    Csv& cell(std::string_view s) {
        if (!first_) text_ += ',';
        text_ += s;
        first_ = false;
        return *this;
    }
    Csv& num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return cell(buf);
    }
    Csv& integer(long long v) { return cell(std::to_string(v)); }
    void end_row() {
        text_ += '\n';
        first_ = true;
    }
    const std::string& text() const noexcept { return text_; }

private:
    std::string text_;
    bool first_ = true;
};

namespace detail {

inline std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                        const std::string& text) {
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    return path;
}

/// Value of `fn()`, or NaN when the model is not applicable at that point.
template <class F>
double or_nan(F&& fn) {
    try {
        return fn();
    } catch (const applicability_error&) {
    } catch (const model_gap_error&) {
    } catch (const domain_error&) {
    }
    return std::numeric_limits<double>::quiet_NaN();
}

inline std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace detail

inline RunResult run_channel_table(const ChannelTableBlock& b, const RunOptions& opt) {
    const auto env = to_environment(b.environment, "channel_table.environment");
    const double f_ghz = b.carrier_hz * 1e-9;
    Csv csv{"h_m",        "d_h_m",      "slice",        "p_los_building", "p_los_3gpp",
            "pl_los_db",  "pl_nlos_db", "sigma_los_db", "sigma_nlos_db"};
    for (double h : b.heights_m)
        for (double d : b.distances_m) {
            std::optional<channel::PropagationSlice> slice;
            try {
                slice = channel::slice_of(h, env);
            } catch (const applicability_error&) {
            }
            csv.num(h).num(d).cell(slice ? channel::to_string(*slice) : "out_of_envelope");
            csv.num(detail::or_nan([&] { return channel::p_los_building(d, h, b.bs_height_m, env); }));
            csv.num(detail::or_nan([&] {
                if (!slice) throw model_gap_error("no slice");
                return channel::p_los_3gpp(d, h, *slice);
            }));
            for (bool los : {true, false})
                csv.num(detail::or_nan([&] {
                    if (!slice) throw model_gap_error("no slice");
                    return channel::pl_3gpp_rural_db(make_link_geometry(d, h, b.bs_height_m), f_ghz, env, los, *slice);
                }));
            for (bool los : {true, false})
                csv.num(detail::or_nan([&] {
                    if (!slice) throw model_gap_error("no slice");
                    return channel::shadowing_sigma_db(*slice, los, make_link_geometry(d, h, b.bs_height_m), f_ghz);
                }));
            csv.end_row();
        }
    return {{detail::write_file(opt.out_dir, "channel_table.csv", csv.text())}};
}

inline aue::McOptions mc_options(const AueBlock& b, std::uint64_t seed, unsigned threads) {
    return {b.trials, seed, threads};
}

inline RunResult run_aue_coverage(const Scenario& s, const RunOptions& opt) {
    const auto cfg = to_aue_config(*s.aue, "aue");
    aue::check_edge_effects(cfg);
    const auto mc = mc_options(*s.aue, s.seed, opt.threads);
    Csv csv{"h_m", "threshold_db", "p_cov", "ci95"};
    for (double h : s.aue_coverage->heights_m) {
        const auto sinr = aue::simulate_sinr(h, cfg, mc);
        for (double t : s.aue_coverage->thresholds_db) {
            const auto e = aue::coverage_from_samples(sinr, db_to_linear(t));
            csv.num(h).num(t).num(e.value).num(e.ci95).end_row();
        }
    }
    return {{detail::write_file(opt.out_dir, "aue_coverage.csv", csv.text())}};
}

inline RunResult run_aue_sweep(const Scenario& s, const RunOptions& opt) {
    const auto cfg = to_aue_config(*s.aue, "aue");
    auto spec = to_sweep_spec(*s.aue_sweep, "aue_sweep");
    spec.mc = mc_options(*s.aue, s.seed, opt.threads);
    if (spec.axis != aue::SweepAxis::Density) aue::check_edge_effects(cfg);
    static constexpr const char* axis_columns[] = {"h_m", "lambda_per_km2", "phi_b_deg", "phi_t_deg"};
    Csv csv{axis_columns[static_cast<int>(spec.axis)], std::string_view(s.aue_sweep->metric), "ci95"};
    for (const auto& row : aue::sweep(cfg, spec)) csv.num(row.x).num(row.value).num(row.ci95).end_row();
    return {{detail::write_file(opt.out_dir, "aue_sweep.csv", csv.text())}};
}

inline RunResult run_abs_design(const AbsBlock& b, const RunOptions& opt) {
    const auto prof = to_abs_profile(b, "abs");
    Csv csv{"h_m", "r_c_m", "p_req_w", "power_gain", "sum_rate_gain"};
    Csv best{"r_c_m", "metric", "h_opt_m", "value"};
    for (double r_c : b.coverage_radii_m) {
        for (double h : b.heights_m) {
            const abs_net::AbsDesign d{h, r_c, b.epsilon};
            csv.num(h).num(r_c).num(abs_net::required_power(d, prof)).num(abs_net::power_gain(d, prof));
            csv.num(abs_net::sum_rate_gain(d, prof)).end_row();
        }
        for (auto metric : {abs_net::AbsMetric::PowerGain, abs_net::AbsMetric::SumRateGain}) {
            const auto opt_h = abs_net::optimize_altitude(metric, prof, b.heights_m, {r_c, b.epsilon, 1.0});
            best.num(r_c).cell(abs_net::to_string(metric)).num(opt_h.h).num(opt_h.value).end_row();
        }
    }
    return {{detail::write_file(opt.out_dir, "abs_design.csv", csv.text()),
             detail::write_file(opt.out_dir, "abs_optimum.csv", best.text())}};
}

inline RunResult run_localize(const LocalizeBlock& b, std::uint64_t seed, const RunOptions& opt) {
    const auto ch = to_elevation_channel(b.channel, "localize.channel");
    const auto state = uavnet::scenario::detail::parse_enum(b.link_state, link_states, "localize.link_state");
    const localization::LocalizationScenario sc{b.n_users, b.user_area_radius_m, b.frequency_hz, seed};
    Csv csv{"h_m", "R_m", "M", "mean_err_m", "p50_m", "p90_m"};
    for (double h : b.heights_m)
        for (double r : b.radii_m)
            for (int m : b.m_points) {
                const localization::AnchorPlan plan{m, r, h, {b.center_x_m, b.center_y_m, 0.0}, b.hover_time_s};
                const auto st = localization::run_campaign(sc, plan, ch, state, opt.threads);
                csv.num(h).num(r).integer(m).num(st.mean_pos_err).num(st.median_pos_err).num(st.p90_pos_err).end_row();
            }
    return {{detail::write_file(opt.out_dir, "localize.csv", csv.text())}};
}

inline RunResult run_mapsim(const Scenario& s, const RunOptions& opt) {
    const auto& b = *s.mapsim;
    const auto cfg = to_mapsim_config(b, s.seed, opt.threads, "mapsim");
    RunResult res;
    mapsim::HeightMap map;
    if (b.map.file) {
        map = mapsim::load_heightmap(s.resolve(*b.map.file).string());
    } else {
        map = mapsim::generate_city(to_city(b.map.synthetic, "mapsim.map.synthetic")).map;
        std::ostringstream ss;
        mapsim::write_heightmap(ss, map);
        res.files.push_back(detail::write_file(opt.out_dir, "heightmap.asc", ss.str()));
    }
    std::vector<mapsim::SiteRecord> records;
    if (b.sites.file) {
        records = mapsim::load_sites_csv(s.resolve(*b.sites.file).string());
    } else {
        mapsim::SiteRecord d;
        d.p_tx_dbm = b.sites.defaults.p_tx_dbm;
        d.azimuth0_deg = b.sites.defaults.azimuth0_deg;
        d.tilt_deg = b.sites.defaults.tilt_deg;
        d.max_gain_dbi = b.sites.defaults.max_gain_dbi;
        d.beamwidth_deg = b.sites.defaults.beamwidth_deg;
        records = mapsim::rooftop_sites(map, b.sites.spacing_m, b.sites.search_m, d);
    }
    if (records.empty()) throw config_error("mapsim.sites", "no sites");
    std::vector<mapsim::SectorSite> sites;
    for (const auto& r : records) sites.push_back(mapsim::make_site(r, b.sites.sectors));
    {
        std::ostringstream ss;
        mapsim::write_sites_csv(ss, records);
        res.files.push_back(detail::write_file(opt.out_dir, "sites.csv", ss.str()));
    }

    Csv summary{"h_m", "coverage", "p_los_any", "mean_sinr_db"};
    for (double h : b.heights_m) {
        const auto grid = mapsim::sinr_grid(sites, map, h, cfg);
        double sum = 0.0;
        std::size_t finite = 0;
        for (double v : grid.sinr_db)
            if (std::isfinite(v)) sum += v, ++finite;
        summary.num(h).num(mapsim::coverage_fraction(grid, b.threshold_db)).num(mapsim::los_fraction(grid));
        summary.num(finite ? sum / finite : std::numeric_limits<double>::quiet_NaN()).end_row();
        if (b.write_rasters) {
            std::ostringstream ss;
            mapsim::write_heightmap(ss, grid.sinr_raster());
            res.files.push_back(detail::write_file(opt.out_dir, "sinr_h" + detail::short_number(h) + "m.asc", ss.str()));
        }
    }
    res.files.push_back(detail::write_file(opt.out_dir, "mapsim_summary.csv", summary.text()));

    const auto stats = mapsim::building_stats(map, 4.0);
    Csv bs{"min_height_m", "building_cells", "mean_height_m", "rayleigh_scale_m"};
    bs.num(4.0).integer(static_cast<long long>(stats.count));
    bs.num(stats.mean.value_or(std::numeric_limits<double>::quiet_NaN()));
    bs.num(stats.rayleigh_scale.value_or(std::numeric_limits<double>::quiet_NaN())).end_row();
    res.files.push_back(detail::write_file(opt.out_dir, "mapsim_buildings.csv", bs.text()));
    return res;
}

/// Runs a validated scenario. Module errors propagate as exceptions.
inline RunResult run_scenario(const Scenario& s, const RunOptions& opt) {
    validate(s);
    switch (s.parsed_command()) {
    case Command::ChannelTable: return run_channel_table(*s.channel_table, opt);
    case Command::AueCoverage: return run_aue_coverage(s, opt);
    case Command::AueSweep: return run_aue_sweep(s, opt);
    case Command::AbsDesign: return run_abs_design(*s.abs, opt);
    case Command::Localize: return run_localize(*s.localize, s.seed, opt);
    case Command::Mapsim: return run_mapsim(s, opt);
    }
    throw config_error("command", "unknown command");
}

} // namespace uavnet::scenario
