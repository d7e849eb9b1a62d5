#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trunksim/analytics.hpp"
#include "trunksim/params.hpp"
#include "trunksim/simulator.hpp"

namespace trunksim {

// One grid axis set for a sweep; modes expands "both".
struct sweep_spec {
    std::vector<double> lambda_grid;
    std::vector<int> R_list{10};
    std::vector<int> K_list{1};
    std::vector<sim_mode> modes{sim_mode::trunked};
    std::uint64_t iters = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
    bool exact = true;
};

// "start:stop:step" (stop included when it lands on the grid) or a comma list.
std::vector<double> parse_lambda_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<sim_mode> parse_modes(const std::string& text);

struct sweep_point {
    sim_mode mode;
    int R;
    int K;
    double lambda;
    std::uint64_t index; // canonical position, feeds the RNG substream
};

// Canonical enumeration sorted by (mode, R, K, lambda); baseline before
// trunked. Execution order never changes results because the substream index
// is part of the point identity.
std::vector<sweep_point> enumerate_points(const sweep_spec& spec);

// One serialized result line; analytic rows leave iters/seed/CI empty.
struct csv_row {
    std::string mode;
    double lambda_per_s;
    int R;
    int K;
    int n;
    int L;
    double lambda_f;
    std::string source; // analytic | sim
    double e_n_aggregated;
    double e_n_delivered;
    double e_p_tr_total_w;
    double e_p_tr_per_mtd_w;
    double e_p_m_w;
    double p_s;
    double outage;
    std::optional<std::uint64_t> iters;
    std::optional<std::uint64_t> seed;
    std::optional<double> ci_e_n;
    std::optional<double> ci_p_m;
};

std::string csv_header();
std::string to_csv_line(const csv_row& row);
std::string to_csv(const std::vector<csv_row>& rows); // header + rows, '\n' endings

// Applies one sweep point onto the base configuration.
raw_config apply_point(const raw_config& base, const sweep_point& pt);

csv_row analytic_row(const raw_config& base, const sweep_point& pt, bool exact);
csv_row sim_row(const raw_config& base, const sweep_point& pt, const sweep_spec& spec,
                sim_stats* stats_out = nullptr);

// cmd_analytic / cmd_simulate cores: one row per grid point, rows already in
// canonical order.
std::vector<csv_row> analytic_sweep(const raw_config& base, const sweep_spec& spec);
std::vector<csv_row> simulate_sweep(const raw_config& base, const sweep_spec& spec);

} // namespace trunksim
