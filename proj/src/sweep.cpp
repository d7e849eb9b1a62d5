#include "trunksim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace trunksim {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::vector<double> parse_lambda_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("lambda grid: expected start:stop:step");
        double start = parse_double(parts[0]);
        double stop = parse_double(parts[1]);
        double step = parse_double(parts[2]);
        if (step <= 0.0) throw std::invalid_argument("lambda grid: step must be > 0");
        if (stop < start) throw std::invalid_argument("lambda grid: stop < start");
        // stop is included when it lands on the grid within one part in 1e9
        for (long long k = 0;; ++k) {
            double v = start + static_cast<double>(k) * step;
            if (v > stop * (1.0 + 1e-12) + 1e-12 * step) break;
            grid.push_back(v);
        }
    } else {
        for (const auto& tok : split(text, ',')) {
            if (tok.empty()) continue;
            grid.push_back(parse_double(tok));
        }
    }
    if (grid.empty()) throw std::invalid_argument("lambda grid is empty");
    for (double v : grid)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("lambda grid: rates must be finite and >= 0");
    return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("not an integer: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("integer list is empty");
    return out;
}

std::vector<sim_mode> parse_modes(const std::string& text) {
    if (text == "trunked") return {sim_mode::trunked};
    if (text == "baseline") return {sim_mode::baseline};
    if (text == "both") return {sim_mode::baseline, sim_mode::trunked};
    throw std::invalid_argument("mode must be trunked, baseline or both");
}

std::vector<sweep_point> enumerate_points(const sweep_spec& spec) {
    if (spec.lambda_grid.empty() || spec.R_list.empty() || spec.K_list.empty() || spec.modes.empty())
        throw std::invalid_argument("sweep: empty grid axis");
    if (spec.iters < 1) throw std::invalid_argument("sweep: iters must be >= 1");

    std::vector<sim_mode> modes = spec.modes;
    std::sort(modes.begin(), modes.end(), [](sim_mode a, sim_mode b) {
        return (a == sim_mode::baseline) > (b == sim_mode::baseline); // baseline first
    });
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<int> rs = spec.R_list;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::vector<int> ks = spec.K_list;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<double> lambdas = spec.lambda_grid;
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    std::vector<sweep_point> pts;
    std::uint64_t idx = 0;
    for (sim_mode m : modes)
        for (int R : rs)
            for (int K : ks)
                for (double lam : lambdas) pts.push_back(sweep_point{m, R, K, lam, idx++});
    return pts;
}

std::string csv_header() {
    return "mode,lambda_per_s,R,K,n,L,lambda_f,source,e_n_aggregated,e_n_delivered,"
           "e_p_tr_total_w,e_p_tr_per_mtd_w,e_p_m_w,p_s,outage,iters,seed,ci_e_n,ci_p_m";
}

std::string to_csv_line(const csv_row& row) {
    std::ostringstream out;
    out << row.mode << ',' << format_sig9(row.lambda_per_s) << ',' << row.R << ',' << row.K << ','
        << row.n << ',' << row.L << ',' << format_sig9(row.lambda_f) << ',' << row.source << ','
        << format_sig9(row.e_n_aggregated) << ',' << format_sig9(row.e_n_delivered) << ','
        << format_sig9(row.e_p_tr_total_w) << ',' << format_sig9(row.e_p_tr_per_mtd_w) << ','
        << format_sig9(row.e_p_m_w) << ',' << format_sig9(row.p_s) << ','
        << format_sig9(row.outage) << ',';
    if (row.iters) out << *row.iters;
    out << ',';
    if (row.seed) out << *row.seed;
    out << ',';
    if (row.ci_e_n) out << format_sig9(*row.ci_e_n);
    out << ',';
    if (row.ci_p_m) out << format_sig9(*row.ci_p_m);
    return out.str();
}

std::string to_csv(const std::vector<csv_row>& rows) {
    std::string out = csv_header();
    out += '\n';
    for (const auto& r : rows) {
        out += to_csv_line(r);
        out += '\n';
    }
    return out;
}

raw_config apply_point(const raw_config& base, const sweep_point& pt) {
    raw_config cfg = base;
    cfg.lambda_per_s = pt.lambda;
    cfg.R = pt.R;
    cfg.K = pt.K;
    return cfg;
}

namespace {

csv_row common_row(const sweep_point& pt, const frame_layout_t& fl) {
    csv_row row{};
    row.mode = pt.mode == sim_mode::trunked ? "trunked" : "baseline";
    row.lambda_per_s = pt.lambda;
    row.R = pt.R;
    row.K = pt.K;
    row.n = fl.n;
    row.L = fl.L;
    row.lambda_f = fl.lambda_f;
    return row;
}

} // namespace

csv_row analytic_row(const raw_config& base, const sweep_point& pt, bool exact) {
    system_params p = build_params(apply_point(base, pt));
    frame_layout_t fl = frame_layout(p);
    metrics_report rep = evaluate_point(p, pt.mode, exact);
    csv_row row = common_row(pt, fl);
    row.source = "analytic";
    row.e_n_aggregated = rep.e_n_aggregated;
    row.e_n_delivered = rep.e_n_delivered;
    row.e_p_tr_total_w = rep.e_p_tr_total;
    row.e_p_tr_per_mtd_w = rep.e_p_tr_per_mtd;
    row.e_p_m_w = rep.e_p_m;
    row.p_s = rep.p_s;
    row.outage = rep.outage;
    return row;
}

csv_row sim_row(const raw_config& base, const sweep_point& pt, const sweep_spec& spec,
                sim_stats* stats_out) {
    system_params p = build_params(apply_point(base, pt));
    frame_layout_t fl = frame_layout(p);
    sim_stats st = run_replications(p, pt.mode, spec.iters, spec.seed, spec.workers, pt.index);

    csv_row row = common_row(pt, fl);
    row.source = "sim";
    double lt = fl.L * p.T;
    row.e_n_aggregated = st.mean_a() / lt;
    row.e_n_delivered = st.mean_d() / lt;
    row.e_p_tr_total_w = st.mean_p();
    row.e_p_tr_per_mtd_w = st.per_mtd_ratio();
    row.e_p_m_w = pt.mode == sim_mode::trunked ? 2.0 * p.P_mU + st.per_mtd_ratio() : 2.0 * p.P_mB;
    row.p_s = st.p_s_hat();
    row.outage = 1.0 - row.p_s;
    row.iters = spec.iters;
    row.seed = spec.seed;
    if (auto ci = st.ci_a()) row.ci_e_n = *ci / lt;
    if (pt.mode == sim_mode::trunked) {
        row.ci_p_m = st.ci_per_mtd_ratio();
    } else {
        row.ci_p_m = st.count >= 2 ? std::optional<double>(0.0) : std::nullopt;
    }
    if (stats_out) *stats_out = st;
    return row;
}

std::vector<csv_row> analytic_sweep(const raw_config& base, const sweep_spec& spec) {
    std::vector<csv_row> rows;
    for (const auto& pt : enumerate_points(spec)) rows.push_back(analytic_row(base, pt, spec.exact));
    return rows;
}

std::vector<csv_row> simulate_sweep(const raw_config& base, const sweep_spec& spec) {
    std::vector<csv_row> rows;
    for (const auto& pt : enumerate_points(spec)) rows.push_back(sim_row(base, pt, spec));
    return rows;
}

} // namespace trunksim
