#include "trunksim/params.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace trunksim {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("config field '" + field + "': " + what);
}

void check_finite(double v, const std::string& field) {
    require(std::isfinite(v), field, "must be finite");
}

} // namespace

raw_config parse_config_text(std::string_view text) {
    raw_config cfg;
    std::map<std::string, std::function<void(double)>> setters = {
        {"lambda_per_s", [&](double v) { cfg.lambda_per_s = v; }},
        {"R", [&](double v) { cfg.R = static_cast<int>(v); }},
        {"K", [&](double v) { cfg.K = static_cast<int>(v); }},
        {"T_ms", [&](double v) { cfg.T_ms = v; }},
        {"Ts_ms", [&](double v) { cfg.Ts_ms = v; }},
        {"Ru_kbps", [&](double v) { cfg.Ru_kbps = v; }},
        {"Dm_bits", [&](double v) { cfg.Dm_bits = v; }},
        {"W_khz", [&](double v) { cfg.W_khz = v; }},
        {"sigma2_dbm", [&](double v) { cfg.sigma2_dbm = v; }},
        {"KD_db", [&](double v) { cfg.KD_db = v; }},
        {"alpha", [&](double v) { cfg.alpha = v; }},
        {"xm_m", [&](double v) { cfg.xm_m = v; }},
        {"xu_m", [&](double v) { cfg.xu_m = v; }},
        {"PmU_dbm", [&](double v) { cfg.PmU_dbm = v; }},
        {"PmB_dbm", [&](double v) { cfg.PmB_dbm = v; }},
        {"Gamma_m_db", [&](double v) { cfg.Gamma_m_db = v; }},
        {"PO", [&](double v) { cfg.PO = v; }},
        {"hbar", [&](double v) { cfg.hbar = v; }},
    };

    std::string line;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value, got '" + stripped + "'");
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        std::string val = trim(std::string_view(stripped).substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        size_t pos = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(val, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": value '" + val + "' is not a number");
        }
        if (pos != val.size())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": trailing characters in value '" + val + "'");
        it->second(parsed);
    }
    return cfg;
}

raw_config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

system_params build_params(const raw_config& cfg) {
    check_finite(cfg.lambda_per_s, "lambda_per_s");
    require(cfg.lambda_per_s >= 0.0, "lambda_per_s", "must be >= 0");
    require(cfg.R >= 1, "R", "must be >= 1");
    require(cfg.K >= 1, "K", "must be >= 1");
    check_finite(cfg.T_ms, "T_ms");
    require(cfg.T_ms > 0.0, "T_ms", "must be > 0");
    check_finite(cfg.Ts_ms, "Ts_ms");
    require(cfg.Ts_ms > 0.0, "Ts_ms", "must be > 0");
    check_finite(cfg.Ru_kbps, "Ru_kbps");
    require(cfg.Ru_kbps >= 0.0, "Ru_kbps", "must be >= 0");
    check_finite(cfg.Dm_bits, "Dm_bits");
    require(cfg.Dm_bits >= 0.0, "Dm_bits", "must be >= 0");
    check_finite(cfg.W_khz, "W_khz");
    require(cfg.W_khz > 0.0, "W_khz", "must be > 0");
    check_finite(cfg.sigma2_dbm, "sigma2_dbm");
    check_finite(cfg.KD_db, "KD_db");
    check_finite(cfg.alpha, "alpha");
    require(cfg.alpha > 0.0, "alpha", "must be > 0");
    check_finite(cfg.xm_m, "xm_m");
    require(cfg.xm_m > 0.0, "xm_m", "must be > 0");
    check_finite(cfg.xu_m, "xu_m");
    require(cfg.xu_m > 0.0, "xu_m", "must be > 0");
    check_finite(cfg.PmU_dbm, "PmU_dbm");
    check_finite(cfg.PmB_dbm, "PmB_dbm");
    check_finite(cfg.Gamma_m_db, "Gamma_m_db");
    check_finite(cfg.PO, "PO");
    require(cfg.PO > 0.0 && cfg.PO < 1.0, "PO", "must be in (0,1)");
    check_finite(cfg.hbar, "hbar");
    require(cfg.hbar > 0.0, "hbar", "must be > 0");

    system_params p{};
    p.lambda = cfg.lambda_per_s;
    p.R = cfg.R;
    p.K = cfg.K;
    p.T = cfg.T_ms * 1e-3;
    p.T_s = cfg.Ts_ms * 1e-3;
    p.R_u = cfg.Ru_kbps * 1e3;
    p.D_m = cfg.Dm_bits;
    p.W = cfg.W_khz * 1e3;
    p.sigma2 = dbm_to_watt(cfg.sigma2_dbm);
    p.K_D = db_to_linear(cfg.KD_db);
    p.alpha = cfg.alpha;
    p.x_m = cfg.xm_m;
    p.x_U = cfg.xu_m;
    p.P_mU = dbm_to_watt(cfg.PmU_dbm);
    p.P_mB = dbm_to_watt(cfg.PmB_dbm);
    p.Gamma_m = db_to_linear(cfg.Gamma_m_db);
    p.P_O = cfg.PO;
    p.hbar = cfg.hbar;
    return p;
}

raw_config to_raw(const system_params& p) {
    raw_config cfg;
    cfg.lambda_per_s = p.lambda;
    cfg.R = p.R;
    cfg.K = p.K;
    cfg.T_ms = p.T * 1e3;
    cfg.Ts_ms = p.T_s * 1e3;
    cfg.Ru_kbps = p.R_u * 1e-3;
    cfg.Dm_bits = p.D_m;
    cfg.W_khz = p.W * 1e-3;
    cfg.sigma2_dbm = watt_to_dbm(p.sigma2);
    cfg.KD_db = linear_to_db(p.K_D);
    cfg.alpha = p.alpha;
    cfg.xm_m = p.x_m;
    cfg.xu_m = p.x_U;
    cfg.PmU_dbm = watt_to_dbm(p.P_mU);
    cfg.PmB_dbm = watt_to_dbm(p.P_mB);
    cfg.Gamma_m_db = linear_to_db(p.Gamma_m);
    cfg.PO = p.P_O;
    cfg.hbar = p.hbar;
    return cfg;
}

frame_layout_t frame_layout(const system_params& p) {
    // Durations are validated to be whole microseconds so the ceiling is
    // computed on integers, never on a float like 0.999... .
    auto to_us = [](double seconds, const char* field) {
        double us = seconds * 1e6;
        long long r = std::llround(us);
        if (r < 1 || std::abs(us - static_cast<double>(r)) > 1e-6 * std::max(1.0, us))
            throw std::invalid_argument(std::string("config field '") + field +
                                        "': must be a whole number of microseconds");
        return r;
    };
    long long t_us = to_us(p.T, "T_ms");
    long long ts_us = to_us(p.T_s, "Ts_ms");
    frame_layout_t fl{};
    fl.n = static_cast<int>((static_cast<long long>(p.R) * ts_us + t_us - 1) / t_us);
    fl.L = fl.n + p.R + p.K + 1;
    fl.lambda_f = p.lambda * fl.L * p.T;
    fl.D_u = fl.L * p.T * p.R_u;
    return fl;
}

} // namespace trunksim
