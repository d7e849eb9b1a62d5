#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace trunksim {

// Input parameters in the units of the parameter table: times in ms, rates in
// kbit/s, bandwidth in kHz, powers and noise in dBm, gains in dB. Defaults are
// the reference operating point.
struct raw_config {
    double lambda_per_s = 100.0; // packet arrival rate (1/s)
    int R = 10;                  // reservation mini-slots per frame
    int K = 1;                   // reserved trunking slots per frame
    double T_ms = 1.0;           // slot duration (ms)
    double Ts_ms = 0.1;          // mini-slot duration (ms)
    double Ru_kbps = 100.0;      // user's own data rate (kbit/s)
    double Dm_bits = 100.0;      // MTD payload per packet (bits)
    double W_khz = 180.0;        // trunk bandwidth (kHz)
    double sigma2_dbm = -97.0;   // noise power (dBm)
    double KD_db = -30.0;        // path-loss constant (dB)
    double alpha = 3.0;          // path-loss exponent
    double xm_m = 10.0;          // MTD to user distance (m)
    double xu_m = 200.0;         // user to base-station distance (m)
    double PmU_dbm = -20.0;      // MTD transmit power toward the user (dBm)
    double PmB_dbm = 18.0;       // MTD transmit power toward the base station (dBm)
    double Gamma_m_db = -3.0;    // reservation decode SNR threshold (dB)
    double PO = 0.01;            // target trunk outage probability
    double hbar = 1.0;           // mean channel power gain
};

// Same quantities in linear SI units; all internal computation uses these.
struct system_params {
    double lambda;  // 1/s
    int R;
    int K;
    double T;       // s
    double T_s;     // s
    double R_u;     // bit/s
    double D_m;     // bits
    double W;       // Hz
    double sigma2;  // W
    double K_D;     // linear
    double alpha;
    double x_m;     // m
    double x_U;     // m
    double P_mU;    // W
    double P_mB;    // W
    double Gamma_m; // linear
    double P_O;
    double hbar;
};

// Derived frame quantities: L = n + R + K + 1, lambda_f = lambda*L*T,
// D_u = L*T*R_u, n = ceil(R*T_s / T).
struct frame_layout_t {
    int n;
    int L;
    double lambda_f;
    double D_u;
};

// key=value text, one pair per line, '#' starts a comment, keys exactly the
// raw_config field names; unknown keys are an error. Missing keys keep their
// defaults.
raw_config parse_config_text(std::string_view text);
raw_config parse_config_file(const std::string& path);

// dBm -> W via 10^((x-30)/10), dB -> linear via 10^(x/10), everything else
// scaled to SI. Rejects non-finite or out-of-range fields, naming the field.
system_params build_params(const raw_config& cfg);

// Inverse of build_params; used for the round-trip property.
raw_config to_raw(const system_params& p);

// n is an exact integer ceiling of R*T_s/T on microsecond-scaled durations,
// so 10 * 0.1 ms never lands on 0.999... slots.
frame_layout_t frame_layout(const system_params& p);

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

} // namespace trunksim
