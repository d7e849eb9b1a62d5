#pragma once

#include "trunksim/params.hpp"
#include "trunksim/rng.hpp"

namespace trunksim {

enum class sim_mode { trunked, baseline };

// Truncated channel inversion: invert the fade only when the gain clears mu,
// otherwise stay silent for the frame.
struct tci_policy {
    double mu;   // cutoff fade depth, -hbar*ln(1-P_O)
    double P_O;  // trunk outage probability
    double hbar; // mean channel power gain
};

tci_policy tci_cutoff(double P_O, double hbar);
double tci_outage(const tci_policy& policy);

// Channel power gain draw: exponential with mean hbar (Rayleigh envelope).
double rayleigh_sample(rng_stream& rng, double hbar);

// gamma = P * h * x^(-alpha) * K_D / sigma^2
double snr(double P_watt, double h, double x_m, const system_params& p);

// Pr(reservation decoded) = exp(-Gamma_m * sigma2 / (P_m * hbar * x^(-alpha) * K_D));
// trunked mode uses P_mU at distance x_m, baseline P_mB at distance x_U.
double decode_probability(const system_params& p, sim_mode mode);

// R_{i,a} = (D_u + a*D_m) / (T * (K + R - a)); a granted MTD payloads plus the
// user's own data spread over the remaining slots.
double aggregate_rate(int a, const frame_layout_t& fl, const system_params& p);

// Shannon inversion on the user-to-base-station link:
// P = (2^(rate/W) - 1) * sigma2 / (h * x_U^(-alpha) * K_D).
double instantaneous_power(double rate_bps, double h, const system_params& p);

// Mean transmit power sustaining the rate under the policy:
// (2^(rate/W) - 1) * sigma2 / (hbar * x_U^(-alpha) * K_D) * E1(mu/hbar).
double expected_trunk_power(double rate_bps, const tci_policy& policy, const system_params& p);

// E1(x) = int_x^inf e^(-t)/t dt for x > 0; power series below the crossover
// x = 1.0, modified Lentz continued fraction above it. 1e-10 relative
// accuracy over [1e-6, 50].
double exp_integral_e1(double x);

} // namespace trunksim
