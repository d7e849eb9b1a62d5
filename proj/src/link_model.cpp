#include "trunksim/link_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trunksim {

tci_policy tci_cutoff(double P_O, double hbar) {
    if (!(P_O > 0.0 && P_O < 1.0)) throw std::invalid_argument("tci_cutoff: P_O must be in (0,1)");
    if (!(hbar > 0.0)) throw std::invalid_argument("tci_cutoff: hbar must be > 0");
    return tci_policy{-hbar * std::log1p(-P_O), P_O, hbar};
}

double tci_outage(const tci_policy& policy) {
    return -std::expm1(-policy.mu / policy.hbar);
}

double rayleigh_sample(rng_stream& rng, double hbar) {
    return rng.exponential(hbar);
}

double snr(double P_watt, double h, double x_m, const system_params& p) {
    return P_watt * h * std::pow(x_m, -p.alpha) * p.K_D / p.sigma2;
}

double decode_probability(const system_params& p, sim_mode mode) {
    double power = mode == sim_mode::trunked ? p.P_mU : p.P_mB;
    double dist = mode == sim_mode::trunked ? p.x_m : p.x_U;
    return std::exp(-p.Gamma_m * p.sigma2 / (power * p.hbar * std::pow(dist, -p.alpha) * p.K_D));
}

double aggregate_rate(int a, const frame_layout_t& fl, const system_params& p) {
    return (fl.D_u + a * p.D_m) / (p.T * (p.K + p.R - a));
}

double instantaneous_power(double rate_bps, double h, const system_params& p) {
    if (rate_bps == 0.0) return 0.0;
    return std::expm1(rate_bps / p.W * std::log(2.0)) * p.sigma2 /
           (h * std::pow(p.x_U, -p.alpha) * p.K_D);
}

double expected_trunk_power(double rate_bps, const tci_policy& policy, const system_params& p) {
    if (rate_bps == 0.0) return 0.0;
    return std::expm1(rate_bps / p.W * std::log(2.0)) * p.sigma2 /
           (policy.hbar * std::pow(p.x_U, -p.alpha) * p.K_D) *
           exp_integral_e1(policy.mu / policy.hbar);
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
    constexpr double euler_gamma = 0.57721566490153286060651209;
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k * k!)
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -x / k;
            double delta = -term / k;
            sum += delta;
            if (std::abs(delta) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Continued fraction e^(-x) / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))),
    // evaluated with the modified Lentz algorithm.
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x);
}

} // namespace trunksim
