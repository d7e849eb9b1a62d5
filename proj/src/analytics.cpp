#include "trunksim/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace trunksim {

discrete_dist served_distribution(int R, double lambda_f, double p_d, bool exact) {
    if (!(p_d >= 0.0 && p_d <= 1.0)) throw std::invalid_argument("served_distribution: p_d outside [0,1]");
    discrete_dist s_dist = exact ? singles_distribution(R, lambda_f)
                                 : singles_distribution_approx(R, lambda_f);
    if (p_d == 1.0) return s_dist; // no thinning
    discrete_dist a_dist;
    a_dist.min_support = 0;
    a_dist.probs.assign(static_cast<size_t>(R) + 1, 0.0);

    // Binomial thinning of the singles count; row of C(s,a) p_d^a q^(s-a)
    // built by recurrence to avoid lgamma noise at small sizes.
    std::vector<long double> acc(static_cast<size_t>(R) + 1, 0.0L);
    long double q = 1.0L - static_cast<long double>(p_d);
    for (int s = 0; s <= R; ++s) {
        long double ps = static_cast<long double>(s_dist.probs[static_cast<size_t>(s)]);
        if (ps == 0.0L) continue;
        long double w = 1.0L;
        for (int j = 0; j < s; ++j) w *= q; // a = 0 term: q^s
        for (int a = 0; a <= s; ++a) {
            acc[static_cast<size_t>(a)] += ps * w;
            if (a < s)
                w = w * static_cast<long double>(p_d) / q * (s - a) / (a + 1);
        }
    }
    for (int a = 0; a <= R; ++a) a_dist.probs[static_cast<size_t>(a)] = static_cast<double>(acc[static_cast<size_t>(a)]);
    return a_dist;
}

std::pair<double, double> expected_served(const system_params& p, const frame_layout_t& fl,
                                          sim_mode mode, bool exact) {
    double p_d = decode_probability(p, mode);
    discrete_dist a_dist = served_distribution(p.R, fl.lambda_f, p_d, exact);
    double e_agg = a_dist.mean() / (fl.L * p.T);
    double e_del = mode == sim_mode::trunked ? e_agg * (1.0 - p.P_O) : e_agg;
    return {e_agg, e_del};
}

std::pair<double, double> expected_trunk_power_avg(const system_params& p, const frame_layout_t& fl,
                                                   const tci_policy& policy, bool exact) {
    double p_d = decode_probability(p, sim_mode::trunked);
    discrete_dist a_dist = served_distribution(p.R, fl.lambda_f, p_d, exact);
    double total = 0.0;
    for (int a = 0; a <= p.R; ++a)
        total += expected_trunk_power(aggregate_rate(a, fl, p), policy, p) * a_dist.pmf(a);
    double ea = a_dist.mean();
    double per_mtd = ea > 0.0 ? total / ea : 0.0;
    return {total, per_mtd};
}

double expected_power_per_machine(const system_params& p, const frame_layout_t& fl,
                                  const tci_policy& policy, sim_mode mode, bool exact) {
    if (mode == sim_mode::baseline) return 2.0 * p.P_mB;
    auto [total, per_mtd] = expected_trunk_power_avg(p, fl, policy, exact);
    (void)total;
    return 2.0 * p.P_mU + per_mtd;
}

double service_probability(const system_params& p, const frame_layout_t& fl,
                           const tci_policy& policy, sim_mode mode) {
    double p_d = decode_probability(p, mode);
    double win_alone = std::exp(-fl.lambda_f / p.R);
    double trunk_ok = mode == sim_mode::trunked ? 1.0 - tci_outage(policy) : 1.0;
    return trunk_ok * p_d * win_alone;
}

metrics_report evaluate_point(const system_params& p, sim_mode mode, bool exact) {
    frame_layout_t fl = frame_layout(p);
    tci_policy policy = tci_cutoff(p.P_O, p.hbar);
    metrics_report r{};
    auto [agg, del] = expected_served(p, fl, mode, exact);
    r.e_n_aggregated = agg;
    r.e_n_delivered = del;
    if (mode == sim_mode::trunked) {
        auto [total, per_mtd] = expected_trunk_power_avg(p, fl, policy, exact);
        r.e_p_tr_total = total;
        r.e_p_tr_per_mtd = per_mtd;
    } else {
        r.e_p_tr_total = 0.0;
        r.e_p_tr_per_mtd = 0.0;
    }
    r.e_p_m = expected_power_per_machine(p, fl, policy, mode, exact);
    r.p_s = service_probability(p, fl, policy, mode);
    r.outage = 1.0 - r.p_s;
    return r;
}

} // namespace trunksim
