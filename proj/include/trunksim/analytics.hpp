#pragma once

#include "trunksim/link_model.hpp"
#include "trunksim/occupancy.hpp"
#include "trunksim/params.hpp"

namespace trunksim {

// Closed-form metrics for one parameter point.
struct metrics_report {
    double e_n_aggregated;  // MTDs aggregated per second
    double e_n_delivered;   // MTDs surviving the trunk per second
    double e_p_tr_total;    // mean trunk power per frame (W)
    double e_p_tr_per_mtd;  // trunk power share per served MTD (W), 0 when E[A]=0
    double e_p_m;           // mean transmit power per served machine (W)
    double p_s;             // probability an arriving MTD is served end to end
    double outage;          // 1 - p_s
};

// Pr(A=a|R) = sum_{s=a}^{R} C(s,a) p_d^a (1-p_d)^(s-a) Pr(S=s|R); exact
// selects the exact mixture occupancy, otherwise the binomial approximation.
discrete_dist served_distribution(int R, double lambda_f, double p_d, bool exact);

// e_n_aggregated = E[A]/(L*T); e_n_delivered scales by the trunk success
// probability in trunked mode and equals e_n_aggregated in baseline mode
// (no trunk to fail).
std::pair<double, double> expected_served(const system_params& p, const frame_layout_t& fl,
                                          sim_mode mode, bool exact);

// Total mean trunk power sum_a E[P|R_{i,a}] Pr(A=a|R) and its per-served-MTD
// share; the share is the total divided by E[A].
std::pair<double, double> expected_trunk_power_avg(const system_params& p, const frame_layout_t& fl,
                                                   const tci_policy& policy, bool exact);

// trunked: 2*P_mU + trunk share per MTD; baseline: 2*P_mB flat.
double expected_power_per_machine(const system_params& p, const frame_layout_t& fl,
                                  const tci_policy& policy, sim_mode mode, bool exact);

// Tagged-arrival service probability: the tagged MTD wins its mini-slot alone
// with probability e^(-lambda_f/R), decodes with p_d, and in trunked mode the
// trunk must clear the cutoff.
double service_probability(const system_params& p, const frame_layout_t& fl,
                           const tci_policy& policy, sim_mode mode);

metrics_report evaluate_point(const system_params& p, sim_mode mode, bool exact);

} // namespace trunksim
