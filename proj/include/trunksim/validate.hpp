#pragma once

#include <string>

#include "trunksim/sweep.hpp"

namespace trunksim {

struct validate_result {
    bool all_pass = false;
    std::string report;
};

// Cross-checks the closed forms against the simulator on every grid point.
// A metric passes when |analytic - sim| <= max(tolerance * analytic,
// 95% CI half-width of the simulated estimate). Trunked points compare
// e_n_aggregated, p_s and the per-served-MTD trunk power; baseline points
// additionally require e_p_m = 2*P_mB exactly. The report shows both
// served-rate readings (mean-based and bare probability-sum) and both trunk
// power normalizations (frame total and per-served-MTD share).
validate_result run_validate(const raw_config& base, const sweep_spec& spec, double tolerance);

// The default acceptance sweep grid: lambda {100,250,500,800}, R {10,20},
// K {1,5}, trunked, seed 42, 1e5 iterations.
sweep_spec default_validate_spec();

} // namespace trunksim
