#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "trunksim/analytics.hpp"
#include "trunksim/link_model.hpp"
#include "trunksim/params.hpp"
#include "trunksim/rng.hpp"

namespace trunksim {

// One simulated frame: arrivals, contention, grants, trunk transmission.
struct frame_outcome {
    int m = 0;               // arrivals in the frame
    int singles = 0;         // mini-slots chosen by exactly one MTD
    int granted = 0;         // singles whose reservation decoded
    double trunk_gain = 0.0; // user-to-base-station power gain draw
    bool trunk_outage = false;
    double trunk_rate = 0.0;  // bit/s
    double trunk_power = 0.0; // W
    int delivered_mtds = 0;   // granted if the trunk succeeded, else 0
};

// Accumulated Monte Carlo sums. Accumulators are 50-digit floats: every
// partial sum of double-valued samples in our magnitude range is represented
// exactly, which makes merging exactly associative and commutative, and the
// final statistics bit-identical for any worker count.
using sim_acc = boost::multiprecision::cpp_bin_float_50;

struct sim_stats {
    std::uint64_t fingerprint = 0; // parameter-point identity, 0 = empty wildcard
    std::uint64_t count = 0;       // frames

    sim_acc sum_a = 0, sumsq_a = 0;   // aggregated MTDs per frame
    sim_acc sum_d = 0, sumsq_d = 0;   // delivered MTDs per frame (= tagged-service successes)
    sim_acc sum_p = 0, sumsq_p = 0;   // trunk power per frame
    sim_acc sum_pa = 0;               // trunk_power * granted cross sum
    sim_acc sum_q = 0, sumsq_q = 0;   // per-MTD power sample on frames with granted >= 1
    std::uint64_t count_pos = 0;      // frames with granted >= 1
    sim_acc sum_m = 0, sumsq_m = 0;   // arrivals per frame (= tagged-service attempts)
    sim_acc sum_dm = 0;               // delivered * arrivals cross sum
    std::uint64_t outage_frames = 0;  // trunk outage occurrences

    void add(const frame_outcome& fo);

    double mean_a() const;
    double mean_d() const;
    double mean_p() const;
    double mean_q() const; // conditional per-MTD power estimate, NaN if no a>=1 frame
    double per_mtd_ratio() const; // sum_p / sum_a, 0 when sum_a = 0
    double p_s_hat() const;       // sum_d / sum_m, 0 when no arrivals
    double trunk_outage_rate() const;

    // 95% normal-approximation half-widths; empty when count < 2.
    std::optional<double> ci_a() const;
    std::optional<double> ci_d() const;
    std::optional<double> ci_p() const;
    std::optional<double> ci_q() const;
    std::optional<double> ci_per_mtd_ratio() const; // delta method with the p/a covariance
    std::optional<double> ci_p_s() const;           // delta method with the d/m covariance
};

std::uint64_t point_fingerprint(const system_params& p, sim_mode mode, std::uint64_t master_seed);

frame_outcome run_frame(rng_stream& rng, const system_params& p, const frame_layout_t& fl,
                        const tci_policy& policy, sim_mode mode);

// Replication j draws from the substream seeded by
// substream_seed(master_seed, point_index, j); any worker count yields a
// bit-identical result.
sim_stats run_replications(const system_params& p, sim_mode mode, std::uint64_t iters,
                           std::uint64_t master_seed, int workers,
                           std::uint64_t point_index = 0);

// Member-wise exact addition; rejects mismatched fingerprints. A
// default-constructed sim_stats acts as the identity.
sim_stats merge_stats(const sim_stats& x, const sim_stats& y);

} // namespace trunksim
