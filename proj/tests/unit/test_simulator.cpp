#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "trunksim/analytics.hpp"
#include "trunksim/simulator.hpp"

using namespace trunksim;

namespace {

system_params at_lambda(double lam, int R = 10, int K = 1) {
    raw_config cfg;
    cfg.lambda_per_s = lam;
    cfg.R = R;
    cfg.K = K;
    return build_params(cfg);
}

} // namespace

TEST_CASE("a frame with no arrivals still carries the user's own data") {
    system_params p = at_lambda(0.0);
    frame_layout_t fl = frame_layout(p);
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    rng_stream rng(1);
    for (int i = 0; i < 50; ++i) {
        frame_outcome fo = run_frame(rng, p, fl, pol, sim_mode::trunked);
        CHECK(fo.m == 0);
        CHECK(fo.singles == 0);
        CHECK(fo.granted == 0);
        CHECK(fo.delivered_mtds == 0);
        CHECK(fo.trunk_rate == doctest::Approx(118181.81818181818).epsilon(1e-12));
        if (!fo.trunk_outage) CHECK(fo.trunk_power > 0.0);
        if (fo.trunk_outage) CHECK(fo.trunk_power == 0.0);
    }
}

TEST_CASE("frame invariants hold under load") {
    system_params p = at_lambda(769.0);
    frame_layout_t fl = frame_layout(p);
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    rng_stream rng(3);
    bool ok = true;
    for (int i = 0; i < 20000 && ok; ++i) {
        frame_outcome fo = run_frame(rng, p, fl, pol, sim_mode::trunked);
        ok = ok && fo.granted <= fo.singles;
        ok = ok && fo.singles <= std::min(fo.m, p.R);
        ok = ok && fo.delivered_mtds == (fo.trunk_outage ? 0 : fo.granted);
        ok = ok && (fo.trunk_outage ? fo.trunk_power == 0.0 : fo.trunk_power > 0.0);
        ok = ok && fo.trunk_rate >= 118181.0;
        ok = ok && fo.m >= 0;
    }
    CHECK(ok);
}

TEST_CASE("baseline frames skip the trunk") {
    system_params p = at_lambda(500.0);
    frame_layout_t fl = frame_layout(p);
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    rng_stream rng(17);
    bool ok = true;
    for (int i = 0; i < 5000 && ok; ++i) {
        frame_outcome fo = run_frame(rng, p, fl, pol, sim_mode::baseline);
        ok = ok && fo.delivered_mtds == fo.granted;
        ok = ok && fo.trunk_power == 0.0 && fo.trunk_rate == 0.0 && !fo.trunk_outage;
    }
    CHECK(ok);
}

TEST_CASE("a zero decode threshold grants every single") {
    system_params p = at_lambda(769.0);
    p.Gamma_m = 0.0;
    frame_layout_t fl = frame_layout(p);
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    rng_stream rng(5);
    bool ok = true;
    for (int i = 0; i < 5000 && ok; ++i) {
        frame_outcome fo = run_frame(rng, p, fl, pol, sim_mode::trunked);
        ok = ok && fo.granted == fo.singles;
    }
    CHECK(ok);
}

TEST_CASE("empirical aggregated mean agrees with the closed form") {
    system_params p = at_lambda(769.0);
    sim_stats st = run_replications(p, sim_mode::trunked, 100000, 7, 4);
    metrics_report ana = evaluate_point(p, sim_mode::trunked, true);
    frame_layout_t fl = frame_layout(p);
    double expect_a = ana.e_n_aggregated * fl.L * p.T;
    double se = st.ci_a().value() / 1.959963984540054;
    CHECK(std::fabs(st.mean_a() - expect_a) < 3.0 * se);
}

TEST_CASE("empirical singles histogram tracks the occupancy law") {
    for (double lf_target : {1.0, 5.0, 10.0}) {
        system_params p = at_lambda(lf_target / 0.013);
        frame_layout_t fl = frame_layout(p);
        tci_policy pol = tci_cutoff(p.P_O, p.hbar);
        rng_stream rng(23);
        const int N = 100000;
        std::vector<double> hist(static_cast<size_t>(p.R) + 1, 0.0);
        for (int i = 0; i < N; ++i)
            hist[static_cast<size_t>(run_frame(rng, p, fl, pol, sim_mode::trunked).singles)] += 1.0;
        for (double& h : hist) h /= N;
        discrete_dist emp{0, hist};
        double tv = total_variation(emp, singles_distribution(p.R, fl.lambda_f));
        CHECK(tv < 0.01);
    }
}

TEST_CASE("empirical trunk outage matches the target") {
    system_params p = at_lambda(250.0);
    sim_stats st = run_replications(p, sim_mode::trunked, 100000, 13, 4);
    double se = std::sqrt(0.01 * 0.99 / 100000.0);
    CHECK(std::fabs(st.trunk_outage_rate() - 0.01) < 3.0 * se);
}

TEST_CASE("simulated per-machine power stays within 5% of the closed form") {
    for (int R : {10, 20}) {
        system_params p = at_lambda(250.0, R);
        sim_stats st = run_replications(p, sim_mode::trunked, 100000, 42, 4);
        double sim_epm = 2.0 * p.P_mU + st.per_mtd_ratio();
        metrics_report ana = evaluate_point(p, sim_mode::trunked, true);
        CHECK(std::fabs(sim_epm - ana.e_p_m) < 0.05 * ana.e_p_m);
    }
}

TEST_CASE("tagged service frequency agrees with the closed form") {
    system_params p = at_lambda(250.0);
    sim_stats st = run_replications(p, sim_mode::trunked, 100000, 19, 4);
    metrics_report ana = evaluate_point(p, sim_mode::trunked, true);
    double ci = st.ci_p_s().value();
    // 3 standard errors = 3/1.96 of the 95% half-width
    CHECK(std::fabs(st.p_s_hat() - ana.p_s) < ci * 3.0 / 1.959963984540054);
}

TEST_CASE("worker count never changes the result") {
    system_params p = at_lambda(500.0);
    sim_stats s1 = run_replications(p, sim_mode::trunked, 20000, 123, 1);
    sim_stats s8 = run_replications(p, sim_mode::trunked, 20000, 123, 8);
    sim_stats s3 = run_replications(p, sim_mode::trunked, 20000, 123, 3);
    CHECK(s1.count == s8.count);
    CHECK(s1.sum_a == s8.sum_a);
    CHECK(s1.sumsq_a == s8.sumsq_a);
    CHECK(s1.sum_p == s8.sum_p);
    CHECK(s1.sumsq_p == s8.sumsq_p);
    CHECK(s1.sum_pa == s8.sum_pa);
    CHECK(s1.sum_q == s3.sum_q);
    CHECK(s1.sum_m == s3.sum_m);
    CHECK(s1.sum_dm == s3.sum_dm);
    CHECK(s1.count_pos == s8.count_pos);
    CHECK(s1.outage_frames == s8.outage_frames);
    CHECK(s1.mean_p() == s8.mean_p());
    CHECK(s1.per_mtd_ratio() == s3.per_mtd_ratio());
    CHECK(s1.ci_per_mtd_ratio().value() == s8.ci_per_mtd_ratio().value());
}

TEST_CASE("independent seeds agree within joint confidence bounds") {
    system_params p = at_lambda(400.0);
    sim_stats s1 = run_replications(p, sim_mode::trunked, 50000, 1001, 4);
    sim_stats s2 = run_replications(p, sim_mode::trunked, 50000, 2002, 4);
    CHECK(std::fabs(s1.mean_a() - s2.mean_a()) < s1.ci_a().value() + s2.ci_a().value());
    CHECK(s1.sum_a != s2.sum_a); // genuinely different draws
}

TEST_CASE("confidence intervals need at least two frames") {
    system_params p = at_lambda(250.0);
    sim_stats st = run_replications(p, sim_mode::trunked, 1, 5, 4);
    CHECK(st.count == 1);
    CHECK(!st.ci_a().has_value());
    CHECK(!st.ci_p_s().has_value());
    CHECK_THROWS_AS(run_replications(p, sim_mode::trunked, 0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_replications(p, sim_mode::trunked, 10, 5, 0), std::invalid_argument);
}

TEST_CASE("merge is an exact fold") {
    system_params p = at_lambda(300.0);
    frame_layout_t fl = frame_layout(p);
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    std::uint64_t fp = point_fingerprint(p, sim_mode::trunked, 77);

    sim_stats parts[3];
    for (auto& s : parts) s.fingerprint = fp;
    sim_stats whole;
    whole.fingerprint = fp;
    for (std::uint64_t j = 0; j < 3000; ++j) {
        rng_stream rng(substream_seed(77, 0, j));
        frame_outcome fo = run_frame(rng, p, fl, pol, sim_mode::trunked);
        parts[j % 3].add(fo);
        whole.add(fo);
    }
    sim_stats ab = merge_stats(merge_stats(parts[0], parts[1]), parts[2]);
    sim_stats ba = merge_stats(parts[2], merge_stats(parts[1], parts[0]));
    CHECK(ab.count == whole.count);
    CHECK(ab.sum_p == whole.sum_p);
    CHECK(ab.sumsq_p == whole.sumsq_p);
    CHECK(ab.sum_q == whole.sum_q);
    CHECK(ab.sum_dm == whole.sum_dm);
    CHECK(ab.sum_p == ba.sum_p);
    CHECK(ab.sumsq_q == ba.sumsq_q);
    CHECK(ab.count_pos == whole.count_pos);

    // default-constructed stats act as the identity
    sim_stats empty;
    sim_stats same = merge_stats(empty, whole);
    CHECK(same.count == whole.count);
    CHECK(same.sum_a == whole.sum_a);
    CHECK(merge_stats(whole, empty).sum_a == whole.sum_a);
}

TEST_CASE("merging different parameter points is rejected") {
    system_params p = at_lambda(300.0);
    sim_stats s1 = run_replications(p, sim_mode::trunked, 10, 5, 1);
    sim_stats s2 = run_replications(p, sim_mode::trunked, 10, 6, 1); // different seed
    CHECK_THROWS_AS(merge_stats(s1, s2), std::invalid_argument);
    sim_stats s3 = run_replications(p, sim_mode::baseline, 10, 5, 1); // different mode
    CHECK_THROWS_AS(merge_stats(s1, s3), std::invalid_argument);
}

TEST_CASE("point fingerprints separate parameter points") {
    system_params p = at_lambda(300.0);
    system_params p2 = at_lambda(301.0);
    CHECK(point_fingerprint(p, sim_mode::trunked, 42) != point_fingerprint(p2, sim_mode::trunked, 42));
    CHECK(point_fingerprint(p, sim_mode::trunked, 42) != point_fingerprint(p, sim_mode::baseline, 42));
    CHECK(point_fingerprint(p, sim_mode::trunked, 42) != point_fingerprint(p, sim_mode::trunked, 43));
    CHECK(point_fingerprint(p, sim_mode::trunked, 42) == point_fingerprint(p, sim_mode::trunked, 42));
    CHECK(point_fingerprint(p, sim_mode::trunked, 42) != 0);
}

TEST_CASE("substream seeds do not collide across points and replications") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t pt = 0; pt < 50; ++pt)
        for (std::uint64_t j = 0; j < 200; ++j)
            seen.insert(substream_seed(42, pt, j));
    CHECK(seen.size() == 50u * 200u);
}

TEST_CASE("per-frame sample mean stays near the ratio estimate at moderate load") {
    // the conditional per-MTD sample average is a different statistic from the
    // ratio of means; both must be finite and positive under load
    system_params p = at_lambda(500.0);
    sim_stats st = run_replications(p, sim_mode::trunked, 20000, 31, 4);
    CHECK(st.count_pos > 0);
    CHECK(std::isfinite(st.mean_q()));
    CHECK(st.mean_q() > 0.0);
    CHECK(st.per_mtd_ratio() > 0.0);
}
