#include "trunksim/simulator.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace trunksim {

namespace {

double to_d(const sim_acc& v) { return static_cast<double>(v); }

// sample variance from exact sums; n >= 2
double variance(const sim_acc& sum, const sim_acc& sumsq, std::uint64_t n) {
    sim_acc num = sumsq - sum * sum / n;
    double v = to_d(num) / static_cast<double>(n - 1);
    return v > 0.0 ? v : 0.0;
}

double covariance(const sim_acc& sum_xy, const sim_acc& sum_x, const sim_acc& sum_y, std::uint64_t n) {
    sim_acc num = sum_xy - sum_x * sum_y / n;
    return to_d(num) / static_cast<double>(n - 1);
}

constexpr double z95 = 1.959963984540054; // two-sided 95% normal quantile

std::optional<double> mean_ci(const sim_acc& sum, const sim_acc& sumsq, std::uint64_t n) {
    if (n < 2) return std::nullopt;
    return z95 * std::sqrt(variance(sum, sumsq, n) / static_cast<double>(n));
}

// 95% half-width of the ratio (sum_x/n)/(sum_y/n) by the delta method.
std::optional<double> ratio_ci(const sim_acc& sum_x, const sim_acc& sumsq_x,
                               const sim_acc& sum_y, const sim_acc& sumsq_y,
                               const sim_acc& sum_xy, std::uint64_t n) {
    if (n < 2) return std::nullopt;
    double my = to_d(sum_y) / static_cast<double>(n);
    if (my == 0.0) return std::nullopt;
    double r = to_d(sum_x) / to_d(sum_y);
    double vx = variance(sum_x, sumsq_x, n);
    double vy = variance(sum_y, sumsq_y, n);
    double cxy = covariance(sum_xy, sum_x, sum_y, n);
    double var = (vx + r * r * vy - 2.0 * r * cxy) / (static_cast<double>(n) * my * my);
    return z95 * std::sqrt(var > 0.0 ? var : 0.0);
}

} // namespace

void sim_stats::add(const frame_outcome& fo) {
    ++count;
    double a = static_cast<double>(fo.granted);
    double d = static_cast<double>(fo.delivered_mtds);
    double m = static_cast<double>(fo.m);
    double P = fo.trunk_power;
    sum_a += a;
    sumsq_a += a * a;
    sum_d += d;
    sumsq_d += d * d;
    sum_p += P;
    sumsq_p += P * P;
    sum_pa += P * a;
    sum_m += m;
    sumsq_m += m * m;
    sum_dm += d * m;
    if (fo.granted >= 1) {
        double q = P / a;
        sum_q += q;
        sumsq_q += q * q;
        ++count_pos;
    }
    if (fo.trunk_outage) ++outage_frames;
}

double sim_stats::mean_a() const { return count ? to_d(sum_a) / static_cast<double>(count) : 0.0; }
double sim_stats::mean_d() const { return count ? to_d(sum_d) / static_cast<double>(count) : 0.0; }
double sim_stats::mean_p() const { return count ? to_d(sum_p) / static_cast<double>(count) : 0.0; }
double sim_stats::mean_q() const {
    return count_pos ? to_d(sum_q) / static_cast<double>(count_pos)
                     : std::numeric_limits<double>::quiet_NaN();
}
double sim_stats::per_mtd_ratio() const {
    double sa = to_d(sum_a);
    return sa > 0.0 ? to_d(sum_p) / sa : 0.0;
}
double sim_stats::p_s_hat() const {
    double sm = to_d(sum_m);
    return sm > 0.0 ? to_d(sum_d) / sm : 0.0;
}
double sim_stats::trunk_outage_rate() const {
    return count ? static_cast<double>(outage_frames) / static_cast<double>(count) : 0.0;
}

std::optional<double> sim_stats::ci_a() const { return mean_ci(sum_a, sumsq_a, count); }
std::optional<double> sim_stats::ci_d() const { return mean_ci(sum_d, sumsq_d, count); }
std::optional<double> sim_stats::ci_p() const { return mean_ci(sum_p, sumsq_p, count); }
std::optional<double> sim_stats::ci_q() const { return mean_ci(sum_q, sumsq_q, count_pos); }
std::optional<double> sim_stats::ci_per_mtd_ratio() const {
    return ratio_ci(sum_p, sumsq_p, sum_a, sumsq_a, sum_pa, count);
}
std::optional<double> sim_stats::ci_p_s() const {
    return ratio_ci(sum_d, sumsq_d, sum_m, sumsq_m, sum_dm, count);
}

std::uint64_t point_fingerprint(const system_params& p, sim_mode mode, std::uint64_t master_seed) {
    auto bits = [](double v) {
        std::uint64_t b;
        std::memcpy(&b, &v, sizeof b);
        return b;
    };
    std::uint64_t h = mix64(master_seed ^ 0x7472756e6b73696dULL);
    h = mix64(h ^ static_cast<std::uint64_t>(mode == sim_mode::trunked ? 1 : 2));
    h = mix64(h ^ static_cast<std::uint64_t>(p.R));
    h = mix64(h ^ static_cast<std::uint64_t>(p.K));
    h = mix64(h ^ bits(p.lambda));
    h = mix64(h ^ bits(p.T));
    h = mix64(h ^ bits(p.P_O));
    return h == 0 ? 1 : h;
}

frame_outcome run_frame(rng_stream& rng, const system_params& p, const frame_layout_t& fl,
                        const tci_policy& policy, sim_mode mode) {
    frame_outcome fo{};
    fo.m = rng.poisson(fl.lambda_f);

    thread_local std::vector<int> occ;
    occ.assign(static_cast<size_t>(p.R), 0);
    for (int i = 0; i < fo.m; ++i) occ[static_cast<size_t>(rng.uniform_int(p.R))]++;

    // Singles draw their reservation-phase gain in slot order; block fading
    // makes that one draw also cover the D2D data slot.
    double power = mode == sim_mode::trunked ? p.P_mU : p.P_mB;
    double dist = mode == sim_mode::trunked ? p.x_m : p.x_U;
    for (int r = 0; r < p.R; ++r) {
        if (occ[static_cast<size_t>(r)] != 1) continue;
        ++fo.singles;
        double h = rayleigh_sample(rng, p.hbar);
        if (snr(power, h, dist, p) >= p.Gamma_m) ++fo.granted;
    }

    if (mode == sim_mode::baseline) {
        fo.delivered_mtds = fo.granted;
        return fo;
    }

    fo.trunk_rate = aggregate_rate(fo.granted, fl, p);
    fo.trunk_gain = rayleigh_sample(rng, p.hbar);
    if (fo.trunk_gain < policy.mu) {
        fo.trunk_outage = true;
        fo.trunk_power = 0.0;
        fo.delivered_mtds = 0;
    } else {
        fo.trunk_power = instantaneous_power(fo.trunk_rate, fo.trunk_gain, p);
        fo.delivered_mtds = fo.granted;
    }
    return fo;
}

sim_stats run_replications(const system_params& p, sim_mode mode, std::uint64_t iters,
                           std::uint64_t master_seed, int workers, std::uint64_t point_index) {
    if (iters < 1) throw std::invalid_argument("run_replications: iters must be >= 1");
    if (workers < 1) throw std::invalid_argument("run_replications: workers must be >= 1");
    frame_layout_t fl = frame_layout(p);
    tci_policy policy = tci_cutoff(p.P_O, p.hbar);
    std::uint64_t fp = point_fingerprint(p, mode, master_seed);

    std::uint64_t nworkers = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), iters);
    std::vector<sim_stats> partial(nworkers);
    auto worker = [&](std::uint64_t w) {
        sim_stats local;
        local.fingerprint = fp;
        std::uint64_t lo = iters * w / nworkers;
        std::uint64_t hi = iters * (w + 1) / nworkers;
        for (std::uint64_t j = lo; j < hi; ++j) {
            rng_stream rng(substream_seed(master_seed, point_index, j));
            local.add(run_frame(rng, p, fl, policy, mode));
        }
        partial[w] = std::move(local);
    };

    if (nworkers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::uint64_t w = 0; w < nworkers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    sim_stats total = std::move(partial[0]);
    for (std::uint64_t w = 1; w < nworkers; ++w) total = merge_stats(total, partial[w]);
    return total;
}

sim_stats merge_stats(const sim_stats& x, const sim_stats& y) {
    if (x.count == 0 && x.fingerprint == 0) return y;
    if (y.count == 0 && y.fingerprint == 0) return x;
    if (x.fingerprint != y.fingerprint)
        throw std::invalid_argument("merge_stats: mismatched parameter fingerprints");
    sim_stats r = x;
    r.count += y.count;
    r.sum_a += y.sum_a;
    r.sumsq_a += y.sumsq_a;
    r.sum_d += y.sum_d;
    r.sumsq_d += y.sumsq_d;
    r.sum_p += y.sum_p;
    r.sumsq_p += y.sumsq_p;
    r.sum_pa += y.sum_pa;
    r.sum_q += y.sum_q;
    r.sumsq_q += y.sumsq_q;
    r.count_pos += y.count_pos;
    r.sum_m += y.sum_m;
    r.sumsq_m += y.sumsq_m;
    r.sum_dm += y.sum_dm;
    r.outage_frames += y.outage_frames;
    return r;
}

} // namespace trunksim
