#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "support/oracles.hpp"
#include "trunksim/link_model.hpp"
#include "trunksim/params.hpp"
#include "trunksim/rng.hpp"

using namespace trunksim;

namespace {
system_params reference() { return build_params(raw_config{}); }
} // namespace

TEST_CASE("tci cutoff at the reference outage target") {
    tci_policy pol = tci_cutoff(0.01, 1.0);
    CHECK(pol.mu == doctest::Approx(0.010050335853501441).epsilon(1e-12));
    CHECK(pol.P_O == 0.01);
    CHECK(pol.hbar == 1.0);
    // cutoff scales with the mean gain
    CHECK(tci_cutoff(0.01, 2.0).mu == doctest::Approx(2.0 * pol.mu).epsilon(1e-12));
}

TEST_CASE("tci outage round-trips the cutoff to a few ulp") {
    for (double po : {1e-6, 1e-3, 0.01, 0.1, 0.5}) {
        tci_policy pol = tci_cutoff(po, 1.0);
        CHECK(tci_outage(pol) == doctest::Approx(po).epsilon(1e-14));
    }
    CHECK(tci_outage(tci_policy{1.0, 0.0, 1.0}) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    // zero outage would demand unbounded inversion power
    CHECK_THROWS_AS(tci_cutoff(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tci_cutoff(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("snr at the reference reservation link") {
    system_params p = reference();
    double g = snr(p.P_mU, 1.0, p.x_m, p);
    CHECK(g == doctest::Approx(50.118723362727145).epsilon(1e-9));
    CHECK(snr(2.0 * p.P_mU, 1.0, p.x_m, p) == doctest::Approx(2.0 * g).epsilon(1e-14));
    CHECK(snr(p.P_mU, 0.0, p.x_m, p) == 0.0);
    // farther means weaker
    CHECK(snr(p.P_mU, 1.0, 2.0 * p.x_m, p) < g);
}

TEST_CASE("decode probabilities of the two reservation links") {
    system_params p = reference();
    CHECK(decode_probability(p, sim_mode::trunked) == doctest::Approx(0.9900498337491681).epsilon(1e-9));
    CHECK(decode_probability(p, sim_mode::baseline) == doctest::Approx(0.987401).epsilon(1e-5));
    p.Gamma_m = 0.0;
    CHECK(decode_probability(p, sim_mode::trunked) == 1.0);
    CHECK(decode_probability(p, sim_mode::baseline) == 1.0);
}

TEST_CASE("aggregate rate over the trunk slots") {
    system_params p = reference();
    frame_layout_t fl = frame_layout(p);
    CHECK(aggregate_rate(0, fl, p) == doctest::Approx(118181.81818181818).epsilon(1e-12));
    CHECK(aggregate_rate(10, fl, p) == doctest::Approx(2.3e6).epsilon(1e-12));
    for (int a = 1; a <= p.R; ++a)
        CHECK(aggregate_rate(a, fl, p) > aggregate_rate(a - 1, fl, p));
}

TEST_CASE("instantaneous power inverts the shannon rate") {
    system_params p = reference();
    CHECK(instantaneous_power(0.0, 1.0, p) == 0.0);
    CHECK(instantaneous_power(118181.81818181818, 1.0, p) == doctest::Approx(9.1996e-4).epsilon(1e-4));
    // deeper fades need more power
    CHECK(instantaneous_power(1e5, 0.5, p) == doctest::Approx(2.0 * instantaneous_power(1e5, 1.0, p)).epsilon(1e-12));

    rng_stream rng(2024);
    for (int i = 0; i < 1000; ++i) {
        double rate = 1e3 + rng.uniform01() * 5e6;
        double h = 0.01 + rng.uniform01() * 10.0;
        double pw = instantaneous_power(rate, h, p);
        double back = p.W * std::log2(1.0 + pw * h * std::pow(p.x_U, -p.alpha) * p.K_D / p.sigma2);
        CHECK(back == doctest::Approx(rate).epsilon(1e-9));
    }
}

TEST_CASE("expected trunk power at the reference idle rate") {
    system_params p = reference();
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    CHECK(expected_trunk_power(0.0, pol, p) == 0.0);
    CHECK(expected_trunk_power(118181.81818181818, pol, p) == doctest::Approx(3.71018e-3).epsilon(1e-4));
}

TEST_CASE("expected trunk power matches direct quadrature") {
    system_params p = reference();
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    for (double rate : {1e3, 1e4, 1e5, 118181.81818181818, 1e6, 5e6, 1e7}) {
        double q = oracles::trunk_power_quadrature(rate, pol, p);
        CHECK(expected_trunk_power(rate, pol, p) == doctest::Approx(q).epsilon(1e-8));
    }
    // a different outage target and mean gain
    tci_policy pol2 = tci_cutoff(0.05, 2.0);
    system_params p2 = p;
    p2.hbar = 2.0;
    for (double rate : {1e4, 1e6}) {
        double q = oracles::trunk_power_quadrature(rate, pol2, p2);
        CHECK(expected_trunk_power(rate, pol2, p2) == doctest::Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("expected trunk power is monotone") {
    system_params p = reference();
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    double prev = 0.0;
    for (double rate : {1e4, 1e5, 5e5, 1e6, 2e6}) {
        double v = expected_trunk_power(rate, pol, p);
        CHECK(v > prev);
        prev = v;
    }
    // a laxer outage target transmits through fewer deep fades: less power
    CHECK(expected_trunk_power(1e5, tci_cutoff(0.05, 1.0), p) <
          expected_trunk_power(1e5, tci_cutoff(0.01, 1.0), p));
}

TEST_CASE("exponential integral E1 reference values") {
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552029).epsilon(1e-10));
    CHECK(exp_integral_e1(10.0) == doctest::Approx(4.15696892968532e-6).epsilon(1e-8));
    CHECK(exp_integral_e1(0.5) == doctest::Approx(0.55977359477616081).epsilon(1e-10));
    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-1.0), std::domain_error);
}

TEST_CASE("exponential integral E1 against quadrature on a log grid") {
    for (int i = 0; i < 200; ++i) {
        double x = std::pow(10.0, -6.0 + 7.699 * i / 199.0); // 1e-6 .. ~5e1
        double q = oracles::e1_quadrature(x);
        CHECK(exp_integral_e1(x) == doctest::Approx(q).epsilon(1e-10));
    }
    // series / continued-fraction crossover is seamless
    CHECK(exp_integral_e1(std::nextafter(1.0, 0.0)) ==
          doctest::Approx(exp_integral_e1(std::nextafter(1.0, 2.0))).epsilon(1e-12));
}

TEST_CASE("rayleigh gain sampling statistics") {
    rng_stream rng(99);
    const int N = 1000000;
    double sum = 0.0, low = 0.0;
    int below = 0;
    double mu = tci_cutoff(0.01, 1.0).mu;
    for (int i = 0; i < N; ++i) {
        double h = rayleigh_sample(rng, 1.0);
        low = std::min(low, h);
        sum += h;
        if (h < mu) ++below;
    }
    CHECK(low >= 0.0);
    CHECK(sum / N == doctest::Approx(1.0).epsilon(3e-3));
    CHECK(static_cast<double>(below) / N == doctest::Approx(0.01).epsilon(1e-3));

    rng_stream rng2(99);
    double sum2 = 0.0;
    for (int i = 0; i < 1000; ++i) sum2 += rayleigh_sample(rng2, 2.0);
    CHECK(sum2 / 1000.0 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("monte carlo decode frequency agrees with the closed form") {
    system_params p = reference();
    rng_stream rng(7);
    const int N = 1000000;
    int ok = 0;
    for (int i = 0; i < N; ++i) {
        double h = rayleigh_sample(rng, p.hbar);
        if (snr(p.P_mU, h, p.x_m, p) >= p.Gamma_m) ++ok;
    }
    double pd = decode_probability(p, sim_mode::trunked);
    double se = std::sqrt(pd * (1.0 - pd) / N);
    CHECK(std::fabs(static_cast<double>(ok) / N - pd) < 3.0 * se + 1e-12);
}

TEST_CASE("monte carlo truncated-inversion power agrees with the closed form") {
    system_params p = reference();
    tci_policy pol = tci_cutoff(p.P_O, p.hbar);
    double rate = 118181.81818181818;
    rng_stream rng(11);
    const int N = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < N; ++i) {
        double h = rayleigh_sample(rng, p.hbar);
        double pw = (h >= pol.mu) ? instantaneous_power(rate, h, p) : 0.0;
        sum += pw;
        sumsq += pw * pw;
    }
    double mean = sum / N;
    double se = std::sqrt((sumsq / N - mean * mean) / N);
    double expect = expected_trunk_power(rate, pol, p);
    CHECK(std::fabs(mean - expect) < 3.0 * se);
}
