#include "trunksim/occupancy.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace trunksim {

namespace {

using bigfloat = boost::multiprecision::cpp_bin_float_50;

bigint binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    bigint r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// falling factorial m * (m-1) * ... * (m-s+1)
bigint falling(unsigned m, unsigned s) {
    if (s > m) return 0;
    bigint r = 1;
    for (unsigned i = 0; i < s; ++i) r *= m - i;
    return r;
}

bigint ipow(unsigned base, unsigned exp) {
    // 0^0 = 1 by the empty-product convention
    bigint r = 1;
    bigint b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

double rational_to_double(const bigrat& q) {
    // Numerator and denominator can exceed the double exponent range
    // independently (R^m grows fast), so the quotient is formed in a wide
    // float first.
    bigfloat num(boost::multiprecision::numerator(q));
    bigfloat den(boost::multiprecision::denominator(q));
    return static_cast<double>(num / den);
}

} // namespace

double total_variation(const discrete_dist& a, const discrete_dist& b) {
    int lo = std::min(a.min_support, b.min_support);
    int hi = std::max(a.max_support(), b.max_support());
    double tv = 0.0;
    for (int v = lo; v <= hi; ++v) tv += std::abs(a.pmf(v) - b.pmf(v));
    return 0.5 * tv;
}

bigint g_count(unsigned u, unsigned v) {
    // G(u,v) = sum_{t=0}^{v} (-1)^t C(v,t) * u!/(u-t)! * (u-t)^(v-t),
    // with C(n,k) = 0 for n < k and 0^0 = 1.
    bigint total = 0;
    for (unsigned t = 0; t <= v; ++t) {
        if (t > u) break; // falling factorial vanishes
        bigint term = binom(v, t) * falling(u, t) * ipow(u - t, v - t);
        if (t & 1u)
            total -= term;
        else
            total += term;
    }
    return total;
}

bigrat singles_given_arrivals_rational(int s, int m, int R) {
    if (s < 0 || m < 0 || R < 1) throw std::invalid_argument("singles_given_arrivals: bad arguments");
    if (s > m || s > R) return 0; // outside the support, not a usage error
    bigint num = binom(static_cast<unsigned>(R), static_cast<unsigned>(s)) *
                 falling(static_cast<unsigned>(m), static_cast<unsigned>(s)) *
                 g_count(static_cast<unsigned>(R - s), static_cast<unsigned>(m - s));
    bigint den = ipow(static_cast<unsigned>(R), static_cast<unsigned>(m));
    return bigrat(num, den);
}

double singles_given_arrivals(int s, int m, int R) {
    return rational_to_double(singles_given_arrivals_rational(s, m, R));
}

bigrat singles_given_arrivals_oracle_rational(int s, int m, int R) {
    if (s < 0 || m < 0 || R < 1) throw std::invalid_argument("oracle: bad arguments");
    if (s > m || s > R) return 0;
    double bound = std::pow(static_cast<double>(R), m);
    if (bound > 1e7) throw std::invalid_argument("oracle: R^m exceeds the enumeration bound 1e7");
    long long total = static_cast<long long>(bound + 0.5);
    std::vector<int> slot(static_cast<size_t>(m), 0);
    std::vector<int> occ(static_cast<size_t>(R), 0);
    long long hits = 0;
    for (long long idx = 0; idx < total; ++idx) {
        long long x = idx;
        std::fill(occ.begin(), occ.end(), 0);
        for (int i = 0; i < m; ++i) {
            occ[static_cast<size_t>(x % R)]++;
            x /= R;
        }
        int singles = 0;
        for (int r = 0; r < R; ++r)
            if (occ[static_cast<size_t>(r)] == 1) ++singles;
        if (singles == s) ++hits;
    }
    return bigrat(hits, total);
}

double singles_given_arrivals_oracle(int s, int m, int R) {
    return rational_to_double(singles_given_arrivals_oracle_rational(s, m, R));
}

double poisson_pmf(int m, double lambda_f) {
    if (m < 0) return 0.0;
    if (lambda_f == 0.0) return m == 0 ? 1.0 : 0.0;
    return std::exp(m * std::log(lambda_f) - lambda_f - std::lgamma(m + 1.0));
}

discrete_dist singles_distribution(int R, double lambda_f) {
    if (R < 1 || lambda_f < 0.0) throw std::invalid_argument("singles_distribution: bad arguments");
    discrete_dist d;
    d.min_support = 0;
    d.probs.assign(static_cast<size_t>(R) + 1, 0.0);
    if (lambda_f == 0.0) {
        d.probs[0] = 1.0;
        return d;
    }

    const int cap = static_cast<int>(20.0 * lambda_f + 200.0);
    std::vector<long double> acc(static_cast<size_t>(R) + 1, 0.0L);

    // Shared G table over (u = R-s, v = m-s); computing it once per column m
    // would redo identical work, so it is filled lazily.
    std::vector<std::vector<bigint>> g(static_cast<size_t>(R) + 1);
    auto g_at = [&](int u, int v) -> const bigint& {
        auto& col = g[static_cast<size_t>(u)];
        while (static_cast<int>(col.size()) <= v)
            col.push_back(g_count(static_cast<unsigned>(u), static_cast<unsigned>(col.size())));
        return col[static_cast<size_t>(v)];
    };

    double cum = 0.0;
    int m = 0;
    bool converged = false;
    for (; m <= cap; ++m) {
        double w = poisson_pmf(m, lambda_f);
        cum += w;
        bigint rm = ipow(static_cast<unsigned>(R), static_cast<unsigned>(m));
        int smax = std::min(m, R);
        for (int s = 0; s <= smax; ++s) {
            bigint num = binom(static_cast<unsigned>(R), static_cast<unsigned>(s)) *
                         falling(static_cast<unsigned>(m), static_cast<unsigned>(s)) *
                         g_at(R - s, m - s);
            double cond = rational_to_double(bigrat(num, rm));
            acc[static_cast<size_t>(s)] += static_cast<long double>(w) * cond;
        }
        if (1.0 - cum < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("singles_distribution: Poisson tail did not fall below 1e-12 within the cap");

    long double total = 0.0L;
    for (auto v : acc) total += v;
    long double deviation = total - 1.0L;
    if (deviation < 0) deviation = -deviation;
    if (deviation >= 1e-9L)
        throw std::runtime_error("singles_distribution: truncated mass deviates from 1 by more than 1e-9");
    for (int s = 0; s <= R; ++s)
        d.probs[static_cast<size_t>(s)] = static_cast<double>(acc[static_cast<size_t>(s)] / total);
    return d;
}

discrete_dist singles_distribution_approx(int R, double lambda_f) {
    if (R < 1 || lambda_f < 0.0) throw std::invalid_argument("singles_distribution_approx: bad arguments");
    discrete_dist d;
    d.min_support = 0;
    d.probs.assign(static_cast<size_t>(R) + 1, 0.0);
    double ps = (lambda_f / R) * std::exp(-lambda_f / R);
    if (ps == 0.0) {
        d.probs[0] = 1.0;
        return d;
    }
    double lp = std::log(ps);
    double lq = std::log1p(-ps);
    for (int s = 0; s <= R; ++s) {
        double lc = std::lgamma(R + 1.0) - std::lgamma(s + 1.0) - std::lgamma(R - s + 1.0);
        d.probs[static_cast<size_t>(s)] = std::exp(lc + s * lp + (R - s) * lq);
    }
    return d;
}

} // namespace trunksim
