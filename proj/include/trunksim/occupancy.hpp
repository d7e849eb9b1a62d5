#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace trunksim {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Finite distribution over the integers min_support, min_support+1, ...
struct discrete_dist {
    int min_support = 0;
    std::vector<double> probs;

    double pmf(int v) const {
        int i = v - min_support;
        return (i >= 0 && i < static_cast<int>(probs.size())) ? probs[static_cast<size_t>(i)] : 0.0;
    }
    int max_support() const { return min_support + static_cast<int>(probs.size()) - 1; }
    double mean() const {
        double m = 0.0;
        for (size_t i = 0; i < probs.size(); ++i) m += (min_support + static_cast<double>(i)) * probs[i];
        return m;
    }
    double sum() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
};

double total_variation(const discrete_dist& a, const discrete_dist& b);

// Number of ways to place v distinguishable balls into u distinguishable bins
// with no bin holding exactly one ball. Alternating signs cancel
// catastrophically in floating point, hence exact integers.
bigint g_count(unsigned u, unsigned v);

// Pr(exactly s of R mini-slots are chosen by exactly one of m contenders),
// as the exact rational C(R,s) * m!/(m-s)! * G(R-s, m-s) / R^m.
bigrat singles_given_arrivals_rational(int s, int m, int R);
double singles_given_arrivals(int s, int m, int R);

// Brute force over all R^m slot assignments; enforced bound R^m <= 10^7.
bigrat singles_given_arrivals_oracle_rational(int s, int m, int R);
double singles_given_arrivals_oracle(int s, int m, int R);

// lambda_f^m e^(-lambda_f) / m!, evaluated in the log domain.
double poisson_pmf(int m, double lambda_f);

// Pr(S = s | R) with Poisson(lambda_f) arrivals: the m-sum is truncated once
// the Poisson tail mass drops below 1e-12 and the result renormalized; both
// a truncation cap (m <= 20*lambda_f + 200) and a deviation bound (1e-9) are
// enforced, violations throw.
discrete_dist singles_distribution(int R, double lambda_f);

// Binomial(R, p_s) with p_s = (lambda_f/R) e^(-lambda_f/R); the high-load
// approximation of the mixture above.
discrete_dist singles_distribution_approx(int R, double lambda_f);

} // namespace trunksim
