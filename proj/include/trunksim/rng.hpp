#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace trunksim {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Substream id for one replication: the master seed, parameter-point index and
// replication index are chained through mix64. Every replication owns an
// independent stream, so results are bit-identical for any worker count.
inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::uint64_t point_index,
                                    std::uint64_t replication_index) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ mix64(point_index + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ mix64(replication_index + 0x9e6c63d0876a9a47ULL));
    return h;
}

// Distribution sampling is hand-rolled on top of the raw 64-bit stream because
// the std:: distribution algorithms are implementation-defined; this keeps the
// draw sequence identical across standard libraries.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    int uniform_int(int n) {
        int v = static_cast<int>(uniform01() * n);
        return v < n ? v : n - 1;
    }

    // exponential with the given mean (channel power gain draw)
    double exponential(double mean) {
        return -mean * std::log(1.0 - uniform01());
    }

    // Poisson by inversion; means above 400 are split in half recursively so
    // the cumulative product never underflows.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 400.0) return poisson(mean / 2.0) + poisson(mean / 2.0);
        double u = uniform01();
        double p = std::exp(-mean);
        double cum = p;
        int k = 0;
        int cap = static_cast<int>(mean + 60.0 * std::sqrt(mean) + 30.0);
        while (u >= cum && k < cap) {
            ++k;
            p *= mean / k;
            cum += p;
        }
        return k;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace trunksim
