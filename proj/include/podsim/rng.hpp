#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "podsim/errors.hpp"
#include "podsim/time.hpp"

namespace podsim {

// One deterministic random stream per arrival/demand process. The stream is
// derived from (scenario seed, stream id) so adding a workload never perturbs
// the draws of another.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : engine_(mix(seed, stream_id)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    // splitmix64 over seed and stream id; mt19937_64 output is specified by
    // the standard, so sequences are identical across platforms.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

// Inverse-CDF exponential inter-arrival sample, rounded to whole
// microseconds, never less than 1 us.
inline SimTime sample_exponential(RngStream& stream, double rate_per_s) {
    if (!(rate_per_s > 0.0)) {
        throw ConfigError("exponential rate must be > 0, got " + std::to_string(rate_per_s));
    }
    double u = stream.uniform01();
    double gap_s = -std::log1p(-u) / rate_per_s;
    auto us = static_cast<SimTime>(std::llround(gap_s * static_cast<double>(kUsPerSec)));
    return us < 1 ? 1 : us;
}

}  // namespace podsim
