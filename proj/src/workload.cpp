#include "podsim/workload.hpp"

#include <cmath>
#include <fstream>

#include "podsim/errors.hpp"

namespace podsim {

ArrivalProcess::ArrivalProcess(ArrivalSpec spec, RngStream stream)
    : spec_(std::move(spec)), stream_(stream) {}

std::optional<SimTime> ArrivalProcess::next() {
    switch (spec_.kind) {
        case ArrivalSpec::Kind::Deterministic:
            cursor_ += spec_.interval_us;
            return cursor_;
        case ArrivalSpec::Kind::Poisson:
            cursor_ += sample_exponential(stream_, spec_.rate_per_s);
            return cursor_;
        case ArrivalSpec::Kind::Trace:
            if (trace_idx_ >= spec_.trace.size()) return std::nullopt;
            cursor_ = spec_.trace[trace_idx_++];
            return cursor_;
        case ArrivalSpec::Kind::Step: {
            // Sample with the rate of the segment containing the cursor; a
            // draw that crosses the segment boundary is discarded and the
            // cursor restarts at the boundary (memorylessness makes this the
            // exact piecewise-Poisson process).
            while (true) {
                std::size_t seg = spec_.segments.size() - 1;
                for (std::size_t i = 0; i + 1 < spec_.segments.size(); ++i) {
                    if (cursor_ < spec_.segments[i + 1].start) {
                        seg = i;
                        break;
                    }
                }
                SimTime gap = sample_exponential(stream_, spec_.segments[seg].rate_per_s);
                SimTime candidate = cursor_ + gap;
                if (seg + 1 < spec_.segments.size() && candidate >= spec_.segments[seg + 1].start) {
                    cursor_ = spec_.segments[seg + 1].start;
                    continue;
                }
                cursor_ = candidate;
                return cursor_;
            }
        }
    }
    return std::nullopt;
}

ServiceDemand::ServiceDemand(DemandSpec spec, RngStream stream)
    : spec_(std::move(spec)), stream_(stream) {}

std::int64_t ServiceDemand::sample() {
    switch (spec_.kind) {
        case DemandSpec::Kind::Constant:
            return spec_.constant_us;
        case DemandSpec::Kind::Exponential: {
            double u = stream_.uniform01();
            auto us = static_cast<std::int64_t>(std::llround(-std::log1p(-u) * spec_.mean_us));
            return us < 1 ? 1 : us;
        }
        case DemandSpec::Kind::Empirical: {
            std::uint64_t i = stream_.next_u64() % spec_.samples_us.size();
            return spec_.samples_us[static_cast<std::size_t>(i)];
        }
    }
    return 1;
}

std::vector<SimTime> load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path);
    std::vector<SimTime> times;
    SimTime t = 0;
    while (in >> t) times.push_back(t);
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] <= times[i - 1]) {
            throw ConfigError("trace times must be strictly increasing in " + path);
        }
    }
    return times;
}

}  // namespace podsim
