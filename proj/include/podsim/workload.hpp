#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "podsim/rng.hpp"
#include "podsim/time.hpp"

namespace podsim {

struct StepSegment {
    SimTime start = 0;
    double rate_per_s = 0.0;
};

struct ArrivalSpec {
    enum class Kind { Poisson, Deterministic, Trace, Step };
    Kind kind = Kind::Poisson;
    double rate_per_s = 0.0;            // Poisson
    SimTime interval_us = 0;            // Deterministic
    std::vector<SimTime> trace;         // Trace, strictly increasing
    std::vector<StepSegment> segments;  // Step, contiguous from t=0
};

// Open-loop arrival generator: arrivals never wait on service completion.
class ArrivalProcess {
public:
    ArrivalProcess() = default;
    ArrivalProcess(ArrivalSpec spec, RngStream stream);

    // Next arrival strictly after the previous one; nullopt once a trace is
    // exhausted.
    std::optional<SimTime> next();

private:
    ArrivalSpec spec_;
    RngStream stream_;
    SimTime cursor_ = 0;
    std::size_t trace_idx_ = 0;
};

struct DemandSpec {
    enum class Kind { Constant, Exponential, Empirical };
    Kind kind = Kind::Constant;
    std::int64_t constant_us = 0;
    double mean_us = 0.0;
    std::vector<std::int64_t> samples_us;
};

class ServiceDemand {
public:
    ServiceDemand() = default;
    ServiceDemand(DemandSpec spec, RngStream stream);

    std::int64_t sample();  // CPU microseconds, always >= 1

private:
    DemandSpec spec_;
    RngStream stream_;
};

struct ChainStage {
    int deployment = -1;
    ServiceDemand demand;
};

// Linear service chain: a request flows through the stages in order, drawing
// a fresh demand sample at each stage; end-to-end latency is measured from
// arrival at the first stage to completion at the last.
struct ServiceChain {
    int id = -1;
    std::string name;
    std::vector<ChainStage> stages;
};

struct Workload {
    int id = -1;
    int target_deployment = -1;  // exactly one of target_deployment / chain is set
    int chain = -1;
    ArrivalProcess arrivals;
    std::optional<ServiceDemand> demand;  // deployment targets only
};

// One-column text file of microsecond timestamps, strictly increasing.
std::vector<SimTime> load_trace_file(const std::string& path);

}  // namespace podsim
