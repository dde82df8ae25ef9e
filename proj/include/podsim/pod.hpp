#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>

#include "podsim/frac.hpp"
#include "podsim/time.hpp"

namespace podsim {

// Static sizing of a container: creq is the shares weight (minimum
// guarantee), clim the optional quota (maximum allowance). clim >= creq when
// present.
struct PodSpec {
    Millicores creq_m = 0;
    std::optional<Millicores> clim_m;
    int parallelism = 1;  // worker threads serving requests concurrently
    int deployment = -1;  // owning deployment index
};

struct Request {
    std::uint64_t id = 0;
    SimTime arrival = 0;       // arrival at this pod (stage arrival for chains)
    SimTime root_arrival = 0;  // arrival at the first stage, for end-to-end latency
    std::int64_t demand_us = 0;
    Frac remaining_us;
    std::optional<SimTime> service_start;
    std::optional<SimTime> completion;
    int chain = -1;  // -1: plain deployment request
    int stage = 0;

    SimTime latency() const { return *completion - root_arrival; }
    SimTime execution_time() const { return *completion - *service_start; }
};

// Live scheduling state of one placed pod. Owned by the cluster; mutated
// only by its node's fluid scheduler between breakpoints.
struct PodRuntime {
    int id = -1;
    std::string name;
    PodSpec spec;
    int node = -1;
    bool alive = true;

    std::deque<Request> queue;  // FIFO; the first active() entries are in service
    Frac consumed_period_us;    // CPU time within the current period
    bool throttled = false;
    bool suspended = false;  // migration downtime
    Frac cumulative_cpu_us;
    std::int64_t throttle_events = 0;
    std::int64_t period_throttles = 0;  // throttle events in current period

    Frac rate_cores;  // instantaneous allocation, refreshed at every breakpoint

    int active() const {
        auto len = static_cast<int>(queue.size());
        return len < spec.parallelism ? len : spec.parallelism;
    }

    bool runnable() const { return alive && !throttled && !suspended && !queue.empty(); }

    // Quota in CPU-microseconds per period; exact for any period length.
    std::optional<Frac> quota_us(SimTime period_us) const {
        if (!spec.clim_m) return std::nullopt;
        return Frac::ratio(*spec.clim_m * period_us, kMilliPerCore);
    }
};

}  // namespace podsim
