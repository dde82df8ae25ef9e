#pragma once

#include <optional>
#include <span>
#include <vector>

#include "podsim/frac.hpp"
#include "podsim/pod.hpp"
#include "podsim/time.hpp"

namespace podsim::cfs {

struct RateRequest {
    Millicores weight = 0;  // creq, shares weight
    int cap_cores = 0;      // min(parallelism, active requests)
};

// Water-filling proportional-share allocation: capacity is split across the
// runnable set proportionally to weights; any pod driven past its cap is
// frozen at the cap and the excess redistributed among the rest. The result
// is work conserving: sum(rates) = min(cores, sum(caps)).
std::vector<Frac> allocate_rates(std::span<const RateRequest> runnable, int cores);

// Recomputes and stores pod->rate_cores for the node's current runnable set.
// Non-runnable pods get rate 0.
void refresh_rates(std::span<PodRuntime* const> pods, int cores);

// Earliest future instant at which the fluid rates stop being valid: period
// end, next arrival, a quota running out, or a request completing.
// Fractional instants are rounded up to the next whole microsecond; the
// result is always strictly after `now`.
SimTime next_breakpoint(std::span<PodRuntime* const> pods, SimTime now, SimTime period_end,
                        std::optional<SimTime> next_arrival, SimTime period_us);

struct AdvanceOutcome {
    std::vector<Request> completed;  // stamped with completion = now + dt
    Frac busy_us;                    // total CPU served on the node over dt
};

// Integrates the fluid model over [now, now+dt) at the current rates:
// serves in-flight requests, accrues quota and cumulative CPU, marks pods
// that exhaust their quota as throttled, and promotes waiting requests into
// freed worker slots.
AdvanceOutcome advance(std::span<PodRuntime* const> pods, SimTime now, SimTime dt,
                       SimTime period_us);

// Period boundary: quota accounting resets and throttled pods rejoin the
// runnable set.
void on_period_boundary(std::span<PodRuntime* const> pods);

}  // namespace podsim::cfs
