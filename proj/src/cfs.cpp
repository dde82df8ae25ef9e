#include "podsim/cfs.hpp"

#include <algorithm>
#include <cassert>

#include "podsim/errors.hpp"

namespace podsim::cfs {

std::vector<Frac> allocate_rates(std::span<const RateRequest> runnable, int cores) {
    const std::size_t n = runnable.size();
    std::vector<Frac> rates(n, Frac(0));
    if (n == 0) return rates;

    std::vector<bool> frozen(n, false);
    Frac remaining(cores);

    while (true) {
        std::int64_t weight_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!frozen[i]) {
                assert(runnable[i].weight > 0 && runnable[i].cap_cores > 0);
                weight_sum += runnable[i].weight;
            }
        }
        if (weight_sum == 0) break;

        // Tentative proportional shares for this round; pods pushed past
        // their cap freeze at the cap and release the excess.
        bool froze_any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (frozen[i]) continue;
            Frac share = Frac::ratio(runnable[i].weight, weight_sum) * remaining;
            if (share >= Frac(runnable[i].cap_cores)) {
                rates[i] = Frac(runnable[i].cap_cores);
                frozen[i] = true;
                froze_any = true;
            }
        }
        if (!froze_any) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!frozen[i]) rates[i] = Frac::ratio(runnable[i].weight, weight_sum) * remaining;
            }
            break;
        }
        remaining = Frac(cores);
        for (std::size_t i = 0; i < n; ++i) {
            if (frozen[i]) remaining -= rates[i];
        }
    }
    return rates;
}

void refresh_rates(std::span<PodRuntime* const> pods, int cores) {
    std::vector<RateRequest> reqs;
    std::vector<PodRuntime*> active;
    reqs.reserve(pods.size());
    for (PodRuntime* pod : pods) {
        if (pod->runnable()) {
            reqs.push_back({pod->spec.creq_m, pod->active()});
            active.push_back(pod);
        } else {
            pod->rate_cores = Frac(0);
        }
    }
    std::vector<Frac> rates = allocate_rates(reqs, cores);
    for (std::size_t i = 0; i < active.size(); ++i) active[i]->rate_cores = rates[i];
}

namespace {

// now + ceil(work / rate), floored at now + 1 so progress is always made.
SimTime instant_after(SimTime now, const Frac& work, const Frac& rate) {
    SimTime dt = (work / rate).ceil();
    return now + (dt < 1 ? 1 : dt);
}

}  // namespace

SimTime next_breakpoint(std::span<PodRuntime* const> pods, SimTime now, SimTime period_end,
                        std::optional<SimTime> next_arrival, SimTime period_us) {
    sim_check(period_end > now, "period end not in the future");
    SimTime best = period_end;
    if (next_arrival) {
        sim_check(*next_arrival > now, "arrival not in the future");
        best = std::min(best, *next_arrival);
    }
    for (const PodRuntime* pod : pods) {
        if (!pod->runnable() || pod->rate_cores.is_zero()) continue;
        if (auto quota = pod->quota_us(period_us)) {
            Frac left = *quota - pod->consumed_period_us;
            sim_check(!left.is_negative(), "quota overrun for " + pod->name);
            best = std::min(best, instant_after(now, left, pod->rate_cores));
        }
        int a = pod->active();
        Frac per_worker = pod->rate_cores / Frac(a);
        for (int k = 0; k < a; ++k) {
            best = std::min(best, instant_after(now, pod->queue[k].remaining_us, per_worker));
        }
    }
    sim_check(best > now, "breakpoint did not advance");
    return best;
}

AdvanceOutcome advance(std::span<PodRuntime* const> pods, SimTime now, SimTime dt,
                       SimTime period_us) {
    sim_check(dt > 0, "advance needs dt > 0");
    AdvanceOutcome out;
    const SimTime end = now + dt;

    for (PodRuntime* pod : pods) {
        if (!pod->runnable() || pod->rate_cores.is_zero()) continue;

        const int a = pod->active();
        Frac per_worker = (pod->rate_cores * Frac(dt)) / Frac(a);
        auto quota = pod->quota_us(period_us);
        // Budget only binds on ceil slop: breakpoints are computed so that
        // quota runs out exactly at a breakpoint, up to sub-microsecond
        // rounding of fractional instants.
        Frac budget = quota ? (*quota - pod->consumed_period_us) : Frac(0);

        Frac served_total(0);
        for (int k = 0; k < a; ++k) {
            Request& req = pod->queue[k];
            Frac served = Frac::min(per_worker, req.remaining_us);
            if (quota) served = Frac::min(served, budget - served_total);
            req.remaining_us -= served;
            sim_check(!req.remaining_us.is_negative(), "negative remaining on " + pod->name);
            served_total += served;
        }
        pod->consumed_period_us += served_total;
        pod->cumulative_cpu_us += served_total;
        out.busy_us += served_total;

        if (quota) {
            sim_check(pod->consumed_period_us <= *quota, "quota exceeded on " + pod->name);
            if (pod->consumed_period_us == *quota && !pod->throttled) {
                pod->throttled = true;
                ++pod->throttle_events;
                ++pod->period_throttles;
            }
        }

        // Pop completed requests and promote waiting ones into the freed
        // worker slots.
        for (int k = a - 1; k >= 0; --k) {
            if (pod->queue[k].remaining_us.is_zero()) {
                Request done = pod->queue[k];
                done.completion = end;
                pod->queue.erase(pod->queue.begin() + k);
                out.completed.push_back(std::move(done));
            }
        }
        int window = pod->active();
        for (int k = 0; k < window; ++k) {
            if (!pod->queue[k].service_start) pod->queue[k].service_start = end;
        }
    }
    // Completion order within one breakpoint: by request id, so the order is
    // independent of pod iteration details.
    std::sort(out.completed.begin(), out.completed.end(),
              [](const Request& x, const Request& y) { return x.id < y.id; });
    return out;
}

void on_period_boundary(std::span<PodRuntime* const> pods) {
    for (PodRuntime* pod : pods) {
        pod->consumed_period_us = Frac(0);
        pod->throttled = false;
        pod->period_throttles = 0;
    }
}

}  // namespace podsim::cfs
