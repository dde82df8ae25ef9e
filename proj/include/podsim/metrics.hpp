#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "podsim/frac.hpp"
#include "podsim/time.hpp"

namespace podsim {

// Nearest-rank percentile: the value at index ceil(p/100 * n), 1-based, in
// ascending order. Samples are taken by value and sorted internally.
std::int64_t percentile_us(std::vector<std::int64_t> samples, double p);

struct LatencySample {
    SimTime completion = 0;
    SimTime latency_us = 0;
};

// Per-deployment latency reservoir; recorded in completion order, so ranges
// over completion time are contiguous slices.
class LatencyRecorder {
public:
    void record(SimTime completion, SimTime latency);

    std::optional<std::int64_t> percentile_between(SimTime from, SimTime to, double p) const;
    std::optional<std::int64_t> percentile_after(SimTime from, double p) const;
    std::optional<double> mean_after(SimTime from) const;
    std::int64_t count_after(SimTime from) const;
    const std::vector<LatencySample>& samples() const { return samples_; }

private:
    std::vector<LatencySample> samples_;
};

struct WindowPoint {
    SimTime t = 0;  // window end
    std::optional<std::int64_t> pctl_us;
};

// First time after the step at which the rolling-window percentile drops to
// the SLO and stays there for >= 2 consecutive windows, expressed in seconds
// since the step; nullopt means the SLO was never met again ("unmet").
std::optional<double> time_to_meet_slo(const std::vector<WindowPoint>& windows, SimTime slo_us,
                                       SimTime step_time);

struct DeploymentReport {
    std::string name;
    bool is_chain = false;
    int replicas_final = 0;
    SimTime slo_us = 0;
    double slo_percentile = 99.0;

    std::optional<std::int64_t> p50_us, p95_us, p99_us;
    std::optional<double> mean_ms;
    double throughput_rps = 0.0;
    std::int64_t throttle_events = 0;
    double slo_attainment = 1.0;

    double creq_mc_seconds = 0.0;
    double util_mc_seconds = 0.0;
    std::optional<double> bill_resource, bill_utilization, bill_performance;

    std::vector<WindowPoint> windows;
    std::optional<SimTime> load_step_time;
    std::optional<double> time_to_meet_slo_s;  // meaningful only with a load step

    std::int64_t arrivals = 0;
    std::int64_t completed = 0;
};

struct TimeseriesRow {
    SimTime t = 0;
    std::string deployment;  // empty on node rows
    int replicas = 0;
    Millicores total_creq_m = 0;
    double util_m = 0.0;
    std::optional<std::int64_t> p99_window_us;
    std::string node_id;  // empty on deployment rows
    double node_util = 0.0;
};

struct ActionEntry {
    SimTime t = 0;
    std::string deployment;
    std::string action;
    std::string reason;
    bool applied = true;
    bool slo_triggered = false;
    double post_overage_m = 0.0;  // U - sum(creq) right after an applied action
};

struct PeriodRecord {
    std::string pod;
    std::string node;
    std::int64_t period_index = 0;
    Frac consumed_us;
    std::int64_t throttles = 0;
};

struct RequestRecord {
    std::string deployment;
    std::uint64_t id = 0;
    SimTime arrival = 0;
    SimTime service_start = 0;
    SimTime completion = 0;
    SimTime latency_us = 0;
    SimTime execution_us = 0;
};

struct MetricsReport {
    std::uint64_t seed = 0;
    SimTime duration_us = 0;
    SimTime warmup_us = 0;

    std::vector<DeploymentReport> deployments;  // deployments first, then chains
    std::vector<TimeseriesRow> timeseries;
    std::vector<ActionEntry> actions;
    std::vector<PeriodRecord> periods;    // populated when record_periods is set
    std::vector<RequestRecord> requests;  // populated when record_requests is set

    const DeploymentReport* find(const std::string& name) const;

    std::string summary_csv() const;
    std::string timeseries_csv() const;
    std::string actions_log() const;
    std::string to_json() const;

    // Writes summary.csv, timeseries.csv, actions.log and report.json.
    void export_to(const std::string& dir) const;
};

}  // namespace podsim
