#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "podsim/frac.hpp"
#include "podsim/pod.hpp"
#include "podsim/time.hpp"

namespace podsim {

struct NodeSpec {
    std::string id;
    int cores = 1;
    Millicores capacity_m() const { return static_cast<Millicores>(cores) * kMilliPerCore; }
};

// Cumulative-integral samples taken at control ticks; windowed averages are
// differences of cumulative values, so they stay exact.
class WindowSeries {
public:
    void record(SimTime t, const Frac& cumulative) {
        if (!samples_.empty() && samples_.back().first == t) {
            samples_.back().second = cumulative;
            return;
        }
        samples_.emplace_back(t, cumulative);
    }

    // cumulative(t) - cumulative(t - window), snapped to recorded samples.
    // Returns the delta and the actual span it covers.
    std::pair<Frac, SimTime> delta_over(SimTime t, SimTime window) const;

private:
    std::vector<std::pair<SimTime, Frac>> samples_;
};

struct NodeState {
    NodeSpec spec;
    std::vector<int> placed;  // pod ids, insertion order
    Millicores allocated_m = 0;
    Frac busy_us;  // cumulative CPU served on this node
    WindowSeries busy_series;
    double util_window = 0.0;  // N over the measurement window, refreshed each tick
};

struct SloSpec {
    SimTime latency_us = 0;
    double percentile = 99.0;
};

struct DeploymentState {
    int id = -1;
    std::string name;
    PodSpec pod_template;  // creq_m here is the current per-replica creq
    std::vector<int> replicas;
    SloSpec slo;
    int policy = -1;  // index into the scenario policy list, -1 = unmanaged
    int chain_member = -1;

    Frac retired_cpu_us;  // cumulative CPU of replicas removed or resized away
    WindowSeries cpu_series;
    int next_replica_ordinal = 0;
    int rr_cursor = 0;  // round-robin dispatch position

    Millicores total_creq_m() const {
        return pod_template.creq_m * static_cast<Millicores>(replicas.size());
    }
};

enum class PlacementStrategy { FirstFit, LeastAllocated, LeastUtilized };

std::optional<PlacementStrategy> placement_from_string(const std::string& s);

// Nodes, placement gate-keeping, and migration. Pod storage lives here; the
// fluid scheduler mutates pods through node views between breakpoints.
class Cluster {
public:
    explicit Cluster(std::vector<NodeSpec> specs);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    NodeState& node(int i) { return nodes_[i]; }
    const NodeState& node(int i) const { return nodes_[i]; }

    PodRuntime& pod(int id) { return pods_[id]; }
    const PodRuntime& pod(int id) const { return pods_[id]; }
    int pod_count() const { return static_cast<int>(pods_.size()); }

    // Gate-keeping: a pod fits iff allocated + creq <= capacity.
    bool admits(int node_idx, Millicores creq_m) const;

    // First node that admits, in strategy order with index as tie-break.
    // Returns -1 when nothing fits.
    int pick_node(Millicores creq_m, PlacementStrategy strategy) const;

    int create_pod(const PodSpec& spec, const std::string& name, int node_idx);
    void remove_pod(int pod_id);

    // Atomic queue transfer; fails (returns false) if dest does not admit.
    bool migrate_pod(int pod_id, int dest_node);

    // Gate-keeping-aware creq change; false if the increase does not fit.
    bool try_resize(int pod_id, Millicores new_creq_m);

    // Windowed node utilization N from the busy-time series.
    double node_utilization(int node_idx, SimTime now, SimTime window) const;

    std::vector<PodRuntime*> pods_on(int node_idx);

    // Invariant: sum(creq) <= capacity on every node at all times.
    void check_gatekeeping() const;

private:
    std::vector<NodeState> nodes_;
    std::deque<PodRuntime> pods_;  // stable storage, id = index
};

}  // namespace podsim
