#include "podsim/cluster.hpp"

#include <algorithm>

#include "podsim/errors.hpp"

namespace podsim {

std::pair<Frac, SimTime> WindowSeries::delta_over(SimTime t, SimTime window) const {
    if (samples_.empty()) return {Frac(0), window};
    // Latest sample at or before t.
    auto latest = std::upper_bound(samples_.begin(), samples_.end(), t,
                                   [](SimTime v, const auto& s) { return v < s.first; });
    if (latest == samples_.begin()) return {Frac(0), window};
    --latest;
    SimTime from = t - window;
    if (from < 0) from = 0;
    auto base = std::upper_bound(samples_.begin(), samples_.end(), from,
                                 [](SimTime v, const auto& s) { return v < s.first; });
    Frac start(0);
    SimTime start_t = 0;
    if (base != samples_.begin()) {
        --base;
        start = base->second;
        start_t = base->first;
    }
    SimTime span = latest->first - start_t;
    if (span <= 0) span = window;
    return {latest->second - start, span};
}

std::optional<PlacementStrategy> placement_from_string(const std::string& s) {
    if (s == "first_fit") return PlacementStrategy::FirstFit;
    if (s == "least_allocated") return PlacementStrategy::LeastAllocated;
    if (s == "least_utilized") return PlacementStrategy::LeastUtilized;
    return std::nullopt;
}

Cluster::Cluster(std::vector<NodeSpec> specs) {
    nodes_.reserve(specs.size());
    for (auto& spec : specs) {
        NodeState n;
        n.spec = std::move(spec);
        nodes_.push_back(std::move(n));
    }
}

bool Cluster::admits(int node_idx, Millicores creq_m) const {
    const NodeState& n = nodes_[node_idx];
    return n.allocated_m + creq_m <= n.spec.capacity_m();
}

int Cluster::pick_node(Millicores creq_m, PlacementStrategy strategy) const {
    int best = -1;
    for (int i = 0; i < node_count(); ++i) {
        if (!admits(i, creq_m)) continue;
        if (best == -1) {
            best = i;
            if (strategy == PlacementStrategy::FirstFit) return best;
            continue;
        }
        switch (strategy) {
            case PlacementStrategy::FirstFit:
                break;
            case PlacementStrategy::LeastAllocated:
                if (nodes_[i].allocated_m < nodes_[best].allocated_m) best = i;
                break;
            case PlacementStrategy::LeastUtilized:
                if (nodes_[i].util_window < nodes_[best].util_window) best = i;
                break;
        }
    }
    return best;
}

int Cluster::create_pod(const PodSpec& spec, const std::string& name, int node_idx) {
    sim_check(admits(node_idx, spec.creq_m), "create_pod would break gate-keeping on node " +
                                                 nodes_[node_idx].spec.id);
    PodRuntime pod;
    pod.id = pod_count();
    pod.name = name;
    pod.spec = spec;
    pod.node = node_idx;
    pods_.push_back(std::move(pod));
    nodes_[node_idx].placed.push_back(pods_.back().id);
    nodes_[node_idx].allocated_m += spec.creq_m;
    return pods_.back().id;
}

void Cluster::remove_pod(int pod_id) {
    PodRuntime& pod = pods_[pod_id];
    sim_check(pod.alive, "double remove of pod " + pod.name);
    NodeState& n = nodes_[pod.node];
    n.allocated_m -= pod.spec.creq_m;
    std::erase(n.placed, pod_id);
    pod.alive = false;
    pod.node = -1;
}

bool Cluster::migrate_pod(int pod_id, int dest_node) {
    PodRuntime& pod = pods_[pod_id];
    if (pod.node == dest_node) return true;
    if (!admits(dest_node, pod.spec.creq_m)) return false;
    NodeState& src = nodes_[pod.node];
    src.allocated_m -= pod.spec.creq_m;
    std::erase(src.placed, pod_id);
    pod.node = dest_node;
    nodes_[dest_node].placed.push_back(pod_id);
    nodes_[dest_node].allocated_m += pod.spec.creq_m;
    return true;
}

bool Cluster::try_resize(int pod_id, Millicores new_creq_m) {
    PodRuntime& pod = pods_[pod_id];
    Millicores delta = new_creq_m - pod.spec.creq_m;
    NodeState& n = nodes_[pod.node];
    if (delta > 0 && n.allocated_m + delta > n.spec.capacity_m()) return false;
    n.allocated_m += delta;
    pod.spec.creq_m = new_creq_m;
    return true;
}

double Cluster::node_utilization(int node_idx, SimTime now, SimTime window) const {
    const NodeState& n = nodes_[node_idx];
    auto [delta, span] = n.busy_series.delta_over(now, window);
    if (span <= 0) return 0.0;
    return delta.to_double() / (static_cast<double>(n.spec.cores) * static_cast<double>(span));
}

std::vector<PodRuntime*> Cluster::pods_on(int node_idx) {
    std::vector<PodRuntime*> out;
    out.reserve(nodes_[node_idx].placed.size());
    for (int id : nodes_[node_idx].placed) out.push_back(&pods_[id]);
    return out;
}

void Cluster::check_gatekeeping() const {
    for (const NodeState& n : nodes_) {
        Millicores total = 0;
        for (int id : n.placed) total += pods_[id].spec.creq_m;
        sim_check(total == n.allocated_m, "allocation bookkeeping drift on node " + n.spec.id);
        sim_check(total <= n.spec.capacity_m(),
                  "gate-keeping violated on node " + n.spec.id + ": " + std::to_string(total) +
                      "m > " + std::to_string(n.spec.capacity_m()) + "m");
    }
}

}  // namespace podsim
