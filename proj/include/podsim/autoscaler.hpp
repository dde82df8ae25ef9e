#pragma once

#include <optional>
#include <string>
#include <vector>

#include "podsim/cluster.hpp"
#include "podsim/frac.hpp"
#include "podsim/time.hpp"

namespace podsim {

struct HpaConfig {
    double threshold = 0.7;  // cputhresh, fraction of creq
    int max_replicas = 10;
    double downscale_hysteresis = 0.5;  // remove a replica below threshold * hysteresis
};

struct YaasConfig {
    double slo_margin = 0.05;      // delta: act when latency > SLO * (1 + delta)
    double t_cong = 0.8;           // node-utilization threshold for migration
    double downscale_factor = 0.7; // shrink creq when U < factor * creq
    int cooldown_ticks = 4;
    Millicores min_creq_m = 10;
};

struct PolicyConfig {
    enum class Kind { None, Hpa, Yaas };
    Kind kind = Kind::None;
    SimTime sync_period_us = 15 * kUsPerSec;
    HpaConfig hpa;
    YaasConfig yaas;
};

struct ScalingAction {
    enum class Kind { NoOp, AddReplica, RemoveReplica, SetCreq, Migrate };
    Kind kind = Kind::NoOp;
    Millicores per_replica_creq_m = 0;  // SetCreq / AddReplica split target
    int pod = -1;                       // Migrate victim
    int dest_node = -1;                 // Migrate destination
    std::string reason;
    bool slo_triggered = false;
};

const char* action_name(ScalingAction::Kind kind);

// What a policy sees at its control tick. Kept as plain data so the decision
// ladders are pure functions.
struct ReplicaObs {
    int pod = -1;
    int node = -1;
    double node_util = 0.0;
    Millicores node_spare_m = 0;
};

struct NodeObs {
    int node = -1;
    double util = 0.0;
    Millicores spare_m = 0;
};

struct DeploymentObs {
    int replicas = 0;
    Millicores creq_per_replica_m = 0;
    Frac windowed_util_m;  // U, total across replicas
    std::optional<SimTime> window_pctl_us;
    SimTime slo_us = 0;
    std::vector<ReplicaObs> replica_obs;
    int ticks_since_action = 1 << 20;
};

// Threshold autoscaler: one replica added when the per-replica average
// utilization crosses threshold * creq, one removed under the hysteresis
// floor. The replica count never drops below one.
ScalingAction hpa_decide(const DeploymentObs& obs, const HpaConfig& cfg);

// Overage-driven ladder, first match wins:
//   1. SLO slightly violated and overage positive -> set overage to zero,
//      growing in place when every hosting node admits it, otherwise
//      splitting the total across one more replica;
//   2. a replica sits on a congested node -> migrate it off;
//   3. utilization well under creq -> shrink creq eagerly (or drop a
//      replica once per-replica creq would hit the floor);
//   4. nothing to do.
std::vector<ScalingAction> yaas_decide(const DeploymentObs& obs, const std::vector<NodeObs>& nodes,
                                       const YaasConfig& cfg);

struct ApplyContext {
    PlacementStrategy strategy = PlacementStrategy::LeastAllocated;
    SimTime now = 0;
    SimTime migration_downtime_us = 0;
};

struct ApplyResult {
    bool applied = false;
    std::string note;            // failure reason when not applied
    int new_pod = -1;            // AddReplica
    std::vector<int> moved_requests_to;  // RemoveReplica reassignment targets
};

// Applies one action to the cluster, preserving gate-keeping; an action that
// would break it is rejected and reported instead.
ApplyResult apply_action(Cluster& cluster, DeploymentState& dep, const ScalingAction& action,
                         const ApplyContext& ctx);

}  // namespace podsim
