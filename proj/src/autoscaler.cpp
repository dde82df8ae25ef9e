#include "podsim/autoscaler.hpp"

#include <algorithm>
#include <map>

#include "podsim/errors.hpp"

namespace podsim {

namespace {

Millicores ceil_div(Millicores a, Millicores b) { return (a + b - 1) / b; }

}  // namespace

const char* action_name(ScalingAction::Kind kind) {
    switch (kind) {
        case ScalingAction::Kind::NoOp: return "NoOp";
        case ScalingAction::Kind::AddReplica: return "AddReplica";
        case ScalingAction::Kind::RemoveReplica: return "RemoveReplica";
        case ScalingAction::Kind::SetCreq: return "SetCreq";
        case ScalingAction::Kind::Migrate: return "Migrate";
    }
    return "?";
}

ScalingAction hpa_decide(const DeploymentObs& obs, const HpaConfig& cfg) {
    ScalingAction act;
    if (obs.replicas < 1) return act;
    double per_replica = obs.windowed_util_m.to_double() / obs.replicas;
    double trigger = cfg.threshold * static_cast<double>(obs.creq_per_replica_m);
    if (per_replica >= trigger) {
        if (obs.replicas >= cfg.max_replicas) {
            act.reason = "at max replicas";
            return act;
        }
        act.kind = ScalingAction::Kind::AddReplica;
        act.reason = "utilization above threshold";
        return act;
    }
    if (obs.replicas > 1 && per_replica <= trigger * cfg.downscale_hysteresis) {
        act.kind = ScalingAction::Kind::RemoveReplica;
        act.reason = "utilization below hysteresis floor";
        return act;
    }
    act.reason = "within band";
    return act;
}

std::vector<ScalingAction> yaas_decide(const DeploymentObs& obs, const std::vector<NodeObs>& nodes,
                                       const YaasConfig& cfg) {
    std::vector<ScalingAction> out;
    auto noop = [&](std::string reason) {
        ScalingAction a;
        a.reason = std::move(reason);
        out.push_back(std::move(a));
        return out;
    };

    if (obs.replicas < 1) return noop("no replicas");
    if (obs.ticks_since_action < cfg.cooldown_ticks) return noop("cooldown");

    const Millicores total_creq = obs.creq_per_replica_m * obs.replicas;
    const Frac& util = obs.windowed_util_m;

    // (1) SLO slightly violated: zero the overage by allocating up to U.
    bool breached = obs.window_pctl_us &&
                    static_cast<double>(*obs.window_pctl_us) >
                        static_cast<double>(obs.slo_us) * (1.0 + cfg.slo_margin);
    if (breached && util > Frac(total_creq)) {
        Millicores per = ceil_div(util.ceil(), obs.replicas);
        per = std::max(per, cfg.min_creq_m);
        Millicores delta = per - obs.creq_per_replica_m;

        // In-place growth needs the extra creq admitted on every hosting
        // node; replicas sharing a node each claim their own delta.
        std::map<int, Millicores> need;
        for (const auto& r : obs.replica_obs) need[r.node] += delta;
        bool fits = true;
        for (const auto& [node, d] : need) {
            auto it = std::find_if(nodes.begin(), nodes.end(),
                                   [node](const NodeObs& n) { return n.node == node; });
            if (it == nodes.end() || it->spare_m < d) fits = false;
        }
        if (fits) {
            ScalingAction a;
            a.kind = ScalingAction::Kind::SetCreq;
            a.per_replica_creq_m = per;
            a.reason = "slo breach: zero overage in place";
            a.slo_triggered = true;
            out.push_back(std::move(a));
            return out;
        }

        // Split: one more replica, total creq (= current U) divided equally
        // across all active replicas.
        Millicores per2 = std::max(cfg.min_creq_m, ceil_div(util.ceil(), obs.replicas + 1));
        std::map<int, Millicores> freed;  // shrink happens before the add
        for (const auto& r : obs.replica_obs) freed[r.node] += obs.creq_per_replica_m - per2;
        bool anywhere = false;
        for (const auto& n : nodes) {
            Millicores spare = n.spare_m + (freed.count(n.node) ? freed[n.node] : 0);
            if (spare >= per2) anywhere = true;
        }
        if (!anywhere) return noop("capacity exhausted");

        ScalingAction shrink;
        shrink.kind = ScalingAction::Kind::SetCreq;
        shrink.per_replica_creq_m = per2;
        shrink.reason = "slo breach: split creq across replicas";
        shrink.slo_triggered = true;
        out.push_back(std::move(shrink));

        ScalingAction add;
        add.kind = ScalingAction::Kind::AddReplica;
        add.per_replica_creq_m = per2;
        add.reason = "slo breach: add replica";
        add.slo_triggered = true;
        out.push_back(std::move(add));
        return out;
    }

    // (2) Congested node: move the replica on the worst node to the
    // least-utilized node that admits it.
    const ReplicaObs* worst = nullptr;
    for (const auto& r : obs.replica_obs) {
        if (!worst || r.node_util > worst->node_util) worst = &r;
    }
    if (worst && worst->node_util > cfg.t_cong) {
        const NodeObs* dest = nullptr;
        for (const auto& n : nodes) {
            if (n.node == worst->node || n.spare_m < obs.creq_per_replica_m) continue;
            if (!dest || n.util < dest->util) dest = &n;
        }
        if (!dest) return noop("capacity exhausted");
        ScalingAction a;
        a.kind = ScalingAction::Kind::Migrate;
        a.pod = worst->pod;
        a.dest_node = dest->node;
        a.reason = "node congested";
        out.push_back(std::move(a));
        return out;
    }

    // (3) Eager downscale.
    if (util.to_double() < cfg.downscale_factor * static_cast<double>(total_creq)) {
        Millicores per = ceil_div(std::max<Millicores>(util.ceil(), 1), obs.replicas);
        if (per < cfg.min_creq_m && obs.replicas > 1) {
            ScalingAction a;
            a.kind = ScalingAction::Kind::RemoveReplica;
            a.reason = "rightsize: fewer replicas suffice";
            out.push_back(std::move(a));
            return out;
        }
        per = std::max(per, cfg.min_creq_m);
        if (per < obs.creq_per_replica_m) {
            ScalingAction a;
            a.kind = ScalingAction::Kind::SetCreq;
            a.per_replica_creq_m = per;
            a.reason = "rightsize: shrink creq to utilization";
            out.push_back(std::move(a));
            return out;
        }
    }

    return noop("steady");
}

ApplyResult apply_action(Cluster& cluster, DeploymentState& dep, const ScalingAction& action,
                         const ApplyContext& ctx) {
    ApplyResult res;
    switch (action.kind) {
        case ScalingAction::Kind::NoOp:
            res.applied = true;
            return res;

        case ScalingAction::Kind::AddReplica: {
            PodSpec spec = dep.pod_template;
            if (action.per_replica_creq_m > 0) spec.creq_m = action.per_replica_creq_m;
            int node = cluster.pick_node(spec.creq_m, ctx.strategy);
            if (node < 0) {
                res.note = "no node admits " + std::to_string(spec.creq_m) + "m";
                return res;
            }
            std::string name = dep.name + "-" + std::to_string(dep.next_replica_ordinal++);
            res.new_pod = cluster.create_pod(spec, name, node);
            dep.replicas.push_back(res.new_pod);
            if (action.per_replica_creq_m > 0) dep.pod_template.creq_m = action.per_replica_creq_m;
            res.applied = true;
            return res;
        }

        case ScalingAction::Kind::RemoveReplica: {
            if (dep.replicas.size() <= 1) {
                res.note = "replica floor of one";
                return res;
            }
            int victim_id = dep.replicas.back();
            dep.replicas.pop_back();
            PodRuntime& victim = cluster.pod(victim_id);
            // Requests already accepted are reassigned round-robin to the
            // survivors; remaining work is preserved.
            std::deque<Request> moved;
            moved.swap(victim.queue);
            for (Request& req : moved) {
                int target = dep.replicas[dep.rr_cursor % dep.replicas.size()];
                ++dep.rr_cursor;
                PodRuntime& pod = cluster.pod(target);
                pod.queue.push_back(std::move(req));
                auto idx = static_cast<int>(pod.queue.size()) - 1;
                if (idx < pod.spec.parallelism && !pod.queue.back().service_start) {
                    pod.queue.back().service_start = ctx.now;
                }
                res.moved_requests_to.push_back(target);
            }
            dep.retired_cpu_us += victim.cumulative_cpu_us;
            cluster.remove_pod(victim_id);
            res.applied = true;
            return res;
        }

        case ScalingAction::Kind::SetCreq: {
            Millicores per = action.per_replica_creq_m;
            sim_check(per >= 1, "SetCreq below 1m");
            // Validate the net delta per node before touching anything.
            std::map<int, Millicores> net;
            for (int id : dep.replicas) {
                const PodRuntime& pod = cluster.pod(id);
                net[pod.node] += per - pod.spec.creq_m;
            }
            for (const auto& [node, delta] : net) {
                const NodeState& n = cluster.node(node);
                if (n.allocated_m + delta > n.spec.capacity_m()) {
                    res.note = "node " + n.spec.id + " cannot admit creq increase";
                    return res;
                }
            }
            // Shrinks release allocation before any growth claims it.
            for (int id : dep.replicas) {
                if (cluster.pod(id).spec.creq_m > per) {
                    sim_check(cluster.try_resize(id, per), "shrink cannot fail");
                }
            }
            for (int id : dep.replicas) {
                if (cluster.pod(id).spec.creq_m < per) {
                    sim_check(cluster.try_resize(id, per), "validated grow failed");
                }
            }
            dep.pod_template.creq_m = per;
            res.applied = true;
            return res;
        }

        case ScalingAction::Kind::Migrate: {
            if (!cluster.migrate_pod(action.pod, action.dest_node)) {
                res.note = "destination rejects pod";
                return res;
            }
            res.applied = true;
            return res;
        }
    }
    return res;
}

}  // namespace podsim
