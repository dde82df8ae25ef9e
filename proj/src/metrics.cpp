#include "podsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "podsim/errors.hpp"

namespace podsim {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string ms3(SimTime us) { return fmt("%.3f", static_cast<double>(us) / kUsPerMs); }

std::string opt_ms3(const std::optional<std::int64_t>& us) {
    return us ? ms3(*us) : std::string();
}

}  // namespace

std::int64_t percentile_us(std::vector<std::int64_t> samples, double p) {
    sim_check(!samples.empty(), "percentile of empty sample set");
    sim_check(p > 0.0 && p <= 100.0, "percentile out of (0, 100]");
    std::sort(samples.begin(), samples.end());
    auto n = static_cast<double>(samples.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    if (rank < 1) rank = 1;
    return samples[rank - 1];
}

void LatencyRecorder::record(SimTime completion, SimTime latency) {
    sim_check(samples_.empty() || completion >= samples_.back().completion,
              "latency samples recorded out of completion order");
    samples_.push_back({completion, latency});
}

std::optional<std::int64_t> LatencyRecorder::percentile_between(SimTime from, SimTime to,
                                                                double p) const {
    auto lo = std::lower_bound(samples_.begin(), samples_.end(), from,
                               [](const LatencySample& s, SimTime v) { return s.completion < v; });
    auto hi = std::lower_bound(samples_.begin(), samples_.end(), to,
                               [](const LatencySample& s, SimTime v) { return s.completion < v; });
    if (lo == hi) return std::nullopt;
    std::vector<std::int64_t> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo));
    for (auto it = lo; it != hi; ++it) vals.push_back(it->latency_us);
    return percentile_us(std::move(vals), p);
}

std::optional<std::int64_t> LatencyRecorder::percentile_after(SimTime from, double p) const {
    if (samples_.empty()) return std::nullopt;
    return percentile_between(from, samples_.back().completion + 1, p);
}

std::optional<double> LatencyRecorder::mean_after(SimTime from) const {
    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& s : samples_) {
        if (s.completion >= from) {
            sum += static_cast<double>(s.latency_us);
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n) / kUsPerMs;
}

std::int64_t LatencyRecorder::count_after(SimTime from) const {
    auto lo = std::lower_bound(samples_.begin(), samples_.end(), from,
                               [](const LatencySample& s, SimTime v) { return s.completion < v; });
    return static_cast<std::int64_t>(samples_.end() - lo);
}

std::optional<double> time_to_meet_slo(const std::vector<WindowPoint>& windows, SimTime slo_us,
                                       SimTime step_time) {
    // Windows without samples count as compliant: no evidence of violation.
    auto ok = [&](const WindowPoint& w) { return !w.pctl_us || *w.pctl_us <= slo_us; };
    bool first_after_step = true;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i].t <= step_time) continue;
        if (ok(windows[i]) && i + 1 < windows.size() && ok(windows[i + 1])) {
            if (first_after_step) return 0.0;
            return to_seconds(windows[i].t - step_time);
        }
        first_after_step = false;
    }
    return std::nullopt;
}

const DeploymentReport* MetricsReport::find(const std::string& name) const {
    for (const auto& d : deployments) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

std::string MetricsReport::summary_csv() const {
    std::string out =
        "deployment,replicas_final,p50_ms,p95_ms,p99_ms,slo_ms,slo_attainment,"
        "throughput_rps,throttle_events,creq_seconds,util_seconds,"
        "bill_resource,bill_utilization,bill_performance\n";
    for (const auto& d : deployments) {
        out += d.name + ',';
        out += d.is_chain ? std::string() : std::to_string(d.replicas_final);
        out += ',' + opt_ms3(d.p50_us) + ',' + opt_ms3(d.p95_us) + ',' + opt_ms3(d.p99_us);
        out += ',' + ms3(d.slo_us);
        out += ',' + fmt("%.4f", d.slo_attainment);
        out += ',' + fmt("%.4f", d.throughput_rps);
        out += ',' + (d.is_chain ? std::string() : std::to_string(d.throttle_events));
        if (d.is_chain) {
            out += ",,,,,";
        } else {
            out += ',' + fmt("%.3f", d.creq_mc_seconds / 1000.0);
            out += ',' + fmt("%.3f", d.util_mc_seconds / 1000.0);
            out += ',' + (d.bill_resource ? fmt("%.6f", *d.bill_resource) : std::string());
            out += ',' + (d.bill_utilization ? fmt("%.6f", *d.bill_utilization) : std::string());
            out += ',' + (d.bill_performance ? fmt("%.6f", *d.bill_performance) : std::string());
        }
        out += '\n';
    }
    return out;
}

std::string MetricsReport::timeseries_csv() const {
    std::string out = "t_s,deployment,replicas,total_creq_m,util_m,p99_ms_window,node_id,node_util\n";
    for (const auto& r : timeseries) {
        out += fmt("%.3f", to_seconds(r.t)) + ',';
        if (!r.deployment.empty()) {
            out += r.deployment + ',' + std::to_string(r.replicas) + ',' +
                   std::to_string(r.total_creq_m) + ',' + fmt("%.3f", r.util_m) + ',' +
                   opt_ms3(r.p99_window_us) + ",,";
        } else {
            out += ",,,,," + r.node_id + ',' + fmt("%.4f", r.node_util);
        }
        out += '\n';
    }
    return out;
}

std::string MetricsReport::actions_log() const {
    std::string out;
    for (const auto& a : actions) {
        out += fmt("%.3f", to_seconds(a.t)) + ',' + a.deployment + ',' + a.action + ',' + a.reason;
        if (!a.applied) out += " (rejected)";
        out += '\n';
    }
    return out;
}

std::string MetricsReport::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["duration_s"] = to_seconds(duration_us);
    j["warmup_s"] = to_seconds(warmup_us);
    auto& deps = j["deployments"];
    deps = nlohmann::ordered_json::array();
    for (const auto& d : deployments) {
        nlohmann::ordered_json e;
        e["name"] = d.name;
        e["kind"] = d.is_chain ? "chain" : "deployment";
        e["replicas_final"] = d.replicas_final;
        if (d.p50_us) e["p50_ms"] = static_cast<double>(*d.p50_us) / kUsPerMs;
        if (d.p95_us) e["p95_ms"] = static_cast<double>(*d.p95_us) / kUsPerMs;
        if (d.p99_us) e["p99_ms"] = static_cast<double>(*d.p99_us) / kUsPerMs;
        if (d.mean_ms) e["mean_ms"] = *d.mean_ms;
        e["slo_ms"] = static_cast<double>(d.slo_us) / kUsPerMs;
        e["slo_percentile"] = d.slo_percentile;
        e["slo_attainment"] = d.slo_attainment;
        e["throughput_rps"] = d.throughput_rps;
        e["throttle_events"] = d.throttle_events;
        e["arrivals"] = d.arrivals;
        e["completed"] = d.completed;
        if (!d.is_chain) {
            e["creq_seconds"] = d.creq_mc_seconds / 1000.0;
            e["util_seconds"] = d.util_mc_seconds / 1000.0;
            if (d.bill_resource) e["bill_resource"] = *d.bill_resource;
            if (d.bill_utilization) e["bill_utilization"] = *d.bill_utilization;
            if (d.bill_performance) e["bill_performance"] = *d.bill_performance;
        }
        if (d.load_step_time) {
            e["load_step_s"] = to_seconds(*d.load_step_time);
            if (d.time_to_meet_slo_s) {
                e["time_to_meet_slo_s"] = *d.time_to_meet_slo_s;
            } else {
                e["time_to_meet_slo_s"] = "unmet";
            }
        }
        deps.push_back(std::move(e));
    }
    if (!periods.empty()) {
        auto& ps = j["periods"];
        ps = nlohmann::ordered_json::array();
        for (const auto& p : periods) {
            ps.push_back({{"pod", p.pod},
                          {"node", p.node},
                          {"period", p.period_index},
                          {"consumed_us", p.consumed_us.floor()},
                          {"consumed_exact", p.consumed_us.is_integer()},
                          {"throttles", p.throttles}});
        }
    }
    if (!requests.empty()) {
        auto& rs = j["requests"];
        rs = nlohmann::ordered_json::array();
        for (const auto& r : requests) {
            rs.push_back({{"deployment", r.deployment},
                          {"id", r.id},
                          {"arrival_us", r.arrival},
                          {"service_start_us", r.service_start},
                          {"completion_us", r.completion},
                          {"latency_us", r.latency_us},
                          {"execution_us", r.execution_us}});
        }
    }
    j["actions"] = nlohmann::ordered_json::array();
    for (const auto& a : actions) {
        j["actions"].push_back({{"t_s", to_seconds(a.t)},
                                {"deployment", a.deployment},
                                {"action", a.action},
                                {"reason", a.reason},
                                {"applied", a.applied},
                                {"slo_triggered", a.slo_triggered},
                                {"post_overage_m", a.post_overage_m}});
    }
    return j.dump(2);
}

void MetricsReport::export_to(const std::string& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir + "/" + name, std::ios::binary);
        if (!out) throw IoError("cannot write " + dir + "/" + name);
        out << content;
        if (!out) throw IoError("write failed for " + dir + "/" + name);
    };
    write("summary.csv", summary_csv());
    write("timeseries.csv", timeseries_csv());
    write("actions.log", actions_log());
    write("report.json", to_json());
}

}  // namespace podsim
