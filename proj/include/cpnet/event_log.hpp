// event_log.hpp -- realized Poisson clocks of the graphical construction and
// reachability sweeps over them.
//
// Streams: one rate-1 recovery stream per vertex, one rate-lambda
// transmission stream per oriented edge. Oriented edges are identified with
// half-edges: half-edge h owned by v with partner owned by w is the oriented
// edge v -> w (both orientations of a loop are v -> v, and their clocks are
// kept even though loop transmissions cannot change the state).
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"

namespace cpnet {

struct LogEvent {
    double time;
    std::uint64_t stream;  // vertex id or half-edge id
    bool recovery;
};

struct EventLog {
    double window = 0.0;  // T
    double lambda = 0.0;
    std::vector<std::vector<double>> recovery_times;      // per vertex, sorted
    std::vector<std::vector<double>> transmission_times;  // per half-edge, sorted
    std::vector<LogEvent> merged;                         // chronological

    void rebuild_merged() {
        merged.clear();
        for (std::uint64_t v = 0; v < recovery_times.size(); ++v)
            for (double t : recovery_times[v]) merged.push_back({t, v, true});
        for (std::uint64_t h = 0; h < transmission_times.size(); ++h)
            for (double t : transmission_times[h]) merged.push_back({t, h, false});
        // ties (probability zero) break recovery-first, then by stream id,
        // matching the closed-interval convention of infection paths
        std::sort(merged.begin(), merged.end(), [](const LogEvent& x, const LogEvent& y) {
            if (x.time != y.time) return x.time < y.time;
            if (x.recovery != y.recovery) return x.recovery;
            return x.stream < y.stream;
        });
    }
};

inline EventLog generate_event_log(const MultiGraph& g, double lambda, double window,
                                   Rng& rng) {
    EventLog log;
    log.window = window;
    log.lambda = lambda;
    log.recovery_times.resize(g.num_vertices());
    for (auto& s : log.recovery_times) s = rng.poisson_times(1.0, window);
    log.transmission_times.resize(g.num_half_edges());
    for (auto& s : log.transmission_times) s = rng.poisson_times(lambda, window);
    log.rebuild_merged();
    return log;
}

// Delete each transmission point independently with probability 1 - keep;
// turns a lambda-log into a (keep*lambda)-log on the same realization.
inline EventLog thin_transmissions(const EventLog& log, double keep, Rng& rng) {
    EventLog out;
    out.window = log.window;
    out.lambda = log.lambda * keep;
    out.recovery_times = log.recovery_times;
    out.transmission_times.resize(log.transmission_times.size());
    for (std::size_t h = 0; h < log.transmission_times.size(); ++h)
        for (double t : log.transmission_times[h])
            if (rng.bernoulli(keep)) out.transmission_times[h].push_back(t);
    out.rebuild_merged();
    return out;
}

namespace detail {

inline void apply_forward_event(const MultiGraph& g, const LogEvent& ev,
                                std::vector<char>& infected,
                                const std::vector<char>* half_edge_enabled) {
    if (ev.recovery) {
        infected[ev.stream] = 0;
    } else {
        if (half_edge_enabled && !(*half_edge_enabled)[ev.stream]) return;
        const std::uint32_t src = g.half_edge_owner(ev.stream);
        if (!infected[src]) return;
        infected[g.half_edge_target(ev.stream)] = 1;  // loop: no-op by idempotence
    }
}

}  // namespace detail

// xi_t^A: chronological sweep of all events with time <= t. The optional
// half-edge mask restricts to a spanning subgraph on the same realization.
inline std::vector<std::uint32_t> reachable_forward(
    const EventLog& log, const MultiGraph& g, const std::vector<std::uint32_t>& initial,
    double t, const std::vector<char>* half_edge_enabled = nullptr) {
    std::vector<char> infected(g.num_vertices(), 0);
    for (std::uint32_t v : initial) infected[v] = 1;
    for (const LogEvent& ev : log.merged) {
        if (ev.time > t) break;
        detail::apply_forward_event(g, ev, infected, half_edge_enabled);
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        if (infected[v]) out.push_back(v);
    return out;
}

// one sweep, snapshots at each time of a sorted grid
inline std::vector<std::vector<std::uint32_t>> reachable_forward_grid(
    const EventLog& log, const MultiGraph& g, const std::vector<std::uint32_t>& initial,
    const std::vector<double>& times, const std::vector<char>* half_edge_enabled = nullptr) {
    std::vector<char> infected(g.num_vertices(), 0);
    for (std::uint32_t v : initial) infected[v] = 1;
    std::vector<std::vector<std::uint32_t>> out(times.size());
    std::size_t next_time = 0;
    auto snapshot_until = [&](double horizon) {
        while (next_time < times.size() && times[next_time] < horizon) {
            for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
                if (infected[v]) out[next_time].push_back(v);
            ++next_time;
        }
    };
    for (const LogEvent& ev : log.merged) {
        snapshot_until(ev.time);
        if (next_time == times.size()) break;
        detail::apply_forward_event(g, ev, infected, half_edge_enabled);
    }
    snapshot_until(std::numeric_limits<double>::infinity());
    return out;
}

// {v : (v,0) <-> (w,t)}: reverse sweep with time and edge orientation flipped
inline std::vector<std::uint32_t> reachable_dual(
    const EventLog& log, const MultiGraph& g, std::uint32_t w, double t,
    const std::vector<char>* half_edge_enabled = nullptr) {
    std::vector<char> reaches(g.num_vertices(), 0);
    reaches[w] = 1;
    // find the last event with time <= t, then scan backwards
    const auto end = std::upper_bound(
        log.merged.begin(), log.merged.end(), t,
        [](double tt, const LogEvent& ev) { return tt < ev.time; });
    for (auto it = end; it != log.merged.begin();) {
        --it;
        const LogEvent& ev = *it;
        if (ev.recovery) {
            reaches[ev.stream] = 0;
        } else {
            if (half_edge_enabled && !(*half_edge_enabled)[ev.stream]) continue;
            const std::uint64_t h = ev.stream;
            if (reaches[g.half_edge_target(h)]) reaches[g.half_edge_owner(h)] = 1;
        }
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        if (reaches[v]) out.push_back(v);
    return out;
}

// extinction time of the log-driven process, or nullopt if still alive at T
inline std::optional<double> log_extinction_time(
    const EventLog& log, const MultiGraph& g, const std::vector<std::uint32_t>& initial,
    const std::vector<char>* half_edge_enabled = nullptr) {
    if (initial.empty()) return 0.0;
    std::vector<char> infected(g.num_vertices(), 0);
    std::uint64_t count = 0;
    for (std::uint32_t v : initial)
        if (!infected[v]) { infected[v] = 1; ++count; }
    for (const LogEvent& ev : log.merged) {
        if (ev.recovery) {
            if (infected[ev.stream]) {
                infected[ev.stream] = 0;
                if (--count == 0) return ev.time;
            }
        } else {
            if (half_edge_enabled && !(*half_edge_enabled)[ev.stream]) continue;
            const std::uint32_t src = g.half_edge_owner(ev.stream);
            const std::uint32_t dst = g.half_edge_target(ev.stream);
            if (infected[src] && !infected[dst]) {
                infected[dst] = 1;
                ++count;
            }
        }
    }
    return std::nullopt;
}

}  // namespace cpnet
