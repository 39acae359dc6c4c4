#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cpnet/contact_engine.hpp"
#include "cpnet/event_log.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"
#include "cpnet/stats.hpp"

using namespace cpnet;

namespace {

constexpr std::uint64_t kMaster = 20260824;

// Independent infection-path oracle: (v,0) with v in A reaches (w,t) iff
// there is a time-increasing sequence of transmissions avoiding recoveries.
// Recursive definition evaluated directly from the raw streams, with no
// shared code with the sweep implementation.
struct PathOracle {
    const MultiGraph& g;
    const EventLog& log;
    const std::vector<std::uint32_t>& initial;

    bool recovery_in(std::uint32_t v, double from, double to) const {  // (from, to]
        for (double r : log.recovery_times[v])
            if (r > from && r <= to) return true;
        return false;
    }

    // infected at time t; `strict` drops events at exactly t (state just
    // before t). Recursion descends through strictly earlier transmissions.
    bool infected(std::uint32_t w, double t, bool strict) const {
        const bool base = std::find(initial.begin(), initial.end(), w) != initial.end();
        double last_recovery = 0.0;
        bool recovered = false;
        for (double r : log.recovery_times[w])
            if (r < t || (!strict && r == t)) {
                recovered = true;
                last_recovery = std::max(last_recovery, r);
            }
        if (base && !recovered) return true;
        // any transmission into w after its last recovery, from an infected source
        for (std::uint64_t h = 0; h < log.transmission_times.size(); ++h) {
            if (g.half_edge_target(h) != w) continue;
            const std::uint32_t src = g.half_edge_owner(h);
            if (src == w) continue;  // loop transmissions cannot infect
            for (double s : log.transmission_times[h]) {
                if (s >= t && (strict || s > t)) continue;
                if (recovered && s <= last_recovery) continue;
                if (infected(src, s, true)) return true;
            }
        }
        return false;
    }
};

std::vector<std::uint32_t> oracle_forward(const EventLog& log, const MultiGraph& g,
                                          const std::vector<std::uint32_t>& initial, double t) {
    PathOracle oracle{g, log, initial};
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        if (oracle.infected(v, t, false)) out.push_back(v);
    return out;
}

EventLog empty_log(const MultiGraph& g, double window, double lambda) {
    EventLog log;
    log.window = window;
    log.lambda = lambda;
    log.recovery_times.resize(g.num_vertices());
    log.transmission_times.resize(g.num_half_edges());
    log.rebuild_merged();
    return log;
}

MultiGraph random_multigraph(std::uint32_t n, std::uint32_t max_edges, Rng& rng) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.uniform_int(max_edges));
    for (std::uint32_t i = 0; i < m; ++i)
        edges.emplace_back(static_cast<std::uint32_t>(rng.uniform_int(n)),
                           static_cast<std::uint32_t>(rng.uniform_int(n)));
    return MultiGraph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("poisson stream statistics") {
    const MultiGraph g = make_star(10000);
    Rng rng(derive_seed(kMaster, "el/poisson"));
    const double T = 5.0, lambda = 0.7;
    const EventLog log = generate_event_log(g, lambda, T, rng);

    std::vector<double> rec_counts, tr_counts;
    for (const auto& s : log.recovery_times) rec_counts.push_back(static_cast<double>(s.size()));
    for (const auto& s : log.transmission_times) tr_counts.push_back(static_cast<double>(s.size()));

    const MeanSe rec = mean_se(rec_counts);
    CHECK(std::abs(rec.mean - T) <= 3 * rec.se);
    const MeanSe tr = mean_se(tr_counts);
    CHECK(std::abs(tr.mean - lambda * T) <= 3 * tr.se);
    // Poisson: variance ~ mean
    double var = 0.0;
    for (double c : tr_counts) var += (c - tr.mean) * (c - tr.mean);
    var /= tr_counts.size() - 1;
    CHECK(std::abs(var - tr.mean) / tr.mean < 0.1);

    // disjoint-interval counts uncorrelated
    std::vector<double> first_half, second_half;
    for (const auto& s : log.recovery_times) {
        first_half.push_back(std::count_if(s.begin(), s.end(), [&](double t) { return t <= T / 2; }));
        second_half.push_back(s.size() - first_half.back());
    }
    const MeanSe m1 = mean_se(first_half), m2 = mean_se(second_half);
    double cov = 0.0;
    for (std::size_t i = 0; i < first_half.size(); ++i)
        cov += (first_half[i] - m1.mean) * (second_half[i] - m2.mean);
    cov /= first_half.size();
    const double corr = cov / (T / 2);  // both variances = T/2 for Poisson
    CHECK(std::abs(corr) < 0.05);

    // per-stream times sorted within the window
    for (const auto& s : log.recovery_times) {
        CHECK(std::is_sorted(s.begin(), s.end()));
        for (double t : s) CHECK(t <= T);
    }
}

TEST_CASE("reachable_forward basics") {
    const MultiGraph g = make_path(3);
    EventLog log = empty_log(g, 10.0, 1.0);
    CHECK(reachable_forward(log, g, {0, 2}, 5.0) == std::vector<std::uint32_t>{0, 2});

    log.recovery_times[1].push_back(1.0);
    log.rebuild_merged();
    CHECK(reachable_forward(log, g, {1}, 2.0).empty());
    CHECK(reachable_forward(log, g, {1}, 0.5) == std::vector<std::uint32_t>{1});
}

TEST_CASE("sweep equals the infection-path oracle") {
    Rng rng(derive_seed(kMaster, "el/oracle"));
    const std::vector<MultiGraph> corpus = {
        make_path(4), make_cycle(4), make_star(4),
        MultiGraph::from_edges(4, {{0, 1}, {0, 1}, {2, 2}, {2, 3}, {1, 2}}),
        MultiGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}})};
    for (const MultiGraph& g : corpus) {
        for (int rep = 0; rep < 50; ++rep) {
            const EventLog log = generate_event_log(g, 1.0, 2.0, rng);
            std::vector<std::uint32_t> initial;
            for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
                if (rng.bernoulli(0.5)) initial.push_back(v);
            for (double t : {0.5, 1.0, 2.0}) {
                REQUIRE(reachable_forward(log, g, initial, t) ==
                        oracle_forward(log, g, initial, t));
            }
        }
    }
}

TEST_CASE("reachable_dual basics and self-duality") {
    const MultiGraph edge = MultiGraph::from_edges(2, {{0, 1}});
    EventLog log = empty_log(edge, 10.0, 1.0);
    CHECK(reachable_dual(log, edge, 1, 5.0) == std::vector<std::uint32_t>{1});

    // one transmission 0 -> 1 at s < t, no recoveries: dual(1,t) = {0,1}
    // (half-edge 0 is owned by vertex 0)
    log.transmission_times[0].push_back(1.0);
    log.rebuild_merged();
    CHECK(reachable_dual(log, edge, 1, 2.0) == std::vector<std::uint32_t>{0, 1});
    CHECK(reachable_dual(log, edge, 1, 0.5) == std::vector<std::uint32_t>{1});

    // a recovery at w removes it from its own dual set
    log.recovery_times[1].push_back(1.5);
    log.rebuild_merged();
    CHECK(reachable_dual(log, edge, 1, 2.0) == std::vector<std::uint32_t>{});

    Rng rng(derive_seed(kMaster, "el/duality"));
    for (int rep = 0; rep < 100; ++rep) {
        const MultiGraph g = random_multigraph(5, 8, rng);
        const EventLog elog = generate_event_log(g, 1.2, 3.0, rng);
        for (double t : {0.7, 1.5, 3.0}) {
            for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
                const auto fwd = reachable_forward(elog, g, {v}, t);
                for (std::uint32_t w = 0; w < g.num_vertices(); ++w) {
                    const auto dual = reachable_dual(elog, g, w, t);
                    const bool in_fwd = std::find(fwd.begin(), fwd.end(), w) != fwd.end();
                    const bool in_dual = std::find(dual.begin(), dual.end(), v) != dual.end();
                    REQUIRE(in_fwd == in_dual);
                }
            }
        }
    }
}

TEST_CASE("grid sweep matches single sweeps") {
    Rng rng(derive_seed(kMaster, "el/grid"));
    const MultiGraph g = make_cycle(8);
    for (int rep = 0; rep < 20; ++rep) {
        const EventLog log = generate_event_log(g, 1.0, 4.0, rng);
        const std::vector<double> times = {0.0, 1.0, 2.5, 4.0};
        const auto grid = reachable_forward_grid(log, g, {0, 3}, times);
        REQUIRE(grid.size() == times.size());
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(grid[i] == reachable_forward(log, g, {0, 3}, times[i]));
    }
}

TEST_CASE("monotonicity in the initial set") {
    Rng rng(derive_seed(kMaster, "el/monotone"));
    for (int rep = 0; rep < 100; ++rep) {
        const MultiGraph g = random_multigraph(12, 20, rng);
        const EventLog log = generate_event_log(g, 1.0, 3.0, rng);
        std::vector<std::uint32_t> a, b;
        for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
            if (rng.bernoulli(0.5)) {
                b.push_back(v);
                if (rng.bernoulli(0.5)) a.push_back(v);
            }
        }
        for (double t : {1.0, 2.0, 3.0}) {
            const auto ra = reachable_forward(log, g, a, t);
            const auto rb = reachable_forward(log, g, b, t);
            CHECK(std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()));
        }
    }
}

TEST_CASE("lambda-thinning monotonicity") {
    Rng rng(derive_seed(kMaster, "el/thin"));
    for (int rep = 0; rep < 100; ++rep) {
        const MultiGraph g = random_multigraph(12, 20, rng);
        const EventLog log = generate_event_log(g, 2.0, 3.0, rng);
        const EventLog thin = thin_transmissions(log, 0.5, rng);
        CHECK(thin.lambda == doctest::Approx(1.0));
        CHECK(thin.recovery_times == log.recovery_times);
        // thinned streams are subsets
        std::size_t kept = 0, total = 0;
        for (std::size_t h = 0; h < log.transmission_times.size(); ++h) {
            CHECK(std::includes(log.transmission_times[h].begin(), log.transmission_times[h].end(),
                                thin.transmission_times[h].begin(), thin.transmission_times[h].end()));
            kept += thin.transmission_times[h].size();
            total += log.transmission_times[h].size();
        }
        CHECK(kept <= total);
        const std::vector<std::uint32_t> initial = all_vertices(g);
        for (double t : {1.0, 2.0, 3.0}) {
            const auto full = reachable_forward(log, g, initial, t);
            const auto reduced = reachable_forward(thin, g, initial, t);
            CHECK(std::includes(full.begin(), full.end(), reduced.begin(), reduced.end()));
        }
    }
}

TEST_CASE("edge removal never increases the extinction time") {
    Rng rng(derive_seed(kMaster, "el/edges"));
    for (int rep = 0; rep < 100; ++rep) {
        const MultiGraph g = random_multigraph(10, 15, rng);
        const EventLog log = generate_event_log(g, 1.0, 20.0, rng);
        // drop a random subset of edges (both orientations together)
        std::vector<char> enabled(g.num_half_edges(), 1);
        for (std::uint64_t h = 0; h < g.num_half_edges(); ++h)
            if (h < g.half_edge_partner(h) && rng.bernoulli(0.4)) {
                enabled[h] = 0;
                enabled[g.half_edge_partner(h)] = 0;
            }
        const auto full = log_extinction_time(log, g, all_vertices(g));
        const auto restricted = log_extinction_time(log, g, all_vertices(g), &enabled);
        if (full.has_value()) {
            REQUIRE(restricted.has_value());
            CHECK(*restricted <= *full);
        }
    }
}

TEST_CASE("log extinction time basics") {
    const MultiGraph g = make_star(5);
    EventLog log = empty_log(g, 10.0, 1.0);
    CHECK(log_extinction_time(log, g, {}) == 0.0);
    CHECK(!log_extinction_time(log, g, {0}).has_value());  // no recoveries in window
    log.recovery_times[0].push_back(2.5);
    log.rebuild_merged();
    CHECK(log_extinction_time(log, g, {0}) == 2.5);
}

TEST_CASE("engine and log agree in distribution") {
    // |xi_t| on a fixed small graph: simulate vs fresh logs, two-sample KS
    const MultiGraph g = make_path(5);
    const double lambda = 1.0, t = 2.0;
    const int m = 10000;
    Rng rng(derive_seed(kMaster, "el/agree"));
    std::vector<double> engine_counts(m), log_counts(m);
    ContactConfig config;
    config.lambda = lambda;
    config.horizon = t;
    config.observation_times = {t};
    for (int i = 0; i < m; ++i) {
        const SimOutcome out = simulate(g, config, {2}, rng);
        engine_counts[i] = static_cast<double>(out.density_samples[0].infected);
        const EventLog log = generate_event_log(g, lambda, t, rng);
        log_counts[i] = static_cast<double>(reachable_forward(log, g, {2}, t).size());
    }
    CHECK(ks_two_sample(engine_counts, log_counts) <= 0.05);
}
