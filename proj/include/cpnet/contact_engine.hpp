// contact_engine.hpp -- next-event simulation of the contact process.
//
// Infected vertices recover at rate 1 and push infection along each of their
// oriented edges at rate lambda (multi-edges count with multiplicity, loop
// transmissions are no-ops). Memoryless resampling per event is
// distributionally equal to the graphical construction; the event-log mode in
// event_log.hpp exists for the exact coupling/duality checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpnet/fenwick.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"

namespace cpnet {

struct ContactConfig {
    double lambda = 1.0;
    double horizon = std::numeric_limits<double>::infinity();
    std::vector<double> observation_times;  // sorted, each <= horizon

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
        if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
        double prev = -1.0;
        for (double t : observation_times) {
            if (t < prev) throw std::invalid_argument("observation times must be sorted");
            if (t > horizon) throw std::invalid_argument("observation times must not exceed the horizon");
            prev = t;
        }
    }
};

struct DensitySample {
    double time = 0.0;
    std::uint64_t infected = 0;
    double density = 0.0;
};

struct SimOutcome {
    std::optional<double> extinction_time;  // nullopt: censored at the horizon
    std::vector<DensitySample> density_samples;
    std::uint64_t peak_infected = 0;

    bool censored() const { return !extinction_time.has_value(); }
};

inline SimOutcome simulate(const MultiGraph& g, const ContactConfig& config,
                           const std::vector<std::uint32_t>& initial, Rng& rng) {
    config.validate();
    const std::uint32_t n = g.num_vertices();
    const double lambda = config.lambda;

    std::vector<char> infected(n, 0);
    Fenwick<double> weights(n);
    std::uint64_t count = 0;
    for (std::uint32_t v : initial) {
        if (v >= n) throw std::invalid_argument("initial vertex out of range");
        if (!infected[v]) {
            infected[v] = 1;
            weights.add(v, 1.0 + lambda * static_cast<double>(g.degree(v)));
            ++count;
        }
    }

    SimOutcome out;
    out.peak_infected = count;
    std::size_t next_obs = 0;
    double now = 0.0;
    auto record_until = [&](double horizon) {
        while (next_obs < config.observation_times.size() &&
               config.observation_times[next_obs] <= horizon) {
            const double t = config.observation_times[next_obs];
            out.density_samples.push_back(
                {t, count, n == 0 ? 0.0 : static_cast<double>(count) / n});
            ++next_obs;
        }
    };

    if (count == 0) {
        record_until(config.horizon);
        out.extinction_time = 0.0;
        return out;
    }

    for (;;) {
        const double total = weights.total();
        const double dt = rng.exponential(total);
        const double t_next = now + dt;
        if (t_next > config.horizon) {
            record_until(config.horizon);
            return out;  // censored
        }
        // density samples report the state after the last event <= t
        record_until(std::nextafter(t_next, 0.0));
        now = t_next;

        const std::uint32_t v = static_cast<std::uint32_t>(weights.select(rng.uniform() * total));
        const double w_v = 1.0 + lambda * static_cast<double>(g.degree(v));
        if (rng.uniform() * w_v < 1.0) {
            // recovery
            infected[v] = 0;
            weights.add(v, -w_v);
            if (--count == 0) {
                out.extinction_time = now;
                record_until(config.horizon);
                return out;
            }
        } else {
            // transmission along a uniform incident half-edge
            const std::uint64_t h = g.first_half_edge(v) + rng.uniform_int(g.degree(v));
            const std::uint32_t target = g.half_edge_target(h);
            if (target != v && !infected[target]) {
                infected[target] = 1;
                weights.add(target, 1.0 + lambda * static_cast<double>(g.degree(target)));
                ++count;
                if (count > out.peak_infected) out.peak_infected = count;
            }
        }
    }
}

inline std::vector<std::uint32_t> all_vertices(const MultiGraph& g) {
    std::vector<std::uint32_t> v(g.num_vertices());
    for (std::uint32_t i = 0; i < g.num_vertices(); ++i) v[i] = i;
    return v;
}

inline std::optional<double> extinction_time(const MultiGraph& g, double lambda,
                                             const std::vector<std::uint32_t>& initial,
                                             double cap, Rng& rng) {
    ContactConfig config;
    config.lambda = lambda;
    config.horizon = cap;
    if (cap == 0.0) return initial.empty() ? std::optional<double>(0.0) : std::nullopt;
    return simulate(g, config, initial, rng).extinction_time;
}

// Samples the race between the first recovery clock of v and the first
// transmission clock among its oriented edges. With loops included the
// success probability is exactly D_v * lambda / (D_v * lambda + 1).
inline bool first_transmission_before_recovery(const MultiGraph& g, std::uint32_t v,
                                               double lambda, bool include_loops,
                                               Rng& rng) {
    const std::uint64_t d = include_loops ? g.degree(v) : g.degree(v) - g.loop_count(v);
    if (d == 0) return false;
    const double first_transmission = rng.exponential(lambda * static_cast<double>(d));
    const double first_recovery = rng.exponential(1.0);
    return first_transmission < first_recovery;
}

constexpr double kDefaultLitCoefficient = 1.0 / (16.0 * 2.718281828459045235360287);

// True when the fraction of infected (distinct) neighbors exceeds
// lambda * coefficient; the optional restriction must be a subset of the
// neighbors of v. Zero neighbors means not lit.
inline bool is_lit(const MultiGraph& g, const std::vector<char>& infected, std::uint32_t v,
                   double lambda,
                   const std::vector<std::uint32_t>* neighborhood = nullptr,
                   double coefficient = kDefaultLitCoefficient) {
    std::uint64_t total = 0, lit = 0;
    if (neighborhood) {
        for (std::uint32_t w : *neighborhood) {
            ++total;
            if (infected[w]) ++lit;
        }
    } else {
        // distinct neighbors, multiplicity and loops ignored
        std::unordered_set<std::uint32_t> seen;
        g.for_each_neighbor(v, [&](std::uint32_t w) {
            if (w == v) return;
            if (seen.insert(w).second) {
                ++total;
                if (infected[w]) ++lit;
            }
        });
    }
    if (total == 0) return false;
    return static_cast<double>(lit) / static_cast<double>(total) > lambda * coefficient;
}

}  // namespace cpnet
