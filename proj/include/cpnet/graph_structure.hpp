// graph_structure.hpp -- structural analytics: degree classes, high-degree
// sets, components, diameter, two-step-star extraction, order statistics.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "cpnet/degree_law.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"

namespace cpnet {

inline std::map<std::uint64_t, std::uint64_t> degree_class_counts(const MultiGraph& g) {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) counts[g.degree(v)] += 1;
    return counts;
}

// number of degree-1 neighbors of v (each such vertex has a single stub, so
// multiplicity cannot arise)
inline std::uint64_t d1_count(const MultiGraph& g, std::uint32_t v) {
    std::uint64_t count = 0;
    for (std::uint64_t h = g.first_half_edge(v); h < g.first_half_edge(v) + g.degree(v); ++h) {
        const std::uint32_t w = g.half_edge_target(h);
        if (w != v && g.degree(w) == 1) ++count;
    }
    return count;
}

struct TwoStepStar {
    std::uint32_t hub = 0;
    std::vector<std::uint32_t> centers;
    std::vector<std::vector<std::uint32_t>> leaves;  // per center, disjoint

    std::uint64_t total_leaves() const {
        std::uint64_t t = 0;
        for (const auto& l : leaves) t += l.size();
        return t;
    }

    // check the S(k; d_1..d_k) shape against the host graph
    bool validate(const MultiGraph& g) const {
        if (centers.empty() || centers.size() != leaves.size()) return false;
        std::unordered_set<std::uint32_t> seen{hub};
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const std::uint32_t c = centers[i];
            if (!seen.insert(c).second) return false;
            if (!g.adjacent(hub, c)) return false;
            for (std::uint32_t leaf : leaves[i]) {
                if (!seen.insert(leaf).second) return false;
                if (g.degree(leaf) != 1) return false;
                if (!g.adjacent(c, leaf)) return false;
            }
        }
        return true;
    }
};

// Greedy extraction: candidate centers are the vertices with at least
// min_leaves degree-1 neighbors; the hub is searched among high-degree
// vertices adjacent to the selected centers. Returns the star with the most
// total leaves found, or nullopt.
inline std::optional<TwoStepStar> extract_two_step_star(const MultiGraph& g,
                                                        std::uint64_t min_leaves,
                                                        std::uint32_t max_centers) {
    const std::uint32_t n = g.num_vertices();
    if (min_leaves < 1 || max_centers < 1) return std::nullopt;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> candidates;  // (d1, v)
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint64_t d1 = d1_count(g, v);
        if (d1 >= min_leaves) candidates.emplace_back(d1, v);
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& x, const auto& y) {
                  return x.first != y.first ? x.first > y.first : x.second < y.second;
              });
    std::unordered_set<std::uint32_t> candidate_set;
    for (const auto& [d1, v] : candidates) candidate_set.insert(v);

    // hub candidates: highest-degree vertices first (degree >= 2; the hub
    // must be a distinct vertex adjacent to every selected center)
    std::vector<std::uint32_t> hub_candidates(n);
    for (std::uint32_t v = 0; v < n; ++v) hub_candidates[v] = v;
    std::sort(hub_candidates.begin(), hub_candidates.end(),
              [&g](std::uint32_t x, std::uint32_t y) {
                  return g.degree(x) != g.degree(y) ? g.degree(x) > g.degree(y) : x < y;
              });
    constexpr std::size_t kHubSearchLimit = 64;

    std::optional<TwoStepStar> best;
    std::uint64_t best_leaves = 0;
    std::size_t tried = 0;
    for (std::uint32_t hub : hub_candidates) {
        if (g.degree(hub) < 2) break;
        if (++tried > kHubSearchLimit) break;
        std::unordered_set<std::uint32_t> hub_neighbors;
        g.for_each_neighbor(hub, [&](std::uint32_t w) {
            if (w != hub) hub_neighbors.insert(w);
        });
        TwoStepStar star;
        star.hub = hub;
        std::uint64_t total = 0;
        for (const auto& [d1, v] : candidates) {
            if (v == hub || !hub_neighbors.count(v)) continue;
            star.centers.push_back(v);
            total += d1;
            if (star.centers.size() >= max_centers) break;
        }
        if (star.centers.empty() || total <= best_leaves) continue;
        // collect the leaf sets; a degree-1 vertex has a unique neighbor, so
        // the sets are disjoint by construction, and a leaf hanging off the
        // hub itself never appears (its neighbor is the hub, not a center)
        star.leaves.resize(star.centers.size());
        for (std::size_t i = 0; i < star.centers.size(); ++i) {
            const std::uint32_t c = star.centers[i];
            const std::uint64_t lo = g.first_half_edge(c);
            for (std::uint64_t h = lo; h < lo + g.degree(c); ++h) {
                const std::uint32_t w = g.half_edge_target(h);
                if (w != c && w != hub && g.degree(w) == 1) star.leaves[i].push_back(w);
            }
        }
        best_leaves = star.total_leaves();
        best = std::move(star);
    }
    return best;
}

struct ComponentInfo {
    std::vector<std::uint32_t> component_of;   // vertex -> component index
    std::vector<std::uint64_t> vertex_counts;  // per component
    std::vector<std::uint64_t> edge_counts;    // per component (loops count once)
    std::uint32_t giant = 0;                   // component index of the giant
    std::uint64_t off_giant_max_edges = 0;     // d'_n

    std::vector<std::uint32_t> giant_vertices() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t v = 0; v < component_of.size(); ++v)
            if (component_of[v] == giant) out.push_back(v);
        return out;
    }
};

inline ComponentInfo components(const MultiGraph& g) {
    const std::uint32_t n = g.num_vertices();
    ComponentInfo info;
    info.component_of.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (info.component_of[s] != UINT32_MAX) continue;
        const std::uint32_t cid = static_cast<std::uint32_t>(info.vertex_counts.size());
        info.vertex_counts.push_back(0);
        info.edge_counts.push_back(0);
        stack.push_back(s);
        info.component_of[s] = cid;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            info.vertex_counts[cid] += 1;
            info.edge_counts[cid] += g.degree(v);  // half-edges; halved below
            g.for_each_neighbor(v, [&](std::uint32_t w) {
                if (info.component_of[w] == UINT32_MAX) {
                    info.component_of[w] = cid;
                    stack.push_back(w);
                }
            });
        }
    }
    // degree sum per component is twice its edge count (a loop contributes
    // two half-edges and counts as one edge)
    for (auto& e : info.edge_counts) e /= 2;

    // giant: largest vertex count; ties go to the component discovered first
    // (lowest minimum vertex id)
    std::uint64_t best = 0;
    for (std::size_t c = 0; c < info.vertex_counts.size(); ++c) {
        if (info.vertex_counts[c] > best) {
            best = info.vertex_counts[c];
            info.giant = static_cast<std::uint32_t>(c);
        }
    }
    for (std::size_t c = 0; c < info.edge_counts.size(); ++c)
        if (c != info.giant)
            info.off_giant_max_edges = std::max(info.off_giant_max_edges, info.edge_counts[c]);
    return info;
}

namespace detail {

// BFS eccentricity of source within its component; multiplicity and loops do
// not affect distances. Returns (eccentricity, farthest vertex).
inline std::pair<std::uint32_t, std::uint32_t> bfs_eccentricity(
    const MultiGraph& g, std::uint32_t source, std::vector<std::uint32_t>& dist_scratch) {
    auto& dist = dist_scratch;
    dist.assign(g.num_vertices(), UINT32_MAX);
    std::vector<std::uint32_t> frontier{source}, next;
    dist[source] = 0;
    std::uint32_t ecc = 0, farthest = source, level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (std::uint32_t v : frontier) {
            g.for_each_neighbor(v, [&](std::uint32_t w) {
                if (dist[w] == UINT32_MAX) {
                    dist[w] = level;
                    next.push_back(w);
                }
            });
        }
        if (!next.empty()) {
            ecc = level;
            farthest = next.back();
        }
        frontier.swap(next);
    }
    return {ecc, farthest};
}

}  // namespace detail

struct DiameterResult {
    std::uint64_t value = 0;  // exact diameter, or certified lower bound
    std::uint64_t upper = 0;  // cheap upper bound (2 * best eccentricity seen)
    bool exact = false;
};

// exact (all-sources BFS) for components up to `exact_limit` vertices,
// multi-start double-sweep lower bound beyond
inline DiameterResult diameter(const MultiGraph& g,
                               const std::vector<std::uint32_t>& component,
                               std::uint32_t exact_limit = 20000) {
    if (component.empty()) throw std::invalid_argument("diameter: empty component");
    DiameterResult res;
    std::vector<std::uint32_t> dist;
    if (component.size() <= exact_limit) {
        std::uint32_t best = 0;
        for (std::uint32_t v : component)
            best = std::max(best, detail::bfs_eccentricity(g, v, dist).first);
        res.value = best;
        res.upper = best;
        res.exact = true;
        return res;
    }
    // double sweep from the max-degree vertex plus a few spread-out starts
    std::vector<std::uint32_t> starts;
    std::uint32_t vmax = component[0];
    for (std::uint32_t v : component)
        if (g.degree(v) > g.degree(vmax)) vmax = v;
    starts.push_back(vmax);
    for (std::size_t i = 1; i <= 4 && i * 7 < component.size(); ++i)
        starts.push_back(component[(i * component.size()) / 7]);
    std::uint32_t lower = 0, min_ecc = UINT32_MAX;
    for (std::uint32_t s : starts) {
        auto [ecc1, far1] = detail::bfs_eccentricity(g, s, dist);
        auto [ecc2, far2] = detail::bfs_eccentricity(g, far1, dist);
        lower = std::max({lower, ecc1, ecc2});
        min_ecc = std::min({min_ecc, ecc1, ecc2});
    }
    res.value = lower;
    res.upper = 2 * static_cast<std::uint64_t>(min_ecc);
    res.exact = (res.upper == res.value);
    return res;
}

struct StructureReport {
    std::uint64_t n = 0;
    std::uint64_t total_degree = 0;  // L_n
    std::map<std::uint64_t, std::uint64_t> degree_classes;
    std::uint64_t high_degree_half_n = 0;        // |E|  = #{D_v >= n/2}
    std::uint64_t high_degree_three_quarter = 0; // |E'| = #{D_v >= n^{3/4}}
    std::vector<std::uint64_t> top_degrees;      // D_1 >= D_2 >= ...
    std::vector<std::uint64_t> component_sizes;
    std::uint64_t giant_size = 0;
    DiameterResult giant_diameter;
    std::uint64_t off_giant_max_edges = 0;  // d'_n
    double metastability_ratio = 0.0;       // D_max / max(d_n, log n)
};

inline double metastability_ratio(std::uint64_t max_degree, std::uint64_t giant_diameter,
                                  std::uint64_t n) {
    const double denom = std::max(static_cast<double>(giant_diameter),
                                  std::log(static_cast<double>(n)));
    return static_cast<double>(max_degree) / denom;
}

inline StructureReport compute_structure_report(const MultiGraph& g,
                                                std::size_t top_k = 20,
                                                std::uint32_t exact_diameter_limit = 20000) {
    StructureReport rep;
    const std::uint32_t n = g.num_vertices();
    rep.n = n;
    rep.total_degree = g.num_half_edges();
    rep.degree_classes = degree_class_counts(g);
    const double half_n = n / 2.0;
    const double n34 = std::pow(static_cast<double>(n), 0.75);
    std::vector<std::uint64_t> degrees(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        degrees[v] = g.degree(v);
        if (degrees[v] >= half_n) ++rep.high_degree_half_n;
        if (degrees[v] >= n34) ++rep.high_degree_three_quarter;
    }
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    degrees.resize(std::min(top_k, degrees.size()));
    rep.top_degrees = std::move(degrees);

    const ComponentInfo comp = components(g);
    rep.component_sizes = comp.vertex_counts;
    rep.giant_size = comp.vertex_counts[comp.giant];
    rep.off_giant_max_edges = comp.off_giant_max_edges;
    rep.giant_diameter = diameter(g, comp.giant_vertices(), exact_diameter_limit);
    const std::uint64_t dmax = rep.top_degrees.empty() ? 0 : rep.top_degrees.front();
    rep.metastability_ratio = metastability_ratio(dmax, rep.giant_diameter.value, n);
    return rep;
}

// limit variable for the rescaled order statistics when a < 2 under the
// uncapped law: gamma_i = ((a-1) Gamma_i / c)^(-1/(a-1)), Gamma_i a sum of i
// unit exponentials
inline double sample_order_statistic_limit(double a, double c_infinity, std::uint32_t i,
                                           Rng& rng) {
    double gamma = 0.0;
    for (std::uint32_t j = 0; j < i; ++j) gamma += rng.exponential(1.0);
    return std::pow((a - 1.0) * gamma / c_infinity, -1.0 / (a - 1.0));
}

struct OrderStatisticsRow {
    std::uint32_t rank = 0;
    double scaled_degree = 0.0;  // D_i / n^{1/(a-1)}
    double limit_q05 = 0.0, limit_median = 0.0, limit_q95 = 0.0;
};

// Compares the top-k rescaled degrees of a sampled sequence with quantiles of
// the limit law. Only meaningful for a < 2.
inline std::vector<OrderStatisticsRow> order_statistics_vs_limit(
    const DegreeSequence& seq, double a, std::uint32_t k, Rng& rng,
    std::uint32_t limit_samples = 20000) {
    if (!(a < 2.0)) throw std::invalid_argument("order statistics limit requires a < 2");
    if (k > 20) throw std::invalid_argument("order statistics: k must be <= 20");
    const double c_inf = DegreeLaw::infinite(a).normalizing_constant();
    std::vector<std::uint64_t> degrees = seq.degrees;
    std::partial_sort(degrees.begin(), degrees.begin() + std::min<std::size_t>(k, degrees.size()),
                      degrees.end(), std::greater<>());
    const double scale = std::pow(static_cast<double>(seq.degrees.size()), 1.0 / (a - 1.0));
    std::vector<OrderStatisticsRow> rows;
    std::vector<double> samples(limit_samples);
    for (std::uint32_t i = 1; i <= k && i <= degrees.size(); ++i) {
        for (auto& s : samples) s = sample_order_statistic_limit(a, c_inf, i, rng);
        std::sort(samples.begin(), samples.end());
        OrderStatisticsRow row;
        row.rank = i;
        row.scaled_degree = static_cast<double>(degrees[i - 1]) / scale;
        row.limit_q05 = samples[static_cast<std::size_t>(0.05 * limit_samples)];
        row.limit_median = samples[limit_samples / 2];
        row.limit_q95 = samples[static_cast<std::size_t>(0.95 * limit_samples)];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cpnet
