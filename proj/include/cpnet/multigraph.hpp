// multigraph.hpp -- configuration-model multigraph over half-edges.
//
// Half-edge ids are vertex-major: vertex v owns the contiguous range
// [offset[v], offset[v+1]). partner[] is the pairing involution. Loops and
// multi-edges are kept as-is; a loop at v pairs two half-edges of v.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpnet {

class MultiGraph {
public:
    MultiGraph() = default;

    MultiGraph(std::uint32_t n, std::vector<std::uint64_t> offset,
               std::vector<std::uint32_t> owner, std::vector<std::uint64_t> partner)
        : n_(n), offset_(std::move(offset)), owner_(std::move(owner)),
          partner_(std::move(partner)) {}

    static MultiGraph from_degrees_and_partner(const std::vector<std::uint64_t>& degrees,
                                               std::vector<std::uint64_t> partner) {
        const std::uint32_t n = static_cast<std::uint32_t>(degrees.size());
        std::vector<std::uint64_t> offset(n + 1, 0);
        for (std::uint32_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + degrees[v];
        std::vector<std::uint32_t> owner(offset[n]);
        for (std::uint32_t v = 0; v < n; ++v)
            for (std::uint64_t h = offset[v]; h < offset[v + 1]; ++h) owner[h] = v;
        return MultiGraph(n, std::move(offset), std::move(owner), std::move(partner));
    }

    // Build from an explicit edge multiset (u, v) with 0-based vertices.
    static MultiGraph from_edges(std::uint32_t n,
                                 const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
        std::vector<std::uint64_t> degrees(n, 0);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
            degrees[u] += 1;
            degrees[v] += 1;
        }
        std::vector<std::uint64_t> offset(n + 1, 0);
        for (std::uint32_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + degrees[v];
        std::vector<std::uint64_t> cursor(offset.begin(), offset.end() - 1);
        std::vector<std::uint32_t> owner(offset[n]);
        std::vector<std::uint64_t> partner(offset[n]);
        for (auto [u, v] : edges) {
            const std::uint64_t hu = cursor[u]++;
            const std::uint64_t hv = cursor[v]++;
            partner[hu] = hv;
            partner[hv] = hu;
        }
        for (std::uint32_t v = 0; v < n; ++v)
            for (std::uint64_t h = offset[v]; h < offset[v + 1]; ++h) owner[h] = v;
        return MultiGraph(n, std::move(offset), std::move(owner), std::move(partner));
    }

    std::uint32_t num_vertices() const { return n_; }
    std::uint64_t num_half_edges() const { return owner_.size(); }
    std::uint64_t num_edges() const { return owner_.size() / 2; }

    std::uint64_t degree(std::uint32_t v) const { return offset_[v + 1] - offset_[v]; }
    std::uint64_t first_half_edge(std::uint32_t v) const { return offset_[v]; }

    std::uint32_t half_edge_owner(std::uint64_t h) const { return owner_[h]; }
    std::uint64_t half_edge_partner(std::uint64_t h) const { return partner_[h]; }
    // target of the oriented edge represented by half-edge h
    std::uint32_t half_edge_target(std::uint64_t h) const { return owner_[partner_[h]]; }

    template <class F>
    void for_each_neighbor(std::uint32_t v, F&& f) const {
        for (std::uint64_t h = offset_[v]; h < offset_[v + 1]; ++h) f(owner_[partner_[h]]);
    }

    // s_v: half-edges at v whose partner is also owned by v (a loop counts 2)
    std::uint64_t loop_count(std::uint32_t v) const {
        std::uint64_t s = 0;
        for (std::uint64_t h = offset_[v]; h < offset_[v + 1]; ++h)
            if (owner_[partner_[h]] == v) ++s;
        return s;
    }

    // number of edges joining u and v (a loop at u counts once when u == v)
    std::uint64_t multiplicity(std::uint32_t u, std::uint32_t v) const {
        const std::uint32_t base = degree(u) <= degree(v) ? u : v;
        const std::uint32_t other = base == u ? v : u;
        std::uint64_t m = 0;
        for (std::uint64_t h = offset_[base]; h < offset_[base + 1]; ++h)
            if (owner_[partner_[h]] == other) ++m;
        return base == other ? m / 2 : m;
    }

    bool adjacent(std::uint32_t u, std::uint32_t v) const { return multiplicity(u, v) > 0; }

    // edges in half-edge order; loops reported as (v, v)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        out.reserve(num_edges());
        for (std::uint64_t h = 0; h < owner_.size(); ++h)
            if (h < partner_[h]) out.emplace_back(owner_[h], owner_[partner_[h]]);
        return out;
    }

    // line-oriented text format: header "n L", then one "u v" per edge
    void write(std::ostream& os) const {
        os << n_ << ' ' << num_half_edges() << '\n';
        for (std::uint64_t h = 0; h < owner_.size(); ++h)
            if (h < partner_[h]) os << owner_[h] << ' ' << owner_[partner_[h]] << '\n';
    }

    static MultiGraph read(std::istream& is) {
        std::uint64_t n = 0, L = 0;
        if (!(is >> n >> L)) throw std::runtime_error("malformed graph file: bad header");
        if (L % 2 != 0) throw std::runtime_error("malformed graph file: odd half-edge count");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(L / 2);
        for (auto& [u, v] : edges)
            if (!(is >> u >> v)) throw std::runtime_error("malformed graph file: bad edge line");
        return from_edges(static_cast<std::uint32_t>(n), edges);
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> offset_;
    std::vector<std::uint32_t> owner_;
    std::vector<std::uint64_t> partner_;
};

// Test/experiment graph families.

// star of total size `size`: center 0, leaves 1..size-1
inline MultiGraph make_star(std::uint32_t size) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 1; v < size; ++v) edges.emplace_back(0, v);
    return MultiGraph::from_edges(size, edges);
}

// S(k; d_1..d_k): hub 0, centers 1..k, then leaves center-by-center
inline MultiGraph make_two_step_star(const std::vector<std::uint32_t>& leaf_counts) {
    const std::uint32_t k = static_cast<std::uint32_t>(leaf_counts.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint32_t next = k + 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        edges.emplace_back(0, i);
        for (std::uint32_t j = 0; j < leaf_counts[i - 1]; ++j) edges.emplace_back(i, next++);
    }
    return MultiGraph::from_edges(next, edges);
}

inline MultiGraph make_path(std::uint32_t size) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v + 1 < size; ++v) edges.emplace_back(v, v + 1);
    return MultiGraph::from_edges(size, edges);
}

inline MultiGraph make_cycle(std::uint32_t size) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v < size; ++v) edges.emplace_back(v, (v + 1) % size);
    return MultiGraph::from_edges(size, edges);
}

inline MultiGraph make_edgeless(std::uint32_t size) {
    return MultiGraph::from_edges(size, {});
}

}  // namespace cpnet
