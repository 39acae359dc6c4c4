// config_model.hpp -- uniform stub matching, in both constructions.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cpnet/degree_law.hpp"
#include "cpnet/fenwick.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"

namespace cpnet {

// Uniform perfect matching of the half-edges: shuffle the half-edge array and
// pair consecutive entries.
inline MultiGraph build_uniform_matching(const DegreeSequence& seq, Rng& rng) {
    if (seq.total % 2 != 0)
        throw std::invalid_argument("degree sequence total must be even");
    const std::uint64_t L = seq.total;
    std::vector<std::uint64_t> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<std::uint64_t> partner(L);
    for (std::uint64_t i = 0; i < L; i += 2) {
        partner[perm[i]] = perm[i + 1];
        partner[perm[i + 1]] = perm[i];
    }
    return MultiGraph::from_degrees_and_partner(seq.degrees, std::move(partner));
}

// Sequential variant: repeatedly take the lowest-indexed unmatched half-edge
// and match it with a uniform choice among the remaining ones. Same law as
// the uniform matching.
inline MultiGraph build_sequential_matching(const DegreeSequence& seq, Rng& rng) {
    if (seq.total % 2 != 0)
        throw std::invalid_argument("degree sequence total must be even");
    const std::uint64_t L = seq.total;
    Fenwick<std::uint64_t> alive(L);
    for (std::uint64_t h = 0; h < L; ++h) alive.add(h, 1);
    std::vector<std::uint64_t> partner(L);
    std::uint64_t remaining = L;
    while (remaining > 0) {
        const std::uint64_t h1 = alive.select(0);
        alive.add(h1, static_cast<std::uint64_t>(-1));
        const std::uint64_t k = rng.uniform_int(remaining - 1);
        const std::uint64_t h2 = alive.select(k);
        alive.add(h2, static_cast<std::uint64_t>(-1));
        partner[h1] = h2;
        partner[h2] = h1;
        remaining -= 2;
    }
    return MultiGraph::from_degrees_and_partner(seq.degrees, std::move(partner));
}

inline DegreeSequence explicit_degree_sequence(std::vector<std::uint64_t> degrees) {
    DegreeSequence seq;
    seq.total = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
    seq.degrees = std::move(degrees);
    return seq;
}

}  // namespace cpnet
