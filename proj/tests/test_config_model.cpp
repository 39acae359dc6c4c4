#include "doctest.h"

#include <array>
#include <cmath>
#include <sstream>

#include "cpnet/config_model.hpp"
#include "cpnet/degree_law.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/rng.hpp"
#include "cpnet/stats.hpp"

using namespace cpnet;

namespace {

constexpr std::uint64_t kMaster = 20260824;

// For degrees [1,1,1,1] the three perfect matchings are classified by the
// partner of stub 0: {01|23}, {02|13}, {03|12}.
int matching_class_1111(const MultiGraph& g) {
    return static_cast<int>(g.half_edge_partner(0)) - 1;
}

}  // namespace

TEST_CASE("forced matchings") {
    Rng rng(derive_seed(kMaster, "cm/forced"));
    for (int i = 0; i < 20; ++i) {
        const MultiGraph e = build_uniform_matching(explicit_degree_sequence({1, 1}), rng);
        CHECK(e.num_edges() == 1);
        CHECK(e.adjacent(0, 1));
        CHECK(e.loop_count(0) == 0);
        CHECK(e.loop_count(1) == 0);

        const MultiGraph s = build_sequential_matching(explicit_degree_sequence({1, 1}), rng);
        CHECK(s.adjacent(0, 1));

        const MultiGraph loop = build_uniform_matching(explicit_degree_sequence({2}), rng);
        CHECK(loop.loop_count(0) == 2);
        CHECK(loop.multiplicity(0, 0) == 1);

        // degrees [4]: every matching is two loops, s = 4
        const MultiGraph two = build_uniform_matching(explicit_degree_sequence({4}), rng);
        CHECK(two.loop_count(0) == 4);
        CHECK(two.num_edges() == 2);
    }
}

TEST_CASE("odd total rejected") {
    Rng rng(derive_seed(kMaster, "cm/odd"));
    CHECK_THROWS_AS(build_uniform_matching(explicit_degree_sequence({1, 1, 1}), rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_sequential_matching(explicit_degree_sequence({3}), rng),
                    std::invalid_argument);
}

TEST_CASE("uniform matching frequencies on [1,1,1,1]") {
    Rng rng(derive_seed(kMaster, "cm/1111"));
    const DegreeSequence seq = explicit_degree_sequence({1, 1, 1, 1});
    const int m = 30000;
    std::array<int, 3> counts{};
    for (int i = 0; i < m; ++i)
        counts[matching_class_1111(build_uniform_matching(seq, rng))] += 1;
    const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / m);
    for (int c : counts) CHECK(std::abs(static_cast<double>(c) / m - 1.0 / 3.0) <= 3 * se);
}

TEST_CASE("sequential matching: [2,2] enumeration") {
    // stubs (0,1) at v0 and (2,3) at v1: two loops iff 0 pairs with 1,
    // probability 1/3; otherwise two parallel edges, probability 2/3
    Rng rng(derive_seed(kMaster, "cm/22"));
    const DegreeSequence seq = explicit_degree_sequence({2, 2});
    const int m = 30000;
    int loops = 0;
    for (int i = 0; i < m; ++i) {
        const MultiGraph g = build_sequential_matching(seq, rng);
        if (g.loop_count(0) == 2) {
            CHECK(g.loop_count(1) == 2);
            ++loops;
        } else {
            CHECK(g.multiplicity(0, 1) == 2);
        }
    }
    const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / m);
    CHECK(std::abs(static_cast<double>(loops) / m - 1.0 / 3.0) <= 3 * se);
}

TEST_CASE("the two builders have the same law") {
    // empirical matching distributions on [1,1,1,1]: total-variation <= 0.02
    Rng rng(derive_seed(kMaster, "cm/equiv"));
    const DegreeSequence seq = explicit_degree_sequence({1, 1, 1, 1});
    const int m = 30000;
    std::array<int, 3> uni{}, seqc{};
    for (int i = 0; i < m; ++i) {
        uni[matching_class_1111(build_uniform_matching(seq, rng))] += 1;
        seqc[matching_class_1111(build_sequential_matching(seq, rng))] += 1;
    }
    double tv = 0.0;
    for (int k = 0; k < 3; ++k)
        tv += std::abs(uni[k] - seqc[k]) / (2.0 * m);
    CHECK(tv <= 0.02);

    // and on [2,1,1] (classes: loop at v0 vs edge pair)
    const DegreeSequence seq2 = explicit_degree_sequence({2, 1, 1});
    int loops_u = 0, loops_s = 0;
    for (int i = 0; i < m; ++i) {
        if (build_uniform_matching(seq2, rng).loop_count(0) > 0) ++loops_u;
        if (build_sequential_matching(seq2, rng).loop_count(0) > 0) ++loops_s;
    }
    CHECK(std::abs(loops_u - loops_s) / static_cast<double>(m) <= 0.02);
}

TEST_CASE("handshake invariant") {
    Rng rng(derive_seed(kMaster, "cm/handshake"));
    const DegreeLaw law = DegreeLaw::truncated(1.5, 500);
    for (int i = 0; i < 20; ++i) {
        const DegreeSequence seq = law.sample_sequence(500, rng);
        const MultiGraph g = build_uniform_matching(seq, rng);
        std::uint64_t total = 0;
        for (std::uint32_t v = 0; v < g.num_vertices(); ++v) total += g.degree(v);
        CHECK(total == 2 * g.num_edges());
        CHECK(total == seq.total);
    }
}

TEST_CASE("loop rarity at desk scale") {
    // a=1.5, n=10^4: fraction of vertices with s_v >= 1 below 0.05 in >= 95%
    // of 20 runs
    const std::uint64_t n = 10000;
    const DegreeLaw law = DegreeLaw::truncated(1.5, n);
    int good = 0;
    for (std::uint64_t run = 0; run < 20; ++run) {
        Rng rng(derive_seed(kMaster, "cm/looprare", run));
        const MultiGraph g = build_uniform_matching(law.sample_sequence(n, rng), rng);
        std::uint64_t loopy = 0;
        for (std::uint32_t v = 0; v < n; ++v)
            if (g.loop_count(v) >= 1) ++loopy;
        if (static_cast<double>(loopy) / n < 0.05) ++good;
    }
    CHECK(good >= 19);
}

TEST_CASE("text format round-trip") {
    Rng rng(derive_seed(kMaster, "cm/roundtrip"));
    const DegreeLaw law = DegreeLaw::truncated(1.5, 50);
    const MultiGraph g = build_uniform_matching(law.sample_sequence(50, rng), rng);
    std::stringstream ss;
    g.write(ss);
    const MultiGraph h = MultiGraph::read(ss);
    CHECK(h.num_vertices() == g.num_vertices());
    REQUIRE(h.num_half_edges() == g.num_half_edges());
    auto eg = g.edges(), eh = h.edges();
    std::sort(eg.begin(), eg.end());
    std::sort(eh.begin(), eh.end());
    CHECK(eg == eh);
}

TEST_CASE("malformed graph files rejected") {
    std::stringstream bad1("not a header");
    CHECK_THROWS_AS(MultiGraph::read(bad1), std::runtime_error);
    std::stringstream bad2("2 3\n0 1\n");
    CHECK_THROWS_AS(MultiGraph::read(bad2), std::runtime_error);
    std::stringstream bad3("2 2\n0 1");
    CHECK_NOTHROW(MultiGraph::read(bad3));
    std::stringstream bad4("2 4\n0 1\n");
    CHECK_THROWS_AS(MultiGraph::read(bad4), std::runtime_error);
}
