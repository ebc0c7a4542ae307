#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lab/color3.hpp"

using namespace lab;

namespace {

Graph random_bipartite(std::mt19937_64& rng, int n, double p) {
    Graph g(n);
    std::vector<int> side(n);
    for (int v = 0; v < n; ++v) side[v] = static_cast<int>(rng() % 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (side[u] != side[v] && (rng() % 1000) < p * 1000) g.add_edge(u, v);
    return g;
}

std::vector<int> far_first_order(const Graph& g, std::mt19937_64& rng) {
    std::vector<int> order;
    std::vector<char> used(g.n, 0);
    std::vector<long long> dist(g.n, 1LL << 40);
    for (int i = 0; i < g.n; ++i) {
        int best = -1;
        for (int v = 0; v < g.n; ++v)
            if (!used[v] && (best < 0 || dist[v] > dist[best])) best = v;
        if (dist[best] == 0 && (rng() % 3) == 0) {
            // mix in some randomness among already-covered nodes
            std::vector<int> pool;
            for (int v = 0; v < g.n; ++v)
                if (!used[v]) pool.push_back(v);
            best = pool[rng() % pool.size()];
        }
        order.push_back(best);
        used[best] = 1;
        std::vector<int> d = distances_from(g, best);
        for (int v = 0; v < g.n; ++v)
            if (d[v] >= 0) dist[v] = std::min<long long>(dist[v], d[v]);
    }
    return order;
}

void check_run(const Graph& g, const std::vector<int>& order) {
    ThreeColoringRun res = run_three_coloring(g, order);
    INFO("n=", g.n);
    CHECK(proper_coloring(g, res.run.labels));
    CHECK(res.colors_used <= 3);
    CHECK(res.stats.escape_events == 0);
    CHECK(res.stats.radius_violations == 0);
    CHECK(res.stats.border_law_ok);
    int bound = 0;
    while ((1 << bound) < g.n) ++bound;
    CHECK(res.stats.max_border <= bound);
    for (const auto& l : res.run.labels) CHECK(!l.empty());
}

}  // namespace

TEST_CASE("locality formula") {
    CHECK(ThreeColoring::locality_for(1) == 0);
    CHECK(ThreeColoring::locality_for(8) == 9);
    CHECK(ThreeColoring::locality_for(1000) == 30);
    CHECK_THROWS_AS(ThreeColoring::locality_for(0), std::invalid_argument);
}

TEST_CASE("first reveals on a path") {
    Graph g = gen_path(20);
    ThreeColoring alg;
    OnlineView view;
    alg.start(20, ThreeColoring::locality_for(20));
    OnlineRun run = run_online(alg, g, {10, 11}, ThreeColoring::locality_for(20));
    CHECK(run.labels[10] == "0");  // case 1 fixes color 0
    CHECK(run.labels[11] == "1");  // case 2 extends the 2-coloring
    CHECK(alg.stats().max_border == 0);
    (void)view;
}

TEST_CASE("two far groups with clashing parities merge through a barrier") {
    // T is small enough here that two groups appear; a middle reveal merges them
    Graph g = gen_path(20);
    // n=20 -> T=15: balls cover everything quickly, so use a longer path
    Graph h = gen_path(300);  // T = 3*ceil(log2 300) = 27
    int t = ThreeColoring::locality_for(h.n);
    CHECK(t == 27);
    // reveal 50 (ball [23..77]), then 150 with B(150,28) disjoint from seen,
    // then 100 which sees both groups
    ThreeColoring alg;
    OnlineRun run = run_online(alg, h, {50, 150, 100}, t);
    CHECK(proper_coloring(h, run.labels));
    // parity of 50 and 150 clash: both colored 0 at distance 100? both case-1
    // reveals fix color 0; distance 100 is even, so parities are compatible
    CHECK(alg.stats().barriers == 0);
    // now an odd-distance pair: 50 and 151
    ThreeColoring alg2;
    OnlineRun run2 = run_online(alg2, h, {50, 151, 100}, t);
    CHECK(proper_coloring(h, run2.labels));
    CHECK(alg2.stats().barriers == 1);
    CHECK(alg2.stats().max_border == 1);
    CHECK(alg2.stats().max_commit_radius <= 3);
    CHECK(alg2.stats().escape_events == 0);
}

TEST_CASE("full reveal on paths and even cycles") {
    std::mt19937_64 rng(17);
    for (int n : {1, 2, 3, 5, 8, 13, 33, 64, 100}) {
        Graph g = gen_path(n);
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        check_run(g, order);
        std::shuffle(order.begin(), order.end(), rng);
        check_run(g, order);
        check_run(g, far_first_order(g, rng));
    }
    for (int n : {4, 6, 12, 30, 64}) {
        Graph g = gen_cycle(n);
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        check_run(g, order);
        check_run(g, far_first_order(g, rng));
    }
}

TEST_CASE("grids") {
    std::mt19937_64 rng(18);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 5}, {6, 6}, {1, 9}}) {
        Graph g = gen_grid(a, b);
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        check_run(g, order);
        check_run(g, far_first_order(g, rng));
    }
}

TEST_CASE("random bipartite graphs, including disconnected ones") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 60);
        Graph g = random_bipartite(rng, n, 0.05 + (trial % 5) * 0.05);
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        check_run(g, order);
        check_run(g, far_first_order(g, rng));
    }
}

TEST_CASE("non-bipartite input raises an odd-cycle diagnostic") {
    Graph g = gen_cycle(5);
    std::vector<int> order = {0, 1, 2, 3, 4};
    CHECK_THROWS_AS(run_three_coloring(g, order), odd_cycle_error);
    // the witness names an odd closed walk
    try {
        run_three_coloring(g, order);
    } catch (const odd_cycle_error& e) {
        CHECK(!e.cycle.empty());
    }
    // also under an order that merges groups across the odd cycle
    Graph g2 = gen_cycle(31);
    std::vector<int> order2;
    for (int v = 0; v < 31; v += 2) order2.push_back(v);
    for (int v = 1; v < 31; v += 2) order2.push_back(v);
    CHECK_THROWS_AS(run_three_coloring(g2, order2), odd_cycle_error);
}

TEST_CASE("border growth law on a scripted chain of merges") {
    // reveal ends first, then repeatedly merge: borders stay logarithmic
    std::mt19937_64 rng(20);
    Graph g = gen_path(256);  // T = 24
    std::vector<int> order = far_first_order(g, rng);
    ThreeColoringRun res = run_three_coloring(g, order);
    CHECK(proper_coloring(g, res.run.labels));
    CHECK(res.stats.max_border <= 8);  // log2(256)
    CHECK(res.stats.border_law_ok);
    CHECK(res.stats.escape_events == 0);
}

TEST_CASE("re-revealing a committed node returns its committed color") {
    Graph g = gen_path(300);
    int t = ThreeColoring::locality_for(g.n);
    ThreeColoring alg;
    // second reveal of 151 after it was committed by the barrier around 50's group
    OnlineRun run = run_online(alg, g, {50, 151, 100, 52, 48}, t);
    CHECK(proper_coloring(g, run.labels));
}
