#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lab/models.hpp"

using namespace lab;

namespace {

// online greedy mex coloring (locality 0 suffices on bounded degree)
class GreedyMex : public OnlineAlgorithmBase<GreedyMex> {
public:
    Label on_reveal(const OnlineView& view) override {
        labels_.resize(view.visible->n, -1);
        std::set<int> used;
        for (int u : view.visible->adj[view.center])
            if (labels_[u] >= 0) used.insert(labels_[u]);
        int c = 0;
        while (used.count(c)) ++c;
        labels_[view.center] = c;
        return std::to_string(c);
    }

private:
    std::vector<int> labels_;
};

class ConstantOnline : public OnlineAlgorithmBase<ConstantOnline> {
public:
    Label on_reveal(const OnlineView&) override { return "x"; }
};

// records how much of the graph each reveal could see
class SpyOnline : public OnlineAlgorithmBase<SpyOnline> {
public:
    Label on_reveal(const OnlineView& view) override {
        sizes.push_back(view.visible->n);
        return "x";
    }
    std::vector<int> sizes;
};

// greedy MIS in SLOCAL with T=1
class GreedyMis : public SlocalAlgorithmBase<GreedyMis> {
public:
    SlocalDecision process(const SlocalView& view) override {
        for (int u = 0; u < view.view->n; ++u)
            if (u != view.center && (*view.memories)[u] == "in" &&
                view.view->has_edge(view.center, u))
                return {"out", "out"};
        return {"in", "in"};
    }
};

// LOCAL rule: rank of the own uid within the view
class UidRank : public LocalAlgorithmBase<UidRank> {
public:
    Label label(const LocalView& view) override {
        int rank = 0;
        for (int u = 0; u < view.view->n; ++u)
            if ((*view.uids)[u] < (*view.uids)[view.center]) ++rank;
        return std::to_string(rank);
    }
};

// greedy coloring as a full-view LOCAL algorithm: deterministic function of
// the uid-labeled graph
class LocalGreedyColor : public LocalAlgorithmBase<LocalGreedyColor> {
public:
    Label label(const LocalView& view) override {
        const Graph& g = *view.view;
        std::vector<int> order(g.n);
        for (int i = 0; i < g.n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return (*view.uids)[a] < (*view.uids)[b]; });
        std::vector<int> color(g.n, -1);
        for (int v : order) {
            std::set<int> used;
            for (int u : g.adj[v])
                if (color[u] >= 0) used.insert(color[u]);
            int c = 0;
            while (used.count(c)) ++c;
            color[v] = c;
        }
        return std::to_string(color[view.center]);
    }
};

// dynamic algorithm that deliberately relabels a far-away node
class FaultyDynamic : public DynamicAlgorithmBase<FaultyDynamic> {
public:
    std::map<int, Label> update(const DynamicView& view) override {
        std::map<int, Label> out;
        for (int v : *view.changed) out[v] = "a";
        if (view.graph->n > 6 && view.step > 8) out[0] = "flip";  // node 0 is far by then
        return out;
    }
};

bool proper(const Graph& g, const Labeling& l) {
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (u > v && l[u] == l[v]) return false;
    return true;
}

}  // namespace

TEST_CASE("online engine: visibility is exactly the union of balls") {
    Graph g = gen_path(9);
    SpyOnline spy;
    OnlineRun run = run_online(spy, g, {4, 0}, 2);
    CHECK(spy.sizes[0] == 5);  // B(4,2) = {2..6}
    CHECK(spy.sizes[1] == 7);  // B(0,2) adds {0,1}
    CHECK(run.seen_order.size() == 7);
    CHECK(run.trace.steps.size() == 2);
}

TEST_CASE("online engine: constant algorithm, bad orders") {
    Graph g = gen_path(4);
    ConstantOnline alg;
    OnlineRun run = run_online(alg, g, {0, 1, 2, 3}, 1);
    for (const auto& l : run.labels) CHECK(l == "x");
    CHECK(run.trace.steps.size() == 4);
    CHECK_THROWS_AS(run_online(alg, g, {0, 0}, 1), std::invalid_argument);
}

TEST_CASE("online greedy mex coloring on a grid is proper with 5 colors") {
    Graph g = gen_grid(3, 3);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        GreedyMex alg;
        OnlineRun run = run_online(alg, g, order, 0);
        CHECK(proper(g, run.labels));
        for (const auto& l : run.labels) CHECK(std::stoi(l) < 5);
    }
}

TEST_CASE("online determinism: identical traces on identical runs") {
    Graph g = gen_grid(3, 4);
    std::vector<int> order;
    for (int v = 0; v < g.n; ++v) order.push_back((v * 5) % g.n);
    GreedyMex a1, a2;
    OnlineRun r1 = run_online(a1, g, order, 2);
    OnlineRun r2 = run_online(a2, g, order, 2);
    CHECK(r1.trace.to_log() == r2.trace.to_log());
    CHECK(r1.labels == r2.labels);
}

TEST_CASE("SLOCAL greedy MIS on a path") {
    Graph g = gen_path(5);
    GreedyMis alg;
    SlocalRun run = run_slocal(alg, g, {0, 1, 2, 3, 4}, 1);
    CHECK(run.labels == Labeling{"in", "out", "in", "out", "in"});
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        Graph h = gen_cycle(5 + static_cast<int>(rng() % 8));
        std::vector<int> order(h.n);
        for (int v = 0; v < h.n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        GreedyMis a;
        SlocalRun r = run_slocal(a, h, order, 1);
        for (int v = 0; v < h.n; ++v) {
            bool in = r.labels[v] == "in";
            bool nbr_in = false;
            for (int u : h.adj[v]) nbr_in |= r.labels[u] == "in";
            CHECK((in ? !nbr_in : nbr_in));  // independent and maximal
        }
    }
    Graph empty(0);
    GreedyMis a;
    CHECK(run_slocal(a, empty, {}, 1).labels.empty());
}

TEST_CASE("SLOCAL memory stays within radius T") {
    class Probe : public SlocalAlgorithmBase<Probe> {
    public:
        SlocalDecision process(const SlocalView& view) override {
            int visible_memories = 0;
            for (int u = 0; u < view.view->n; ++u)
                if (u != view.center && !(*view.memories)[u].empty()) ++visible_memories;
            return {"c" + std::to_string(visible_memories), "m"};
        }
    };
    Graph g = gen_path(5);
    Probe alg;
    SlocalRun run = run_slocal(alg, g, {0, 4, 2}, 1);
    CHECK(run.labels[0] == "c0");
    CHECK(run.labels[4] == "c0");  // node 0 is out of range
    CHECK(run.labels[2] == "c0");  // neighbors 1,3 unprocessed
}

TEST_CASE("dynamic engine: change sets and confinement") {
    class Recorder : public DynamicAlgorithmBase<Recorder> {
    public:
        std::map<int, Label> update(const DynamicView& view) override {
            std::map<int, Label> out;
            for (int v : *view.changed) out[v] = "a";
            return out;
        }
    };
    Recorder alg;
    DynamicRun run = run_dynamic(alg, {Edit::add_node()}, 1);
    CHECK(run.changed_sets[0] == std::vector<int>{0});

    // path of 6 extended by one edge at the end: C_i = the two endpoints at T=1
    std::vector<Edit> edits;
    for (int v = 0; v < 7; ++v) edits.push_back(Edit::add_node());
    for (int v = 0; v + 1 < 6; ++v) edits.push_back(Edit::add_edge(v, v + 1));
    edits.push_back(Edit::add_edge(5, 6));
    Recorder alg2;
    DynamicRun run2 = run_dynamic(alg2, edits, 1);
    CHECK(run2.changed_sets.back().size() <= 4);
    CHECK(run2.changed_sets.back() == std::vector<int>{5, 6});

    // the candidate-based change set equals the naive full-scan oracle
    Graph before = gen_path(6);
    before.add_node();
    Graph after = before;
    after.add_edge(5, 6);
    CHECK(dynamic_change_set_naive(before, after, 1) == run2.changed_sets.back());
}

TEST_CASE("dynamic engine rejects a confinement-violating algorithm") {
    std::vector<Edit> edits;
    for (int v = 0; v < 12; ++v) edits.push_back(Edit::add_node());
    for (int v = 0; v + 1 < 12; ++v) edits.push_back(Edit::add_edge(v, v + 1));
    FaultyDynamic alg;
    CHECK_THROWS_AS(run_dynamic(alg, edits, 1), contract_error);
}

TEST_CASE("LOCAL engine and uid checks") {
    Graph g = gen_cycle(8);
    UidRank alg;
    Labeling l = run_local(alg, g, default_uids(8), 1);
    CHECK(l.size() == 8);
    std::vector<long long> bad = {0, 1, 2, 3, 4, 5, 6, 6};
    CHECK_THROWS_AS(run_local(alg, g, bad, 1), std::invalid_argument);
}

TEST_CASE("lift LOCAL -> dynamic: final labeling matches a direct run") {
    LocalGreedyColor alg;
    for (int len : {7, 8}) {
        Graph g = len == 7 ? gen_path(7) : gen_cycle(8);
        int T = g.n;  // full-view local rule
        std::vector<Edit> edits;
        for (int v = 0; v < g.n; ++v) edits.push_back(Edit::add_node());
        for (int v = 0; v < g.n; ++v)
            for (int u : g.adj[v])
                if (u > v) edits.push_back(Edit::add_edge(v, u));
        auto lifted = lift_local_to_dynamic(alg, T);
        DynamicRun run = run_dynamic(*lifted, edits, T, true);
        Labeling direct = run_local(alg, g, default_uids(g.n), T);
        CHECK(run.labels == direct);
    }
}

TEST_CASE("lift dynamic -> online: valid coloring under all reveal orders of path(4)") {
    auto local_rule = make_cole_vishkin_coloring(3);
    int T = cole_vishkin_locality(3);
    auto dynamic_alg = lift_local_to_dynamic(*local_rule, T);
    auto online_alg = lift_dynamic_to_online(*dynamic_alg, T);
    Graph g = gen_path(4);
    std::vector<int> order = {0, 1, 2, 3};
    int checked = 0;
    do {
        auto fresh = online_alg->clone();
        OnlineRun run = run_online(*fresh, g, order, 2 * T);
        CHECK(proper(g, run.labels));
        ++checked;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(checked == 24);
}

TEST_CASE("lift dynamic -> online on a grid with random orders (degree labels)") {
    auto local_rule = make_degree_labeling();
    auto dynamic_alg = lift_local_to_dynamic(*local_rule, 1);
    auto online_alg = lift_dynamic_to_online(*dynamic_alg, 1);
    Graph g = gen_grid(2, 4);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        auto fresh = online_alg->clone();
        OnlineRun run = run_online(*fresh, g, order, 2);
        for (int v = 0; v < g.n; ++v) CHECK(run.labels[v] == std::to_string(g.degree(v)));
    }
}

TEST_CASE("iterated color reduction on a cycle: proper with at most 6 colors") {
    Graph g = gen_cycle(8);
    auto alg = make_cole_vishkin_coloring(7);
    Labeling l = run_local(*alg, g, default_uids(8), cole_vishkin_locality(7));
    CHECK(proper(g, l));
    std::set<Label> used(l.begin(), l.end());
    CHECK(used.size() <= 6);
    // adversarial uid assignments on paths and cycles
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        Graph h = (trial % 2) ? gen_cycle(9 + (trial % 5)) : gen_path(8 + trial);
        std::vector<long long> uids(h.n);
        for (int v = 0; v < h.n; ++v) uids[v] = v * v * 37 + (trial % 2 ? 1000000 - 13 * v : v);
        std::set<long long> distinct(uids.begin(), uids.end());
        if (static_cast<int>(distinct.size()) != h.n) continue;
        long long mx = *std::max_element(uids.begin(), uids.end());
        auto a = make_cole_vishkin_coloring(mx);
        Labeling lab = run_local(*a, h, uids, cole_vishkin_locality(mx));
        CHECK(proper(h, lab));
        std::set<Label> colors(lab.begin(), lab.end());
        CHECK(colors.size() <= 6);
    }
}

TEST_CASE("lift SLOCAL -> online: MIS matches the direct SLOCAL run") {
    Graph g = gen_path(6);
    std::vector<int> order = {3, 0, 5, 1, 4, 2};
    GreedyMis direct;
    SlocalRun sr = run_slocal(direct, g, order, 1);
    GreedyMis src;
    auto lifted = lift_slocal_to_online(src, 1);
    OnlineRun orun = run_online(*lifted, g, order, 1);
    CHECK(orun.labels == sr.labels);
}

TEST_CASE("lift LOCAL -> SLOCAL -> online keeps the labeling") {
    Graph g = gen_cycle(8);
    UidRank alg;
    Labeling direct = run_local(alg, g, default_uids(8), 1);
    auto slocal = lift_local_to_slocal(alg, 1);
    SlocalRun sr = run_slocal(*slocal, g, {0, 1, 2, 3, 4, 5, 6, 7}, 1);
    CHECK(sr.labels == direct);
    // through the online lift the uid space becomes the first-seen numbering
    auto online = lift_slocal_to_online(*slocal, 1);
    OnlineRun orun = run_online(*online, g, {7, 3, 5, 1, 0, 2, 4, 6}, 1);
    std::vector<long long> seen_uids(g.n);
    for (size_t i = 0; i < orun.seen_order.size(); ++i)
        seen_uids[orun.seen_order[i]] = static_cast<long long>(i);
    Labeling expect = run_local(alg, g, seen_uids, 1);
    CHECK(orun.labels == expect);
}

TEST_CASE("lift SLOCAL -> LOCAL by color classes") {
    GreedyMis alg;
    Graph g = gen_cycle(9);
    Labeling l = lift_slocal_to_local_run(alg, g, default_uids(9), 1);
    for (int v = 0; v < g.n; ++v) {
        bool in = l[v] == "in";
        bool nbr_in = false;
        for (int u : g.adj[v]) nbr_in |= l[u] == "in";
        CHECK((in ? !nbr_in : nbr_in));
    }
    // T = 0 on a path equals the plain sequential run
    class TrivialMark : public SlocalAlgorithmBase<TrivialMark> {
    public:
        SlocalDecision process(const SlocalView& view) override {
            return {std::to_string((*view.uids)[view.center] % 2), "m"};
        }
    };
    TrivialMark t1, t2;
    Graph p = gen_path(5);
    Labeling via_lift = lift_slocal_to_local_run(t1, p, default_uids(5), 0);
    SlocalRun direct = run_slocal(t2, p, {0, 1, 2, 3, 4}, 0);
    CHECK(via_lift == direct.labels);
}

TEST_CASE("interactive session: growth, identification, consistency guard") {
    ConstantOnline proto;
    OnlineSession s(proto, 100, 1);
    int a = s.add_node(), b = s.add_node(), c = s.add_node();
    s.add_edge(a, b);
    s.add_edge(b, c);
    CHECK(s.reveal(b) == "x");
    CHECK(s.is_seen(a));
    CHECK(s.is_revealed(b));
    CHECK(!s.is_revealed(a));
    int d = s.add_node(), e = s.add_node();
    s.add_edge(d, e);
    CHECK(s.reveal(d) == "x");
    // mutating a revealed ball is rejected at the next reveal
    int f = s.add_node();
    s.add_edge(b, f);
    CHECK_THROWS_AS(s.reveal(e), contract_error);
}

TEST_CASE("interactive session: identify merges unseen nodes") {
    ConstantOnline proto;
    OnlineSession s(proto, 100, 0);
    int a = s.add_node(), b = s.add_node(), c = s.add_node(), d = s.add_node();
    s.add_edge(a, b);
    s.add_edge(c, d);
    s.reveal(a);
    s.identify(b, c);  // both unseen at T=0
    CHECK(s.resolve(c) == s.resolve(b));
    CHECK(s.distance_between(a, d) == 2);
    Graph g = s.current_graph();
    CHECK(g.n == 3);
    int e = s.add_node();
    CHECK_THROWS_AS(s.identify(s.resolve(a), e), contract_error);
}

TEST_CASE("edit and reveal script round trips") {
    std::vector<Edit> edits = {Edit::add_node(), Edit::add_node(), Edit::add_edge(0, 1),
                               Edit::del_edge(0, 1)};
    CHECK(format_edit_script(parse_edit_script(format_edit_script(edits))) ==
          format_edit_script(edits));
    std::vector<int> order = {3, 1, 2};
    CHECK(parse_reveal_script(format_reveal_script(order)) == order);
}
