#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lab/adversary.hpp"

using namespace lab;

namespace {
class ConstA : public OnlineAlgorithmBase<ConstA> {
public:
    Label on_reveal(const OnlineView&) override { return "A"; }
};
}  // namespace

TEST_CASE("session layered trees carry their metadata") {
    ConstA proto;
    OnlineSession s(proto, 1000, 1);
    std::vector<int> layer;
    SessionLayeredTree t = build_session_layered_tree(s, layer, 2, 5, 2);
    CHECK(s.alive_ids().size() == 55);
    CHECK(s.parent_of(t.root) == -1);
    CHECK(s.distance_between(t.core_middle, t.connector) == 2);
    CHECK(s.distance_between(t.core_middle, t.root) == 2);
    CHECK(layer[t.root] == 2);
    CHECK(layer[t.connector] == 2);
}

TEST_CASE("combining two layered trees: identify vs child differ by one") {
    for (bool child_mode : {false, true}) {
        ConstA proto;
        OnlineSession s(proto, 1000, 0);
        std::vector<int> layer;
        SessionLayeredTree a = build_session_layered_tree(s, layer, 2, 5, 2);
        SessionLayeredTree b = build_session_layered_tree(s, layer, 2, 5, 2);
        int base_nodes = static_cast<int>(s.alive_ids().size());
        CHECK(base_nodes == 110);
        int d_before = s.distance_between(a.core_middle, a.connector) +
                       s.distance_between(b.root, b.core_middle);
        if (child_mode)
            s.set_parent(b.root, a.connector);
        else
            s.identify(a.connector, b.root);
        int expect_nodes = child_mode ? base_nodes : base_nodes - 1;
        CHECK(static_cast<int>(s.alive_ids().size()) == expect_nodes);
        int d = s.distance_between(a.core_middle, b.core_middle);
        CHECK(d == d_before + (child_mode ? 1 : 0));
    }
}

TEST_CASE("generic adversary defeats greedy completion on the 2.5-coloring") {
    RootedLcl p = twohalf_problem();
    for (int T : {0, 1}) {
        auto alg = make_greedy_completion(p);
        SeparationReport r = superlog_adversary(p, *alg, T);
        INFO("T=", T, " detail=", r.detail);
        CHECK(r.outcome == SeparationReport::AdversaryWon);
        CHECK(!r.witness.empty());
    }
}

TEST_CASE("generic adversary defeats first-fit on the 2.5-coloring") {
    RootedLcl p = twohalf_problem();
    auto alg = make_first_fit(p);
    SeparationReport r = superlog_adversary(p, *alg, 1);
    CHECK(r.outcome == SeparationReport::AdversaryWon);
}

TEST_CASE("generic adversary on 2-coloring wins with two trees") {
    RootedLcl p = two_coloring_binary();
    auto alg = make_greedy_completion(p);
    SeparationReport r = superlog_adversary(p, *alg, 1);
    CHECK(r.outcome == SeparationReport::AdversaryWon);
    // k = 1: four copies suffice and no intermediate combine happens
    CHECK(r.detail.find("no valid completion") != std::string::npos);
}

TEST_CASE("generic adversary rejects flexible problems") {
    RootedLcl p = rooted_coloring(3, 2);
    auto alg = make_greedy_completion(p);
    CHECK_THROWS_AS(superlog_adversary(p, *alg, 1), std::invalid_argument);
}

TEST_CASE("nested orientation: solver output verifies, tampering does not") {
    Graph star(6);
    for (int v = 1; v < 6; ++v) star.add_edge(0, v);
    std::vector<long long> uids = {7, 12, 3, 44, 5, 6};
    auto alg = make_nested_orientation_slocal();
    SlocalRun run = run_slocal(*alg, star, {3, 0, 1, 2, 4, 5}, 1, &uids);
    CHECK(verify_nested(star, uids, run.labels).empty());
    Labeling bad = run.labels;
    bad[2] = bad[1];
    CHECK(!verify_nested(star, uids, bad).empty());

    // single node: h = (uid, {}, {})
    Graph one(1);
    auto alg2 = make_nested_orientation_slocal();
    std::vector<long long> u1 = {9};
    SlocalRun r1 = run_slocal(*alg2, one, {0}, 1, &u1);
    CHECK(r1.labels[0] == "(9||)");
    CHECK(verify_nested(one, u1, r1.labels).empty());
}

TEST_CASE("walk bound: left-to-right processing of a path induces a long walk") {
    Graph g = gen_path(6);
    std::vector<long long> uids = {10, 20, 30, 40, 50, 60};
    auto alg = make_nested_orientation_slocal();
    SlocalRun run = run_slocal(*alg, g, {0, 1, 2, 3, 4, 5}, 1, &uids);
    auto oriented = orientation_of(g, uids, run.labels);
    REQUIRE(oriented.has_value());
    for (int T = 0; T <= 4; ++T) CHECK(!walk_bound_check(g, *oriented, T));
    CHECK(walk_bound_check(g, *oriented, 5));
    // a middle-out order keeps walks short (longest directed path = 3)
    auto alg2 = make_nested_orientation_slocal();
    SlocalRun run2 = run_slocal(*alg2, g, {2, 3, 1, 4, 0, 5}, 1, &uids);
    auto o2 = orientation_of(g, uids, run2.labels);
    REQUIRE(o2.has_value());
    CHECK(!walk_bound_check(g, *o2, 2));
    CHECK(walk_bound_check(g, *o2, 3));
}

TEST_CASE("tree family for weak reconstruction") {
    std::vector<Graph> fam;
    for (int m = 5; m <= 10; ++m)
        for (auto& g : unique_degree2_rooted_trees(m)) fam.push_back(std::move(g));
    INFO("family size ", fam.size());
    CHECK(static_cast<int>(fam.size()) > 20);  // k > 2m at m = 10
    for (const auto& t : fam) {
        CHECK(t.n >= 5);
        CHECK(t.rooted());
        int deg2 = 0;
        for (int v = 0; v < t.n; ++v)
            if (t.degree(v) == 2) ++deg2;
        CHECK(deg2 == 1);
        CHECK(t.degree(0) == 2);  // rooted at the marker
        CHECK(t.parent[0] == -1);
    }
    // pairwise non-isomorphic
    std::set<std::string> codes;
    for (const auto& t : fam) codes.insert(canonical_code(t));
    CHECK(codes.size() == fam.size());
}

TEST_CASE("weak reconstruction suite") {
    SuiteResult r = weak_reconstruction_suite(1);
    INFO(r.format());
    CHECK(r.all_expected);
    CHECK(r.reports.size() == 2);
    CHECK(r.reports[0].outcome == SeparationReport::AlgorithmSucceeded);
    CHECK(r.reports[1].outcome == SeparationReport::AdversaryWon);
}

TEST_CASE("cycle detection suite") {
    SuiteResult r = cycle_detection_suite();
    INFO(r.format());
    CHECK(r.all_expected);
    CHECK(r.reports.size() == 3);
}

TEST_CASE("leader election suite") {
    SuiteResult r = leader_election_suite();
    INFO(r.format());
    CHECK(r.all_expected);
    CHECK(r.reports.size() == 3);
}

TEST_CASE("nested orientation suite (small)") {
    SuiteResult r = nested_orientation_suite(1, 20, 24);
    INFO(r.format());
    CHECK(r.all_expected);
}

TEST_CASE("3-coloring of paths positive suite") {
    SuiteResult r = three_coloring_paths_suite();
    CHECK(r.all_expected);
}
