#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lab/lcl.hpp"
#include "lab/models.hpp"

namespace lab {

// --- layered trees inside an interactive session --------------------------------

struct SessionLayeredTree {
    int root = -1;
    int connector = -1;
    int core_middle = -1;
};

// Builds T_k^x with delta-ary slots in the given session; `layer` records the
// construction layer per session id (grown as needed).
SessionLayeredTree build_session_layered_tree(OnlineSession& s, std::vector<int>& layer, int k,
                                              int x, int delta);

enum class CombineMode {
    IdentifyBRootIntoAConnector,  // distance v_A..v_B = down(A) + down(B)
    IdentifyARootIntoBConnector,
    ChildBRootUnderAConnector,    // one longer
    ChildARootUnderBConnector,
};

// --- separation reports ------------------------------------------------------------

struct SeparationReport {
    std::string problem;
    std::string model;
    enum Outcome { AlgorithmSucceeded, AdversaryWon } outcome = AlgorithmSucceeded;
    std::string detail;
    std::string witness;  // replayable description of the failing instance
    std::string format() const;
};

// --- the generic online adversary for decomposition-empty problems ------------------

struct SuperlogOptions {
    int x = -1;           // core-path length; default 2T+3
    bool certify = true;  // certify the final instance unlabelable by exact DP
};

// Drives the collection-based strategy against an online algorithm with
// locality T: label middle nodes of 2^(k+1) layered-tree copies, then combine
// pairs whose committed labels form an inflexible pair until no valid
// completion exists.
SeparationReport superlog_adversary(const RootedLcl& lcl, const OnlineAlgorithm& alg, int T,
                                    SuperlogOptions opts = {});

// --- App-style separation suites ----------------------------------------------------

struct SuiteResult {
    std::vector<SeparationReport> reports;
    bool all_expected = true;  // positives accepted, adversaries won
    std::string format() const;
};

SuiteResult weak_reconstruction_suite(unsigned seed = 1);
SuiteResult cycle_detection_suite();
SuiteResult leader_election_suite();
SuiteResult nested_orientation_suite(unsigned seed = 1, int graphs = 100, int max_n = 50);
SuiteResult three_coloring_paths_suite();

// --- nested orientation --------------------------------------------------------------

// SLOCAL solver with locality 1: orient edges away from the processed node;
// the label is (uid | neighbor uids | in-neighbor uids), a reference-compressed
// form of the recursive nesting value.
std::unique_ptr<SlocalAlgorithm> make_nested_orientation_slocal();

std::vector<Violation> verify_nested(const Graph& g, const std::vector<long long>& uids,
                                     const Labeling& out);

// Orientation induced by a nested-orientation labeling: oriented[u] lists v
// with u -> v.
std::optional<std::vector<std::pair<int, int>>> orientation_of(const Graph& g,
                                                               const std::vector<long long>& uids,
                                                               const Labeling& out);

// True iff the orientation induces no directed walk of length T+1 (the
// obstruction a constant-locality dynamic algorithm cannot avoid on
// high-girth inputs).
bool walk_bound_check(const Graph& g, const std::vector<std::pair<int, int>>& oriented, int T);

// --- helper verifiers used by the suites ---------------------------------------------

// every yes-node lies on a cycle and deleting yes-nodes leaves a forest
std::vector<Violation> verify_cycle_detection(const Graph& g, const Labeling& labels);
// exactly one "leader" per connected component
std::vector<Violation> verify_leader_election(const Graph& g, const Labeling& labels);
// at least one node per component whose label equals the component code
std::vector<Violation> verify_weak_reconstruction(const Graph& g, const Labeling& labels);

// Rooted trees on exactly m nodes whose root is the unique degree-2 node.
std::vector<Graph> unique_degree2_rooted_trees(int m);

}  // namespace lab
