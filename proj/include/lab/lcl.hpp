#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lab/graph.hpp"
#include "lab/models.hpp"

namespace lab {

// --- Rooted-tree LCL problems -------------------------------------------------

// (delta, Gamma, C): a node labeled `a` may have children labeled with any
// permutation of a multiset (b_1..b_delta) such that (a : b_1..b_delta) is an
// allowed configuration. Labels are interned; children stored sorted.
struct RootedLcl {
    int delta = 2;
    std::vector<std::string> labels;              // id -> name
    std::map<std::string, int> label_id;          // name -> id
    std::set<std::vector<int>> configs;           // [parent, sorted children...]

    int intern(const std::string& name);
    int id_of(const std::string& name) const;     // -1 if unknown
    int size() const { return static_cast<int>(labels.size()); }
    void add_config(const std::string& parent, const std::vector<std::string>& children);
    void add_config_ids(int parent, std::vector<int> children);
    bool allowed(int parent, std::vector<int> children) const;
    bool has_label(int id) const { return id >= 0 && id < size(); }

    // Keeps configurations whose every label is in `keep`; the label set
    // becomes exactly `keep` (in the original order).
    RootedLcl restrict(const std::set<int>& keep) const;
    bool empty_problem() const { return labels.empty(); }

    std::string format() const;
    static RootedLcl parse(const std::string& text);
};

// Checks every internal node's (label : children multiset) against C.
// Leaves carry labels but are only constrained as children.
std::vector<Violation> verify_rooted(const RootedLcl& lcl, const Graph& g, const Labeling& L);

// Feasibility of extending a partial labeling to a full valid labeling of a
// rooted forest in which nodes with fewer than delta children may receive
// fresh subtrees (any label is realizable as a leaf, so open child slots are
// unconstrained). Exact tree DP.
bool rooted_completion_exists(const RootedLcl& lcl, const Graph& g, const Labeling& partial);
// Per-node sets of labels that admit a completion of the node's subtree.
std::vector<std::set<int>> rooted_feasible_labels(const RootedLcl& lcl, const Graph& g,
                                                  const Labeling& partial);

// --- Path-form and the walk automaton ----------------------------------------

// Nondeterministic unary semiautomaton over the label set: transition a -> b
// iff some allowed configuration (a : ...b...) exists. Walk-length queries
// are answered from an explicit table up to a stabilization bound and by
// eventual periodicity beyond it.
struct PathAutomaton {
    std::vector<std::string> names;
    std::vector<std::vector<char>> edge;  // edge[a][b]
    int states() const { return static_cast<int>(names.size()); }

    // reach_[d][a*k+b] for d = 0..table_bound_
    std::vector<std::vector<char>> reach_;
    int table_bound_ = 0;
    struct Tail {
        int threshold = 0;          // answers for d >= threshold are periodic
        int period = 1;
        std::vector<char> residue;  // residue[(d - threshold) % period]
    };
    std::vector<Tail> tails_;  // per ordered pair a*k+b

    static PathAutomaton from_transitions(std::vector<std::string> names,
                                          const std::set<std::pair<int, int>>& transitions);
    bool walk_exists(int a, int b, long long d) const;
    bool transition(int a, int b) const { return edge[a][b]; }
    std::string format() const;
};

PathAutomaton path_form_automaton(const RootedLcl& lcl);

// Path-form as an explicit problem description: directed parent->child pairs.
struct PathFormLcl {
    std::vector<std::string> labels;
    std::set<std::pair<int, int>> pairs;  // (parent, child)
};
PathFormLcl path_form(const RootedLcl& lcl);

// gcd-of-cycle-lengths flexibility; equivalent to the existential-K wording.
bool is_flexible(const PathAutomaton& m, int state);
bool flexible_pair(const PathAutomaton& m, int a, int b);
// Alternative formulations, used to cross-check is_flexible in tests.
bool is_flexible_by_walks(const PathAutomaton& m, int state, int horizon);
bool flexible_pair_by_walks(const PathAutomaton& m, int a, int b, int horizon);

// --- Path-inflexible decomposition --------------------------------------------

struct Decomposition {
    enum Terminal { Empty, AllFlexible } terminal = AllFlexible;
    std::vector<RootedLcl> problems;            // Pi_0 .. Pi_k
    std::vector<std::set<int>> removed_labels;  // Gamma_1 .. Gamma_k, ids in Pi_0
    int depth() const { return static_cast<int>(removed_labels.size()); }
    std::string format() const;
};

Decomposition inflexible_decomposition(const RootedLcl& lcl);

// --- Certificates for fast solvability -----------------------------------------

// Complete delta-ary labeled tree in heap layout (children of i are
// delta*i+1 .. delta*i+delta).
struct LabeledTree {
    int delta = 2;
    int depth = 0;
    std::vector<int> labels;  // label ids of the owning problem
    int size() const { return static_cast<int>(labels.size()); }
    static long long node_count(int delta, int depth);
};

struct Certificate {
    std::vector<int> cert_labels;  // Gamma_T, ids of the problem
    int d1 = 0, d2 = 0;
    std::vector<LabeledTree> seq1, seq2;
    std::string format(const RootedLcl& lcl) const;
};

struct CertificateCheck {
    bool ok = false;
    std::string reason;  // failed condition when !ok
};
CertificateCheck check_certificate(const RootedLcl& lcl, const Certificate& cert);

struct CertificateExtraction {
    bool ok = false;
    bool inconclusive = false;  // node budget clamped the construction
    Certificate certificate;
    std::string failure;        // gluing step that produced a violation
};
CertificateExtraction extract_certificate(const RootedLcl& lcl, const OnlineAlgorithm& alg, int T);

// --- Classification -------------------------------------------------------------

struct ClassificationReport {
    Decomposition decomposition;
    std::string tier;  // "O(log n) in all four models" or "n^Omega(1)"
    std::optional<CertificateExtraction> certificate;  // attempted log*-tier witness
    std::string format(const RootedLcl& lcl) const;
};
ClassificationReport classify_rooted(const RootedLcl& lcl, bool try_certificate = false,
                                     int certificate_T = 1);

// --- Baseline online algorithms for rooted-tree LCLs ----------------------------

// Picks the least label keeping the visible forest completable.
std::unique_ptr<OnlineAlgorithm> make_greedy_completion(const RootedLcl& lcl);
// Picks the least label not violating a fully-labeled configuration.
std::unique_ptr<OnlineAlgorithm> make_first_fit(const RootedLcl& lcl);

// --- Fixture problems ------------------------------------------------------------

RootedLcl twohalf_problem();                       // the 2.5-coloring problem
RootedLcl rooted_coloring(int colors, int delta);  // proper coloring as (a : b..b)
RootedLcl two_coloring_binary();                   // exact alternation, delta=2

}  // namespace lab
