#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lab/graph.hpp"

namespace lab {

using Label = std::string;
using Labeling = std::vector<Label>;  // indexed by node id; "" = unlabeled

struct Violation {
    int node = -1;
    std::string message;
};

// --- Traces -----------------------------------------------------------------

struct TraceStep {
    enum Kind { Reveal, Process, Edit } kind = Reveal;
    int node = -1;                // revealed/processed node (engine ids)
    std::vector<int> newly_seen;  // nodes entering the visible region
    Label emitted;                // label output at this step ("" if none)
    int view_radius = 0;          // max radius handed to the algorithm
    std::string note;
};

struct ExecutionTrace {
    std::vector<TraceStep> steps;
    std::string to_log() const;
    bool operator==(const ExecutionTrace& o) const;
};

// --- Algorithm interfaces -----------------------------------------------------

// View passed to an online algorithm on each reveal. Nodes of `visible` are
// numbered in first-seen order; that numbering is stable across steps.
struct OnlineView {
    const Graph* visible = nullptr;
    int center = -1;  // first-seen id of the revealed node
    int n_declared = 0;
    int locality = 0;
    int step = 0;
};

class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;
    virtual void start(int /*n_declared*/, int /*locality*/) {}
    virtual Label on_reveal(const OnlineView& view) = 0;
    virtual std::unique_ptr<OnlineAlgorithm> clone() const = 0;
};

// clone() via the copy constructor; global memory lives in value members.
template <class Derived, class Base = OnlineAlgorithm>
class OnlineAlgorithmBase : public Base {
public:
    std::unique_ptr<OnlineAlgorithm> clone() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};

struct SlocalView {
    const Graph* view = nullptr;  // G[B(v,T)], local ids
    int center = -1;
    const std::vector<std::string>* memories = nullptr;  // per view node
    const std::vector<long long>* uids = nullptr;        // per view node
    int n_declared = 0;
    int locality = 0;
};

struct SlocalDecision {
    Label out;
    std::string memory;
};

class SlocalAlgorithm {
public:
    virtual ~SlocalAlgorithm() = default;
    virtual void start(int /*n_declared*/, int /*locality*/) {}
    virtual SlocalDecision process(const SlocalView& view) = 0;
    virtual std::unique_ptr<SlocalAlgorithm> clone() const = 0;
};

template <class Derived>
class SlocalAlgorithmBase : public SlocalAlgorithm {
public:
    std::unique_ptr<SlocalAlgorithm> clone() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};

struct DynamicView {
    const Graph* graph = nullptr;  // G_i, engine node ids
    const Labeling* previous = nullptr;
    const std::vector<int>* changed = nullptr;  // C_i, sorted
    int locality = 0;
    int step = 0;
};

class DynamicAlgorithm {
public:
    virtual ~DynamicAlgorithm() = default;
    virtual void start(int /*locality*/) {}
    // Returns new labels; keys must lie inside *changed (engine-enforced).
    virtual std::map<int, Label> update(const DynamicView& view) = 0;
    virtual std::unique_ptr<DynamicAlgorithm> clone() const = 0;
};

template <class Derived>
class DynamicAlgorithmBase : public DynamicAlgorithm {
public:
    std::unique_ptr<DynamicAlgorithm> clone() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};

struct LocalView {
    const Graph* view = nullptr;  // G[B(v,T)], local ids
    int center = -1;
    const std::vector<long long>* uids = nullptr;  // per view node
    int n_declared = 0;
    int locality = 0;
};

class LocalAlgorithm {
public:
    virtual ~LocalAlgorithm() = default;
    virtual Label label(const LocalView& view) = 0;
    virtual std::unique_ptr<LocalAlgorithm> clone() const = 0;
};

template <class Derived>
class LocalAlgorithmBase : public LocalAlgorithm {
public:
    std::unique_ptr<LocalAlgorithm> clone() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};

// --- Engines ----------------------------------------------------------------

struct OnlineRun {
    Labeling labels;              // by original node id
    ExecutionTrace trace;
    std::vector<int> seen_order;  // original ids in first-seen order
};

// Reveals `order` (a permutation or prefix) on a fixed graph. The algorithm
// sees exactly G[union of B(v_j, T)]. Re-revealing a node is a no-op.
OnlineRun run_online(OnlineAlgorithm& alg, const Graph& g, const std::vector<int>& order, int T);

struct SlocalRun {
    Labeling labels;
    std::vector<std::string> memories;
    ExecutionTrace trace;
};

SlocalRun run_slocal(SlocalAlgorithm& alg, const Graph& g, const std::vector<int>& order, int T,
                     const std::vector<long long>* uids = nullptr);

struct Edit {
    enum Kind { AddNode, AddEdge, DelEdge } kind = AddNode;
    int u = -1, v = -1;
    static Edit add_node() { return {AddNode, -1, -1}; }
    static Edit add_edge(int u, int v) { return {AddEdge, u, v}; }
    static Edit del_edge(int u, int v) { return {DelEdge, u, v}; }
};

struct DynamicRun {
    Graph final_graph;
    Labeling labels;               // final labeling
    std::vector<Labeling> steps;   // labeling after each edit
    std::vector<std::vector<int>> changed_sets;
    ExecutionTrace trace;
};

// Incremental engine; pass allow_deletions=true for the +- variant.
// C_i = { v : G_i[B(v,T)] != G_{i-1}[B(v,T)] } computed by exact snapshot
// comparison; any label change outside C_i raises contract_error.
DynamicRun run_dynamic(DynamicAlgorithm& alg, const std::vector<Edit>& edits, int T,
                       bool allow_deletions = false);

// Oracle variant of the change-set computation (full scan; for tests).
std::vector<int> dynamic_change_set_naive(const Graph& before, const Graph& after, int T);

Labeling run_local(LocalAlgorithm& alg, const Graph& g, const std::vector<long long>& uids, int T);

std::vector<long long> default_uids(int n);

// --- Interactive online session (for adaptive adversaries) -------------------
//
// The adversary grows the underlying graph between reveals; any mutation that
// would retroactively change an already-revealed ball is reported as a
// contract violation at the next reveal. Unseen nodes can be identified
// (merged), which is how adaptive tree-gluing constructions are expressed.
class OnlineSession {
public:
    OnlineSession(const OnlineAlgorithm& proto, int n_declared, int T);
    OnlineSession(const OnlineSession& o);
    OnlineSession& operator=(const OnlineSession& o);

    int add_node();
    void add_edge(int u, int v);
    void set_parent(int child, int par);
    void set_input(int v, const std::string& label);
    // Merge unseen node `gone` into unseen node `keep`; later references to
    // `gone` resolve to `keep`.
    void identify(int keep, int gone);

    Label reveal(int v);
    bool is_seen(int v) const;
    bool is_revealed(int v) const;
    Label label_of(int v) const;  // "" if unlabeled
    int resolve(int v) const;     // current representative id
    int parent_of(int v) const;
    std::vector<int> children_of(int v) const;
    int distance_between(int u, int v) const;
    int declared_n() const { return n_declared_; }
    int locality() const { return T_; }

    Graph current_graph() const;              // quotient snapshot (alive nodes reindexed)
    std::vector<int> alive_ids() const;       // session ids of alive nodes
    Labeling labels_by_session_id() const;    // indexed by session id
    const ExecutionTrace& trace() const { return trace_; }
    int seen_count() const { return static_cast<int>(vis_to_session_.size()); }

private:
    friend class SessionProbe;
    int find(int v) const;
    void check_alive(int v) const;
    void verify_revealed_balls();
    std::string ball_fingerprint(const std::vector<int>& b) const;

    std::unique_ptr<OnlineAlgorithm> alg_;
    int n_declared_ = 0;
    int T_ = 0;
    // union-find over session ids
    mutable std::vector<int> uf_;
    std::vector<std::vector<int>> adj_;       // on representatives
    std::vector<int> parent_;                 // -1 none; on representatives
    std::vector<std::string> input_;
    std::vector<char> seen_;                  // on representatives
    std::vector<int> vis_id_;                 // representative -> first-seen id (-1)
    std::vector<int> vis_to_session_;         // first-seen id -> representative
    Graph visible_;                           // grown incrementally, first-seen ids
    Labeling vis_labels_;                     // by first-seen id
    std::vector<char> revealed_;              // by first-seen id
    std::vector<std::string> ball_snapshots_;  // per reveal: labeled-ball fingerprint
    std::vector<int> reveal_nodes_;
    ExecutionTrace trace_;
    int step_ = 0;
    bool mutated_ = false;  // structure changed since the last consistency check
};

// --- Simulations between the models ------------------------------------------

// LOCAL -> dynamic(+-): recompute with the local rule after every change.
std::unique_ptr<DynamicAlgorithm> lift_local_to_dynamic(const LocalAlgorithm& alg, int T);
// dynamic (incremental) -> online with locality 2T: feed B(v,2T) edge by edge.
std::unique_ptr<OnlineAlgorithm> lift_dynamic_to_online(const DynamicAlgorithm& alg, int T);
// SLOCAL -> online with the same locality: memories move to global memory.
std::unique_ptr<OnlineAlgorithm> lift_slocal_to_online(const SlocalAlgorithm& alg, int T);
// LOCAL -> SLOCAL with the same locality: ignore memories.
std::unique_ptr<SlocalAlgorithm> lift_local_to_slocal(const LocalAlgorithm& alg, int T);
// SLOCAL -> LOCAL by color classes: distance-k coloring (k = 2T+2, greedy on
// the k-th power graph), then sequential execution class by class.
Labeling lift_slocal_to_local_run(SlocalAlgorithm& alg, const Graph& g,
                                  const std::vector<long long>& uids, int T);

// --- Reusable LOCAL algorithms ------------------------------------------------

// Iterated color reduction from unique identifiers on paths and cycles
// (max degree 2): pointer-forest bit reduction, a matching fix-up, then
// class-by-class elimination down to at most 6 colors.
std::unique_ptr<LocalAlgorithm> make_cole_vishkin_coloring(long long max_uid);
int cole_vishkin_locality(long long max_uid);

// label = own degree (locality 1); a trivial but genuinely local problem
std::unique_ptr<LocalAlgorithm> make_degree_labeling();

// --- Script + trace text formats ---------------------------------------------

std::vector<Edit> parse_edit_script(const std::string& text);
std::string format_edit_script(const std::vector<Edit>& edits);
std::vector<int> parse_reveal_script(const std::string& text);
std::string format_reveal_script(const std::vector<int>& order);

}  // namespace lab
