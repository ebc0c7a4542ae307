#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lab/core.hpp"

namespace lab {

// Sorted set of node ids.
using NodeSet = std::vector<int>;

// Finite simple undirected graph with dense ids 0..n-1. Optionally rooted
// (parent[v] = -1 for roots, PARENT_UNKNOWN only inside engine views) and
// optionally input-labeled.
struct Graph {
    static constexpr int PARENT_UNKNOWN = -2;

    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    std::vector<int> parent;            // tracked only when rooted
    std::vector<std::string> input;     // tracked only when inputs are on

    Graph() = default;
    explicit Graph(int nodes) { resize(nodes); }

    void resize(int nodes);
    int add_node();
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool rooted() const { return rooted_; }
    bool has_inputs() const { return inputs_; }
    void make_rooted();
    void make_inputs();
    void set_parent(int child, int par);  // also inserts the edge
    std::vector<int> children(int v) const;
    int root_of(int v) const;  // walk parent pointers

    long long edge_count() const;
    void check_node(int v) const;
    // Structural invariants: symmetry, no loops, sortedness, parent acyclic
    // with one root per component. Throws on violation.
    void validate() const;

private:
    bool rooted_ = false;
    bool inputs_ = false;
};

// All nodes at hop distance <= radius from v, sorted.
NodeSet ball(const Graph& g, int v, int radius);
// Per-node distance from v (-1 = unreachable), optionally capped.
std::vector<int> distances_from(const Graph& g, int v, int cap = -1);
int distance(const Graph& g, int u, int v);
std::vector<NodeSet> components(const Graph& g);

// Induced subgraph on s plus the new-id -> old-id map (old = map[new]).
struct InducedGraph {
    Graph g;
    std::vector<int> to_old;
    std::vector<int> to_new_of;  // old -> new, -1 if absent; sized like parent graph
};
InducedGraph induced(const Graph& g, const NodeSet& s);

// --- Generators -----------------------------------------------------------

Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_grid(int a, int b);  // non-toroidal Cartesian product of two paths
// Complete delta-ary rooted tree with `depth` edge-levels below the root.
Graph gen_complete_tree(int delta, int depth);

struct LayeredTreeSpec {
    int layers = 1;    // k
    int core_len = 1;  // x
    int delta = 2;
};

// Recursive layered tree: a core path of core_len nodes at the top layer,
// each core node also parenting delta-1 copies of the (k-1)-layer tree.
// The bottom core node keeps one child slot open (the connector).
struct LayeredTree {
    Graph g;
    int root = -1;
    int connector = -1;
    int core_middle = -1;     // middlemost node of the top core path
    std::vector<int> layer;   // per node
};
LayeredTree gen_layered_tree(const LayeredTreeSpec& spec);
long long layered_tree_size(const LayeredTreeSpec& spec);

// --- Canonical codes -------------------------------------------------------

// Isomorphism-invariant byte string. Labels, inputs and rootedness are part
// of the code. Trees and cycles are handled at any size; other graphs fall
// back to backtracking canonicalization bounded by budget().canonical_nodes.
std::string canonical_code(const Graph& g, const std::vector<std::string>* labels = nullptr);

// Exhaustive permutation test, usable as an oracle for small graphs.
bool brute_force_isomorphic(const Graph& a, const Graph& b,
                            const std::vector<std::string>* la = nullptr,
                            const std::vector<std::string>* lb = nullptr);

// --- Text format ------------------------------------------------------------
//
// graph <n> [rooted] [inputs]
// edge u v          (u < v, sorted)
// parent u v        (v is the parent of u)
// input u <label>

std::string format_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph load_graph_file(const std::string& path);
// Named shorthand ("path:8", "cycle:6", "grid:3x4", "tree:2x3",
// "layered:2x5x2") or a file path.
Graph graph_from_spec(const std::string& spec);

}  // namespace lab
