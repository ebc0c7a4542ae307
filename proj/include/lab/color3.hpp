#pragma once

#include <vector>

#include "lab/models.hpp"

namespace lab {

// Online 3-coloring of bipartite graphs at locality 3*ceil(log2 n): grow
// properly 2-colored groups, and when two groups with incompatible parities
// meet, wrap the one with the smaller border count in a color-2 barrier.
//
// Runs under the online engine; all state is keyed by first-seen ids.
class ThreeColoring : public OnlineAlgorithmBase<ThreeColoring> {
public:
    struct Stats {
        int max_border = 0;
        int max_commit_radius = 0;
        long long commitments = 0;
        long long merges = 0;
        long long barriers = 0;
        int escape_events = 0;      // commitment required outside the visible region
        int radius_violations = 0;  // committed node farther than 3*border from a reveal
        bool border_law_ok = true;  // group size >= 2^border at every merge
    };

    ThreeColoring() = default;
    void start(int n_declared, int locality) override;
    Label on_reveal(const OnlineView& view) override;

    const Stats& stats() const { return stats_; }
    int color_of(int vis_id) const { return color_[vis_id]; }
    int group_border(int vis_id) const;  // border count of the node's group

    static int locality_for(int n);  // 3 * ceil(log2 n)

private:
    int find(int v) const;
    void unite(int a, int b);
    void ensure_node(int v);
    void assign_color(const Graph& vis, int v, int c, bool committed_by_barrier, int border_now);
    bool two_colorable_with(const Graph& vis, const std::vector<int>& region_roots,
                            const std::vector<int>& fresh, std::vector<int>* odd_cycle) const;
    int join_groups(const Graph& vis, int a, int b, const std::vector<int>& fresh);
    int extend_color(const Graph& vis, int v) const;
    void record_commit_radius(const Graph& vis, int v, int border_now);

    int n_ = 0;
    int T_ = 0;
    std::vector<int> color_;        // -1 uncolored, else 0/1/2
    std::vector<char> revealed_;
    mutable std::vector<int> uf_;
    std::vector<int> border_;       // at group roots
    std::vector<long long> size_;   // at group roots (seen nodes)
    std::vector<int> group_min_id_; // at group roots: stable ascending order key
    int known_ = 0;                 // visible nodes processed so far
    Stats stats_;
};

// Convenience wrapper: run the session over a graph and order.
struct ThreeColoringRun {
    OnlineRun run;
    ThreeColoring::Stats stats;
    int colors_used = 0;
};
ThreeColoringRun run_three_coloring(const Graph& g, const std::vector<int>& order);

// Proper-coloring check on the labeled subgraph (ignores unlabeled nodes).
bool proper_coloring(const Graph& g, const Labeling& labels);

// First-fit greedy coloring: least color unused by already-revealed neighbors;
// needs no lookaround and at most max-degree+1 colors.
std::unique_ptr<OnlineAlgorithm> make_online_greedy_coloring();

// Raised on non-bipartite inputs; carries an odd-cycle witness.
struct odd_cycle_error : contract_error {
    std::vector<int> cycle;  // first-seen ids
    explicit odd_cycle_error(std::vector<int> c)
        : contract_error("input graph is not bipartite; odd cycle witness of length " +
                         std::to_string(c.size())),
          cycle(std::move(c)) {}
};

}  // namespace lab
