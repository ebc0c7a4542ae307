#include "lab/color3.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace lab {

int ThreeColoring::locality_for(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    int bits = 0;
    while ((1LL << bits) < n) ++bits;  // ceil(log2 n)
    return 3 * bits;
}

void ThreeColoring::start(int n_declared, int locality) {
    n_ = n_declared;
    T_ = locality;
    color_.clear();
    revealed_.clear();
    uf_.clear();
    border_.clear();
    size_.clear();
    group_min_id_.clear();
    known_ = 0;
    stats_ = Stats{};
}

int ThreeColoring::find(int v) const {
    while (uf_[v] != v) {
        uf_[v] = uf_[uf_[v]];
        v = uf_[v];
    }
    return v;
}

void ThreeColoring::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    uf_[b] = a;
    size_[a] += size_[b];
    border_[a] = std::max(border_[a], border_[b]);
    group_min_id_[a] = std::min(group_min_id_[a], group_min_id_[b]);
}

void ThreeColoring::ensure_node(int v) {
    while (static_cast<int>(color_.size()) <= v) {
        int id = static_cast<int>(color_.size());
        color_.push_back(-1);
        revealed_.push_back(0);
        uf_.push_back(id);
        border_.push_back(0);
        size_.push_back(1);
        group_min_id_.push_back(id);
    }
}

void ThreeColoring::record_commit_radius(const Graph& vis, int v, int border_now) {
    // distance to the nearest adversary-revealed node
    std::deque<int> q{v};
    std::vector<int> dist(vis.n, -1);
    dist[v] = 0;
    int radius = -1;
    while (!q.empty() && radius < 0) {
        int x = q.front();
        q.pop_front();
        if (revealed_[x]) {
            radius = dist[x];
            break;
        }
        for (int w : vis.adj[x])
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
    }
    if (radius < 0) radius = vis.n;  // no revealed node reachable: count as a failure
    stats_.max_commit_radius = std::max(stats_.max_commit_radius, radius);
    if (radius > 3 * border_now) ++stats_.radius_violations;
}

void ThreeColoring::assign_color(const Graph& vis, int v, int c, bool committed_by_barrier,
                                 int border_now) {
    if (color_[v] != -1) throw contract_error("double color commitment");
    for (int w : vis.adj[v])
        if (color_[w] == c) {
            // improper commitment: on bipartite inputs this cannot happen, so
            // surface the odd-cycle witness
            std::vector<int> cycle{v, w};
            throw odd_cycle_error(std::move(cycle));
        }
    color_[v] = c;
    if (committed_by_barrier) {
        ++stats_.commitments;
        record_commit_radius(vis, v, border_now);
    }
}

// 2-coloring feasibility of the union of the given groups plus fresh tissue,
// with committed 0/1 colors as fixed anchors; color-2 nodes are sealed and
// excluded. Returns false on parity conflict.
bool ThreeColoring::two_colorable_with(const Graph& vis, const std::vector<int>& region_roots,
                                       const std::vector<int>& fresh,
                                       std::vector<int>* odd_cycle) const {
    std::vector<char> in_region(vis.n, 0);
    for (int v = 0; v < known_; ++v)
        for (int r : region_roots)
            if (find(v) == r) in_region[v] = 1;
    for (int v : fresh) in_region[v] = 1;
    // anchored multi-source BFS: color-2 nodes are sealed and excluded
    std::vector<int> pot(vis.n, -1), bfs_parent(vis.n, -1);
    std::deque<int> q;
    for (int v = 0; v < vis.n; ++v)
        if (in_region[v] && (color_[v] == 0 || color_[v] == 1)) {
            pot[v] = color_[v];
            q.push_back(v);
        }
    auto witness = [&](int x, int w) {
        if (!odd_cycle) return;
        std::vector<char> on_a(vis.n, 0);
        for (int t = x; t >= 0; t = bfs_parent[t]) on_a[t] = 1;
        int meet = w;
        while (meet >= 0 && !on_a[meet]) meet = bfs_parent[meet];
        std::vector<int> cyc;
        for (int t = x; t >= 0 && t != meet; t = bfs_parent[t]) cyc.push_back(t);
        if (meet >= 0) cyc.push_back(meet);
        std::reverse(cyc.begin(), cyc.end());
        std::vector<int> tail;
        for (int t = w; t >= 0 && t != meet; t = bfs_parent[t]) tail.push_back(t);
        std::reverse(tail.begin(), tail.end());
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) cyc.push_back(*it);
        *odd_cycle = cyc;
    };
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int w : vis.adj[x]) {
            if (!in_region[w] || color_[w] == 2) continue;
            if (pot[w] < 0) {
                pot[w] = (color_[w] == 0 || color_[w] == 1) ? color_[w] : 1 - pot[x];
                if ((color_[w] == 0 || color_[w] == 1) && color_[w] == pot[x]) {
                    witness(x, w);
                    return false;
                }
                bfs_parent[w] = x;
                q.push_back(w);
            } else if (pot[w] == pot[x]) {
                witness(x, w);
                return false;
            }
        }
    }
    return true;
}

// Algorithm: if parities differ, wrap the smaller-border group in a barrier
// (0-frontier -> 1, 1 -> 2, 2 -> 0), bump its border, then merge.
int ThreeColoring::join_groups(const Graph& vis, int a, int b, const std::vector<int>& fresh) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    ++stats_.merges;
    std::vector<int> witness;
    bool compatible = two_colorable_with(vis, {a, b}, fresh, nullptr);
    if (!compatible) {
        ++stats_.barriers;
        int s = (border_[a] <= border_[b]) ? a : b;  // tie -> first argument
        int border_now = border_[s] + 1;
        // members of S: seen nodes in s's group
        auto members_with_color = [&](int c) {
            std::vector<int> out;
            for (int v = 0; v < known_; ++v)
                if (color_[v] == c && find(v) == s) out.push_back(v);
            return out;
        };
        auto commit_layer = [&](int from_color, int to_color) {
            std::vector<int> frontier = members_with_color(from_color);
            for (int u : frontier)
                for (int w : vis.adj[u])
                    if (color_[w] == -1) {
                        assign_color(vis, w, to_color, true, border_now);
                        unite(s, w);
                        s = find(s);
                    }
        };
        commit_layer(0, 1);
        commit_layer(1, 2);
        commit_layer(2, 0);
        border_[s] = std::max(border_[s], border_now);
        if (!two_colorable_with(vis, {find(a), find(b)}, fresh, &witness))
            throw odd_cycle_error(std::move(witness));
    }
    unite(a, b);
    int root = find(a);
    if (size_[root] < (1LL << std::min(border_[root], 62))) stats_.border_law_ok = false;
    stats_.max_border = std::max(stats_.max_border, border_[root]);
    return root;
}

// BFS through uncolored nodes to the nearest 0/1-colored anchors; the color
// extending the group's 2-coloring parity.
int ThreeColoring::extend_color(const Graph& vis, int v) const {
    if (color_[v] >= 0) return color_[v];
    std::vector<int> dist(vis.n, -1);
    std::deque<int> q{v};
    dist[v] = 0;
    int found_depth = -1, candidate = -1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (found_depth >= 0 && dist[x] >= found_depth) break;
        for (int w : vis.adj[x]) {
            if (color_[w] == 0 || color_[w] == 1) {
                int c = ((dist[x] + 1) % 2 == 0) ? color_[w] : 1 - color_[w];
                if (candidate < 0) {
                    candidate = c;
                    found_depth = dist[x];
                } else if (candidate != c && dist[x] == found_depth) {
                    std::vector<int> cyc{v, x, w};
                    throw odd_cycle_error(std::move(cyc));
                }
            } else if (color_[w] == -1 && dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
        }
    }
    if (candidate < 0) throw contract_error("no colored anchor reachable from revealed node");
    return candidate;
}

Label ThreeColoring::on_reveal(const OnlineView& view) {
    const Graph& vis = *view.visible;
    int known_before = known_;
    for (int v = known_before; v < vis.n; ++v) ensure_node(v);

    // commitment-escape detection: a node entering the visible region next to
    // a color-2 node should have been committed when the barrier was built
    for (int v = known_before; v < vis.n; ++v)
        for (int w : vis.adj[v])
            if (w < known_before && color_[w] == 2) ++stats_.escape_events;

    known_ = vis.n;
    int center = view.center;

    // case analysis over B(center, T+1)
    std::vector<int> dist(vis.n, -1);
    std::deque<int> q{center};
    dist[center] = 0;
    std::vector<int> ball_t, prev_seen;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (dist[x] <= T_) ball_t.push_back(x);
        if (x < known_before) prev_seen.push_back(x);
        if (dist[x] == T_ + 1) continue;
        for (int w : vis.adj[x])
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
    }

    std::vector<int> fresh;
    for (int v = known_before; v < vis.n; ++v) fresh.push_back(v);

    if (prev_seen.empty()) {
        // case 1: a fresh group; fix the parity by coloring the center 0
        int root = center;
        for (int u : ball_t) {
            unite(root, u);
            root = find(root);
        }
        border_[root] = 0;
        assign_color(vis, center, 0, false, 0);
        revealed_[center] = 1;
        return "0";
    }

    // case 2/3: collect distinct groups in ascending stable id order
    std::vector<int> groups;
    for (int u : prev_seen) {
        int r = find(u);
        if (std::find(groups.begin(), groups.end(), r) == groups.end()) groups.push_back(r);
    }
    std::sort(groups.begin(), groups.end(),
              [&](int x, int y) { return group_min_id_[x] < group_min_id_[y]; });
    int x = groups[0];
    for (size_t i = 1; i < groups.size(); ++i) x = join_groups(vis, x, groups[i], fresh);
    for (int u : ball_t) {
        unite(x, u);
        x = find(x);
    }
    stats_.max_border = std::max(stats_.max_border, border_[x]);
    if (size_[x] < (1LL << std::min(border_[x], 62))) stats_.border_law_ok = false;

    int c = color_[center] >= 0 ? color_[center] : extend_color(vis, center);
    if (color_[center] == -1) assign_color(vis, center, c, false, border_[x]);
    revealed_[center] = 1;
    return std::to_string(c);
}

int ThreeColoring::group_border(int vis_id) const {
    return border_[find(vis_id)];
}

ThreeColoringRun run_three_coloring(const Graph& g, const std::vector<int>& order) {
    ThreeColoring alg;
    ThreeColoringRun out;
    out.run = run_online(alg, g, order, ThreeColoring::locality_for(g.n));
    out.stats = alg.stats();
    std::set<Label> used;
    for (const auto& l : out.run.labels)
        if (!l.empty()) used.insert(l);
    out.colors_used = static_cast<int>(used.size());
    return out;
}

bool proper_coloring(const Graph& g, const Labeling& labels) {
    for (int v = 0; v < g.n; ++v) {
        if (labels[v].empty()) continue;
        for (int u : g.adj[v])
            if (u > v && !labels[u].empty() && labels[u] == labels[v]) return false;
    }
    return true;
}

namespace {
class OnlineGreedyColoring : public OnlineAlgorithmBase<OnlineGreedyColoring> {
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
}  // namespace

std::unique_ptr<OnlineAlgorithm> make_online_greedy_coloring() {
    return std::make_unique<OnlineGreedyColoring>();
}

}  // namespace lab
