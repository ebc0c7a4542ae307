#include "lab/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lab {

Budget& budget() {
    static Budget b = [] {
        Budget x;
        if (const char* env = std::getenv("LOCALITY_LAB_BUDGET")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0) x.max_nodes = v;
        }
        return x;
    }();
    return b;
}

void Graph::resize(int nodes) {
    if (nodes < 0) throw std::invalid_argument("graph size must be nonnegative");
    n = nodes;
    adj.assign(n, {});
    if (rooted_) parent.assign(n, -1);
    if (inputs_) input.assign(n, "");
}

int Graph::add_node() {
    adj.emplace_back();
    if (rooted_) parent.push_back(-1);
    if (inputs_) input.push_back("");
    return n++;
}

void Graph::check_node(int v) const {
    if (v < 0 || v >= n) throw std::invalid_argument("node id out of range: " + std::to_string(v));
}

void Graph::add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    auto& au = adj[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;  // already present
    au.insert(it, v);
    auto& av = adj[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

void Graph::make_rooted() {
    if (!rooted_) {
        rooted_ = true;
        parent.assign(n, -1);
    }
}

void Graph::make_inputs() {
    if (!inputs_) {
        inputs_ = true;
        input.assign(n, "");
    }
}

void Graph::set_parent(int child, int par) {
    make_rooted();
    check_node(child);
    check_node(par);
    add_edge(child, par);
    parent[child] = par;
}

std::vector<int> Graph::children(int v) const {
    check_node(v);
    std::vector<int> out;
    for (int u : adj[v])
        if (rooted_ && parent[u] == v) out.push_back(u);
    return out;
}

int Graph::root_of(int v) const {
    check_node(v);
    int cur = v;
    for (int guard = 0; guard <= n; ++guard) {
        int p = parent[cur];
        if (p < 0) return cur;
        cur = p;
    }
    throw std::logic_error("parent pointers contain a cycle");
}

long long Graph::edge_count() const {
    long long d = 0;
    for (const auto& a : adj) d += static_cast<long long>(a.size());
    return d / 2;
}

void Graph::validate() const {
    for (int v = 0; v < n; ++v) {
        const auto& a = adj[v];
        if (!std::is_sorted(a.begin(), a.end())) throw std::logic_error("adjacency not sorted");
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::logic_error("duplicate edge");
        for (int u : a) {
            check_node(u);
            if (u == v) throw std::logic_error("self-loop");
            if (!has_edge(u, v)) throw std::logic_error("adjacency not symmetric");
        }
    }
    if (rooted()) {
        for (int v = 0; v < n; ++v) {
            int p = parent[v];
            if (p == PARENT_UNKNOWN) continue;
            if (p >= 0 && !has_edge(v, p)) throw std::logic_error("parent edge missing");
            root_of(v);  // throws on parent cycles
        }
        for (const auto& comp : components(*this)) {
            int roots = 0;
            bool any_unknown = false;
            for (int v : comp) {
                if (parent[v] == -1) ++roots;
                if (parent[v] == PARENT_UNKNOWN) any_unknown = true;
            }
            if (!any_unknown && roots != 1)
                throw std::logic_error("rooted component must have exactly one root");
        }
    }
}

NodeSet ball(const Graph& g, int v, int radius) {
    g.check_node(v);
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    std::vector<int> dist(g.n, -1);
    std::deque<int> q{v};
    dist[v] = 0;
    NodeSet out{v};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (dist[u] == radius) continue;
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                out.push_back(w);
                q.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> distances_from(const Graph& g, int v, int cap) {
    g.check_node(v);
    std::vector<int> dist(g.n, -1);
    std::deque<int> q{v};
    dist[v] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (cap >= 0 && dist[u] == cap) continue;
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

int distance(const Graph& g, int u, int v) {
    return distances_from(g, u)[v];
}

std::vector<NodeSet> components(const Graph& g) {
    std::vector<NodeSet> out;
    std::vector<char> seen(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        if (seen[v]) continue;
        NodeSet comp;
        std::deque<int> q{v};
        seen[v] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            comp.push_back(u);
            for (int w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

InducedGraph induced(const Graph& g, const NodeSet& s) {
    InducedGraph out;
    out.to_new_of.assign(g.n, -1);
    out.to_old = s;
    std::sort(out.to_old.begin(), out.to_old.end());
    out.to_old.erase(std::unique(out.to_old.begin(), out.to_old.end()), out.to_old.end());
    for (int i = 0; i < static_cast<int>(out.to_old.size()); ++i) {
        g.check_node(out.to_old[i]);
        out.to_new_of[out.to_old[i]] = i;
    }
    Graph& h = out.g;
    h.resize(static_cast<int>(out.to_old.size()));
    if (g.rooted()) h.make_rooted();
    if (g.has_inputs()) h.make_inputs();
    for (int i = 0; i < h.n; ++i) {
        int old = out.to_old[i];
        for (int u : g.adj[old]) {
            int j = out.to_new_of[u];
            if (j >= 0 && j > i) h.add_edge(i, j);
        }
        if (g.rooted()) {
            int p = g.parent[old];
            if (p == Graph::PARENT_UNKNOWN)
                h.parent[i] = Graph::PARENT_UNKNOWN;
            else if (p >= 0 && out.to_new_of[p] >= 0)
                h.parent[i] = out.to_new_of[p];
            else if (p >= 0)
                h.parent[i] = Graph::PARENT_UNKNOWN;  // parent exists but is outside s
            else
                h.parent[i] = -1;
        }
        if (g.has_inputs()) h.input[i] = g.input[old];
    }
    return out;
}

Graph gen_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs >= 1 node");
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph gen_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs >= 3 nodes");
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph gen_grid(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("grid sides must be >= 1");
    if (static_cast<long long>(a) * b > budget().max_nodes) throw resource_error("grid too large");
    Graph g(a * b);
    auto id = [b](int r, int c) { return r * b + c; };
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c) {
            if (c + 1 < b) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < a) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

Graph gen_complete_tree(int delta, int depth) {
    if (delta < 1 || depth < 0) throw std::invalid_argument("bad complete-tree parameters");
    long long size = 1, level = 1;
    for (int d = 0; d < depth; ++d) {
        level *= delta;
        size += level;
        if (size > budget().max_nodes) throw resource_error("complete tree too large");
    }
    Graph g(static_cast<int>(size));
    g.make_rooted();
    // breadth-first layout: children of i are delta*i+1 .. delta*i+delta
    for (int v = 1; v < g.n; ++v) g.set_parent(v, (v - 1) / delta);
    return g;
}

long long layered_tree_size(const LayeredTreeSpec& spec) {
    long long size = 1;  // T_0 is a single node
    for (int k = 1; k <= spec.layers; ++k) {
        long long next = spec.core_len + static_cast<long long>(spec.core_len) * (spec.delta - 1) * size;
        if (next > budget().max_nodes) throw resource_error("layered tree too large");
        size = next;
    }
    return size;
}

namespace {
// Builds T_k^x into g; returns {root, connector}. Core runs v_1..v_x with
// parent(v_i) = v_{i+1}; each core node gets delta-1 child copies of T_{k-1},
// so the bottom core node keeps one slot open for later gluing.
std::pair<int, int> build_layered(Graph& g, std::vector<int>& layer, const LayeredTreeSpec& spec,
                                  int k) {
    if (k == 0) {
        int v = g.add_node();
        layer.push_back(0);
        return {v, v};
    }
    std::vector<int> core(spec.core_len);
    for (int i = 0; i < spec.core_len; ++i) {
        core[i] = g.add_node();
        layer.push_back(k);
    }
    for (int i = 0; i + 1 < spec.core_len; ++i) g.set_parent(core[i], core[i + 1]);
    for (int i = 0; i < spec.core_len; ++i)
        for (int c = 0; c < spec.delta - 1; ++c) {
            auto [sub_root, sub_conn] = build_layered(g, layer, spec, k - 1);
            (void)sub_conn;
            g.set_parent(sub_root, core[i]);
        }
    return {core.back(), core.front()};
}
}  // namespace

LayeredTree gen_layered_tree(const LayeredTreeSpec& spec) {
    if (spec.layers < 0 || spec.core_len < 1 || spec.delta < 2)
        throw std::invalid_argument("bad layered-tree parameters");
    layered_tree_size(spec);  // budget check
    LayeredTree t;
    t.g.make_rooted();
    auto [root, conn] = build_layered(t.g, t.layer, spec, spec.layers);
    t.root = root;
    t.connector = conn;
    if (spec.layers == 0) {
        t.core_middle = root;
    } else {
        // middlemost node of the top core path: walk up (x-1)/2 steps from the connector
        int mid = t.connector;
        for (int step = 0; step < (spec.core_len - 1) / 2; ++step) mid = t.g.parent[mid];
        t.core_middle = mid;
    }
    return t;
}

// --- canonical codes --------------------------------------------------------

namespace {

std::string node_tag(const Graph& g, int v, const std::vector<std::string>* labels) {
    std::string t;
    if (g.has_inputs()) t += "i=" + g.input[v] + ";";
    if (labels) t += "l=" + (*labels)[v] + ";";
    return t;
}

// AHU code of the tree component rooted at r (parent pointers ignored;
// `down` is the traversal orientation).
std::string ahu(const Graph& g, int r, int from, const std::vector<std::string>* labels) {
    std::vector<std::string> subs;
    for (int u : g.adj[r])
        if (u != from) subs.push_back(ahu(g, u, r, labels));
    std::sort(subs.begin(), subs.end());
    std::string out = "(" + node_tag(g, r, labels);
    for (auto& s : subs) out += s;
    out += ")";
    return out;
}

std::string tree_component_code(const Graph& g, const NodeSet& comp,
                                const std::vector<std::string>* labels) {
    if (g.rooted()) {
        // orientation is part of the structure: code from the designated root
        int root = -1;
        for (int v : comp)
            if (g.parent[v] == -1) root = v;
        if (root >= 0) return "T!" + ahu(g, root, -1, labels);
        // fall through to unrooted if orientation is incomplete
    }
    // unrooted: root at the center (one or two), found by peeling leaf layers
    if (comp.size() == 1) return "T" + ahu(g, comp[0], -1, labels);
    std::map<int, int> deg;
    std::set<int> alive(comp.begin(), comp.end());
    for (int v : comp) deg[v] = g.degree(v);
    while (alive.size() > 2) {
        std::vector<int> layer;
        for (int v : alive)
            if (deg[v] <= 1) layer.push_back(v);
        for (int v : layer) alive.erase(v);
        for (int v : layer)
            for (int u : g.adj[v])
                if (alive.count(u)) --deg[u];
    }
    std::vector<int> centers(alive.begin(), alive.end());
    if (centers.size() == 1) return "T" + ahu(g, centers[0], -1, labels);
    std::string a = ahu(g, centers[0], centers[1], labels);
    std::string b = ahu(g, centers[1], centers[0], labels);
    if (b < a) std::swap(a, b);
    return "T2" + a + "|" + b;
}

std::string cycle_component_code(const Graph& g, const NodeSet& comp,
                                 const std::vector<std::string>* labels) {
    // walk around the cycle collecting tags; minimize over rotation+direction
    std::vector<std::string> seq;
    int start = comp[0];
    int prev = -1, cur = start;
    do {
        seq.push_back(node_tag(g, cur, labels));
        int next = (g.adj[cur][0] == prev) ? g.adj[cur][1] : g.adj[cur][0];
        prev = cur;
        cur = next;
    } while (cur != start);
    auto best_rotation = [](const std::vector<std::string>& s) {
        std::string best;
        for (size_t i = 0; i < s.size(); ++i) {
            std::string cand;
            for (size_t j = 0; j < s.size(); ++j) cand += s[(i + j) % s.size()] + ",";
            if (best.empty() || cand < best) best = cand;
        }
        return best;
    };
    std::vector<std::string> rev(seq.rbegin(), seq.rend());
    std::string a = best_rotation(seq), b = best_rotation(rev);
    return "C" + std::min(a, b);
}

// Backtracking minimal-encoding canonicalization for small general graphs.
struct GeneralCanon {
    const Graph& g;
    const NodeSet& comp;
    const std::vector<std::string>* labels;
    std::vector<int> order;      // positions already assigned (old ids)
    std::vector<char> used;      // by old id
    std::string best;
    bool have_best = false;
    long long steps = 0;

    GeneralCanon(const Graph& gg, const NodeSet& c, const std::vector<std::string>* l)
        : g(gg), comp(c), labels(l), used(gg.n, 0) {}

    std::string row(int old_id) const {
        // degree and neighbor-degree profile cut down ties between candidates
        std::string r = node_tag(g, old_id, labels);
        r += "d" + std::to_string(g.degree(old_id)) + "[";
        std::vector<int> nd;
        for (int u : g.adj[old_id]) nd.push_back(g.degree(u));
        std::sort(nd.begin(), nd.end());
        for (int d : nd) r += std::to_string(d) + ".";
        r += "]:";
        for (int pos = 0; pos < static_cast<int>(order.size()); ++pos)
            r += g.has_edge(old_id, order[pos]) ? '1' : '0';
        return r;
    }

    void rec(std::string enc) {
        if (++steps > budget().search_steps)
            throw resource_error("canonicalization step budget exceeded");
        if (order.size() == comp.size()) {
            if (!have_best || enc < best) {
                best = std::move(enc);
                have_best = true;
            }
            return;
        }
        // choose the lexicographically smallest extension rows first
        std::vector<std::pair<std::string, int>> cand;
        for (int v : comp)
            if (!used[v]) cand.emplace_back(row(v), v);
        std::sort(cand.begin(), cand.end());
        const std::string& bestrow = cand[0].first;
        for (auto& [r, v] : cand) {
            if (r != bestrow) break;  // only minimal rows can lead to the minimum
            std::string next = enc + "/" + r;
            if (have_best && next > best.substr(0, next.size())) continue;
            used[v] = 1;
            order.push_back(v);
            rec(next);
            order.pop_back();
            used[v] = 0;
        }
    }

    std::string run() {
        rec("");
        return "G" + best;
    }
};

bool component_is_cycle(const Graph& g, const NodeSet& comp) {
    if (comp.size() < 3) return false;
    for (int v : comp)
        if (g.degree(v) != 2) return false;
    return true;
}

bool component_is_tree(const Graph& g, const NodeSet& comp) {
    long long edges = 0;
    for (int v : comp) edges += g.degree(v);
    return edges / 2 == static_cast<long long>(comp.size()) - 1;
}

}  // namespace

std::string canonical_code(const Graph& g, const std::vector<std::string>* labels) {
    if (labels && static_cast<int>(labels->size()) != g.n)
        throw std::invalid_argument("label vector size mismatch");
    std::vector<std::string> codes;
    for (const auto& comp : components(g)) {
        if (component_is_tree(g, comp)) {
            codes.push_back(tree_component_code(g, comp, labels));
        } else if (component_is_cycle(g, comp)) {
            codes.push_back(cycle_component_code(g, comp, labels));
        } else {
            if (static_cast<int>(comp.size()) > budget().canonical_nodes)
                throw resource_error("general-graph canonicalization budget exceeded");
            codes.push_back(GeneralCanon(g, comp, labels).run());
        }
    }
    std::sort(codes.begin(), codes.end());
    std::string out = "g" + std::to_string(g.n) + (g.rooted() ? "r" : "") + "[";
    for (auto& c : codes) out += c + "$";
    return out + "]";
}

bool brute_force_isomorphic(const Graph& a, const Graph& b, const std::vector<std::string>* la,
                            const std::vector<std::string>* lb) {
    if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
    if (a.rooted() != b.rooted()) return false;
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < a.n && ok; ++v) {
            if (a.degree(v) != b.degree(perm[v])) ok = false;
            if (ok && a.has_inputs() && a.input[v] != b.input[perm[v]]) ok = false;
            if (ok && la && (*la)[v] != (*lb)[perm[v]]) ok = false;
            if (ok && a.rooted()) {
                int pa = a.parent[v];
                int pb = b.parent[perm[v]];
                if ((pa < 0) != (pb < 0)) ok = false;
                if (ok && pa >= 0 && perm[pa] != pb) ok = false;
            }
            if (ok)
                for (int u : a.adj[v])
                    if (!b.has_edge(perm[v], perm[u])) {
                        ok = false;
                        break;
                    }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// --- text format -------------------------------------------------------------

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << "graph " << g.n;
    if (g.rooted()) out << " rooted";
    if (g.has_inputs()) out << " inputs";
    out << "\n";
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (v < u) out << "edge " << v << " " << u << "\n";
    if (g.rooted())
        for (int v = 0; v < g.n; ++v)
            if (g.parent[v] >= 0) out << "parent " << v << " " << g.parent[v] << "\n";
    if (g.has_inputs())
        for (int v = 0; v < g.n; ++v)
            if (!g.input[v].empty()) out << "input " << v << " " << g.input[v] << "\n";
    return out.str();
}

Graph parse_graph(std::istream& in) {
    std::string line;
    Graph g;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("graph parse error at line " + std::to_string(lineno) +
                                        ": " + why);
        };
        if (tok == "graph") {
            int n;
            if (!(ls >> n)) fail("missing node count");
            g.resize(n);
            std::string flag;
            while (ls >> flag) {
                if (flag == "rooted")
                    g.make_rooted();
                else if (flag == "inputs")
                    g.make_inputs();
                else
                    fail("unknown flag " + flag);
            }
            have_header = true;
        } else if (!have_header) {
            fail("missing graph header");
        } else if (tok == "edge") {
            int u, v;
            if (!(ls >> u >> v)) fail("edge needs two ids");
            g.add_edge(u, v);
        } else if (tok == "parent") {
            int u, v;
            if (!(ls >> u >> v)) fail("parent needs two ids");
            g.set_parent(u, v);
        } else if (tok == "input") {
            int u;
            std::string label;
            if (!(ls >> u >> label)) fail("input needs id and label");
            g.make_inputs();
            g.check_node(u);
            g.input[u] = label;
        } else {
            fail("unknown directive " + tok);
        }
    }
    if (!have_header) throw std::invalid_argument("graph parse error: empty input");
    g.validate();
    return g;
}

Graph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return parse_graph(in);
}

Graph graph_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        std::string rest = spec.substr(colon + 1);
        auto nums = [&rest]() {
            std::vector<int> out;
            std::string cur;
            for (char c : rest + "x") {
                if (c == 'x') {
                    if (!cur.empty()) out.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            return out;
        }();
        if (kind == "path" && nums.size() == 1) return gen_path(nums[0]);
        if (kind == "cycle" && nums.size() == 1) return gen_cycle(nums[0]);
        if (kind == "grid" && nums.size() == 2) return gen_grid(nums[0], nums[1]);
        if (kind == "tree" && nums.size() == 2) return gen_complete_tree(nums[0], nums[1]);
        if (kind == "layered" && nums.size() == 3)
            return gen_layered_tree({nums[0], nums[1], nums[2]}).g;
    }
    return load_graph_file(spec);
}

}  // namespace lab
