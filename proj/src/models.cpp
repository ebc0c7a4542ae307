#include "lab/models.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace lab {

std::string ExecutionTrace::to_log() const {
    std::ostringstream out;
    for (size_t i = 0; i < steps.size(); ++i) {
        const TraceStep& s = steps[i];
        out << i << " ";
        switch (s.kind) {
            case TraceStep::Reveal: out << "reveal"; break;
            case TraceStep::Process: out << "process"; break;
            case TraceStep::Edit: out << "edit"; break;
        }
        out << " node=" << s.node << " r=" << s.view_radius << " label=" << s.emitted << " new=";
        for (size_t j = 0; j < s.newly_seen.size(); ++j)
            out << (j ? "," : "") << s.newly_seen[j];
        if (!s.note.empty()) out << " # " << s.note;
        out << "\n";
    }
    return out.str();
}

bool ExecutionTrace::operator==(const ExecutionTrace& o) const {
    return to_log() == o.to_log();
}

std::vector<long long> default_uids(int n) {
    std::vector<long long> u(n);
    for (int i = 0; i < n; ++i) u[i] = i;
    return u;
}

// --- online engine (fixed graph) ---------------------------------------------

OnlineRun run_online(OnlineAlgorithm& alg, const Graph& g, const std::vector<int>& order, int T) {
    if (T < 0) throw std::invalid_argument("locality must be nonnegative");
    {
        std::set<int> distinct;
        for (int v : order) {
            g.check_node(v);
            if (!distinct.insert(v).second)
                throw std::invalid_argument("reveal order repeats node " + std::to_string(v));
        }
    }
    OnlineRun run;
    run.labels.assign(g.n, "");
    std::vector<int> vis_of(g.n, -1);  // original -> first-seen id
    Graph visible;
    if (g.rooted()) visible.make_rooted();
    if (g.has_inputs()) visible.make_inputs();
    alg.start(g.n, T);
    int step = 0;
    for (int v : order) {
        TraceStep ts;
        ts.kind = TraceStep::Reveal;
        ts.node = v;
        ts.view_radius = T;
        NodeSet b = ball(g, v, T);
        for (int u : b) {
            if (vis_of[u] >= 0) continue;
            int id = visible.add_node();
            vis_of[u] = id;
            run.seen_order.push_back(u);
            ts.newly_seen.push_back(u);
            if (g.has_inputs()) visible.input[id] = g.input[u];
            for (int w : g.adj[u])
                if (vis_of[w] >= 0) visible.add_edge(id, vis_of[w]);
            if (g.rooted()) {
                int p = g.parent[u];
                visible.parent[id] = (p >= 0) ? (vis_of[p] >= 0 ? vis_of[p] : Graph::PARENT_UNKNOWN)
                                              : -1;
                // resolve forward references: u may be the unknown parent of a seen child
                for (int w : g.adj[u])
                    if (vis_of[w] >= 0 && g.parent[w] == u) visible.parent[vis_of[w]] = id;
            }
        }
        OnlineView view;
        view.visible = &visible;
        view.center = vis_of[v];
        view.n_declared = g.n;
        view.locality = T;
        view.step = step;
        Label out = run.labels[v];
        if (out.empty()) {  // re-reveals keep the first label
            out = alg.on_reveal(view);
            if (out.empty()) throw contract_error("online algorithm returned an empty label");
            run.labels[v] = out;
        } else {
            ts.note = "re-reveal";
        }
        ts.emitted = out;
        run.trace.steps.push_back(std::move(ts));
        ++step;
    }
    return run;
}

// --- SLOCAL engine -------------------------------------------------------------

SlocalRun run_slocal(SlocalAlgorithm& alg, const Graph& g, const std::vector<int>& order, int T,
                     const std::vector<long long>* uids) {
    if (T < 0) throw std::invalid_argument("locality must be nonnegative");
    std::vector<long long> default_u;
    if (!uids) {
        default_u = default_uids(g.n);
        uids = &default_u;
    }
    SlocalRun run;
    run.labels.assign(g.n, "");
    run.memories.assign(g.n, "");
    std::vector<char> processed(g.n, 0);
    alg.start(g.n, T);
    for (int v : order) {
        g.check_node(v);
        if (processed[v]) throw std::invalid_argument("SLOCAL order repeats node");
        NodeSet b = ball(g, v, T);
        InducedGraph iv = induced(g, b);
        std::vector<std::string> mem(iv.g.n);
        std::vector<long long> vu(iv.g.n);
        for (int i = 0; i < iv.g.n; ++i) {
            mem[i] = run.memories[iv.to_old[i]];
            vu[i] = (*uids)[iv.to_old[i]];
        }
        SlocalView view;
        view.view = &iv.g;
        view.center = iv.to_new_of[v];
        view.memories = &mem;
        view.uids = &vu;
        view.n_declared = g.n;
        view.locality = T;
        SlocalDecision d = alg.process(view);
        if (d.out.empty()) throw contract_error("SLOCAL algorithm returned an empty label");
        run.labels[v] = d.out;
        run.memories[v] = d.memory;
        processed[v] = 1;
        TraceStep ts;
        ts.kind = TraceStep::Process;
        ts.node = v;
        ts.emitted = d.out;
        ts.view_radius = T;
        ts.newly_seen = b;
        run.trace.steps.push_back(std::move(ts));
    }
    return run;
}

// --- dynamic engine -------------------------------------------------------------

namespace {
// Hashable snapshot of G[B(v,T)]: sorted node list + sorted edge list.
std::string ball_snapshot(const Graph& g, int v, int T) {
    NodeSet b = ball(g, v, T);
    std::string s;
    for (int u : b) s += std::to_string(u) + ",";
    s += "|";
    for (int u : b)
        for (int w : g.adj[u])
            if (w > u && std::binary_search(b.begin(), b.end(), w))
                s += std::to_string(u) + "-" + std::to_string(w) + ",";
    return s;
}
}  // namespace

std::vector<int> dynamic_change_set_naive(const Graph& before, const Graph& after, int T) {
    std::vector<int> changed;
    for (int v = 0; v < after.n; ++v) {
        if (v >= before.n) {
            changed.push_back(v);
            continue;
        }
        if (ball_snapshot(before, v, T) != ball_snapshot(after, v, T)) changed.push_back(v);
    }
    return changed;
}

DynamicRun run_dynamic(DynamicAlgorithm& alg, const std::vector<Edit>& edits, int T,
                       bool allow_deletions) {
    if (T < 0) throw std::invalid_argument("locality must be nonnegative");
    DynamicRun run;
    Graph g;  // starts empty
    Labeling labels;
    alg.start(T);
    int step = 0;
    for (const Edit& e : edits) {
        Graph before = g;
        std::vector<int> candidates;
        switch (e.kind) {
            case Edit::AddNode: {
                int id = g.add_node();
                labels.push_back("");
                candidates.push_back(id);
                break;
            }
            case Edit::AddEdge: {
                if (g.has_edge(e.u, e.v)) throw std::invalid_argument("edge already present");
                g.add_edge(e.u, e.v);
                break;
            }
            case Edit::DelEdge: {
                if (!allow_deletions)
                    throw std::invalid_argument("deletions need the +- variant");
                if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("edge not present");
                auto drop = [&](int a, int b) {
                    auto& av = g.adj[a];
                    av.erase(std::lower_bound(av.begin(), av.end(), b));
                };
                drop(e.u, e.v);
                drop(e.v, e.u);
                break;
            }
        }
        if (e.kind != Edit::AddNode) {
            // only nodes within distance T of an endpoint can have changed balls
            for (int side : {e.u, e.v}) {
                for (int u : ball(g, side, T)) candidates.push_back(u);
                if (side < before.n)
                    for (int u : ball(before, side, T)) candidates.push_back(u);
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        }
        std::vector<int> changed;
        for (int v : candidates) {
            if (v >= before.n) {
                changed.push_back(v);
                continue;
            }
            if (ball_snapshot(before, v, T) != ball_snapshot(g, v, T)) changed.push_back(v);
        }
        DynamicView view;
        view.graph = &g;
        view.previous = &labels;
        view.changed = &changed;
        view.locality = T;
        view.step = step;
        std::map<int, Label> upd = alg.update(view);
        for (const auto& [node, lab] : upd) {
            g.check_node(node);
            if (!std::binary_search(changed.begin(), changed.end(), node))
                throw contract_error("dynamic algorithm changed label outside C_i at node " +
                                     std::to_string(node));
            labels[node] = lab;
        }
        for (int v = 0; v < g.n; ++v)
            if (labels[v].empty())
                throw contract_error("dynamic labeling incomplete at node " + std::to_string(v));
        run.steps.push_back(labels);
        run.changed_sets.push_back(changed);
        TraceStep ts;
        ts.kind = TraceStep::Edit;
        ts.node = (e.kind == Edit::AddNode) ? g.n - 1 : e.u;
        ts.view_radius = T;
        ts.newly_seen = changed;
        ts.note = (e.kind == Edit::AddNode)   ? "add_node"
                  : (e.kind == Edit::AddEdge) ? ("add_edge " + std::to_string(e.u) + "-" + std::to_string(e.v))
                                              : ("del_edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        run.trace.steps.push_back(std::move(ts));
        ++step;
    }
    run.final_graph = std::move(g);
    run.labels = std::move(labels);
    return run;
}

// --- LOCAL engine ---------------------------------------------------------------

Labeling run_local(LocalAlgorithm& alg, const Graph& g, const std::vector<long long>& uids, int T) {
    if (T < 0) throw std::invalid_argument("locality must be nonnegative");
    if (static_cast<int>(uids.size()) != g.n) throw std::invalid_argument("uid vector size");
    {
        std::set<long long> s(uids.begin(), uids.end());
        if (static_cast<int>(s.size()) != g.n) throw std::invalid_argument("uids not distinct");
    }
    Labeling labels(g.n);
    for (int v = 0; v < g.n; ++v) {
        NodeSet b = ball(g, v, T);
        InducedGraph iv = induced(g, b);
        std::vector<long long> vu(iv.g.n);
        for (int i = 0; i < iv.g.n; ++i) vu[i] = uids[iv.to_old[i]];
        LocalView view;
        view.view = &iv.g;
        view.center = iv.to_new_of[v];
        view.uids = &vu;
        view.n_declared = g.n;
        view.locality = T;
        labels[v] = alg.label(view);
        if (labels[v].empty()) throw contract_error("LOCAL algorithm returned an empty label");
    }
    return labels;
}

// --- interactive session ---------------------------------------------------------

OnlineSession::OnlineSession(const OnlineAlgorithm& proto, int n_declared, int T)
    : alg_(proto.clone()), n_declared_(n_declared), T_(T) {
    if (T < 0 || n_declared < 1) throw std::invalid_argument("bad session parameters");
    visible_.make_rooted();
    visible_.make_inputs();
    alg_->start(n_declared_, T_);
}

OnlineSession::OnlineSession(const OnlineSession& o)
    : alg_(o.alg_->clone()),
      n_declared_(o.n_declared_),
      T_(o.T_),
      uf_(o.uf_),
      adj_(o.adj_),
      parent_(o.parent_),
      input_(o.input_),
      seen_(o.seen_),
      vis_id_(o.vis_id_),
      vis_to_session_(o.vis_to_session_),
      visible_(o.visible_),
      vis_labels_(o.vis_labels_),
      revealed_(o.revealed_),
      ball_snapshots_(o.ball_snapshots_),
      reveal_nodes_(o.reveal_nodes_),
      trace_(o.trace_),
      step_(o.step_),
      mutated_(o.mutated_) {}

OnlineSession& OnlineSession::operator=(const OnlineSession& o) {
    if (this == &o) return *this;
    OnlineSession tmp(o);
    std::swap(alg_, tmp.alg_);
    std::swap(n_declared_, tmp.n_declared_);
    std::swap(T_, tmp.T_);
    std::swap(uf_, tmp.uf_);
    std::swap(adj_, tmp.adj_);
    std::swap(parent_, tmp.parent_);
    std::swap(input_, tmp.input_);
    std::swap(seen_, tmp.seen_);
    std::swap(vis_id_, tmp.vis_id_);
    std::swap(vis_to_session_, tmp.vis_to_session_);
    std::swap(visible_, tmp.visible_);
    std::swap(vis_labels_, tmp.vis_labels_);
    std::swap(revealed_, tmp.revealed_);
    std::swap(ball_snapshots_, tmp.ball_snapshots_);
    std::swap(reveal_nodes_, tmp.reveal_nodes_);
    std::swap(trace_, tmp.trace_);
    std::swap(step_, tmp.step_);
    std::swap(mutated_, tmp.mutated_);
    return *this;
}

int OnlineSession::find(int v) const {
    if (v < 0 || v >= static_cast<int>(uf_.size()))
        throw std::invalid_argument("session node out of range");
    while (uf_[v] != v) {
        uf_[v] = uf_[uf_[v]];
        v = uf_[v];
    }
    return v;
}

void OnlineSession::check_alive(int v) const {
    (void)find(v);
}

int OnlineSession::resolve(int v) const { return find(v); }

int OnlineSession::add_node() {
    mutated_ = true;
    int id = static_cast<int>(uf_.size());
    if (id >= budget().max_nodes) throw resource_error("session node budget exceeded");
    uf_.push_back(id);
    adj_.emplace_back();
    parent_.push_back(-1);
    input_.emplace_back();
    seen_.push_back(0);
    vis_id_.push_back(-1);
    return id;
}

void OnlineSession::add_edge(int u, int v) {
    mutated_ = true;
    u = find(u);
    v = find(v);
    if (u == v) throw std::invalid_argument("session self-loop");
    if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

void OnlineSession::set_parent(int child, int par) {
    child = find(child);
    par = find(par);
    if (seen_[child] && parent_[child] == -1)
        throw contract_error("cannot re-parent a node already exposed as a root");
    add_edge(child, par);
    if (parent_[child] != -1 && find(parent_[child]) != par)
        throw std::invalid_argument("session node already has a parent");
    parent_[child] = par;
}

void OnlineSession::set_input(int v, const std::string& label) {
    mutated_ = true;
    v = find(v);
    input_[v] = label;
}

void OnlineSession::identify(int keep, int gone) {
    mutated_ = true;
    keep = find(keep);
    gone = find(gone);
    if (keep == gone) return;
    if (seen_[keep] || seen_[gone])
        throw contract_error("identify touches a node inside the revealed region");
    for (int w : adj_[gone]) {
        auto& aw = adj_[w];
        aw.erase(std::remove(aw.begin(), aw.end(), gone), aw.end());
    }
    std::vector<int> gone_adj = adj_[gone];
    int gone_parent = parent_[gone];
    uf_[gone] = keep;
    for (int w : gone_adj) add_edge(keep, w);
    if (gone_parent != -1) {
        if (parent_[keep] != -1 && find(parent_[keep]) != find(gone_parent))
            throw std::invalid_argument("identified nodes have conflicting parents");
        parent_[keep] = find(gone_parent);
    }
    // children of gone now point at keep
    for (size_t w = 0; w < parent_.size(); ++w)
        if (parent_[w] == gone) parent_[w] = keep;
    if (input_[keep].empty()) input_[keep] = input_[gone];
}

bool OnlineSession::is_seen(int v) const { return seen_[find(v)]; }

bool OnlineSession::is_revealed(int v) const {
    int r = find(v);
    return vis_id_[r] >= 0 && revealed_[vis_id_[r]];
}

Label OnlineSession::label_of(int v) const {
    int r = find(v);
    if (vis_id_[r] < 0) return "";
    return vis_labels_[vis_id_[r]];
}

int OnlineSession::parent_of(int v) const {
    int p = parent_[find(v)];
    return p < 0 ? -1 : find(p);
}

std::vector<int> OnlineSession::children_of(int v) const {
    int r = find(v);
    std::vector<int> out;
    for (int u : adj_[r])
        if (parent_[find(u)] != -1 && find(parent_[find(u)]) == r) out.push_back(find(u));
    std::sort(out.begin(), out.end());
    return out;
}

int OnlineSession::distance_between(int u, int v) const {
    u = find(u);
    v = find(v);
    if (u == v) return 0;
    std::deque<int> q{u};
    std::map<int, int> dist;
    dist[u] = 0;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int w : adj_[x]) {
            w = find(w);
            if (dist.count(w)) continue;
            dist[w] = dist[x] + 1;
            if (w == v) return dist[w];
            q.push_back(w);
        }
    }
    return -1;
}

std::vector<int> OnlineSession::alive_ids() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(uf_.size()); ++v)
        if (find(v) == v) out.push_back(v);
    return out;
}

Graph OnlineSession::current_graph() const {
    std::vector<int> ids = alive_ids();
    std::vector<int> to_new(uf_.size(), -1);
    for (size_t i = 0; i < ids.size(); ++i) to_new[ids[i]] = static_cast<int>(i);
    Graph g(static_cast<int>(ids.size()));
    g.make_rooted();
    g.make_inputs();
    for (size_t i = 0; i < ids.size(); ++i) {
        int v = ids[i];
        for (int w : adj_[v]) {
            int j = to_new[find(w)];
            if (j > static_cast<int>(i)) g.add_edge(static_cast<int>(i), j);
        }
        g.parent[i] = parent_[v] < 0 ? -1 : to_new[find(parent_[v])];
        if (g.parent[i] >= 0) g.add_edge(static_cast<int>(i), g.parent[i]);
        g.input[i] = input_[v];
    }
    return g;
}

Labeling OnlineSession::labels_by_session_id() const {
    Labeling out(uf_.size(), "");
    for (int v = 0; v < static_cast<int>(uf_.size()); ++v) out[v] = label_of(v);
    return out;
}

namespace {
// Nodes of the quotient ball around v, sorted.
std::vector<int> session_ball(const std::vector<std::vector<int>>& adj,
                              const std::function<int(int)>& find, int v, int T) {
    std::map<int, int> dist;
    std::deque<int> q{v};
    dist[v] = 0;
    std::vector<int> b{v};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (dist[x] == T) continue;
        for (int w : adj[x]) {
            w = find(w);
            if (dist.count(w)) continue;
            dist[w] = dist[x] + 1;
            b.push_back(w);
            q.push_back(w);
        }
    }
    std::sort(b.begin(), b.end());
    return b;
}
}  // namespace

// Fingerprints the labeled induced subgraph on the ball, so that any
// retroactive mutation of a revealed region is caught.
std::string OnlineSession::ball_fingerprint(const std::vector<int>& b) const {
    std::string s;
    for (int u : b) {
        s += std::to_string(u) + "(p=";
        int p = parent_[u] < 0 ? -1 : find(parent_[u]);
        s += std::to_string(std::binary_search(b.begin(), b.end(), p) ? p : -1);
        s += ";i=" + input_[u] + ";e=";
        std::vector<int> nb;
        for (int w : adj_[u]) {
            w = find(w);
            if (std::binary_search(b.begin(), b.end(), w)) nb.push_back(w);
        }
        std::sort(nb.begin(), nb.end());
        for (int w : nb) s += std::to_string(w) + ",";
        s += ")";
    }
    return s;
}

void OnlineSession::verify_revealed_balls() {
    if (!mutated_) return;
    mutated_ = false;
    auto f = [this](int x) { return find(x); };
    for (size_t i = 0; i < reveal_nodes_.size(); ++i) {
        int v = find(reveal_nodes_[i]);
        std::vector<int> b = session_ball(adj_, f, v, T_);
        if (ball_fingerprint(b) != ball_snapshots_[i])
            throw contract_error("graph mutation changed the ball of revealed node " +
                                 std::to_string(reveal_nodes_[i]));
    }
}

Label OnlineSession::reveal(int v) {
    v = find(v);
    verify_revealed_balls();
    if (vis_id_[v] >= 0 && revealed_[vis_id_[v]]) return vis_labels_[vis_id_[v]];  // no-op

    auto f = [this](int x) { return find(x); };
    std::vector<int> b = session_ball(adj_, f, v, T_);
    reveal_nodes_.push_back(v);
    ball_snapshots_.push_back(ball_fingerprint(b));

    TraceStep ts;
    ts.kind = TraceStep::Reveal;
    ts.node = v;
    ts.view_radius = T_;
    for (int u : b) {
        if (seen_[u]) continue;
        seen_[u] = 1;
        int id = visible_.add_node();
        vis_id_[u] = id;
        vis_to_session_.push_back(u);
        vis_labels_.push_back("");
        revealed_.push_back(0);
        ts.newly_seen.push_back(u);
        visible_.input[id] = input_[u];
        visible_.parent[id] = Graph::PARENT_UNKNOWN;
        for (int w : adj_[u]) {
            w = find(w);
            if (seen_[w]) visible_.add_edge(id, vis_id_[w]);
        }
        // orientation for visible edges
        if (parent_[u] == -1) {
            visible_.parent[id] = -1;  // known root (session trees declare parents eagerly)
        } else if (seen_[find(parent_[u])]) {
            visible_.parent[id] = vis_id_[find(parent_[u])];
        }
        for (int w : adj_[u]) {
            w = find(w);
            if (seen_[w] && parent_[w] != -1 && find(parent_[w]) == u)
                visible_.parent[vis_id_[w]] = id;
        }
    }
    int vid = vis_id_[v];
    revealed_[vid] = 1;
    OnlineView view;
    view.visible = &visible_;
    view.center = vid;
    view.n_declared = n_declared_;
    view.locality = T_;
    view.step = step_++;
    Label out = alg_->on_reveal(view);
    if (out.empty()) throw contract_error("online algorithm returned an empty label");
    vis_labels_[vid] = out;
    ts.emitted = out;
    trace_.steps.push_back(std::move(ts));
    return out;
}

// --- lifts -------------------------------------------------------------------

namespace {

class LocalToDynamic : public DynamicAlgorithmBase<LocalToDynamic> {
public:
    LocalToDynamic(const LocalAlgorithm& alg, int T) : alg_(alg.clone()), T_(T) {}
    LocalToDynamic(const LocalToDynamic& o) : alg_(o.alg_->clone()), T_(o.T_) {}

    std::map<int, Label> update(const DynamicView& view) override {
        // recompute everything with stable uids; only C_i entries may differ
        Labeling fresh = run_local(*alg_, *view.graph, default_uids(view.graph->n), T_);
        std::map<int, Label> out;
        for (int v : *view.changed) out[v] = fresh[v];
        for (int v = 0; v < view.graph->n; ++v) {
            if (std::binary_search(view.changed->begin(), view.changed->end(), v)) continue;
            if (v < static_cast<int>(view.previous->size()) && (*view.previous)[v] != fresh[v])
                throw contract_error("local rule changed output outside C_i");
        }
        return out;
    }

private:
    std::unique_ptr<LocalAlgorithm> alg_;
    int T_;
};

class DynamicToOnline : public OnlineAlgorithmBase<DynamicToOnline> {
public:
    DynamicToOnline(const DynamicAlgorithm& alg, int T) : proto_(alg.clone()), T_(T) {}
    DynamicToOnline(const DynamicToOnline& o)
        : proto_(o.proto_->clone()),
          alg_(o.alg_ ? o.alg_->clone() : nullptr),
          T_(o.T_),
          inner_of_(o.inner_of_),
          vis_of_inner_(o.vis_of_inner_),
          inner_graph_(o.inner_graph_),
          inner_labels_(o.inner_labels_),
          finalized_(o.finalized_),
          step_(o.step_) {}

    void start(int n, int T_online) override {
        (void)n;
        if (T_online < 2 * T_) throw std::invalid_argument("lift needs online locality 2T");
        alg_ = proto_->clone();
        alg_->start(T_);
        inner_of_.clear();
        vis_of_inner_.clear();
        inner_graph_ = Graph();
        inner_labels_.clear();
        finalized_.clear();
        step_ = 0;
    }

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        // feed the not-yet-fed part of B(center, 2T) node by node, edge by edge
        NodeSet b = ball(vis, view.center, 2 * T_);
        inner_of_.resize(vis.n, -1);
        for (int u : b)
            if (inner_of_[u] < 0) {
                run_step(Edit::add_node());
                inner_of_[u] = inner_graph_.n - 1;
                vis_of_inner_.push_back(u);
            }
        for (int u : b)
            for (int w : vis.adj[u])
                if (w < u && inner_of_[w] >= 0 &&
                    !inner_graph_.has_edge(inner_of_[u], inner_of_[w]))
                    run_step(Edit::add_edge(inner_of_[u], inner_of_[w]));
        // the label of the revealed node is now stable
        finalized_.resize(std::max<size_t>(finalized_.size(), view.center + 1), 0);
        finalized_[view.center] = 1;
        return inner_labels_[inner_of_[view.center]];
    }

private:
    void run_step(const Edit& e) {
        // single-step dynamic engine with confinement + stability checks
        Graph before = inner_graph_;
        std::vector<int> candidates;
        if (e.kind == Edit::AddNode) {
            inner_graph_.add_node();
            inner_labels_.push_back("");
            candidates.push_back(inner_graph_.n - 1);
        } else {
            inner_graph_.add_edge(e.u, e.v);
            for (int side : {e.u, e.v}) {
                for (int x : ball(inner_graph_, side, T_)) candidates.push_back(x);
                for (int x : ball(before, side, T_)) candidates.push_back(x);
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        }
        std::vector<int> changed;
        for (int v : candidates) {
            if (v >= before.n || ball_snapshot(before, v, T_) != ball_snapshot(inner_graph_, v, T_))
                changed.push_back(v);
        }
        DynamicView view;
        view.graph = &inner_graph_;
        view.previous = &inner_labels_;
        view.changed = &changed;
        view.locality = T_;
        view.step = step_++;
        std::map<int, Label> upd = alg_->update(view);
        for (const auto& [node, lab] : upd) {
            if (!std::binary_search(changed.begin(), changed.end(), node))
                throw contract_error("lifted dynamic algorithm violated confinement");
            int vis_node = vis_of_inner_.size() > static_cast<size_t>(node) ? vis_of_inner_[node]
                                                                            : -1;
            if (vis_node >= 0 && vis_node < static_cast<int>(finalized_.size()) &&
                finalized_[vis_node] && inner_labels_[node] != lab)
                throw contract_error("dynamic lift: label of an already-revealed node changed");
            inner_labels_[node] = lab;
        }
        for (int v = 0; v < inner_graph_.n; ++v)
            if (inner_labels_[v].empty()) throw contract_error("dynamic lift: incomplete labeling");
    }

    std::unique_ptr<DynamicAlgorithm> proto_;
    std::unique_ptr<DynamicAlgorithm> alg_;
    int T_;
    std::vector<int> inner_of_;       // visible id -> inner id
    std::vector<int> vis_of_inner_;   // inner id -> visible id
    Graph inner_graph_;
    Labeling inner_labels_;
    std::vector<char> finalized_;     // by visible id
    int step_ = 0;
};

class SlocalToOnline : public OnlineAlgorithmBase<SlocalToOnline> {
public:
    SlocalToOnline(const SlocalAlgorithm& alg, int T) : proto_(alg.clone()), T_(T) {}
    SlocalToOnline(const SlocalToOnline& o)
        : proto_(o.proto_->clone()),
          alg_(o.alg_ ? o.alg_->clone() : nullptr),
          T_(o.T_),
          memories_(o.memories_) {}

    void start(int n, int T_online) override {
        if (T_online < T_) throw std::invalid_argument("lift needs online locality >= T");
        alg_ = proto_->clone();
        alg_->start(n, T_);
        memories_.clear();
        n_ = n;
    }

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        memories_.resize(vis.n, "");
        NodeSet b = ball(vis, view.center, T_);
        InducedGraph iv = induced(vis, b);
        std::vector<std::string> mem(iv.g.n);
        std::vector<long long> uids(iv.g.n);
        for (int i = 0; i < iv.g.n; ++i) {
            mem[i] = memories_[iv.to_old[i]];
            uids[i] = iv.to_old[i];  // first-seen numbering doubles as uid space
        }
        SlocalView sv;
        sv.view = &iv.g;
        sv.center = iv.to_new_of[view.center];
        sv.memories = &mem;
        sv.uids = &uids;
        sv.n_declared = n_;
        sv.locality = T_;
        SlocalDecision d = alg_->process(sv);
        memories_[view.center] = d.memory;
        return d.out;
    }

private:
    std::unique_ptr<SlocalAlgorithm> proto_;
    std::unique_ptr<SlocalAlgorithm> alg_;
    int T_;
    int n_ = 0;
    std::vector<std::string> memories_;
};

class LocalToSlocal : public SlocalAlgorithmBase<LocalToSlocal> {
public:
    LocalToSlocal(const LocalAlgorithm& alg, int T) : alg_(alg.clone()), T_(T) {}
    LocalToSlocal(const LocalToSlocal& o) : alg_(o.alg_->clone()), T_(o.T_), n_(o.n_) {}

    void start(int n, int) override { n_ = n; }

    SlocalDecision process(const SlocalView& view) override {
        LocalView lv;
        lv.view = view.view;
        lv.center = view.center;
        lv.uids = view.uids;
        lv.n_declared = view.n_declared;
        lv.locality = T_;
        return {alg_->label(lv), ""};
    }

private:
    std::unique_ptr<LocalAlgorithm> alg_;
    int T_;
    int n_ = 0;
};

}  // namespace

std::unique_ptr<DynamicAlgorithm> lift_local_to_dynamic(const LocalAlgorithm& alg, int T) {
    return std::make_unique<LocalToDynamic>(alg, T);
}

std::unique_ptr<OnlineAlgorithm> lift_dynamic_to_online(const DynamicAlgorithm& alg, int T) {
    return std::make_unique<DynamicToOnline>(alg, T);
}

std::unique_ptr<OnlineAlgorithm> lift_slocal_to_online(const SlocalAlgorithm& alg, int T) {
    return std::make_unique<SlocalToOnline>(alg, T);
}

std::unique_ptr<SlocalAlgorithm> lift_local_to_slocal(const LocalAlgorithm& alg, int T) {
    return std::make_unique<LocalToSlocal>(alg, T);
}

Labeling lift_slocal_to_local_run(SlocalAlgorithm& alg, const Graph& g,
                                  const std::vector<long long>& uids, int T) {
    int k = 2 * T + 2;
    // greedy coloring of the k-th power graph, processed in uid order
    std::vector<int> by_uid(g.n);
    for (int i = 0; i < g.n; ++i) by_uid[i] = i;
    std::sort(by_uid.begin(), by_uid.end(), [&](int a, int b) { return uids[a] < uids[b]; });
    std::vector<int> color(g.n, -1);
    long long power_degree_budget = 0;
    for (int v : by_uid) {
        NodeSet nb = ball(g, v, k);
        power_degree_budget += static_cast<long long>(nb.size());
        if (power_degree_budget > budget().search_steps)
            throw resource_error("power-graph coloring budget exceeded");
        std::set<int> used;
        for (int u : nb)
            if (u != v && color[u] >= 0) used.insert(color[u]);
        int c = 0;
        while (used.count(c)) ++c;
        color[v] = c;
    }
    // sequential order: color classes ascending, uid order inside a class
    std::vector<int> order = by_uid;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return color[a] < color[b]; });
    return run_slocal(alg, g, order, T, &uids).labels;
}

// --- reusable LOCAL algorithms -------------------------------------------------

namespace {

int cv_rounds(long long max_uid) {
    // rounds until the bit-reduction stabilizes below 16 colors
    long long colors = max_uid + 1;
    int rounds = 0;
    while (colors > 16) {
        int bits = 0;
        while ((1LL << bits) < colors) ++bits;
        colors = 2LL * bits;  // new color = 2*bit_index + bit
        ++rounds;
    }
    return rounds + 2;  // settle inside {0..15}
}

// Simulates the reduction rounds inside the view; values outside the center's
// dependency cone may be garbage but are never read by the center.
class ColeVishkin : public LocalAlgorithmBase<ColeVishkin> {
public:
    explicit ColeVishkin(long long max_uid) : rounds_(cv_rounds(max_uid)) {}

    Label label(const LocalView& view) override {
        const Graph& g = *view.view;
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) > 2)
                throw std::invalid_argument("color reduction expects max degree 2");
        std::vector<long long> c(g.n);
        for (int v = 0; v < g.n; ++v) c[v] = (*view.uids)[v];
        auto parent_of = [&](int v) {
            int best = -1;
            for (int u : g.adj[v])
                if ((*view.uids)[u] > (*view.uids)[v] && (best < 0 || (*view.uids)[u] > (*view.uids)[best]))
                    best = u;
            if (best < 0)
                for (int u : g.adj[v])  // local maximum: point at the largest neighbor
                    if (best < 0 || (*view.uids)[u] > (*view.uids)[best]) best = u;
            return best;
        };
        for (int round = 0; round < rounds_; ++round) {
            std::vector<long long> next(g.n);
            for (int v = 0; v < g.n; ++v) {
                int p = parent_of(v);
                long long pc = p < 0 ? c[v] + 1 : c[p];
                if (pc == c[v]) pc = c[v] + 1;  // guard for truncated views
                int i = 0;
                while (((c[v] >> i) & 1) == ((pc >> i) & 1)) ++i;
                next[v] = 2 * i + ((c[v] >> i) & 1);
            }
            c = next;
        }
        // the pointer forest covers each node's edge to its largest neighbor;
        // the leftover edges form a matching, fixed with one extra bit
        std::vector<int> c2(g.n);
        for (int v = 0; v < g.n; ++v) {
            int m = 0;
            for (int u : g.adj[v]) {
                bool covered = parent_of(v) == u || parent_of(u) == v;
                if (!covered && c[u] == c[v] && (*view.uids)[v] > (*view.uids)[u]) m = 1;
            }
            c2[v] = static_cast<int>(c[v]) * 2 + m;
        }
        // eliminate classes 6..31 one per round
        for (int k = 33; k >= 6; --k) {
            std::vector<int> next = c2;
            for (int v = 0; v < g.n; ++v) {
                if (c2[v] != k) continue;
                int mex = 0;
                while (true) {
                    bool hit = false;
                    for (int u : g.adj[v])
                        if (c2[u] == mex) hit = true;
                    if (!hit) break;
                    ++mex;
                }
                next[v] = mex;
            }
            c2 = next;
        }
        return std::to_string(c2[view.center]);
    }

private:
    int rounds_;
};

class DegreeLabel : public LocalAlgorithmBase<DegreeLabel> {
public:
    Label label(const LocalView& view) override {
        return std::to_string(view.view->degree(view.center));
    }
};

}  // namespace

std::unique_ptr<LocalAlgorithm> make_cole_vishkin_coloring(long long max_uid) {
    return std::make_unique<ColeVishkin>(max_uid);
}

int cole_vishkin_locality(long long max_uid) {
    return cv_rounds(max_uid) + 30;  // reduction rounds + matching + elimination
}

std::unique_ptr<LocalAlgorithm> make_degree_labeling() {
    return std::make_unique<DegreeLabel>();
}

// --- scripts ----------------------------------------------------------------

std::vector<Edit> parse_edit_script(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Edit> out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        int u, v;
        if (tok == "add_node") {
            out.push_back(Edit::add_node());
        } else if (tok == "add_edge" && ls >> u >> v) {
            out.push_back(Edit::add_edge(u, v));
        } else if (tok == "del_edge" && ls >> u >> v) {
            out.push_back(Edit::del_edge(u, v));
        } else {
            throw std::invalid_argument("edit script parse error at line " +
                                        std::to_string(lineno));
        }
    }
    return out;
}

std::string format_edit_script(const std::vector<Edit>& edits) {
    std::ostringstream out;
    for (const Edit& e : edits) {
        switch (e.kind) {
            case Edit::AddNode: out << "add_node\n"; break;
            case Edit::AddEdge: out << "add_edge " << e.u << " " << e.v << "\n"; break;
            case Edit::DelEdge: out << "del_edge " << e.u << " " << e.v << "\n"; break;
        }
    }
    return out.str();
}

std::vector<int> parse_reveal_script(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        int v;
        if (tok == "reveal" && ls >> v)
            out.push_back(v);
        else
            throw std::invalid_argument("reveal script parse error at line " +
                                        std::to_string(lineno));
    }
    return out;
}

std::string format_reveal_script(const std::vector<int>& order) {
    std::ostringstream out;
    for (int v : order) out << "reveal " << v << "\n";
    return out.str();
}

}  // namespace lab
