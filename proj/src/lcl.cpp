#include "lab/lcl.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace lab {

// --- RootedLcl ----------------------------------------------------------------

int RootedLcl::intern(const std::string& name) {
    auto it = label_id.find(name);
    if (it != label_id.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(name);
    label_id[name] = id;
    return id;
}

int RootedLcl::id_of(const std::string& name) const {
    auto it = label_id.find(name);
    return it == label_id.end() ? -1 : it->second;
}

void RootedLcl::add_config(const std::string& parent, const std::vector<std::string>& children) {
    if (static_cast<int>(children.size()) != delta)
        throw std::invalid_argument("configuration needs exactly delta children");
    std::vector<int> c;
    c.push_back(intern(parent));
    for (const auto& ch : children) c.push_back(intern(ch));
    std::sort(c.begin() + 1, c.end());
    configs.insert(std::move(c));
}

void RootedLcl::add_config_ids(int parent, std::vector<int> children) {
    if (static_cast<int>(children.size()) != delta)
        throw std::invalid_argument("configuration needs exactly delta children");
    std::sort(children.begin(), children.end());
    std::vector<int> c{parent};
    c.insert(c.end(), children.begin(), children.end());
    configs.insert(std::move(c));
}

bool RootedLcl::allowed(int parent, std::vector<int> children) const {
    if (static_cast<int>(children.size()) != delta) return false;
    std::sort(children.begin(), children.end());
    std::vector<int> c{parent};
    c.insert(c.end(), children.begin(), children.end());
    return configs.count(c) > 0;
}

RootedLcl RootedLcl::restrict(const std::set<int>& keep) const {
    RootedLcl out;
    out.delta = delta;
    std::vector<int> remap(labels.size(), -1);
    for (size_t i = 0; i < labels.size(); ++i)
        if (keep.count(static_cast<int>(i))) remap[i] = out.intern(labels[i]);
    for (const auto& cfg : configs) {
        bool ok = true;
        for (int id : cfg)
            if (remap[id] < 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> children;
        for (size_t i = 1; i < cfg.size(); ++i) children.push_back(remap[cfg[i]]);
        out.add_config_ids(remap[cfg[0]], std::move(children));
    }
    return out;
}

std::string RootedLcl::format() const {
    std::ostringstream out;
    out << "lcl rooted delta=" << delta << "\n";
    out << "labels";
    for (const auto& l : labels) out << " " << l;
    out << "\n";
    for (const auto& cfg : configs) {
        out << "conf " << labels[cfg[0]] << " :";
        for (size_t i = 1; i < cfg.size(); ++i) out << " " << labels[cfg[i]];
        out << "\n";
    }
    return out.str();
}

RootedLcl RootedLcl::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    RootedLcl out;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("lcl parse error at line " + std::to_string(lineno) +
                                        ": " + why);
        };
        if (tok == "lcl") {
            std::string kind, d;
            if (!(ls >> kind) || kind != "rooted") fail("expected 'lcl rooted'");
            if (!(ls >> d) || d.rfind("delta=", 0) != 0) fail("expected delta=<k>");
            out.delta = std::stoi(d.substr(6));
            if (out.delta < 1) fail("delta must be >= 1");
            have_header = true;
        } else if (!have_header) {
            fail("missing lcl header");
        } else if (tok == "labels") {
            std::string l;
            while (ls >> l) out.intern(l);
        } else if (tok == "conf") {
            std::string parent, colon, c;
            if (!(ls >> parent >> colon) || colon != ":") fail("expected 'conf <a> : <children>'");
            std::vector<std::string> children;
            while (ls >> c) children.push_back(c);
            out.add_config(parent, children);
        } else {
            fail("unknown directive " + tok);
        }
    }
    if (!have_header) throw std::invalid_argument("lcl parse error: empty input");
    return out;
}

// --- verification ----------------------------------------------------------------

std::vector<Violation> verify_rooted(const RootedLcl& lcl, const Graph& g, const Labeling& L) {
    std::vector<Violation> out;
    if (!g.rooted()) {
        out.push_back({-1, "graph is not rooted"});
        return out;
    }
    if (static_cast<int>(L.size()) != g.n) {
        out.push_back({-1, "labeling size mismatch"});
        return out;
    }
    std::vector<int> ids(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        ids[v] = lcl.id_of(L[v]);
        if (ids[v] < 0) out.push_back({v, "label outside the label set: " + L[v]});
    }
    for (int v = 0; v < g.n; ++v) {
        if (ids[v] < 0) continue;
        std::vector<int> ch = g.children(v);
        if (ch.empty()) continue;  // leaves are only constrained as children
        if (static_cast<int>(ch.size()) != lcl.delta) {
            out.push_back({v, "internal node has " + std::to_string(ch.size()) +
                                  " children, expected " + std::to_string(lcl.delta)});
            continue;
        }
        std::vector<int> cl;
        bool all_ok = true;
        for (int c : ch) {
            if (ids[c] < 0) all_ok = false;
            cl.push_back(ids[c]);
        }
        if (!all_ok) continue;  // the child already got its own violation entry
        if (!lcl.allowed(ids[v], cl)) {
            std::string msg = "configuration (" + L[v] + " :";
            for (int c : ch) msg += " " + L[c];
            msg += ") not allowed";
            out.push_back({v, msg});
        }
    }
    return out;
}

// --- completion DP -----------------------------------------------------------------

namespace {

// Injective assignment of visible children (with feasible label sets) to the
// slots of a config multiset; unfilled slots stay open for fresh subtrees.
bool multiset_matching(const std::vector<int>& slots, const std::vector<const std::set<int>*>& kids) {
    int m = static_cast<int>(slots.size());
    int k = static_cast<int>(kids.size());
    if (k > m) return false;
    std::vector<char> dp(1 << m, 0);
    dp[0] = 1;
    for (int child = 0; child < k; ++child) {
        std::vector<char> next(1 << m, 0);
        for (int mask = 0; mask < (1 << m); ++mask) {
            if (!dp[mask] || __builtin_popcount(mask) != child) continue;
            for (int s = 0; s < m; ++s) {
                if (mask & (1 << s)) continue;
                if (kids[child]->count(slots[s])) next[mask | (1 << s)] = 1;
            }
        }
        dp = std::move(next);
    }
    for (int mask = 0; mask < (1 << m); ++mask)
        if (dp[mask] && __builtin_popcount(mask) == k) return true;
    return false;
}

// Labels that can occur below a hidden parent chain.
std::set<int> childable_labels(const RootedLcl& lcl) {
    std::set<int> out;
    for (const auto& cfg : lcl.configs)
        for (size_t i = 1; i < cfg.size(); ++i) out.insert(cfg[i]);
    return out;
}

}  // namespace

std::vector<std::set<int>> rooted_feasible_labels(const RootedLcl& lcl, const Graph& g,
                                                  const Labeling& partial) {
    if (!g.rooted()) throw std::invalid_argument("completion DP needs a rooted graph");
    std::vector<std::set<int>> feas(g.n);
    std::set<int> childable = childable_labels(lcl);
    // children lists and topological order (children before parents)
    std::vector<std::vector<int>> kids(g.n);
    std::vector<int> indeg(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        int p = g.parent[v];
        if (p >= 0) {
            kids[p].push_back(v);
            ++indeg[p];
        }
    }
    std::vector<int> order;
    std::deque<int> q;
    for (int v = 0; v < g.n; ++v)
        if (indeg[v] == 0) q.push_back(v);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        order.push_back(v);
        int p = g.parent[v];
        if (p >= 0 && --indeg[p] == 0) q.push_back(p);
    }
    if (static_cast<int>(order.size()) != g.n)
        throw std::invalid_argument("parent relation is cyclic");
    for (int v : order) {
        int fixed = -1;
        if (!partial.empty() && !partial[v].empty()) {
            fixed = lcl.id_of(partial[v]);
            if (fixed < 0) continue;  // unknown label: empty feasible set
        }
        std::vector<const std::set<int>*> kid_sets;
        for (int c : kids[v]) kid_sets.push_back(&feas[c]);
        bool any_kid_empty = false;
        for (auto* s : kid_sets)
            if (s->empty()) any_kid_empty = true;
        for (int a = 0; a < lcl.size(); ++a) {
            if (fixed >= 0 && a != fixed) continue;
            if (g.parent[v] == Graph::PARENT_UNKNOWN && !childable.count(a)) continue;
            bool ok;
            if (kids[v].empty()) {
                ok = true;  // may stay a leaf
            } else if (any_kid_empty || static_cast<int>(kids[v].size()) > lcl.delta) {
                ok = false;
            } else {
                ok = false;
                for (const auto& cfg : lcl.configs) {
                    if (cfg[0] != a) continue;
                    std::vector<int> slots(cfg.begin() + 1, cfg.end());
                    if (multiset_matching(slots, kid_sets)) {
                        ok = true;
                        break;
                    }
                }
            }
            if (ok) feas[v].insert(a);
        }
    }
    return feas;
}

bool rooted_completion_exists(const RootedLcl& lcl, const Graph& g, const Labeling& partial) {
    std::vector<std::set<int>> feas = rooted_feasible_labels(lcl, g, partial);
    for (int v = 0; v < g.n; ++v)
        if (g.parent[v] < 0 && feas[v].empty()) return false;
    return true;
}

// --- path form and automaton ---------------------------------------------------------

PathFormLcl path_form(const RootedLcl& lcl) {
    PathFormLcl out;
    out.labels = lcl.labels;
    for (const auto& cfg : lcl.configs)
        for (size_t i = 1; i < cfg.size(); ++i) out.pairs.insert({cfg[0], cfg[i]});
    return out;
}

PathAutomaton path_form_automaton(const RootedLcl& lcl) {
    PathFormLcl pf = path_form(lcl);
    std::set<std::pair<int, int>> t(pf.pairs.begin(), pf.pairs.end());
    return PathAutomaton::from_transitions(pf.labels, t);
}

PathAutomaton PathAutomaton::from_transitions(std::vector<std::string> names,
                                              const std::set<std::pair<int, int>>& transitions) {
    PathAutomaton m;
    m.names = std::move(names);
    int k = m.states();
    if (k > budget().automaton_states) throw resource_error("automaton state budget exceeded");
    m.edge.assign(k, std::vector<char>(k, 0));
    for (auto [a, b] : transitions) {
        if (a < 0 || a >= k || b < 0 || b >= k)
            throw std::invalid_argument("transition out of range");
        m.edge[a][b] = 1;
    }
    if (k == 0) return m;
    // reachability table by exact walk length
    const int p_max = 60;
    m.table_bound_ = k * k + 6 * p_max;
    m.reach_.assign(m.table_bound_ + 1, std::vector<char>(k * k, 0));
    for (int a = 0; a < k; ++a) m.reach_[0][a * k + a] = 1;
    for (int d = 1; d <= m.table_bound_; ++d) {
        const auto& prev = m.reach_[d - 1];
        auto& cur = m.reach_[d];
        for (int a = 0; a < k; ++a)
            for (int mid = 0; mid < k; ++mid) {
                if (!prev[a * k + mid]) continue;
                for (int b = 0; b < k; ++b)
                    if (m.edge[mid][b]) cur[a * k + b] = 1;
            }
    }
    // eventual periodicity per ordered pair: find the smallest period that is
    // consistent on the scanned tail, then the smallest threshold
    m.tails_.resize(k * k);
    for (int pair = 0; pair < k * k; ++pair) {
        auto at = [&](int d) { return m.reach_[d][pair]; };
        int found_p = -1;
        const int scan_from = k * k;
        for (int p = 1; p <= p_max && found_p < 0; ++p) {
            bool ok = true;
            for (int d = scan_from; d + p <= m.table_bound_; ++d)
                if (at(d) != at(d + p)) {
                    ok = false;
                    break;
                }
            if (ok) found_p = p;
        }
        if (found_p < 0) throw resource_error("walk-length periodicity not detected");
        int threshold = scan_from;
        while (threshold > 0 && at(threshold - 1) == at(threshold - 1 + found_p)) --threshold;
        Tail t;
        t.threshold = threshold;
        t.period = found_p;
        for (int i = 0; i < found_p; ++i) t.residue.push_back(at(threshold + i));
        m.tails_[pair] = std::move(t);
    }
    return m;
}

bool PathAutomaton::walk_exists(int a, int b, long long d) const {
    if (a < 0 || a >= states() || b < 0 || b >= states())
        throw std::invalid_argument("unknown automaton state");
    if (d < 0) throw std::invalid_argument("walk length must be nonnegative");
    if (d <= table_bound_) return reach_[d][a * states() + b];
    const Tail& t = tails_[a * states() + b];
    return t.residue[(d - t.threshold) % t.period];
}

std::string PathAutomaton::format() const {
    std::ostringstream out;
    out << "automaton states=" << states() << "\n";
    for (int a = 0; a < states(); ++a) {
        out << names[a] << " ->";
        for (int b = 0; b < states(); ++b)
            if (edge[a][b]) out << " " << names[b];
        out << "\n";
    }
    return out.str();
}

// --- flexibility ------------------------------------------------------------------

namespace {

std::vector<int> scc_of(const PathAutomaton& m) {
    int k = m.states();
    std::vector<int> comp(k, -1), low(k), num(k, -1), stk;
    int counter = 0, comps = 0;
    std::vector<char> on_stack(k, 0);
    std::function<void(int)> dfs = [&](int v) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on_stack[v] = 1;
        for (int w = 0; w < k; ++w) {
            if (!m.edge[v][w]) continue;
            if (num[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], num[w]);
            }
        }
        if (low[v] == num[v]) {
            while (true) {
                int w = stk.back();
                stk.pop_back();
                on_stack[w] = 0;
                comp[w] = comps;
                if (w == v) break;
            }
            ++comps;
        }
    };
    for (int v = 0; v < k; ++v)
        if (num[v] < 0) dfs(v);
    return comp;
}

// gcd of cycle lengths inside the strongly connected component of `root`;
// 0 when the component has no internal edge.
int scc_period(const PathAutomaton& m, const std::vector<int>& comp, int root) {
    int k = m.states();
    int c = comp[root];
    std::vector<int> lev(k, -1);
    std::deque<int> q{root};
    lev[root] = 0;
    int g = 0;
    bool has_edge = false;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w = 0; w < k; ++w) {
            if (!m.edge[v][w] || comp[w] != c) continue;
            has_edge = true;
            if (lev[w] < 0) {
                lev[w] = lev[v] + 1;
                q.push_back(w);
            } else {
                g = std::gcd(g, std::abs(lev[v] + 1 - lev[w]));
            }
        }
    }
    // tree edges with no closing edge yield g = 0 only if no cycle exists,
    // which cannot happen inside a nontrivial SCC
    return has_edge ? g : 0;
}

}  // namespace

bool is_flexible(const PathAutomaton& m, int state) {
    if (state < 0 || state >= m.states()) throw std::invalid_argument("unknown state");
    std::vector<int> comp = scc_of(m);
    int p = scc_period(m, comp, state);
    return p == 1;
}

bool flexible_pair(const PathAutomaton& m, int a, int b) {
    if (a < 0 || a >= m.states() || b < 0 || b >= m.states())
        throw std::invalid_argument("unknown state");
    std::vector<int> comp = scc_of(m);
    if (comp[a] != comp[b]) return false;
    return scc_period(m, comp, a) == 1;
}

bool is_flexible_by_walks(const PathAutomaton& m, int state, int horizon) {
    // eventual all-lengths self-walks, decided on the scanned window
    int from = std::max(horizon * 2 / 3, horizon - 20);
    for (int d = from; d <= horizon; ++d)
        if (!m.walk_exists(state, state, d)) return false;
    return true;
}

bool flexible_pair_by_walks(const PathAutomaton& m, int a, int b, int horizon) {
    int from = std::max(horizon * 2 / 3, horizon - 20);
    for (int d = from; d <= horizon; ++d)
        if (!m.walk_exists(a, b, d) || !m.walk_exists(b, a, d)) return false;
    return true;
}

// --- decomposition -----------------------------------------------------------------

Decomposition inflexible_decomposition(const RootedLcl& lcl) {
    Decomposition out;
    out.problems.push_back(lcl);
    std::set<int> removed_total;  // ids in Pi_0
    while (true) {
        const RootedLcl& cur = out.problems.back();
        if (cur.empty_problem()) {
            out.terminal = Decomposition::Empty;
            return out;
        }
        PathAutomaton m = path_form_automaton(cur);
        std::set<int> inflexible;  // ids in Pi_0
        for (int s = 0; s < cur.size(); ++s)
            if (!is_flexible(m, s)) inflexible.insert(lcl.id_of(cur.labels[s]));
        if (inflexible.empty()) {
            out.terminal = Decomposition::AllFlexible;
            return out;
        }
        out.removed_labels.push_back(inflexible);
        for (int id : inflexible) removed_total.insert(id);
        std::set<int> keep;
        for (int id = 0; id < lcl.size(); ++id)
            if (!removed_total.count(id)) keep.insert(id);
        out.problems.push_back(lcl.restrict(keep));
    }
}

std::string Decomposition::format() const {
    std::ostringstream out;
    out << "decomposition k=" << depth() << " terminal="
        << (terminal == Empty ? "empty" : "all-flexible") << "\n";
    const RootedLcl& base = problems.front();
    for (size_t i = 0; i < removed_labels.size(); ++i) {
        out << "Gamma_" << (i + 1) << " = {";
        bool first = true;
        for (int id : removed_labels[i]) {
            if (!first) out << ", ";
            out << base.labels[id];
            first = false;
        }
        out << "}\n";
    }
    return out.str();
}

// --- certificates ------------------------------------------------------------------

long long LabeledTree::node_count(int delta, int depth) {
    long long total = 0, level = 1;
    for (int d = 0; d <= depth; ++d) {
        total += level;
        level *= delta;
    }
    return total;
}

std::string Certificate::format(const RootedLcl& lcl) const {
    std::ostringstream out;
    out << "certificate d1=" << d1 << " d2=" << d2 << " labels=";
    for (size_t i = 0; i < cert_labels.size(); ++i)
        out << (i ? "," : "") << lcl.labels[cert_labels[i]];
    out << "\n";
    auto dump = [&](const std::vector<LabeledTree>& seq, int which) {
        for (size_t i = 0; i < seq.size(); ++i) {
            out << "tree " << which << " " << (i + 1) << " depth=" << seq[i].depth << " :";
            for (int l : seq[i].labels) out << " " << lcl.labels[l];
            out << "\n";
        }
    };
    dump(seq1, 1);
    dump(seq2, 2);
    return out.str();
}

namespace {

Graph tree_to_graph(const LabeledTree& t, Labeling& labels, const RootedLcl& lcl) {
    Graph g(t.size());
    g.make_rooted();
    labels.assign(t.size(), "");
    for (int v = 0; v < t.size(); ++v) {
        if (v > 0) g.set_parent(v, (v - 1) / t.delta);
        labels[v] = lcl.labels[t.labels[v]];
    }
    return g;
}

// Leaf-layer code: leaf labels listed in a canonical order that is invariant
// under sibling permutations (recursive sorted-child codes).
std::string leaf_labeling_code(const LabeledTree& t) {
    std::function<std::string(int, int)> rec = [&](int v, int depth) -> std::string {
        if (depth == t.depth) return "(" + std::to_string(t.labels[v]) + ")";
        std::vector<std::string> subs;
        for (int c = 1; c <= t.delta; ++c) subs.push_back(rec(t.delta * v + c, depth + 1));
        std::sort(subs.begin(), subs.end());
        std::string out = "(";
        for (auto& s : subs) out += s;
        return out + ")";
    };
    return rec(0, 0);
}

}  // namespace

CertificateCheck check_certificate(const RootedLcl& lcl, const Certificate& cert) {
    // condition 1: coprime depths
    if (cert.d1 < 1 || cert.d2 < 1 || std::gcd(cert.d1, cert.d2) != 1)
        return {false, "condition 1: depths " + std::to_string(cert.d1) + "," +
                           std::to_string(cert.d2) + " are not coprime (or < 1)"};
    // condition 5 shape prerequisites + condition 2: complete delta-ary trees
    size_t t = cert.cert_labels.size();
    if (t == 0 || cert.seq1.size() != t || cert.seq2.size() != t)
        return {false, "condition 5: need one tree per certificate label in each sequence"};
    auto check_shape = [&](const std::vector<LabeledTree>& seq, int depth) -> std::string {
        for (const auto& tree : seq) {
            if (tree.delta != lcl.delta) return "wrong arity";
            if (tree.depth != depth) return "wrong depth";
            if (tree.size() != LabeledTree::node_count(lcl.delta, depth)) return "wrong size";
            for (int l : tree.labels)
                if (!lcl.has_label(l)) return "label outside the label set";
        }
        return "";
    };
    if (auto e = check_shape(cert.seq1, cert.d1); !e.empty())
        return {false, "condition 2: sequence 1: " + e};
    if (auto e = check_shape(cert.seq2, cert.d2); !e.empty())
        return {false, "condition 2: sequence 2: " + e};
    // condition 3: each tree is correctly labeled
    for (int which = 0; which < 2; ++which) {
        const auto& seq = which == 0 ? cert.seq1 : cert.seq2;
        for (size_t i = 0; i < seq.size(); ++i) {
            Labeling L;
            Graph g = tree_to_graph(seq[i], L, lcl);
            auto viol = verify_rooted(lcl, g, L);
            if (!viol.empty())
                return {false, "condition 3: tree " + std::to_string(which + 1) + "." +
                                   std::to_string(i + 1) + ": " + viol.front().message};
        }
    }
    // condition 4: within each sequence, leaf-labelings isomorphic, leaf labels in Gamma_T
    std::set<int> gamma_t(cert.cert_labels.begin(), cert.cert_labels.end());
    for (int which = 0; which < 2; ++which) {
        const auto& seq = which == 0 ? cert.seq1 : cert.seq2;
        std::string code0;
        for (size_t i = 0; i < seq.size(); ++i) {
            const auto& tree = seq[i];
            long long leaf_count = 1;
            for (int d = 0; d < tree.depth; ++d) leaf_count *= tree.delta;
            int first_leaf = tree.size() - static_cast<int>(leaf_count);
            for (int v = first_leaf; v < tree.size(); ++v)
                if (!gamma_t.count(tree.labels[v]))
                    return {false, "condition 4: leaf label outside Gamma_T in tree " +
                                       std::to_string(which + 1) + "." + std::to_string(i + 1)};
            std::string code = leaf_labeling_code(tree);
            if (i == 0)
                code0 = code;
            else if (code != code0)
                return {false, "condition 4: leaf labelings of sequence " +
                                   std::to_string(which + 1) + " are not isomorphic"};
        }
    }
    // condition 5: root labels cover Gamma_T in order
    for (size_t i = 0; i < t; ++i) {
        if (cert.seq1[i].labels[0] != cert.cert_labels[i] ||
            cert.seq2[i].labels[0] != cert.cert_labels[i])
            return {false, "condition 5: root of tree " + std::to_string(i + 1) +
                               " is not labeled with its certificate label"};
    }
    return {true, ""};
}

// --- certificate extraction -----------------------------------------------------

namespace {

// Complete delta-ary tree inside a session; ids_by_depth[d] lists session ids
// in heap order.
struct SessionTree {
    int root = -1;
    std::vector<std::vector<int>> ids_by_depth;
};

SessionTree build_session_tree(OnlineSession& s, int delta, int depth) {
    SessionTree t;
    t.ids_by_depth.resize(depth + 1);
    t.root = s.add_node();
    t.ids_by_depth[0].push_back(t.root);
    for (int d = 1; d <= depth; ++d) {
        for (int parent : t.ids_by_depth[d - 1]) {
            for (int c = 0; c < delta; ++c) {
                int v = s.add_node();
                s.set_parent(v, parent);
                t.ids_by_depth[d].push_back(v);
            }
        }
    }
    return t;
}

}  // namespace

CertificateExtraction extract_certificate(const RootedLcl& lcl, const OnlineAlgorithm& alg,
                                          int T) {
    CertificateExtraction out;
    const int delta = lcl.delta;
    const int depth = 2 * T + 2;
    long long tree_size = LabeledTree::node_count(delta, depth);
    long long m = 0;
    {
        long long copies = 1;
        for (int i = 0; i < T + 2; ++i) copies *= delta;
        m = copies + lcl.size();
    }
    if (m * tree_size > budget().max_nodes) {
        out.inconclusive = true;
        out.failure = "construction size " + std::to_string(m * tree_size) +
                      " exceeds the node budget; result inconclusive";
        return out;
    }
    const int n_declared = static_cast<int>(m * tree_size + m * tree_size / 2 + 16);

    // Builds the probe forest and reveals all middle nodes in canonical order.
    auto probe = [&](OnlineSession& s, std::vector<SessionTree>& trees,
                     std::vector<std::vector<int>>& middle_labels) {
        trees.clear();
        middle_labels.clear();
        for (long long i = 0; i < m; ++i) trees.push_back(build_session_tree(s, delta, depth));
        for (auto& t : trees) {
            std::vector<int> row;
            for (int v : t.ids_by_depth[T + 1]) {
                Label l = s.reveal(v);
                int id = lcl.id_of(l);
                if (id < 0)
                    throw contract_error("algorithm used a label outside the label set: " + l);
                row.push_back(id);
            }
            middle_labels.push_back(std::move(row));
        }
    };

    OnlineSession first(alg, n_declared, T);
    std::vector<SessionTree> trees;
    std::vector<std::vector<int>> middle_labels;
    probe(first, trees, middle_labels);

    // Gamma_T and the U/L split
    std::vector<int> gamma_t;
    {
        std::set<int> seen;
        for (const auto& row : middle_labels)
            for (int id : row)
                if (seen.insert(id).second) gamma_t.push_back(id);
        std::sort(gamma_t.begin(), gamma_t.end());
    }
    std::vector<int> u_set;  // tree indices
    {
        std::set<int> covered, chosen;
        for (int g : gamma_t) {
            if (covered.count(g)) continue;
            for (size_t i = 0; i < middle_labels.size(); ++i) {
                if (std::find(middle_labels[i].begin(), middle_labels[i].end(), g) !=
                    middle_labels[i].end()) {
                    if (chosen.insert(static_cast<int>(i)).second)
                        u_set.push_back(static_cast<int>(i));
                    for (int x : middle_labels[i]) covered.insert(x);
                    break;
                }
            }
        }
        std::sort(u_set.begin(), u_set.end());
    }
    std::vector<int> l_set;
    for (int i = 0; i < static_cast<int>(m); ++i)
        if (std::find(u_set.begin(), u_set.end(), i) == u_set.end()) l_set.push_back(i);

    long long leaves_per_subtree = 1;
    for (int i = 0; i < T + 1; ++i) leaves_per_subtree *= delta;
    if (static_cast<long long>(l_set.size()) < leaves_per_subtree * delta) {
        out.failure = "not enough spare trees for the gluing step";
        return out;
    }

    // One fresh deterministic re-run per glued tree. The replay must commit the
    // same middle labels; that is asserted below.
    auto glue_and_cut = [&](int gamma, bool child_mode) -> LabeledTree {
        OnlineSession s(alg, n_declared, T);
        std::vector<SessionTree> ts;
        std::vector<std::vector<int>> ml;
        probe(s, ts, ml);
        if (ml != middle_labels)
            throw contract_error("algorithm is not deterministic across replays");
        // find the U tree and its middle node labeled gamma
        int ut = -1, u = -1;
        for (int i : u_set) {
            for (size_t j = 0; j < ml[i].size(); ++j)
                if (ml[i][j] == gamma) {
                    ut = i;
                    u = ts[i].ids_by_depth[T + 1][j];
                    break;
                }
            if (ut >= 0) break;
        }
        if (ut < 0) throw std::logic_error("certificate label not found in U");
        // leaves of the subtree rooted at u, in heap order
        std::vector<int> frontier{u};
        for (int d = 0; d < T + 1; ++d) {
            std::vector<int> next;
            for (int v : frontier)
                for (int c : s.children_of(v)) next.push_back(c);
            frontier = std::move(next);
        }
        if (static_cast<long long>(frontier.size()) != leaves_per_subtree)
            throw std::logic_error("unexpected leaf count under the certificate node");
        if (!child_mode) {
            for (size_t j = 0; j < frontier.size(); ++j)
                s.identify(frontier[j], ts[l_set[j]].root);
        } else {
            for (size_t j = 0; j < frontier.size(); ++j)
                for (int c = 0; c < delta; ++c)
                    s.set_parent(ts[l_set[j * delta + c]].root, frontier[j]);
        }
        // reveal all unlabeled nodes strictly between u and the labeled layer
        int cut_depth = depth + (child_mode ? 1 : 0);
        std::vector<int> level{u};
        for (int d = 1; d < cut_depth; ++d) {
            std::vector<int> next;
            for (int v : level)
                for (int c : s.children_of(v)) next.push_back(c);
            for (int v : next)
                if (s.label_of(v).empty()) s.reveal(v);
            level = std::move(next);
        }
        // cut out the labeled complete tree below u
        LabeledTree tree;
        tree.delta = delta;
        tree.depth = cut_depth;
        level = {u};
        for (int d = 0; d <= cut_depth; ++d) {
            for (int v : level) {
                Label l = s.label_of(v);
                int id = lcl.id_of(l);
                if (id < 0) throw contract_error("unlabeled or foreign label in the cut tree");
                tree.labels.push_back(id);
            }
            if (d < cut_depth) {
                std::vector<int> next;
                for (int v : level) {
                    std::vector<int> ch = s.children_of(v);
                    if (static_cast<int>(ch.size()) != delta)
                        throw std::logic_error("cut tree is not complete");
                    for (int c : ch) next.push_back(c);
                }
                level = std::move(next);
            }
        }
        return tree;
    };

    out.certificate.cert_labels = gamma_t;
    out.certificate.d1 = depth;
    out.certificate.d2 = depth + 1;
    try {
        for (int g : gamma_t) {
            out.certificate.seq1.push_back(glue_and_cut(g, false));
            out.certificate.seq2.push_back(glue_and_cut(g, true));
        }
    } catch (const std::exception& e) {
        out.failure = std::string("gluing failed: ") + e.what();
        return out;
    }
    CertificateCheck check = check_certificate(lcl, out.certificate);
    if (!check.ok) {
        out.failure = "extracted trees do not form a certificate: " + check.reason;
        return out;
    }
    out.ok = true;
    return out;
}

// --- classification -----------------------------------------------------------------

ClassificationReport classify_rooted(const RootedLcl& lcl, bool try_certificate,
                                     int certificate_T) {
    ClassificationReport out;
    out.decomposition = inflexible_decomposition(lcl);
    if (out.decomposition.terminal == Decomposition::AllFlexible)
        out.tier = "O(log n) in all four models (all-flexible restriction reached)";
    else
        out.tier = "n^Omega(1) (decomposition ends empty, k=" +
                   std::to_string(out.decomposition.depth()) + ")";
    if (try_certificate) {
        auto greedy = make_greedy_completion(lcl);
        out.certificate = extract_certificate(lcl, *greedy, certificate_T);
        if (out.certificate->ok) out.tier = "O(log* n) (certificate found)";
    }
    return out;
}

std::string ClassificationReport::format(const RootedLcl& lcl) const {
    (void)lcl;
    std::ostringstream out;
    out << decomposition.format();
    out << "tier: " << tier << "\n";
    if (certificate) {
        if (certificate->ok)
            out << "certificate: accepted, depths (" << certificate->certificate.d1 << ", "
                << certificate->certificate.d2 << ")\n";
        else if (certificate->inconclusive)
            out << "certificate: inconclusive (" << certificate->failure << ")\n";
        else
            out << "certificate: none (" << certificate->failure << ")\n";
    }
    return out.str();
}

// --- baseline online algorithms -------------------------------------------------------

namespace {

// Feasibility DP restricted to the visible component of the revealed node.
class GreedyCompletion : public OnlineAlgorithmBase<GreedyCompletion> {
public:
    explicit GreedyCompletion(RootedLcl lcl) : lcl_(std::move(lcl)) {}

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        labels_.resize(vis.n, "");
        // component of the revealed node
        NodeSet comp = ball(vis, view.center, vis.n + 1);
        InducedGraph sub = induced(vis, comp);
        Labeling partial(sub.g.n, "");
        for (int i = 0; i < sub.g.n; ++i) partial[i] = labels_[sub.to_old[i]];
        int c = sub.to_new_of[view.center];
        for (int cand = 0; cand < lcl_.size(); ++cand) {
            partial[c] = lcl_.labels[cand];
            if (rooted_completion_exists(lcl_, sub.g, partial)) {
                labels_[view.center] = lcl_.labels[cand];
                return labels_[view.center];
            }
        }
        // cornered: no label admits a completion; emit the least label
        labels_[view.center] = lcl_.labels.empty() ? "?" : lcl_.labels[0];
        return labels_[view.center];
    }

private:
    RootedLcl lcl_;
    Labeling labels_;  // by first-seen id
};

class FirstFit : public OnlineAlgorithmBase<FirstFit> {
public:
    explicit FirstFit(RootedLcl lcl) : lcl_(std::move(lcl)) {}

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        labels_.resize(vis.n, "");
        auto violates = [&](int v) {
            // complete, fully labeled configurations only
            std::vector<int> ch = vis.children(v);
            if (static_cast<int>(ch.size()) != lcl_.delta) return false;
            if (labels_[v].empty()) return false;
            std::vector<int> ids;
            for (int c : ch) {
                if (labels_[c].empty()) return false;
                ids.push_back(lcl_.id_of(labels_[c]));
            }
            return !lcl_.allowed(lcl_.id_of(labels_[v]), ids);
        };
        for (int cand = 0; cand < lcl_.size(); ++cand) {
            labels_[view.center] = lcl_.labels[cand];
            bool ok = !violates(view.center);
            if (ok && vis.parent[view.center] >= 0) ok = !violates(vis.parent[view.center]);
            if (ok) return labels_[view.center];
        }
        labels_[view.center] = lcl_.labels.empty() ? "?" : lcl_.labels[0];
        return labels_[view.center];
    }

private:
    RootedLcl lcl_;
    Labeling labels_;
};

}  // namespace

std::unique_ptr<OnlineAlgorithm> make_greedy_completion(const RootedLcl& lcl) {
    return std::make_unique<GreedyCompletion>(lcl);
}

std::unique_ptr<OnlineAlgorithm> make_first_fit(const RootedLcl& lcl) {
    return std::make_unique<FirstFit>(lcl);
}

// --- fixtures ---------------------------------------------------------------------

RootedLcl twohalf_problem() {
    RootedLcl p;
    p.delta = 2;
    for (const char* l : {"A", "B", "X", "1", "2"}) p.intern(l);
    // A over any combination of {B, X}; B over any combination of {A, X}
    p.add_config("A", {"B", "B"});
    p.add_config("A", {"B", "X"});
    p.add_config("A", {"X", "X"});
    p.add_config("B", {"A", "A"});
    p.add_config("B", {"A", "X"});
    p.add_config("B", {"X", "X"});
    // X needs at least one child labeled 1; the other child is anything but X
    p.add_config("X", {"1", "1"});
    p.add_config("X", {"1", "2"});
    p.add_config("X", {"1", "A"});
    p.add_config("X", {"1", "B"});
    // exact 2-coloring at the bottom
    p.add_config("1", {"2", "2"});
    p.add_config("2", {"1", "1"});
    return p;
}

RootedLcl rooted_coloring(int colors, int delta) {
    if (colors < 1 || delta < 1) throw std::invalid_argument("bad coloring parameters");
    RootedLcl p;
    p.delta = delta;
    for (int c = 1; c <= colors; ++c) p.intern(std::to_string(c));
    // children take any colors different from the parent
    std::vector<int> pick(delta, 0);
    std::function<void(int, int, int)> rec = [&](int parent, int pos, int minc) {
        if (pos == delta) {
            std::vector<int> kids(pick.begin(), pick.end());
            p.add_config_ids(parent, kids);
            return;
        }
        for (int c = minc; c < colors; ++c) {
            if (c == parent) continue;
            pick[pos] = c;
            rec(parent, pos + 1, c);
        }
    };
    for (int parent = 0; parent < colors; ++parent) rec(parent, 0, 0);
    return p;
}

RootedLcl two_coloring_binary() {
    RootedLcl p;
    p.delta = 2;
    p.intern("1");
    p.intern("2");
    p.add_config("1", {"2", "2"});
    p.add_config("2", {"1", "1"});
    return p;
}

}  // namespace lab
