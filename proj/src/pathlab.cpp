#include "lab/pathlab.hpp"

#include <algorithm>
#include <bitset>
#include <deque>
#include <functional>
#include <sstream>

namespace lab {

namespace {
constexpr int MAX_STATES = 128;  // window states |Gamma|^(2r), capped
using StateRow = std::bitset<MAX_STATES>;
using StateMatrix = std::vector<StateRow>;  // MAX_STATES rows
}  // namespace

// --- PathLcl -----------------------------------------------------------------

int PathLcl::sigma_id(const std::string& s) const {
    for (size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] == s) return static_cast<int>(i);
    return -1;
}

int PathLcl::gamma_id(const std::string& s) const {
    for (size_t i = 0; i < gamma.size(); ++i)
        if (gamma[i] == s) return static_cast<int>(i);
    return -1;
}

std::string PathLcl::window_key(const std::vector<std::pair<int, int>>& cells, int center) {
    std::string key = std::to_string(center) + ":";
    for (auto [s, g] : cells) key += std::to_string(s) + "/" + std::to_string(g) + ",";
    return key;
}

PathLcl PathLcl::from_predicate(
    std::vector<std::string> sig, std::vector<std::string> gam, int r,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&, int)>& pred) {
    PathLcl out;
    out.sigma = std::move(sig);
    out.gamma = std::move(gam);
    out.radius = r;
    if (r < 1) throw std::invalid_argument("verification radius must be >= 1");
    int ns = out.nsigma(), ng = out.ngamma();
    for (int w = 1; w <= 2 * r + 1; ++w) {
        for (int center = 0; center < w; ++center) {
            if (center > r || (w - 1 - center) > r) continue;
            std::vector<int> in(w), outp(w);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == 2 * w) {
                    if (pred(in, outp, center)) {
                        std::vector<std::pair<int, int>> cells(w);
                        for (int i = 0; i < w; ++i) cells[i] = {in[i], outp[i]};
                        out.accepted.insert(window_key(cells, center));
                        std::reverse(cells.begin(), cells.end());
                        out.accepted.insert(window_key(cells, w - 1 - center));
                    }
                    return;
                }
                int limit = pos < w ? ns : ng;
                for (int x = 0; x < limit; ++x) {
                    (pos < w ? in[pos] : outp[pos - w]) = x;
                    rec(pos + 1);
                }
            };
            rec(0);
        }
    }
    return out;
}

bool PathLcl::window_ok(const std::vector<std::pair<int, int>>& cells, int center) const {
    return accepted.count(window_key(cells, center)) > 0;
}

std::string PathLcl::format() const {
    std::ostringstream out;
    out << "lcl path r=" << radius << "\n";
    out << "inputs";
    for (const auto& s : sigma) out << " " << s;
    out << "\noutputs";
    for (const auto& g : gamma) out << " " << g;
    out << "\n";
    for (const auto& w : accepted) out << "window " << w << "\n";
    return out.str();
}

PathLcl PathLcl::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    PathLcl out;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("path-lcl parse error at line " + std::to_string(lineno) +
                                        ": " + why);
        };
        if (tok == "lcl") {
            std::string kind, rs;
            if (!(ls >> kind) || kind != "path") fail("expected 'lcl path'");
            if (!(ls >> rs) || rs.rfind("r=", 0) != 0) fail("expected r=<radius>");
            out.radius = std::stoi(rs.substr(2));
            have_header = true;
        } else if (!have_header) {
            fail("missing header");
        } else if (tok == "inputs") {
            std::string s;
            while (ls >> s) out.sigma.push_back(s);
        } else if (tok == "outputs") {
            std::string s;
            while (ls >> s) out.gamma.push_back(s);
        } else if (tok == "window") {
            std::string w;
            if (!(ls >> w)) fail("empty window");
            out.accepted.insert(w);
        } else {
            fail("unknown directive " + tok);
        }
    }
    if (!have_header) throw std::invalid_argument("path-lcl parse error: empty input");
    return out;
}

PathLcl path_coloring(int colors, int r) {
    std::vector<std::string> gam;
    for (int c = 0; c < colors; ++c) gam.push_back(std::to_string(c));
    return PathLcl::from_predicate(
        {"-"}, gam, r, [](const std::vector<int>&, const std::vector<int>& out, int) {
            for (size_t i = 0; i + 1 < out.size(); ++i)
                if (out[i] == out[i + 1]) return false;
            return true;
        });
}

PathLcl input_restricted_coloring() {
    return PathLcl::from_predicate(
        {"a", "b"}, {"0", "1", "2"}, 1,
        [](const std::vector<int>& in, const std::vector<int>& out, int center) {
            for (size_t i = 0; i + 1 < out.size(); ++i)
                if (out[i] == out[i + 1]) return false;
            return !(in[center] == 1 && out[center] == 0);
        });
}

PathLcl trivial_path_problem() {
    return PathLcl::from_predicate(
        {"-"}, {"ok"}, 1,
        [](const std::vector<int>&, const std::vector<int>&, int) { return true; });
}

// --- window verification -------------------------------------------------------

namespace {
// window centered at position c of a linear instance; returns false when the
// window pokes past a free (non-end) boundary, meaning "not checkable here"
bool collect_window(const PathInstance& p, const std::vector<int>& out, int r, int c,
                    bool left_end, bool right_end, std::vector<std::pair<int, int>>& cells,
                    int& center) {
    int L = static_cast<int>(p.inputs.size());
    if (p.cyclic) {
        cells.clear();
        for (int d = -r; d <= r; ++d) {
            int i = ((c + d) % L + L) % L;
            cells.push_back({p.inputs[i], out[i]});
        }
        center = r;
        return true;
    }
    int lo = c - r, hi = c + r;
    if (lo < 0) {
        if (!left_end) return false;
        lo = 0;
    }
    if (hi > L - 1) {
        if (!right_end) return false;
        hi = L - 1;
    }
    cells.clear();
    for (int i = lo; i <= hi; ++i) cells.push_back({p.inputs[i], out[i]});
    center = c - lo;
    return true;
}
}  // namespace

std::vector<Violation> verify_path(const PathLcl& lcl, const PathInstance& p,
                                   const std::vector<int>& out) {
    std::vector<Violation> v;
    int L = static_cast<int>(p.inputs.size());
    if (static_cast<int>(out.size()) != L) {
        v.push_back({-1, "labeling size mismatch"});
        return v;
    }
    for (int i = 0; i < L; ++i)
        if (out[i] < 0 || out[i] >= lcl.ngamma()) {
            v.push_back({i, "label out of range"});
            return v;
        }
    std::vector<std::pair<int, int>> cells;
    int center;
    for (int c = 0; c < L; ++c) {
        if (!collect_window(p, out, lcl.radius, c, true, true, cells, center)) continue;
        if (!lcl.window_ok(cells, center))
            v.push_back({c, "window rejected at position " + std::to_string(c)});
    }
    return v;
}

std::vector<int> linearize_path_graph(const Graph& g) {
    if (g.n == 0) return {};
    int start = -1;
    for (int v = 0; v < g.n; ++v) {
        if (g.degree(v) > 2) throw std::invalid_argument("graph is not a path or cycle");
        if (g.degree(v) <= 1) start = v;
    }
    bool cyclic = start < 0;
    if (cyclic) start = 0;
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (true) {
        int next = -1;
        for (int u : g.adj[cur])
            if (u != prev) next = u;
        if (next < 0 || next == start) break;
        order.push_back(next);
        prev = cur;
        cur = next;
        if (static_cast<int>(order.size()) > g.n) throw std::invalid_argument("not a simple path");
    }
    if (static_cast<int>(order.size()) != g.n)
        throw std::invalid_argument("graph is not connected");
    return order;
}

std::vector<Violation> verify_path_graph(const PathLcl& lcl, const Graph& g, const Labeling& out) {
    std::vector<int> order = linearize_path_graph(g);
    PathInstance p;
    p.cyclic = !order.empty() && g.degree(order.front()) == 2 && g.n > 2;
    std::vector<int> labels;
    for (int v : order) {
        p.inputs.push_back(g.has_inputs() && !g.input[v].empty() ? lcl.sigma_id(g.input[v]) : 0);
        labels.push_back(lcl.gamma_id(out[v]));
    }
    return verify_path(lcl, p, labels);
}

// --- completion DP ----------------------------------------------------------------

namespace {

struct WindowEngine {
    const PathLcl& lcl;
    int r, W, ng, ns, states;
    mutable std::map<long long, StateMatrix> matrix_cache_;  // packed input window -> matrix

    explicit WindowEngine(const PathLcl& l)
        : lcl(l), r(l.radius), W(2 * l.radius), ng(l.ngamma()), ns(l.nsigma()) {
        states = 1;
        for (int i = 0; i < W; ++i) {
            states *= ng;
            if (states > MAX_STATES) throw resource_error("window state space too large");
        }
    }

    int push(int state, int g) const { return (state * ng + g) % states; }
    int digit(int state, int pos) const {  // pos 0 = oldest of the W labels
        for (int i = W - 1; i > pos; --i) state /= ng;
        return state % ng;
    }

    // full window centered at position i-r, given inputs[i-W..i] and the
    // previous W labels (state) plus the new label g
    bool full_window_ok(const std::vector<int>& inputs, int i, int state, int g) const {
        std::vector<std::pair<int, int>> cells(W + 1);
        for (int d = 0; d < W; ++d) cells[d] = {inputs[i - W + d], digit(state, d)};
        cells[W] = {inputs[i], g};
        return lcl.window_ok(cells, r);
    }

    long long pack_window(const std::vector<int>& inputs, int i) const {
        long long key = 0;
        for (int d = i - W; d <= i; ++d) key = key * ns + inputs[d];
        return key;
    }

    // transition matrix for assigning position i (i >= W), determined by the
    // input window and memoized on it
    const StateMatrix& matrix_at(const std::vector<int>& inputs, int i) const {
        long long key = pack_window(inputs, i);
        auto it = matrix_cache_.find(key);
        if (it != matrix_cache_.end()) return it->second;
        StateMatrix m(states);
        for (int s = 0; s < states; ++s)
            for (int g = 0; g < ng; ++g)
                if (full_window_ok(inputs, i, s, g)) m[s].set(push(s, g));
        return matrix_cache_.emplace(key, std::move(m)).first->second;
    }
};

StateMatrix mat_mul(const StateMatrix& a, const StateMatrix& b, int states) {
    StateMatrix out(states);
    for (int i = 0; i < states; ++i) {
        for (int j = 0; j < states; ++j)
            if (a[i].test(j)) out[i] |= b[j];
    }
    return out;
}

StateMatrix mat_identity(int states) {
    StateMatrix m(states);
    for (int i = 0; i < states; ++i) m[i].set(i);
    return m;
}

// brute-force feasibility for short instances
bool small_completion(const PathLcl& lcl, const std::vector<int>& inputs,
                      const std::vector<int>& partial, bool left_end, bool right_end,
                      std::vector<int>* found_lex) {
    int L = static_cast<int>(inputs.size());
    std::vector<int> out(L, -1);
    PathInstance p;
    p.inputs = inputs;
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == L) {
            std::vector<std::pair<int, int>> cells;
            int center;
            for (int c = 0; c < L; ++c) {
                if (!collect_window(p, out, lcl.radius, c, left_end, right_end, cells, center))
                    continue;
                if (!lcl.window_ok(cells, center)) return false;
            }
            if (found_lex) *found_lex = out;
            return true;
        }
        if (partial[i] >= 0) {
            out[i] = partial[i];
            return rec(i + 1);
        }
        for (int g = 0; g < lcl.ngamma(); ++g) {
            out[i] = g;
            if (rec(i + 1)) return true;
        }
        out[i] = -1;
        return false;
    };
    return rec(0);
}

// forward reachable state sets per position; returns false if infeasible.
// reach[i] = states representing labels of positions [i-W, i) (i from W to L).
bool forward_reach(const WindowEngine& e, const std::vector<int>& inputs,
                   const std::vector<int>& partial, bool left_end, bool right_end,
                   std::vector<StateRow>& reach) {
    const PathLcl& lcl = e.lcl;
    int L = static_cast<int>(inputs.size());
    int W = e.W;
    // seed: all assignments of the first W positions consistent with partial
    // and with the left-clipped windows (when position 0 is a true end)
    StateRow seed;
    std::vector<int> pre(W, -1);
    std::function<void(int, int)> gen = [&](int i, int state) {
        if (i == W) {
            if (left_end) {
                // windows centered c < r use positions <= c+r <= W-1
                PathInstance p;
                p.inputs = std::vector<int>(inputs.begin(), inputs.begin() + W);
                std::vector<std::pair<int, int>> cells;
                int center;
                for (int c = 0; c < e.r && c + e.r < W; ++c) {
                    if (!collect_window(p, pre, e.r, c, true, false, cells, center)) continue;
                    if (!lcl.window_ok(cells, center)) return;
                }
            }
            seed.set(state);
            return;
        }
        for (int g = 0; g < e.ng; ++g) {
            if (partial[i] >= 0 && partial[i] != g) continue;
            pre[i] = g;
            gen(i + 1, state * e.ng + g);
        }
        pre[i] = -1;
    };
    gen(0, 0);
    reach.assign(L + 1, StateRow{});
    reach[W] = seed;
    for (int i = W; i < L; ++i) {
        StateRow next;
        for (int s = 0; s < e.states; ++s) {
            if (!reach[i].test(s)) continue;
            for (int g = 0; g < e.ng; ++g) {
                if (partial[i] >= 0 && partial[i] != g) continue;
                if (e.full_window_ok(inputs, i, s, g)) next.set(e.push(s, g));
            }
        }
        reach[i + 1] = next;
        if (next.none()) return false;
    }
    if (right_end) {
        // windows centered c > L-1-r are determined by the final W labels
        StateRow ok;
        for (int s = 0; s < e.states; ++s) {
            if (!reach[L].test(s)) continue;
            std::vector<int> tail(W);
            for (int d = 0; d < W; ++d) tail[d] = e.digit(s, d);
            bool good = true;
            for (int c = L - e.r; c < L && good; ++c) {
                if (c < 0) continue;
                int lo = c - e.r;
                if (lo < L - W) continue;  // already checked as a full window
                std::vector<std::pair<int, int>> cells;
                for (int i2 = std::max(lo, L - W); i2 < L; ++i2)
                    cells.push_back({inputs[i2], tail[i2 - (L - W)]});
                if (lo < L - W) continue;
                if (!lcl.window_ok(cells, c - lo)) good = false;
            }
            if (good) ok.set(s);
        }
        reach[L] &= ok;
    }
    return reach[L].any();
}

}  // namespace

bool path_completion_exists(const PathLcl& lcl, const std::vector<int>& inputs,
                            const std::vector<int>& partial, bool left_end, bool right_end) {
    int L = static_cast<int>(inputs.size());
    if (L == 0) return true;
    if (L <= 4 * lcl.radius + 1)
        return small_completion(lcl, inputs, partial, left_end, right_end, nullptr);
    WindowEngine e(lcl);
    std::vector<StateRow> reach;
    return forward_reach(e, inputs, partial, left_end, right_end, reach);
}

bool cycle_completion_exists(const PathLcl& lcl, const std::vector<int>& inputs,
                             const std::vector<int>& partial) {
    int L = static_cast<int>(inputs.size());
    if (L == 0) return true;
    if (L <= 4 * lcl.radius + 2) {
        // brute force over all labelings with cyclic windows
        std::vector<int> out(L, -1);
        PathInstance p;
        p.inputs = inputs;
        p.cyclic = true;
        std::function<bool(int)> rec = [&](int i) -> bool {
            if (i == L) {
                std::vector<std::pair<int, int>> cells;
                int center;
                for (int c = 0; c < L; ++c) {
                    collect_window(p, out, lcl.radius, c, true, true, cells, center);
                    if (!lcl.window_ok(cells, center)) return false;
                }
                return true;
            }
            if (partial[i] >= 0) {
                out[i] = partial[i];
                return rec(i + 1);
            }
            for (int g = 0; g < lcl.ngamma(); ++g) {
                out[i] = g;
                if (rec(i + 1)) return true;
            }
            out[i] = -1;
            return false;
        };
        return rec(0);
    }
    // unroll: fix the first W labels, require the same state after wrapping
    WindowEngine e(lcl);
    int W = e.W;
    std::vector<int> ext_inputs = inputs;
    for (int i = 0; i < W; ++i) ext_inputs.push_back(inputs[i]);
    std::vector<int> ext_partial = partial;
    for (int i = 0; i < W; ++i) ext_partial.push_back(partial[i]);
    // enumerate seed assignments of positions [0, W)
    std::function<bool(int, std::vector<int>&)> gen = [&](int i, std::vector<int>& fixed) -> bool {
        if (i == W) {
            std::vector<int> pp = ext_partial;
            for (int d = 0; d < W; ++d) pp[d] = pp[static_cast<int>(inputs.size()) + d] = fixed[d];
            WindowEngine e2(lcl);
            std::vector<StateRow> reach;
            if (!forward_reach(e2, ext_inputs, pp, false, false, reach)) return false;
            int want = 0;
            for (int d = 0; d < W; ++d) want = want * e2.ng + fixed[d];
            return reach[ext_inputs.size()].test(want);
        }
        for (int g = 0; g < e.ng; ++g) {
            if (partial[i] >= 0 && partial[i] != g) continue;
            fixed[i] = g;
            if (gen(i + 1, fixed)) return true;
        }
        return false;
    };
    std::vector<int> fixed(W, -1);
    return gen(0, fixed);
}

std::optional<std::vector<int>> path_complete_lex(const PathLcl& lcl,
                                                  const std::vector<int>& inputs,
                                                  const std::vector<int>& partial, bool left_end,
                                                  bool right_end) {
    int L = static_cast<int>(inputs.size());
    std::vector<int> out = partial;
    if (L <= 4 * lcl.radius + 1) {
        std::vector<int> found;
        if (!small_completion(lcl, inputs, partial, left_end, right_end, &found))
            return std::nullopt;
        return found;
    }
    // greedy: fix positions one by one, re-checking feasibility
    for (int i = 0; i < L; ++i) {
        if (out[i] >= 0) continue;
        bool ok = false;
        for (int g = 0; g < lcl.ngamma(); ++g) {
            out[i] = g;
            if (path_completion_exists(lcl, inputs, out, left_end, right_end)) {
                ok = true;
                break;
            }
        }
        if (!ok) return std::nullopt;
    }
    return out;
}

// --- segments ----------------------------------------------------------------------

Tripartition tripartition(const PathLcl& lcl, int len) {
    Tripartition t;
    int r = lcl.radius;
    std::vector<char> in1(len, 0), in2(len, 0);
    for (int i = 0; i < len; ++i) {
        if (i <= r - 1 || i >= len - r) in1[i] = 1;
    }
    for (int i = 0; i < len; ++i) {
        if (in1[i]) continue;
        for (int j = std::max(0, i - r); j <= std::min(len - 1, i + r); ++j)
            if (in1[j]) in2[i] = 1;
    }
    for (int i = 0; i < len; ++i) {
        if (in1[i])
            t.d1.push_back(i);
        else if (in2[i])
            t.d2.push_back(i);
        else
            t.d3.push_back(i);
    }
    return t;
}

namespace {

std::string inputs_str(const std::vector<int>& in, int from, int to) {
    std::string s;
    for (int i = from; i < to; ++i) s += std::to_string(in[i]) + ",";
    return s;
}

// extendability table between boundary-zone labelings, as a bit string
std::string segment_table(const WindowEngine& e, const Segment& s) {
    const PathLcl& lcl = e.lcl;
    int W = e.W;
    int L = s.size();
    // product of the transition matrices for positions [W, L)
    StateMatrix m = mat_identity(e.states);
    for (int i = W; i < L; ++i) m = mat_mul(m, e.matrix_at(s.inputs, i), e.states);
    // prefix admissibility under left-end clipping; suffix under right-end
    std::vector<char> pre_ok(e.states, 1), suf_ok(e.states, 1);
    if (s.left_end) {
        for (int st = 0; st < e.states; ++st) {
            std::vector<int> pre(W);
            for (int d = 0; d < W; ++d) pre[d] = e.digit(st, d);
            PathInstance p;
            p.inputs = std::vector<int>(s.inputs.begin(), s.inputs.begin() + W);
            std::vector<std::pair<int, int>> cells;
            int center;
            for (int c = 0; c < e.r && c + e.r < W; ++c) {
                if (!collect_window(p, pre, e.r, c, true, false, cells, center)) continue;
                if (!lcl.window_ok(cells, center)) pre_ok[st] = 0;
            }
        }
    }
    if (s.right_end) {
        for (int st = 0; st < e.states; ++st) {
            std::vector<int> tail(W);
            for (int d = 0; d < W; ++d) tail[d] = e.digit(st, d);
            PathInstance p;
            p.inputs = std::vector<int>(s.inputs.end() - W, s.inputs.end());
            std::vector<std::pair<int, int>> cells;
            int center;
            for (int c = W - e.r; c < W; ++c) {
                if (c < 0) continue;
                if (!collect_window(p, tail, e.r, c, false, true, cells, center)) continue;
                if (!lcl.window_ok(cells, center)) suf_ok[st] = 0;
            }
        }
    }
    std::string bits;
    bits.reserve(e.states * e.states);
    for (int a = 0; a < e.states; ++a)
        for (int b = 0; b < e.states; ++b)
            bits += (pre_ok[a] && suf_ok[b] && m[a].test(b)) ? '1' : '0';
    return bits;
}

}  // namespace

namespace {
SegmentClass segment_class_impl(const WindowEngine& e, const Segment& s) {
    int W = e.W;
    std::string flags = std::string(s.left_end ? "L" : "-") + (s.right_end ? "R" : "-");
    // below 4r+1 nodes the endpoint zones overlap and have a length-specific
    // shape, so each such segment sits in its own length class
    if (s.size() <= 2 * W) {
        return {"small|" + flags + "|" + inputs_str(s.inputs, 0, s.size())};
    }
    std::string key = "seg|" + flags + "|" + inputs_str(s.inputs, 0, W) + "|" +
                      inputs_str(s.inputs, s.size() - W, s.size()) + "|" +
                      segment_table(e, s);
    return {key};
}
}  // namespace

SegmentClass segment_class(const PathLcl& lcl, const Segment& s) {
    WindowEngine e(lcl);
    return segment_class_impl(e, s);
}

int pumping_constant(const PathLcl& lcl, int horizon) {
    int W = 2 * lcl.radius;
    WindowEngine engine(lcl);
    if (lcl.nsigma() == 1) {
        // key per length; the sequence of keys is eventually periodic
        std::vector<std::string> keys;
        keys.push_back("");  // length 0 unused
        for (int len = 1; len <= horizon; ++len) {
            Segment s;
            s.inputs.assign(len, 0);
            keys.push_back(segment_class_impl(engine, s).key);
        }
        for (int period = 1; period <= horizon / 3; ++period) {
            // find the smallest start from which keys repeat with this period
            int start = -1;
            for (int len = 1; len + period <= horizon; ++len) {
                if (keys[len] == keys[len + period]) {
                    if (start < 0) start = len;
                } else {
                    start = -1;
                }
            }
            if (start > 0 && start + 2 * period <= horizon) {
                // all lengths >= start recur; extend downward across early repeats
                int alpha = start;
                while (alpha > 1) {
                    bool recurs = false;
                    for (int other = alpha; other <= horizon; ++other)
                        if (other != alpha - 1 && keys[other] == keys[alpha - 1]) recurs = true;
                    if (!recurs) break;
                    --alpha;
                }
                return std::max(alpha, 1);
            }
        }
        throw resource_error("pumping constant not found below horizon " +
                             std::to_string(horizon) + " (partial bound: > " +
                             std::to_string(horizon / 3) + ")");
    }
    // multi-symbol alphabets: enumerate input strings up to a budgeted horizon
    long long total = 0;
    int cap = 1;
    while (cap < horizon) {
        long long words = 1;
        for (int i = 0; i < cap + 1; ++i) {
            words *= lcl.nsigma();
            if (words > 100000) break;
        }
        if (words > 100000) break;
        total += words;
        ++cap;
    }
    if (cap < 3 * W) throw resource_error("input alphabet too large for class enumeration");
    std::vector<std::set<std::string>> keys_by_len(cap + 1);
    std::vector<int> word;
    std::function<void(int)> gen = [&](int len) {
        if (len > 0) {
            Segment s;
            s.inputs = word;
            keys_by_len[len].insert(segment_class_impl(engine, s).key);
        }
        if (len == cap) return;
        for (int c = 0; c < lcl.nsigma(); ++c) {
            word.push_back(c);
            gen(len + 1);
            word.pop_back();
        }
    };
    gen(0);
    std::set<std::string> future;
    std::vector<char> recurs(cap + 1, 0);
    for (int len = cap; len >= 1; --len) {
        recurs[len] = 1;
        for (const auto& k : keys_by_len[len])
            if (!future.count(k)) recurs[len] = 0;
        for (const auto& k : keys_by_len[len]) future.insert(k);
    }
    int best = -1;
    for (int a = 1; a <= cap / 2; ++a) {
        bool ok = true;
        for (int len = a; len <= cap / 2; ++len)
            if (!recurs[len]) ok = false;
        if (ok) {
            best = a;
            break;
        }
    }
    if (best < 0)
        throw resource_error("pumping constant not found below horizon (partial bound: > " +
                             std::to_string(cap / 2) + ")");
    return best;
}

Segment pump_segment(const PathLcl& lcl, const Segment& s, int min_len) {
    if (s.size() >= min_len) return s;
    int W = 2 * lcl.radius;
    if (s.size() <= 2 * W)
        throw std::invalid_argument("segment too short to pump (needs length >= alpha)");
    WindowEngine engine(lcl);
    SegmentClass target = segment_class_impl(engine, s);
    // candidate insertions: repeats of an existing stretch, tried mid-segment
    // first, then at every interior offset
    std::vector<std::pair<int, std::vector<int>>> candidates;
    for (int bl = 1; bl <= std::min(12, s.size() - 2 * W); ++bl) {
        for (int pos : {s.size() / 2, W + bl, s.size() - W - bl}) {
            if (pos - bl < 0 || pos > s.size() - W || pos < W) continue;
            candidates.push_back(
                {pos, std::vector<int>(s.inputs.begin() + pos - bl, s.inputs.begin() + pos)});
        }
    }
    for (auto& [pos, block] : candidates) {
        Segment once = s;
        once.inputs.insert(once.inputs.begin() + pos, block.begin(), block.end());
        if (segment_class_impl(engine, once) != target) continue;
        Segment out = s;
        while (out.size() < min_len)
            out.inputs.insert(out.inputs.begin() + pos, block.begin(), block.end());
        if (segment_class_impl(engine, out) != target) continue;  // repetition broke the class
        return out;
    }
    throw resource_error("no pumpable block found in the segment");
}

ReplacedPath replace_and_extend(const PathLcl& lcl, const PathInstance& p,
                                const std::vector<int>& labeling, int from, int to,
                                const Segment& replacement) {
    if (p.cyclic) throw std::invalid_argument("replacement is defined on paths");
    int L = static_cast<int>(p.inputs.size());
    if (from < 0 || to > L || from >= to) throw std::invalid_argument("bad segment range");
    Segment original;
    original.inputs = std::vector<int>(p.inputs.begin() + from, p.inputs.begin() + to);
    original.left_end = (from == 0);
    original.right_end = (to == L);
    if (segment_class(lcl, original) != segment_class(lcl, replacement))
        throw std::invalid_argument("replacement segment has a different class");
    if (!verify_path(lcl, p, labeling).empty())
        throw std::invalid_argument("input labeling is not valid");
    int W = 2 * lcl.radius;
    ReplacedPath out;
    out.instance.cyclic = false;
    out.instance.inputs = std::vector<int>(p.inputs.begin(), p.inputs.begin() + from);
    out.instance.inputs.insert(out.instance.inputs.end(), replacement.inputs.begin(),
                               replacement.inputs.end());
    out.instance.inputs.insert(out.instance.inputs.end(), p.inputs.begin() + to, p.inputs.end());
    int L2 = static_cast<int>(out.instance.inputs.size());
    out.labeling.assign(L2, -1);
    // copy labels outside the replaced zone and on its boundary zones
    for (int i = 0; i < from; ++i) out.labeling[i] = labeling[i];
    for (int i = to; i < L; ++i) out.labeling[L2 - (L - i)] = labeling[i];
    int seg_len = replacement.size();
    int keep = std::min(W, std::min(seg_len, to - from));
    for (int d = 0; d < keep; ++d) {
        out.labeling[from + d] = labeling[from + d];
        out.labeling[from + seg_len - 1 - d] = labeling[to - 1 - d];
    }
    auto filled = path_complete_lex(lcl, out.instance.inputs, out.labeling, true, true);
    if (!filled)
        throw std::logic_error("class-equal replacement admitted no interior relabeling");
    out.labeling = *filled;
    return out;
}

NodeSet ruling_set(const Graph& g, int alpha, int beta, const std::vector<int>& order) {
    if (alpha > beta + 1) throw std::invalid_argument("greedy ruling set needs alpha <= beta+1");
    std::vector<char> in_r(g.n, 0);
    NodeSet r;
    for (int v : order) {
        g.check_node(v);
        bool ruled = false;
        for (int u : ball(g, v, beta))
            if (in_r[u]) ruled = true;
        if (!ruled) {
            in_r[v] = 1;
            r.push_back(v);
        }
    }
    std::sort(r.begin(), r.end());
    return r;
}

// --- path greedy baseline -------------------------------------------------------------

namespace {

struct LinearComponent {
    std::vector<int> nodes;  // visible ids in path order
    bool cyclic = false;
    bool left_end = false, right_end = false;  // true path ends in evidence
};

// linearizes the component of v; end flags are derived from the revealed set
// (a terminus is a true end when some reveal saw past it)
LinearComponent linearize_component(const Graph& vis, int v, const std::vector<char>& revealed,
                                    int locality) {
    LinearComponent out;
    NodeSet comp = ball(vis, v, vis.n + 1);
    InducedGraph sub = induced(vis, comp);
    std::vector<int> order = linearize_path_graph(sub.g);
    out.cyclic = sub.g.n > 2 && sub.g.degree(order.front()) == 2;
    for (int i : order) out.nodes.push_back(sub.to_old[i]);
    if (!out.cyclic) {
        // distance from each terminus to the nearest revealed node, inside the
        // component only
        std::vector<int> dist(sub.g.n, -1);
        std::deque<int> q;
        for (int i = 0; i < sub.g.n; ++i)
            if (sub.to_old[i] < static_cast<int>(revealed.size()) && revealed[sub.to_old[i]]) {
                dist[i] = 0;
                q.push_back(i);
            }
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int w : sub.g.adj[x])
                if (dist[w] < 0) {
                    dist[w] = dist[x] + 1;
                    q.push_back(w);
                }
        }
        int a = order.front(), b = order.back();
        out.left_end = dist[a] >= 0 && dist[a] < locality && sub.g.degree(a) <= 1;
        out.right_end = dist[b] >= 0 && dist[b] < locality && sub.g.degree(b) <= 1;
    }
    return out;
}

class PathGreedy : public OnlineAlgorithmBase<PathGreedy> {
public:
    explicit PathGreedy(PathLcl lcl) : lcl_(std::move(lcl)) {}

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        labels_.resize(vis.n, -1);
        revealed_.resize(vis.n, 0);
        revealed_[view.center] = 1;
        LinearComponent comp = linearize_component(vis, view.center, revealed_, view.locality);
        std::vector<int> inputs, partial;
        int center_pos = -1;
        for (size_t i = 0; i < comp.nodes.size(); ++i) {
            int u = comp.nodes[i];
            inputs.push_back(vis.has_inputs() && !vis.input[u].empty()
                                 ? std::max(lcl_.sigma_id(vis.input[u]), 0)
                                 : 0);
            partial.push_back(labels_[u]);
            if (u == view.center) center_pos = static_cast<int>(i);
        }
        for (int g = 0; g < lcl_.ngamma(); ++g) {
            partial[center_pos] = g;
            bool ok = comp.cyclic
                          ? cycle_completion_exists(lcl_, inputs, partial)
                          : path_completion_exists(lcl_, inputs, partial, comp.left_end,
                                                   comp.right_end);
            if (ok) {
                labels_[view.center] = g;
                return lcl_.gamma[g];
            }
        }
        labels_[view.center] = 0;  // cornered
        return lcl_.gamma[0];
    }

private:
    PathLcl lcl_;
    std::vector<int> labels_;  // by visible id, -1 unlabeled
    std::vector<char> revealed_;
};

}  // namespace

std::unique_ptr<OnlineAlgorithm> make_path_greedy(const PathLcl& lcl) {
    return std::make_unique<PathGreedy>(lcl);
}

// --- speedup wrapper ------------------------------------------------------------------

namespace {

int working_alpha(const PathLcl& lcl) {
    int alpha = pumping_constant(lcl);
    return std::max(alpha, 4 * lcl.radius + 1);
}

// One virtual fragment per ruling-set node: a copy of the real neighborhood,
// padded with pumped filler so the inner algorithm never sees its boundary.
class SpeedupWrapper : public OnlineAlgorithmBase<SpeedupWrapper> {
public:
    SpeedupWrapper(PathLcl lcl, const OnlineAlgorithm& toy, int t_alg, int n_for_sizing)
        : lcl_(std::move(lcl)),
          toy_proto_(toy.clone()),
          t_alg_(t_alg),
          alpha_(working_alpha(lcl_)),
          n_sizing_(n_for_sizing) {}

    SpeedupWrapper(const SpeedupWrapper& o)
        : lcl_(o.lcl_),
          toy_proto_(o.toy_proto_->clone()),
          t_alg_(o.t_alg_),
          alpha_(o.alpha_),
          n_sizing_(o.n_sizing_),
          vs_(o.vs_ ? std::make_unique<OnlineSession>(*o.vs_) : nullptr),
          labels_(o.labels_),
          revealed_(o.revealed_),
          in_r_(o.in_r_),
          fragment_of_(o.fragment_of_),
          fragments_(o.fragments_) {}

    void start(int n, int T_online) override {
        if (T_online < 6 * alpha_) throw std::invalid_argument("wrapper needs locality 6*alpha");
        int sizing = n_sizing_ > 0 ? n_sizing_ : n;
        long long N = 64;
        while ((2LL * sizing * t_alg_) / alpha_ > N / 4 || N < 4LL * (t_alg_ + 4 * alpha_ + 8))
            N *= 2;
        n_virtual_ = N;
        vs_ = std::make_unique<OnlineSession>(*toy_proto_, static_cast<int>(N), t_alg_);
        labels_.clear();
        revealed_.clear();
        in_r_.clear();
        fragment_of_.clear();
        fragments_.clear();
    }

    Label on_reveal(const OnlineView& view) override {
        const Graph& vis = *view.visible;
        int v = view.center;
        labels_.resize(vis.n, -1);
        in_r_.resize(vis.n, 0);
        fragment_of_.resize(vis.n, -1);
        revealed_.resize(vis.n, 0);
        revealed_[v] = 1;

        LinearComponent comp = linearize_component(vis, v, revealed_, view.locality);
        int pos_v = index_of(comp, v);

        // phase 1: ruling set (skip when R intersects B(v, alpha))
        bool near_r = false;
        int nearest_r = -1, nearest_d = -1;
        for (int d = 0; d < static_cast<int>(comp.nodes.size()); ++d) {
            int u = comp.nodes[d];
            if (!in_r_[u]) continue;
            int dist = circular_dist(comp, pos_v, d);
            if (dist <= alpha_) near_r = true;
            if (dist <= 2 * lcl_.radius && (nearest_d < 0 || dist < nearest_d)) {
                nearest_d = dist;
                nearest_r = u;
            }
        }
        bool label_nearby = false;
        for (int d = 0; d < static_cast<int>(comp.nodes.size()); ++d) {
            int u = comp.nodes[d];
            if (labels_[u] >= 0 && u != v &&
                circular_dist(comp, pos_v, d) <= 2 * lcl_.radius + 1)
                label_nearby = true;
        }
        if (!near_r && !label_nearby && !comp.cyclic) {
            in_r_[v] = 1;
            if (build_fragment(vis, comp, pos_v)) {
                nearest_r = v;
                nearest_d = 0;
            }
        } else if (!near_r && !label_nearby && comp.cyclic) {
            in_r_[v] = 1;  // cycles: fragment construction below handles wrap
            if (build_fragment(vis, comp, pos_v)) {
                nearest_r = v;
                nearest_d = 0;
            }
        }

        // phase 2: nodes close to the ruling set take the inner algorithm's label
        if (nearest_r >= 0 && fragment_of_[nearest_r] >= 0 && !label_nearby) {
            const Fragment& f = fragments_[fragment_of_[nearest_r]];
            int offset = signed_offset(comp, index_of(comp, nearest_r), pos_v);
            int idx = f.center_index + offset;
            if (idx >= 0 && idx < static_cast<int>(f.vnodes.size())) {
                Label l = vs_->reveal(f.vnodes[idx]);
                int g = lcl_.gamma_id(l);
                if (g < 0) throw contract_error("inner algorithm used a foreign label");
                labels_[v] = g;
                return l;
            }
        }

        // phase 3: brute-force gap filling (the visible window of the segment)
        std::vector<int> inputs, partial;
        for (size_t i = 0; i < comp.nodes.size(); ++i) {
            int u = comp.nodes[i];
            inputs.push_back(input_of(vis, u));
            partial.push_back(labels_[u]);
        }
        for (int g = 0; g < lcl_.ngamma(); ++g) {
            partial[pos_v] = g;
            bool ok = comp.cyclic ? cycle_completion_exists(lcl_, inputs, partial)
                                  : path_completion_exists(lcl_, inputs, partial, comp.left_end,
                                                           comp.right_end);
            if (ok) {
                labels_[v] = g;
                return lcl_.gamma[g];
            }
        }
        labels_[v] = 0;
        return lcl_.gamma[0];
    }

private:
    struct Fragment {
        std::vector<int> vnodes;  // session ids, in path order
        int center_index = -1;
    };

    int input_of(const Graph& vis, int u) const {
        return vis.has_inputs() && !vis.input[u].empty()
                   ? std::max(lcl_.sigma_id(vis.input[u]), 0)
                   : 0;
    }

    static int index_of(const LinearComponent& comp, int u) {
        for (size_t i = 0; i < comp.nodes.size(); ++i)
            if (comp.nodes[i] == u) return static_cast<int>(i);
        throw std::logic_error("node not in its component");
    }

    static int circular_dist(const LinearComponent& comp, int a, int b) {
        int d = std::abs(a - b);
        if (comp.cyclic) d = std::min(d, static_cast<int>(comp.nodes.size()) - d);
        return d;
    }

    static int signed_offset(const LinearComponent& comp, int from, int to) {
        if (!comp.cyclic) return to - from;
        int n = static_cast<int>(comp.nodes.size());
        int fwd = ((to - from) % n + n) % n;
        return fwd <= n - fwd ? fwd : fwd - n;
    }

    // Fragment inputs: a copy of the visible neighborhood of u, padded with a
    // pumped continuation where the real structure is not yet in evidence.
    bool build_fragment(const Graph& vis, const LinearComponent& comp, int pos_u) {
        int r = lcl_.radius;
        int u = comp.nodes[pos_u];
        int need = t_alg_ + 2 * r + 2;
        std::vector<int> left, right;  // inputs outward from u
        bool left_end = false, right_end = false;
        int csize = static_cast<int>(comp.nodes.size());
        auto grab = [&](int dir, std::vector<int>& out, bool& endflag) {
            for (int step = 1; step <= need; ++step) {
                int idx = pos_u + dir * step;
                if (comp.cyclic) idx = ((idx % csize) + csize) % csize;
                if (!comp.cyclic && (idx < 0 || idx >= csize)) {
                    bool is_end = dir < 0 ? comp.left_end : comp.right_end;
                    if (is_end) {
                        endflag = true;
                        return true;
                    }
                    // pad with pumped continuation; sound for one-symbol inputs
                    if (lcl_.nsigma() > 1) return false;
                    while (static_cast<int>(out.size()) < need) out.push_back(0);
                    return true;
                }
                out.push_back(input_of(vis, comp.nodes[idx]));
            }
            return true;
        };
        if (!grab(-1, left, left_end)) return false;
        if (!grab(+1, right, right_end)) return false;
        if (comp.cyclic && csize <= 2 * need) {
            if (lcl_.nsigma() > 1) return false;  // wrap would need multi-symbol padding
            while (static_cast<int>(left.size()) < need) left.push_back(0);
            while (static_cast<int>(right.size()) < need) right.push_back(0);
        }
        Fragment f;
        std::reverse(left.begin(), left.end());
        std::vector<int> inputs = left;
        f.center_index = static_cast<int>(inputs.size());
        inputs.push_back(input_of(vis, u));
        inputs.insert(inputs.end(), right.begin(), right.end());
        int prev = -1;
        for (int x : inputs) {
            int id = vs_->add_node();
            vs_->set_input(id, lcl_.sigma[x]);
            if (prev >= 0) vs_->add_edge(prev, id);
            prev = id;
            f.vnodes.push_back(id);
        }
        fragments_.push_back(std::move(f));
        fragment_of_[u] = static_cast<int>(fragments_.size()) - 1;
        return true;
    }

    PathLcl lcl_;
    std::unique_ptr<OnlineAlgorithm> toy_proto_;
    int t_alg_;
    int alpha_;
    int n_sizing_;
    long long n_virtual_ = 0;
    std::unique_ptr<OnlineSession> vs_;
    std::vector<int> labels_;
    std::vector<char> revealed_;
    std::vector<char> in_r_;
    std::vector<int> fragment_of_;
    std::vector<Fragment> fragments_;
};

}  // namespace

int speedup_locality(const PathLcl& lcl) { return 6 * working_alpha(lcl); }

std::unique_ptr<OnlineAlgorithm> speedup_online(const PathLcl& lcl, const OnlineAlgorithm& alg,
                                                int T_alg, SpeedupOptions opts) {
    return std::make_unique<SpeedupWrapper>(lcl, alg, T_alg, opts.n_for_sizing);
}

// --- canonical map ---------------------------------------------------------------------

namespace {
std::string iota_key(const std::vector<int>& window) {
    std::string k;
    for (int x : window) k += std::to_string(x) + ",";
    return k;
}
}  // namespace

CanonicalMap build_canonical_map(const PathLcl& lcl, const OnlineAlgorithm& alg, int T) {
    CanonicalMap cm;
    cm.r = lcl.radius;
    cm.beta = T + lcl.radius + 1;
    int width = 2 * cm.beta + 1;
    long long types = 1;
    for (int i = 0; i < width; ++i) {
        types *= lcl.nsigma();
        if (types * 64 > budget().max_nodes)
            throw resource_error("too many input neighborhoods for the probe graph");
    }
    long long copies = 1;
    for (int i = 0; i < 2 * lcl.radius + 1; ++i) copies *= lcl.ngamma();
    ++copies;
    cm.copies_per_input = static_cast<int>(copies);

    // fragment inputs: every input word of the window width, `copies` times
    std::vector<std::vector<int>> words;
    {
        std::vector<int> w(width, 0);
        std::function<void(int)> gen = [&](int i) {
            if (i == width) {
                words.push_back(w);
                return;
            }
            for (int c = 0; c < lcl.nsigma(); ++c) {
                w[i] = c;
                gen(i + 1);
            }
        };
        gen(0);
    }
    for (const auto& w : words)
        for (int c = 0; c < cm.copies_per_input; ++c) cm.fragment_inputs.push_back(w);

    // deterministic probe run
    long long probe_nodes = static_cast<long long>(cm.fragment_inputs.size()) * width;
    if (probe_nodes > budget().max_nodes) throw resource_error("probe graph too large");
    OnlineSession s(alg, static_cast<int>(probe_nodes + 8 * cm.beta + 16), T);
    std::vector<std::vector<int>> frag_vnodes;
    for (const auto& w : cm.fragment_inputs) {
        std::vector<int> ids;
        int prev = -1;
        for (int x : w) {
            int id = s.add_node();
            s.set_input(id, lcl.sigma[x]);
            if (prev >= 0) s.add_edge(prev, id);
            prev = id;
            ids.push_back(id);
        }
        frag_vnodes.push_back(std::move(ids));
    }
    std::vector<std::vector<int>> windows(cm.fragment_inputs.size());
    for (size_t fi = 0; fi < frag_vnodes.size(); ++fi) {
        for (int d = -lcl.radius; d <= lcl.radius; ++d) {
            Label l = s.reveal(frag_vnodes[fi][cm.beta + d]);
            int g = lcl.gamma_id(l);
            if (g < 0) throw contract_error("probe: algorithm used a foreign label");
            windows[fi].push_back(g);
        }
    }
    // pigeonhole: for every input word, at least two fragments share a window
    for (size_t base = 0; base < windows.size(); base += cm.copies_per_input) {
        std::map<std::string, std::vector<int>> group;
        for (int c = 0; c < cm.copies_per_input; ++c) {
            std::string wk = iota_key(windows[base + c]);
            group[wk].push_back(static_cast<int>(base + c));
        }
        const std::vector<int>* twins = nullptr;
        std::vector<int> canonical;
        for (auto& [wk, frags] : group)
            if (frags.size() >= 2 && !twins) {
                twins = &frags;
                canonical = windows[frags[0]];
            }
        if (!twins)
            throw contract_error("pigeonhole failed: algorithm nondeterministic across copies");
        std::string ik = iota_key(cm.fragment_inputs[base]);
        cm.f[ik] = canonical;
        cm.twins[ik] = *twins;
    }
    return cm;
}

// --- fast LOCAL simulation ---------------------------------------------------------------

namespace {

class LogstarLocal : public LocalAlgorithmBase<LogstarLocal> {
public:
    LogstarLocal(PathLcl lcl, CanonicalMap cm, const OnlineAlgorithm& alg, int T)
        : lcl_(std::move(lcl)), cm_(std::move(cm)), alg_(alg.clone()), t_(T) {}
    LogstarLocal(const LogstarLocal& o)
        : lcl_(o.lcl_), cm_(o.cm_), alg_(o.alg_->clone()), t_(o.t_) {}

    Label label(const LocalView& view) override {
        const Graph& g = *view.view;
        if (g.n != view.n_declared)
            throw contract_error("the simulation needs the full graph in view");
        std::string key = fingerprint(g, *view.uids);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, pipeline(g, *view.uids)).first;
        return it->second[view.center];
    }

private:
    std::string fingerprint(const Graph& g, const std::vector<long long>& uids) const {
        std::ostringstream out;
        out << g.n << ";";
        for (int v = 0; v < g.n; ++v) {
            out << uids[v] << ":";
            for (int u : g.adj[v]) out << u << ",";
            if (g.has_inputs()) out << g.input[v];
            out << ";";
        }
        return out.str();
    }

    Labeling pipeline(const Graph& g, const std::vector<long long>& uids) {
        int beta = cm_.beta, r = lcl_.radius;
        std::vector<int> order = linearize_path_graph(g);
        int L = g.n;
        bool cyclic = L > 2 && g.degree(order.front()) == 2;
        std::vector<int> inputs(L);
        std::vector<long long> pos_uid(L);
        for (int i = 0; i < L; ++i) {
            int v = order[i];
            inputs[i] = g.has_inputs() && !g.input[v].empty()
                            ? std::max(lcl_.sigma_id(g.input[v]), 0)
                            : 0;
            pos_uid[i] = uids[v];
        }
        auto cdist = [&](int a, int b) {
            int d = std::abs(a - b);
            return cyclic ? std::min(d, L - d) : d;
        };
        // distance-2beta coloring: greedy color reduction in identifier order
        std::vector<int> color(L, -1), by_uid(L);
        for (int i = 0; i < L; ++i) by_uid[i] = i;
        std::sort(by_uid.begin(), by_uid.end(),
                  [&](int a, int b) { return pos_uid[a] < pos_uid[b]; });
        for (int i : by_uid) {
            std::set<int> used;
            for (int j = 0; j < L; ++j)
                if (j != i && cdist(i, j) <= 2 * beta && color[j] >= 0) used.insert(color[j]);
            int c = 0;
            while (used.count(c)) ++c;
            color[i] = c;
        }
        // ruling set scheduled by (color, uid); prune near path ends
        std::vector<int> sched(L);
        for (int i = 0; i < L; ++i) sched[i] = i;
        std::sort(sched.begin(), sched.end(), [&](int a, int b) {
            return std::make_pair(color[a], pos_uid[a]) < std::make_pair(color[b], pos_uid[b]);
        });
        std::vector<char> in_r(L, 0);
        std::vector<int> rset;
        for (int i : sched) {
            bool blocked = false;
            for (int j : rset)
                if (cdist(i, j) <= 2 * beta) blocked = true;  // spacing >= 2beta+1
            if (!cyclic && (i < beta || i >= L - beta)) continue;  // pruning
            if (!blocked) {
                in_r[i] = 1;
                rset.push_back(i);
            }
        }
        std::sort(rset.begin(), rset.end());
        // canonical stamps
        std::vector<int> out(L, -1);
        std::vector<std::string> stamp_key(L);
        for (int u : rset) {
            std::vector<int> iw;
            for (int d = -beta; d <= beta; ++d) {
                int idx = cyclic ? ((u + d) % L + L) % L : u + d;
                iw.push_back(inputs[idx]);
            }
            std::string ik = iota_key(iw);
            auto it = cm_.f.find(ik);
            if (it == cm_.f.end()) throw contract_error("input window missing from the map");
            stamp_key[u] = ik;
            for (int d = -r; d <= r; ++d) {
                int idx = cyclic ? ((u + d) % L + L) % L : u + d;
                out[idx] = it->second[d + r];
            }
        }
        // gaps between consecutive stamped zones, filled by resuming the
        // algorithm on the probe graph
        if (rset.empty()) {
            fill_whole(inputs, cyclic, out);
        } else {
            for (size_t gi = 0; gi < rset.size(); ++gi) {
                int u = rset[gi];
                int w = (gi + 1 < rset.size()) ? rset[gi + 1] : (cyclic ? rset[0] : -1);
                if (w >= 0) {
                    int dist = w - u;
                    if (cyclic && dist <= 0) dist += L;
                    fill_gap(inputs, cyclic, L, u, w, dist, stamp_key[u], stamp_key[w], out);
                }
            }
            if (!cyclic) {
                fill_end_gap(inputs, rset.front(), stamp_key[rset.front()], true, out);
                fill_end_gap(inputs, rset.back(), stamp_key[rset.back()], false, out);
            }
        }
        Labeling result(L);
        for (int i = 0; i < L; ++i) {
            if (out[i] < 0) throw contract_error("simulation left a node unlabeled");
            result[order[i]] = lcl_.gamma[out[i]];
        }
        return result;
    }

    // fresh probe session, replayed deterministically
    OnlineSession probe_session(std::vector<std::vector<int>>& frag_vnodes) {
        long long probe_nodes =
            static_cast<long long>(cm_.fragment_inputs.size()) * (2 * cm_.beta + 1);
        OnlineSession s(*alg_, static_cast<int>(probe_nodes + 64 * cm_.beta + 64), t_);
        frag_vnodes.clear();
        for (const auto& wdata : cm_.fragment_inputs) {
            std::vector<int> ids;
            int prev = -1;
            for (int x : wdata) {
                int id = s.add_node();
                s.set_input(id, lcl_.sigma[x]);
                if (prev >= 0) s.add_edge(prev, id);
                prev = id;
                ids.push_back(id);
            }
            frag_vnodes.push_back(std::move(ids));
        }
        for (const auto& ids : frag_vnodes)
            for (int d = -lcl_.radius; d <= lcl_.radius; ++d) s.reveal(ids[cm_.beta + d]);
        return s;
    }

    void fill_gap(const std::vector<int>& inputs, bool cyclic, int L, int u, int /*w*/, int dist,
                  const std::string& ik_u, const std::string& ik_w, std::vector<int>& out) {
        int r = lcl_.radius, beta = cm_.beta;
        if (dist <= 2 * r) return;  // zones already touch
        std::vector<std::vector<int>> frag_vnodes;
        OnlineSession s = probe_session(frag_vnodes);
        int fu = cm_.twins.at(ik_u)[0];
        int fw = cm_.twins.at(ik_w).size() > 1 && cm_.twins.at(ik_w)[0] == fu
                     ? cm_.twins.at(ik_w)[1]
                     : cm_.twins.at(ik_w)[0];
        if (fu == fw) fw = cm_.twins.at(ik_w)[1];
        // connect the two fragments at the exact real distance
        int chain = dist - 2 * beta - 1;
        if (chain < 0) throw contract_error("ruling nodes closer than the fragment radius");
        int prev = frag_vnodes[fu].back();
        for (int i = 0; i < chain; ++i) {
            int idx = cyclic ? (u + beta + 1 + i) % L : u + beta + 1 + i;
            int id = s.add_node();
            s.set_input(id, lcl_.sigma[inputs[idx]]);
            s.add_edge(prev, id);
            prev = id;
            frag_chain_.push_back(id);
        }
        s.add_edge(prev, frag_vnodes[fw].front());
        // reveal everything strictly between the stamped zones
        for (int off = r + 1; off < dist - r; ++off) {
            int vid;
            if (off <= beta)
                vid = frag_vnodes[fu][cm_.beta + off];
            else if (off < dist - beta)
                vid = frag_chain_[off - beta - 1];
            else
                vid = frag_vnodes[fw][cm_.beta - (dist - off)];
            Label l = s.reveal(vid);
            int gidx = lcl_.gamma_id(l);
            if (gidx < 0) throw contract_error("resumption used a foreign label");
            int idx = cyclic ? (u + off) % L : u + off;
            out[idx] = gidx;
        }
        frag_chain_.clear();
    }

    void fill_end_gap(const std::vector<int>& inputs, int u, const std::string& ik_u, bool left,
                      std::vector<int>& out) {
        int r = lcl_.radius, beta = cm_.beta;
        int L = static_cast<int>(inputs.size());
        int gap_len = left ? u - r : (L - 1 - u) - r;  // unlabeled run beyond the zone
        if (gap_len <= 0) return;
        std::vector<std::vector<int>> frag_vnodes;
        OnlineSession s = probe_session(frag_vnodes);
        int fu = cm_.twins.at(ik_u)[0];
        // extend the fragment to a true end replicating the real inputs
        int real_extent = left ? u : L - 1 - u;  // distance to the path end
        int extra = real_extent - beta;          // nodes beyond the fragment boundary
        int prev = left ? frag_vnodes[fu].front() : frag_vnodes[fu].back();
        std::vector<int> ext;
        for (int i = 1; i <= extra; ++i) {
            int idx = left ? u - beta - i : u + beta + i;
            int id = s.add_node();
            s.set_input(id, lcl_.sigma[inputs[idx]]);
            s.add_edge(prev, id);
            prev = id;
            ext.push_back(id);
        }
        for (int off = r + 1; off <= real_extent; ++off) {
            int vid;
            if (off <= beta)
                vid = frag_vnodes[fu][cm_.beta + (left ? -off : off)];
            else
                vid = ext[off - beta - 1];
            Label l = s.reveal(vid);
            int gidx = lcl_.gamma_id(l);
            if (gidx < 0) throw contract_error("resumption used a foreign label");
            out[left ? u - off : u + off] = gidx;
        }
    }

    void fill_whole(const std::vector<int>& inputs, bool cyclic, std::vector<int>& out) {
        // no ruling node (the instance is smaller than the pruning margin):
        // run the algorithm on a fresh isomorphic replica and copy its output
        int L = static_cast<int>(inputs.size());
        OnlineSession s(*alg_, L, t_);
        std::vector<int> ids;
        int prev = -1;
        for (int i = 0; i < L; ++i) {
            int id = s.add_node();
            s.set_input(id, lcl_.sigma[inputs[i]]);
            if (prev >= 0) s.add_edge(prev, id);
            prev = id;
            ids.push_back(id);
        }
        if (cyclic) s.add_edge(ids.back(), ids.front());
        for (int i = 0; i < L; ++i) {
            Label l = s.reveal(ids[i]);
            int gidx = lcl_.gamma_id(l);
            if (gidx < 0) throw contract_error("replica run used a foreign label");
            out[i] = gidx;
        }
    }

    PathLcl lcl_;
    CanonicalMap cm_;
    std::unique_ptr<OnlineAlgorithm> alg_;
    int t_;
    std::map<std::string, Labeling> cache_;
    std::vector<int> frag_chain_;
};

}  // namespace

std::unique_ptr<LocalAlgorithm> logstar_local(const PathLcl& lcl, const CanonicalMap& cmap,
                                              const OnlineAlgorithm& alg, int T) {
    return std::make_unique<LogstarLocal>(lcl, cmap, alg, T);
}

}  // namespace lab
