#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lab/graph.hpp"
#include "lab/models.hpp"

namespace lab {

// --- Window-checkable LCLs on paths and cycles ---------------------------------

// A labeling is valid iff every radius-r window (clipped at true path ends)
// belongs to the accepted set. The set is stored explicitly and closed under
// reversal, so verification is orientation-independent.
struct PathLcl {
    std::vector<std::string> sigma;  // input alphabet
    std::vector<std::string> gamma;  // output labels
    int radius = 1;
    std::set<std::string> accepted;  // encoded windows

    int sigma_id(const std::string& s) const;
    int gamma_id(const std::string& s) const;
    int nsigma() const { return static_cast<int>(sigma.size()); }
    int ngamma() const { return static_cast<int>(gamma.size()); }

    static std::string window_key(const std::vector<std::pair<int, int>>& cells, int center);
    // pred(inputs, outputs, center) receives one clipped window
    static PathLcl from_predicate(
        std::vector<std::string> sigma, std::vector<std::string> gamma, int r,
        const std::function<bool(const std::vector<int>&, const std::vector<int>&, int)>& pred);
    bool window_ok(const std::vector<std::pair<int, int>>& cells, int center) const;

    std::string format() const;
    static PathLcl parse(const std::string& text);
};

// proper k-coloring, ignoring inputs
PathLcl path_coloring(int colors, int r = 1);
// Two-symbol-input fixture: proper 3-coloring where input "b" forbids label 0.
PathLcl input_restricted_coloring();
// single always-accepting label
PathLcl trivial_path_problem();

// Linearized instance: a path (or cycle) given by inputs along positions.
struct PathInstance {
    std::vector<int> inputs;  // sigma ids per position
    bool cyclic = false;
};

std::vector<Violation> verify_path(const PathLcl& lcl, const PathInstance& p,
                                   const std::vector<int>& out);
// graph form: g must be a path or cycle; inputs read from g.input
std::vector<Violation> verify_path_graph(const PathLcl& lcl, const Graph& g, const Labeling& out);
// node order of the underlying path/cycle of g
std::vector<int> linearize_path_graph(const Graph& g);

// Feasibility of completing a partial labeling (-1 = free). Boundary flags
// say whether position 0 / last is a true path end (then clipped windows are
// checked) or a free cut (windows reaching past it are skipped).
bool path_completion_exists(const PathLcl& lcl, const std::vector<int>& inputs,
                            const std::vector<int>& partial, bool left_end, bool right_end);
bool cycle_completion_exists(const PathLcl& lcl, const std::vector<int>& inputs,
                             const std::vector<int>& partial);
// lexicographically-least completion (empty optional if none)
std::optional<std::vector<int>> path_complete_lex(const PathLcl& lcl,
                                                  const std::vector<int>& inputs,
                                                  const std::vector<int>& partial, bool left_end,
                                                  bool right_end);

// --- Segments and their equivalence classes ---------------------------------------

struct Segment {
    std::vector<int> inputs;
    bool left_end = false, right_end = false;
    int size() const { return static_cast<int>(inputs.size()); }
};

struct Tripartition {
    std::vector<int> d1, d2, d3;  // position indices
};
Tripartition tripartition(const PathLcl& lcl, int segment_len);

// Endpoint-zone inputs plus the boundary-labeling extendability table.
// Equal keys realize the segment-equivalence relation.
struct SegmentClass {
    std::string key;
    bool operator==(const SegmentClass& o) const { return key == o.key; }
    bool operator!=(const SegmentClass& o) const { return key != o.key; }
};
SegmentClass segment_class(const PathLcl& lcl, const Segment& s);

// Smallest alpha such that every segment of length >= alpha has an infinite
// class, searched up to a horizon; throws resource_error with a partial bound
// when the horizon is hit first.
int pumping_constant(const PathLcl& lcl, int horizon = 512);

// A longer segment with the same class (class preservation is re-verified).
Segment pump_segment(const PathLcl& lcl, const Segment& s, int min_len);

// Replace positions [from,to) of the instance with the class-equal segment,
// keeping the labeling outside and re-deriving the interior.
struct ReplacedPath {
    PathInstance instance;
    std::vector<int> labeling;
};
ReplacedPath replace_and_extend(const PathLcl& lcl, const PathInstance& p,
                                const std::vector<int>& labeling, int from, int to,
                                const Segment& replacement);

// Greedy online ruling set: skip when R intersects B(v, beta); needs
// alpha <= beta+1.
NodeSet ruling_set(const Graph& g, int alpha, int beta, const std::vector<int>& order);

// --- baseline online algorithm for path LCLs ----------------------------------------

// Least label keeping the revealed component completable; view boundaries are
// treated as free unless a true end is in evidence.
std::unique_ptr<OnlineAlgorithm> make_path_greedy(const PathLcl& lcl);

// --- speedup to constant locality ----------------------------------------------------

struct SpeedupOptions {
    int n_for_sizing = 0;  // real instance size used in the virtual-size formula
};

// Wraps an online algorithm of locality T_alg into a locality-6*alpha~
// algorithm (alpha~ = max(alpha, 4r+1)): ruling set, simulation of the inner
// algorithm on a pumped virtual path, and per-segment brute-force gap filling.
std::unique_ptr<OnlineAlgorithm> speedup_online(const PathLcl& lcl, const OnlineAlgorithm& alg,
                                                int T_alg, SpeedupOptions opts = {});
int speedup_locality(const PathLcl& lcl);  // 6 * alpha~

// --- canonical maps and the fast LOCAL simulation -------------------------------------

struct CanonicalMap {
    int beta = 0;  // T + r + 1
    int r = 1;
    int copies_per_input = 0;  // |Gamma|^(2r+1) + 1
    // input key (beta-window) -> canonical output window of width 2r+1
    std::map<std::string, std::vector<int>> f;
    // per input key: indices of probe fragments realizing the canonical window
    std::map<std::string, std::vector<int>> twins;
    std::vector<std::vector<int>> fragment_inputs;  // per fragment
};

CanonicalMap build_canonical_map(const PathLcl& lcl, const OnlineAlgorithm& alg, int T);

// LOCAL algorithm: distance-2beta coloring (greedy color reduction by
// identifier order), pruned (2beta,5beta)-ruling set, canonical stamps, and
// per-gap resumption of the online algorithm on the probe graph.
std::unique_ptr<LocalAlgorithm> logstar_local(const PathLcl& lcl, const CanonicalMap& cmap,
                                              const OnlineAlgorithm& alg, int T);

}  // namespace lab
