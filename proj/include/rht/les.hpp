#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rht/dichotomy.hpp"

namespace rht {

// Finite-total-dimension constraint on the evaluation image: even degrees
// contribute nothing, odd degrees share a total budget (at most cat for a
// space of finite category; zero models pure exactness).
struct GottliebBudget {
    int total = 0;
    CatBound cat;

    static GottliebBudget from_cat(const CatBound& c) { return {c.value, c}; }
    static GottliebBudget zero() { return {0, CatBound::user(1)}; }
};

// Rank problem for the dual-homotopy long exact sequence of a fibration
// F -> E -> B over degrees 1..N:
//   0 -> B_1 -> E_1 -> F_1 -> B_2 -> E_2 -> ...
// dims are known nonnegative integers or unknown; zero-map annotations say
// the map B_k -> E_k vanishes.
struct LESInstance {
    int max_degree = 0;
    // index 1..max_degree; nullopt = unknown
    std::vector<std::optional<int>> dims_B, dims_E, dims_F;
    std::vector<int> zero_b_to_e;
    std::optional<GottliebBudget> budget;

    static LESInstance parse_document(std::istream& in);
    static LESInstance parse_document(const std::string& text);
};

struct IntervalBound {
    long long lo = 0;
    std::optional<long long> hi;  // nullopt = unbounded above

    bool pinned() const { return hi && *hi == lo; }
};

// One full feasible rank assignment: dims for every node and ranks for every
// map (map p goes from node p to node p+1 in the flattened sequence).
struct LESWitness {
    std::vector<long long> dims;   // 3*N node dims, flattened (B_k,E_k,F_k)
    std::vector<long long> ranks;  // 3*N map ranks; last = outgoing of F_N
};

struct EntrySolution {
    IntervalBound interval;
    std::optional<LESWitness> lo_witness;
    std::optional<LESWitness> hi_witness;
};

struct LESSolution {
    int max_degree = 0;
    std::vector<EntrySolution> B, E, F;  // index 1..max_degree
    bool any_unbounded = false;
};

// Tightest per-entry integer intervals consistent with exactness
// (dim node = rank in + rank out), rank caps and zero-map annotations, by
// interval propagation to a fixed point; each finite endpoint is certified
// with a witness assignment. Throws InfeasibleError naming the violated
// constraint segment.
LESSolution solve_les(const LESInstance& instance);

// empty if the witness satisfies the instance; otherwise a description of
// the violated constraint
std::optional<std::string> witness_violation(const LESInstance& instance,
                                             const LESWitness& w);

// Lower bounds for the fiber ranks of an evaluation fibration with base
// ranks ranks_X: bound(k) = ranks_X[k+1] minus the worst-case evaluation
// allowance at degree k+1. The worst case places the budget at the lowest
// odd degrees, so cumulative bounds are valid under every allocation; past
// the exhaustion degree k0 the bounds equal the shifted sequence exactly.
struct BoundReport {
    int max_degree = 0;                // bounds carried for k = 1..max_degree-1
    std::vector<int> bounds;           // index k (0 unused)
    std::vector<int> allowance;        // index by degree 1..max_degree
    int k0 = 0;                        // first degree with the budget exhausted
    bool exhausted_within_window = false;
    int total_shaved = 0;
    int cat = 0;
};

BoundReport isotropy_lower_bounds(const RankSequence& ranks_X, const GottliebBudget& budget);

// Rank skeleton of the blow-up argument: the structure-group rank sequence
// (degrees 1 and 3), surjectivity away from degree 2 (degree 4 included,
// degree 2 flagged as Chern-class dependent), chained through the isotropy
// bounds. Requires b2 > 2.
struct BlowupReport {
    int b2 = 0;
    std::vector<int> structure_group_ranks;  // index 1..max_degree
    BoundReport bounds;
    std::string degree2_note;
    std::vector<long long> cumulative_bounds;  // over k = 1..max_degree-1
    bool unbounded_cumulative_growth = false;  // strictly increasing past k0
};

BlowupReport blowup_scenario(const RankSequence& ranks_M, int b2, const CatBound& cat);

}  // namespace rht
