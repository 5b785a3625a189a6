#include "doctest.h"

#include <random>

#include "rht/les.hpp"
#include "rht/minimal_model.hpp"
#include "rht/spaces.hpp"

using namespace rht;

namespace {

LESInstance instance_from_rows(int n, std::vector<std::optional<int>> b,
                               std::vector<std::optional<int>> e,
                               std::vector<std::optional<int>> f) {
    LESInstance inst;
    inst.max_degree = n;
    b.insert(b.begin(), std::nullopt);  // 1-based
    e.insert(e.begin(), std::nullopt);
    f.insert(f.begin(), std::nullopt);
    inst.dims_B = std::move(b);
    inst.dims_E = std::move(e);
    inst.dims_F = std::move(f);
    return inst;
}

RankSequence make_ranks(std::vector<int> ranks, int formal_dim) {
    RankSequence r;
    r.truncation = static_cast<int>(ranks.size()) - 1;
    r.ranks = std::move(ranks);
    r.formal_dimension = formal_dim;
    return r;
}

}  // namespace

TEST_CASE("short exact sequence pins the unknown") {
    // 0 -> A -> B -> C -> 0 over two degrees with zero tails
    LESInstance inst = instance_from_rows(2, {1, 0}, {3, 0}, {std::nullopt, 0});
    LESSolution sol = solve_les(inst);
    CHECK(sol.F[1].interval.lo == 2);
    CHECK(sol.F[1].interval.hi == 2);
    REQUIRE(sol.F[1].lo_witness.has_value());
    CHECK(!witness_violation(inst, *sol.F[1].lo_witness).has_value());
}

TEST_CASE("segment flanked by vanishing total-space entries") {
    // interior segment with dims (B:5, E:0, F:?, B':8, E':0): exactness
    // makes F -> B' an isomorphism, so F = 8 by the two rank equations at
    // the flanking nodes (the 5 constrains the previous fiber entry instead)
    LESInstance inst = instance_from_rows(
        3, {std::nullopt, 5, 8}, {std::nullopt, 0, 0},
        {std::nullopt, std::nullopt, std::nullopt});
    LESSolution sol = solve_les(inst);
    CHECK(sol.F[2].interval.lo == 8);
    CHECK(sol.F[2].interval.hi == 8);
    // the fiber entry one degree down is forced to at least 5
    CHECK(sol.F[1].interval.lo == 5);
    // the trailing fiber entry has no finite upper bound
    CHECK(!sol.F[3].interval.hi.has_value());
    CHECK(sol.any_unbounded);
}

TEST_CASE("fully unknown instances stay unbounded") {
    LESInstance inst = instance_from_rows(
        2, {std::nullopt, std::nullopt}, {std::nullopt, std::nullopt},
        {std::nullopt, std::nullopt});
    LESSolution sol = solve_les(inst);
    CHECK(sol.any_unbounded);
    for (int k = 1; k <= 2; ++k) {
        CHECK(sol.B[k].interval.lo == 0);
        CHECK(!sol.B[k].interval.hi.has_value());
        CHECK(!sol.F[k].interval.hi.has_value());
    }
}

TEST_CASE("infeasible instances report the violated segment") {
    // B_1 = 1 must inject into E_1 = 0: impossible
    LESInstance inst = instance_from_rows(1, {1}, {0}, {0});
    CHECK_THROWS_AS(solve_les(inst), InfeasibleError);
    try {
        solve_les(inst);
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("Pi^1") != std::string::npos);
    }
}

TEST_CASE("zero-map annotations force ranks to zero") {
    // with B -> E annotated zero, B_1 = 2 must land entirely in F_0... the
    // sequence starts at B_1, so the annotation makes the instance infeasible
    LESInstance inst = instance_from_rows(1, {2}, {2}, {std::nullopt});
    inst.zero_b_to_e = {1};
    CHECK_THROWS_AS(solve_les(inst), InfeasibleError);
    // without the annotation it is fine
    LESInstance ok = instance_from_rows(1, {2}, {2}, {std::nullopt});
    LESSolution sol = solve_les(ok);
    CHECK(sol.F[1].interval.lo == 0);
}

TEST_CASE("random feasible instances are certified (randomized)") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> rank(0, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = 2 + iter % 4;
        int nnodes = 3 * n;
        // ground truth: random map ranks, dims forced by exactness
        std::vector<long long> ranks(nnodes), dims(nnodes);
        for (int p = 0; p < nnodes; ++p)
            ranks[p] = rank(rng);
        for (int p = 0; p < nnodes; ++p)
            dims[p] = (p > 0 ? ranks[p - 1] : 0) + ranks[p];
        LESInstance inst;
        inst.max_degree = n;
        inst.dims_B.assign(n + 1, std::nullopt);
        inst.dims_E.assign(n + 1, std::nullopt);
        inst.dims_F.assign(n + 1, std::nullopt);
        for (int p = 0; p < nnodes; ++p) {
            if (coin(rng)) {
                int k = p / 3 + 1;
                int v = static_cast<int>(dims[p]);
                if (p % 3 == 0)
                    inst.dims_B[k] = v;
                else if (p % 3 == 1)
                    inst.dims_E[k] = v;
                else
                    inst.dims_F[k] = v;
            }
        }
        LESSolution sol = solve_les(inst);
        for (int p = 0; p < nnodes; ++p) {
            int k = p / 3 + 1;
            const EntrySolution& e =
                p % 3 == 0 ? sol.B[k] : p % 3 == 1 ? sol.E[k] : sol.F[k];
            // the ground truth lies inside every reported interval
            CHECK(e.interval.lo <= dims[p]);
            if (e.interval.hi)
                CHECK(dims[p] <= *e.interval.hi);
            // endpoints of unknown entries carry valid witnesses
            if (e.lo_witness)
                CHECK(!witness_violation(inst, *e.lo_witness).has_value());
            if (e.hi_witness)
                CHECK(!witness_violation(inst, *e.hi_witness).has_value());
        }
    }
}

TEST_CASE("instance documents parse") {
    const char* doc = R"(
# evaluation fibration ranks
degrees 3
B = 0 5 0
E = 0 0 ?
F = ? ? ?
zero B->E 2
cat 2
)";
    LESInstance inst = LESInstance::parse_document(doc);
    CHECK(inst.max_degree == 3);
    CHECK(inst.dims_B[2] == 5);
    CHECK(!inst.dims_E[3].has_value());
    CHECK(inst.zero_b_to_e == std::vector<int>{2});
    REQUIRE(inst.budget.has_value());
    CHECK(inst.budget->total == 2);
    CHECK_THROWS_AS(LESInstance::parse_document("B = 1 2"), ParseError);
    CHECK_THROWS_AS(LESInstance::parse_document("degrees 2\nB = 1"), ParseError);
    CHECK_THROWS_AS(LESInstance::parse_document("degrees 2\nzero E->F 1"), ParseError);
}

TEST_CASE("isotropy bounds: even degrees are never shaved") {
    // rank 8 at the even degree 4: bound(3) = 8 under any budget
    RankSequence r = make_ranks({0, 0, 0, 0, 8, 0, 0, 0, 0}, 4);
    for (int budget : {0, 1, 2, 5}) {
        BoundReport b =
            isotropy_lower_bounds(r, GottliebBudget{budget, CatBound::user(5)});
        CHECK(b.bounds[3] == 8);
        CHECK(b.allowance[4] == 0);
    }
}

TEST_CASE("isotropy bounds on the 2-sphere") {
    RankSequence r = pi_ranks(build_minimal_model(sphere(2), 8));
    BoundReport b = isotropy_lower_bounds(r, GottliebBudget::from_cat(CatBound::user(1)));
    // all bounds vanish beyond degree 3 (and bound(2) is shaved to zero)
    for (int k = 2; k <= 7; ++k)
        CHECK(b.bounds[k] == 0);
    CHECK(b.bounds[1] == 1);
    CHECK(b.k0 == 3);
    CHECK(b.exhausted_within_window);
}

TEST_CASE("zero budget reproduces the shifted sequence (randomized)") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> rank(0, 5);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> ranks(10, 0);
        for (int k = 2; k <= 9; ++k)
            ranks[k] = rank(rng);
        RankSequence r = make_ranks(ranks, 4);
        BoundReport b = isotropy_lower_bounds(r, GottliebBudget::zero());
        for (int k = 1; k <= 8; ++k)
            CHECK(b.bounds[k] == r.at(k + 1));
        CHECK(b.total_shaved == 0);
    }
}

TEST_CASE("total shaving is bounded by the budget and avoids even degrees") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> rank(0, 5);
    std::uniform_int_distribution<int> cat(1, 4);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> ranks(12, 0);
        for (int k = 2; k <= 11; ++k)
            ranks[k] = rank(rng);
        RankSequence r = make_ranks(ranks, 4);
        int c = cat(rng);
        BoundReport b = isotropy_lower_bounds(r, GottliebBudget::from_cat(CatBound::user(c)));
        int shaved = 0;
        for (int j = 1; j <= 11; ++j) {
            shaved += b.allowance[j];
            if (j % 2 == 0)
                CHECK(b.allowance[j] == 0);
        }
        CHECK(shaved == b.total_shaved);
        CHECK(shaved <= c);
        for (int k = 1; k <= 10; ++k)
            CHECK(b.bounds[k] == std::max(0, r.at(k + 1) - b.allowance[k + 1]));
        // past exhaustion the bounds equal the shifted sequence exactly
        if (b.exhausted_within_window)
            for (int k = b.k0; k <= 10; ++k)
                CHECK(b.bounds[k] == r.at(k + 1));
    }
}

TEST_CASE("blow-up scenario") {
    FiniteDGA sum3 = four_manifold(IntersectionForm::diagonal({1, 1, 1}));
    RankSequence r = pi_ranks(build_minimal_model(sum3, 8));
    BlowupReport rep = blowup_scenario(r, 3, CatBound::four_manifold_default());
    // the structure-group sequence is exactly (1, 0, 1, 0, 0, ...)
    REQUIRE(static_cast<int>(rep.structure_group_ranks.size()) == 9);
    for (int k = 1; k <= 8; ++k)
        CHECK(rep.structure_group_ranks[k] == ((k == 1 || k == 3) ? 1 : 0));
    // positive bounds in every degree k >= k0 with ranks[k+1] > 0
    for (int k = rep.bounds.k0; k <= 7; ++k)
        if (r.at(k + 1) > 0)
            CHECK(rep.bounds.bounds[k] > 0);
    CHECK(rep.unbounded_cumulative_growth);
    CHECK(rep.degree2_note.find("Chern") != std::string::npos);

    // elliptic input with b2 = 2 is rejected
    FiniteDGA h = four_manifold(parse_intersection_form("[[0,1],[1,0]]"));
    RankSequence rh = pi_ranks(build_minimal_model(h, 8));
    CHECK_THROWS_AS(blowup_scenario(rh, 2, CatBound::four_manifold_default()),
                    PreconditionError);
}

TEST_CASE("shrinking an entry below its minimum is infeasible (randomized)") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> rank(0, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    int spot_checks = 0;
    for (int iter = 0; iter < 300 && spot_checks < 60; ++iter) {
        int n = 2 + iter % 3;
        int nnodes = 3 * n;
        std::vector<long long> ranks(nnodes), dims(nnodes);
        for (int p = 0; p < nnodes; ++p)
            ranks[p] = rank(rng);
        for (int p = 0; p < nnodes; ++p)
            dims[p] = (p > 0 ? ranks[p - 1] : 0) + ranks[p];
        LESInstance inst;
        inst.max_degree = n;
        inst.dims_B.assign(n + 1, std::nullopt);
        inst.dims_E.assign(n + 1, std::nullopt);
        inst.dims_F.assign(n + 1, std::nullopt);
        for (int p = 0; p < nnodes; ++p)
            if (coin(rng)) {
                int k = p / 3 + 1;
                int v = static_cast<int>(dims[p]);
                if (p % 3 == 0)
                    inst.dims_B[k] = v;
                else if (p % 3 == 1)
                    inst.dims_E[k] = v;
                else
                    inst.dims_F[k] = v;
            }
        LESSolution sol = solve_les(inst);
        for (int p = 0; p < nnodes; ++p) {
            int k = p / 3 + 1;
            auto& row = p % 3 == 0 ? inst.dims_B : p % 3 == 1 ? inst.dims_E : inst.dims_F;
            const EntrySolution& e =
                p % 3 == 0 ? sol.B[k] : p % 3 == 1 ? sol.E[k] : sol.F[k];
            if (row[k].has_value() || e.interval.lo == 0)
                continue;
            LESInstance pinched = inst;
            auto& prow = p % 3 == 0 ? pinched.dims_B
                         : p % 3 == 1 ? pinched.dims_E
                                      : pinched.dims_F;
            prow[k] = static_cast<int>(e.interval.lo - 1);
            CHECK_THROWS_AS(solve_les(pinched), InfeasibleError);
            ++spot_checks;
            break;
        }
    }
    CHECK(spot_checks >= 40);
}
