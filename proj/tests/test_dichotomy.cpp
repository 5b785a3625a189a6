#include "doctest.h"

#include <random>

#include "rht/dichotomy.hpp"
#include "rht/minimal_model.hpp"
#include "rht/spaces.hpp"

using namespace rht;

namespace {

RankSequence make_ranks(std::vector<int> ranks, int formal_dim) {
    RankSequence r;
    r.truncation = static_cast<int>(ranks.size()) - 1;
    r.ranks = std::move(ranks);
    r.formal_dimension = formal_dim;
    return r;
}

BettiData make_betti(std::vector<int> b) {
    return BettiData{std::move(b)};
}

}  // namespace

TEST_CASE("euler characteristic examples") {
    CHECK(euler_characteristic(make_betti({1, 0, 3, 0, 1})) == 5);   // three summands
    CHECK(euler_characteristic(betti_data(product(sphere(2), sphere(2)))) == 4);
    CHECK(euler_characteristic(make_betti({1, 0, 1, 4, 1})) == -1);
}

TEST_CASE("classifier verdicts on model output") {
    // rank-3 diagonal form: hyperbolic with an even-rank witness at degree 2
    FiniteDGA sum3 = four_manifold(IntersectionForm::diagonal({1, 1, 1}));
    RankSequence r3 = pi_ranks(build_minimal_model(sum3, 8));
    DichotomyVerdict v3 = classify(r3, betti_data(sum3), CatBound::four_manifold_default());
    CHECK(v3.verdict == Verdict::Hyperbolic);
    REQUIRE(v3.witness.has_value());
    CHECK(v3.witness->kind == "even-rank");
    CHECK(v3.witness->degree == 2);
    CHECK(v3.witness->lhs == 3);
    CHECK(v3.witness->rhs == 2);

    // the hyperbolic form (product of two 2-spheres): elliptic at window >= 8
    FiniteDGA h = four_manifold(parse_intersection_form("[[0,1],[1,0]]"));
    RankSequence rh = pi_ranks(build_minimal_model(h, 8));
    DichotomyVerdict vh = classify(rh, betti_data(h), CatBound::four_manifold_default());
    CHECK(vh.verdict == Verdict::Elliptic);
    CHECK(vh.even_total == 2);
    CHECK(vh.odd_total == 2);
    CHECK(!vh.stabilization_note.empty());

    // the 2-sphere with cat = 1
    RankSequence rs = pi_ranks(build_minimal_model(sphere(2), 8));
    DichotomyVerdict vs = classify(rs, betti_data(sphere(2)), CatBound::user(1));
    CHECK(vs.verdict == Verdict::Elliptic);
}

TEST_CASE("negative euler characteristic flags hyperbolic") {
    RankSequence r = make_ranks({0, 0, 1, 0, 0, 0, 0, 0, 0}, 4);
    DichotomyVerdict v = classify(r, make_betti({1, 0, 1, 4, 1}), CatBound::user(10));
    CHECK(v.verdict == Verdict::Hyperbolic);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == "euler");
}

TEST_CASE("inconclusive outcomes carry the binding constraint") {
    // generous cat: no violation, but generators keep appearing
    FiniteDGA sum3 = four_manifold(IntersectionForm::diagonal({1, 1, 1}));
    RankSequence r = pi_ranks(build_minimal_model(sum3, 8));
    DichotomyVerdict v = classify(r, betti_data(sum3), CatBound::user(1000));
    CHECK(v.verdict == Verdict::Inconclusive);
    CHECK(!v.binding_constraint.empty());

    // truncation below 2n (formal dimension 4, window needs degree 8)
    RankSequence shallow = pi_ranks(build_minimal_model(projective(2), 5));
    DichotomyVerdict v2 = classify(shallow, betti_data(projective(2)), CatBound::user(2));
    CHECK(v2.verdict == Verdict::Inconclusive);
    CHECK(v2.binding_constraint.find("truncation") != std::string::npos);

    // insufficient data rejected outright
    RankSequence below = make_ranks({0, 0, 1}, 4);
    CHECK_THROWS_AS(classify(below, make_betti({1, 0, 1, 0, 1}), CatBound::user(2)),
                    PreconditionError);
}

TEST_CASE("witness numbers re-check against the raw sequence") {
    FiniteDGA sum3 = four_manifold(IntersectionForm::diagonal({1, 1, 1}));
    RankSequence r = pi_ranks(build_minimal_model(sum3, 8));
    DichotomyVerdict v = classify(r, betti_data(sum3), CatBound::four_manifold_default());
    REQUIRE(v.witness.has_value());
    long long even = 0;
    for (int k = 2; k <= v.witness->degree; k += 2)
        even += r.at(k);
    CHECK(even == v.witness->lhs);
    CHECK(even > v.witness->rhs);
}

TEST_CASE("hyperbolic verdicts are monotone in truncation (randomized)") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> rank(0, 3);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<int> ranks(9, 0);
        for (int k = 2; k <= 8; ++k)
            ranks[k] = rank(rng);
        RankSequence lo = make_ranks(ranks, 4);
        BettiData betti = make_betti({1, 0, 2, 0, 1});
        CatBound cat = CatBound::user(2);
        DichotomyVerdict v = classify(lo, betti, cat);
        if (v.verdict != Verdict::Hyperbolic)
            continue;
        std::vector<int> extended = ranks;
        for (int k = 9; k <= 12; ++k)
            extended.push_back(rank(rng));
        DichotomyVerdict v2 = classify(make_ranks(extended, 4), betti, cat);
        CHECK(v2.verdict == Verdict::Hyperbolic);
    }
}

TEST_CASE("classify never returns elliptic when chi < 0 (randomized)") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> rank(0, 2);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<int> ranks(11, 0);
        for (int k = 2; k <= 10; ++k)
            ranks[k] = rank(rng);
        DichotomyVerdict v = classify(make_ranks(ranks, 4), make_betti({1, 0, 1, 4, 1}),
                                      CatBound::user(1 + rank(rng)));
        CHECK(v.verdict != Verdict::Elliptic);
    }
}

TEST_CASE("growth report shapes") {
    // all-zero ranks: no defined ratios, finite flag
    GrowthReport zero = growth_report(make_ranks({0, 0, 0, 0, 0, 0, 0, 0, 0}, 4));
    CHECK(zero.window_ratios.empty());
    CHECK(zero.flag == "finite");

    // the 2-sphere: cumulative sums stabilize at 2
    GrowthReport s2 = growth_report(pi_ranks(build_minimal_model(sphere(2), 8)));
    CHECK(s2.cumulative.back() == 2);
    CHECK(s2.flag == "finite");

    // the rank-3 diagonal form grows at every window
    GrowthReport g = growth_report(
        pi_ranks(build_minimal_model(four_manifold(IntersectionForm::diagonal({1, 1, 1})), 8)));
    CHECK(g.flag == "growing");
    CHECK(g.monotone_from_first_growth);
    for (const auto& [k, ratio] : g.window_ratios)
        if (k >= 4)
            CHECK(ratio > 1);

    CHECK_THROWS_AS(growth_report(make_ranks({0, 0, 1, 1, 0}, 2)), PreconditionError);
}
