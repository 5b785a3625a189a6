#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/minimal_model.hpp"
#include "rht/spaces.hpp"

namespace rht {

// Upper bound for the Lusternik-Schnirelmann category used by the
// classifier; 4-manifold inputs default to 2, otherwise half the formal
// dimension rounded down (a documented heuristic), both overridable.
struct CatBound {
    int value = 1;
    enum class Source { User, FourManifoldDefault, HalfDimensionDefault } source =
        Source::User;

    static CatBound user(int v) { return {v, Source::User}; }
    static CatBound four_manifold_default() { return {2, Source::FourManifoldDefault}; }
    static CatBound half_dimension(int formal_dim) {
        return {std::max(1, formal_dim / 2), Source::HalfDimensionDefault};
    }
    std::string source_str() const;
};

int euler_characteristic(const BettiData& betti);

enum class Verdict { Elliptic, Hyperbolic, Inconclusive };

std::string verdict_str(Verdict v);

// Machine-checkable reason: which inequality failed, at which cumulative
// degree, with the numbers.
struct DichotomyWitness {
    std::string kind;  // "even-rank", "odd-rank", "euler"
    int degree = 0;    // cumulative degree at which the violation appears
    long long lhs = 0;
    long long rhs = 0;
    std::string text;
};

struct GrowthReport {
    int truncation = 0;
    std::vector<long long> cumulative;                  // s_k, index 0..N
    std::vector<std::pair<int, Rational>> window_ratios;  // (k, s_k / s_{k-2})
    bool monotone_from_first_growth = false;  // s strictly increasing past first jump
    std::string flag;                         // "finite" | "growing" | "mixed"
};

struct DichotomyVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<DichotomyWitness> witness;
    long long even_total = 0;
    long long odd_total = 0;
    int cat = 0;
    int euler = 0;
    int formal_dimension = 0;
    int truncation = 0;
    // for Elliptic verdicts: the generator-free window that was checked
    std::string stabilization_note;
    // for Inconclusive verdicts: the binding constraint
    std::string binding_constraint;
};

// Hyperbolic when a cumulative even/odd rank sum exceeds the cat bound or
// chi < 0 (each contrapositively sound under truncation); Elliptic when the
// ranks vanish above degree 2n-1 with truncation >= 2n and both inequalities
// hold (stabilization heuristic: elliptic spaces have no rational homotopy
// above twice their formal dimension); otherwise Inconclusive.
DichotomyVerdict classify(const RankSequence& ranks, const BettiData& betti,
                          const CatBound& cat);

// desk-scale statistics only; no asymptotic claim is asserted
GrowthReport growth_report(const RankSequence& ranks);

}  // namespace rht
